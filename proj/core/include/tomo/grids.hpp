#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace tomo {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/**
 * Real image sampled on [-1,1]^2.
 *
 * Pixel centers sit at x_i = -1 + (i + 1/2) dx with dx = 2/nx, same for y.
 * Storage is row-major with y outer: values[j*nx + i] is pixel (x_i, y_j).
 */
struct CartesianImage {
    int nx = 0;
    int ny = 0;
    std::vector<double> values;

    CartesianImage() = default;
    CartesianImage(int nx, int ny, double fill = 0.0);

    double dx() const { return 2.0 / nx; }
    double dy() const { return 2.0 / ny; }
    double x(int i) const { return -1.0 + (i + 0.5) * dx(); }
    double y(int j) const { return -1.0 + (j + 0.5) * dy(); }

    double& at(int i, int j) { return values[static_cast<std::size_t>(j) * nx + i]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }

    void validate() const;
};

/**
 * Parallel-beam sinogram g(t, theta).
 *
 * t_i = -t_max + i dt with dt = 2 t_max / nt, theta_j = j pi / ntheta.
 * t_max is 1 for measured data; filtered sinograms carry their padded range.
 * Storage is angle-major: values[j*nt + i] is ray i of angle j.
 */
struct Sinogram {
    int nt = 0;
    int ntheta = 0;
    double t_max = 1.0;
    std::vector<double> values;

    Sinogram() = default;
    Sinogram(int nt, int ntheta, double t_max = 1.0);

    double dt() const { return 2.0 * t_max / nt; }
    double dtheta() const { return kPi / ntheta; }
    double t(int i) const { return -t_max + i * dt(); }
    double theta(int j) const { return j * dtheta(); }

    double& at(int i, int j) { return values[static_cast<std::size_t>(j) * nt + i]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(j) * nt + i]; }
    double* angle(int j) { return values.data() + static_cast<std::size_t>(j) * nt; }
    const double* angle(int j) const { return values.data() + static_cast<std::size_t>(j) * nt; }

    void validate() const;
};

/**
 * Semi-polar sinogram on s in [0, s_max], phi in [0, 2 pi).
 *
 * ns + 1 radial nodes s_i = i ds with ds = s_max / ns, so s_max is a node.
 * phi_k = k dphi with dphi = 2 pi / nphi. Storage: values[k*(ns+1) + i].
 */
struct PolarSinogram {
    int ns = 0;
    int nphi = 0;
    double s_max = 1.0;
    std::vector<double> values;

    PolarSinogram() = default;
    PolarSinogram(int ns, int nphi, double s_max = 1.0);

    int nodes() const { return ns + 1; }
    double ds() const { return s_max / ns; }
    double dphi() const { return 2.0 * kPi / nphi; }
    double s(int i) const { return i * ds(); }
    double phi(int k) const { return k * dphi(); }

    double& at(int i, int k) { return values[static_cast<std::size_t>(k) * (ns + 1) + i]; }
    double at(int i, int k) const { return values[static_cast<std::size_t>(k) * (ns + 1) + i]; }

    void validate() const;
};

/**
 * Log-polar image on rho in [rho0, 0], phi in [0, 2 pi).
 *
 * Nodes rho_i = rho0 + (i + 1) drho, drho = -rho0 / nrho, so the last node is 0.
 * Storage is rho-major: values[i*nphi + k].
 */
struct LogPolarImage {
    int nrho = 0;
    int nphi = 0;
    double rho0 = -1.0;
    std::vector<double> values;

    LogPolarImage() = default;
    LogPolarImage(int nrho, int nphi, double rho0);

    double drho() const { return -rho0 / nrho; }
    double dphi() const { return 2.0 * kPi / nphi; }
    double rho(int i) const { return rho0 + (i + 1) * drho(); }
    double phi(int k) const { return k * dphi(); }
    double fovea_radius() const;

    double& at(int i, int k) { return values[static_cast<std::size_t>(i) * nphi + k]; }
    double at(int i, int k) const { return values[static_cast<std::size_t>(i) * nphi + k]; }

    void validate() const;
};

/**
 * Complex samples on frequency rays sigma_m = m dsigma, theta_j = 2 pi j / ntheta.
 * Row m = 0 is the DC row. Storage: values[m*ntheta + j].
 */
struct PolarSpectrum {
    int nsigma = 0;
    int ntheta = 0;
    double dsigma = 1.0;
    std::vector<cplx> values;

    PolarSpectrum() = default;
    PolarSpectrum(int nsigma, int ntheta, double dsigma);

    double sigma(int m) const { return m * dsigma; }
    double sigma_max() const { return (nsigma - 1) * dsigma; }
    double theta(int j) const { return 2.0 * kPi * j / ntheta; }

    cplx& at(int m, int j) { return values[static_cast<std::size_t>(m) * ntheta + j]; }
    const cplx& at(int m, int j) const { return values[static_cast<std::size_t>(m) * ntheta + j]; }

    void validate() const;
};

/**
 * Cartesian frequency samples in DFT order.
 *
 * The grid belongs to a spatial domain of side `period`; bin k maps to
 * omega = k' * 2 pi / period with k' the signed DFT index. Row-major, y outer.
 */
struct FrequencyImage {
    int nx = 0;
    int ny = 0;
    double period = 2.0;
    std::vector<cplx> values;

    FrequencyImage() = default;
    FrequencyImage(int nx, int ny, double period = 2.0);

    double domega() const { return 2.0 * kPi / period; }
    double omega_x(int i) const;
    double omega_y(int j) const;

    cplx& at(int i, int j) { return values[static_cast<std::size_t>(j) * nx + i]; }
    const cplx& at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }
};

// Signed DFT index of bin k in a length-n transform.
inline int signed_index(int k, int n) { return k <= (n - 1) / 2 ? k : k - n; }

// Bilinear sample between pixel centers; reads outside the pixel grid are 0.
double sample_image(const CartesianImage& img, double x, double y);

// Linear interpolation of angle column j at offset t; reads outside the grid are 0.
double sample_t(const Sinogram& g, double t, int j);

/// Sinogram value for any direction phi in [0, 2 pi), using g(t, phi) = g(-t, phi - pi)
/// and linear interpolation in both t and phi.
double sample_line(const Sinogram& g, double t, double phi);

// Linear interpolation along s of column k; reads outside [0, s_max] are 0.
double sample_s(const PolarSinogram& p, double s, int k);

PolarSinogram sinogram_to_semipolar(const Sinogram& g);
Sinogram semipolar_to_sinogram(const PolarSinogram& p);

LogPolarImage semipolar_to_logpolar(const PolarSinogram& p, double rho0, int nrho);
PolarSinogram logpolar_to_semipolar(const LogPolarImage& l, int ns, double s_max = 1.0);

/// Bilinear sample of l at the cartesian point (x, y); 0 outside e^{rho0} <= r <= 1.
double sample_logpolar(const LogPolarImage& l, double x, double y);
LogPolarImage cartesian_to_logpolar(const CartesianImage& img, double rho0, int nrho, int nphi);
CartesianImage logpolar_to_cartesian(const LogPolarImage& l, int nx, int ny);

/**
 * Grid a polar spectrum onto the cartesian frequency grid of a domain of side
 * `period` with nx by ny samples. Bilinear in (sigma, theta), theta 2 pi periodic,
 * Hermitian symmetry enforced afterwards.
 */
FrequencyImage polar_to_cartesian_frequency(const PolarSpectrum& ps, int nx, int ny,
                                            double period = 2.0);

int compute_nrho(int ns, int nx, int ny);
double adaptive_rho0(int nx, int ny);

}  // namespace tomo
