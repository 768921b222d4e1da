#pragma once

#include <optional>
#include <vector>

#include "tomo/grids.hpp"

namespace tomo {

/// Angular sector centered at theta0 with half-width beta, processed at rescale a_r.
struct Sector {
    double theta0 = 0.0;
    double beta = kPi / 8.0;
    double a_r = 0.25;
};

struct LogPolarOptions {
    std::optional<double> rho0;       // explicit rho0 (< 0); adaptive when empty
    std::optional<int> nrho_override;
    std::optional<Sector> sector;     // restrict to one sector (see partial_backproject)
    int rho_pad = 2;                  // rho axis is zero-padded to next_fast_size(rho_pad * nrho)
};

struct LogPolarMesh {
    double rho0 = -1.0;
    int nrho = 0;
    int nphi = 0;
    double ds = 0.0;  // radial step of the semi-polar sinogram

    double drho() const { return -rho0 / nrho; }
    double fovea_radius() const;
};

struct LogPolarResult {
    CartesianImage image;
    LogPolarImage logpolar;
    LogPolarMesh mesh;
};

/**
 * Mesh for backprojecting g onto an n by n image. Explicit rho0 takes precedence:
 * nrho = ceil(rho0 / ln(1 - ds)); otherwise rho0 = adaptive_rho0(n, n) and
 * nrho = compute_nrho(round(2/dt), n, n). Meshes whose largest radial step
 * 1 - e^{-drho} exceeds ds are rejected.
 */
LogPolarMesh logpolar_mesh(const Sinogram& g, int n, const LogPolarOptions& opts);

/**
 * Box-rule kernel, nrho rows by nphi columns, row-major.
 * Row i is the lag d_i = i drho, column j the angle theta_j = -pi + j dphi;
 * the entry is 1/drho where |e^{d_i} cos theta_j - 1| <= drho, else 0.
 */
std::vector<double> make_logpolar_kernel(int nrho, int nphi, double drho);

/**
 * Cyclic 2D DFT convolution of log-polar data with the kernel:
 * out(i, k) = 1/2 drho dphi sum_{i' <= i} sum_k' l(i', k') K(i - i', phi_k - phi_k').
 * The rho axis is padded to next_fast_size(rho_pad * nrho); phi is periodic.
 */
LogPolarImage logpolar_convolve(const LogPolarImage& l, int rho_pad = 2);

LogPolarResult logpolar_backproject_full(const Sinogram& g, const LogPolarOptions& opts, int n);

// Cartesian part of logpolar_backproject_full; 0 outside the unit disk and inside e^{rho0}.
CartesianImage logpolar_backproject(const Sinogram& g, const LogPolarOptions& opts, int n);

// 2 pi c^2 e^{2 rho0}.
double truncation_error_bound(double rho0, double c);

// Centers k pi/4, k = 0..3, beta = pi/8, a_r = 1/4.
std::vector<Sector> default_sectors();

/**
 * Sum of sector backprojections. Each sector's angles (extended by 2 dtheta on
 * both sides) are weighted by 1/coverage, rotated to the x axis, rescaled by a_r,
 * shifted by (1 - a_r, 0) and passed through the log-polar convolution, then
 * sampled back on the n by n grid. Every grid angle must lie within beta of some
 * sector center.
 */
CartesianImage partial_backproject(const Sinogram& g, const std::vector<Sector>& sectors, int n,
                                   int rho_pad = 2);

}  // namespace tomo
