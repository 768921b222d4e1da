#include "tomo/grids.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gridding.hpp"
#include "tomo/parallel.hpp"

namespace tomo {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

void require_finite(const std::vector<double>& v, const char* who) {
    for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument(std::string(who) + ": non-finite value");
}

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    return a < 0.0 ? a + 2.0 * kPi : a;
}

}  // namespace

CartesianImage::CartesianImage(int nx_, int ny_, double fill) : nx(nx_), ny(ny_) {
    require(nx >= 2 && ny >= 2, "CartesianImage: nx and ny must be >= 2");
    values.assign(static_cast<std::size_t>(nx) * ny, fill);
}

void CartesianImage::validate() const {
    require(nx >= 2 && ny >= 2, "CartesianImage: nx and ny must be >= 2");
    require(values.size() == static_cast<std::size_t>(nx) * ny, "CartesianImage: size mismatch");
    require_finite(values, "CartesianImage");
}

Sinogram::Sinogram(int nt_, int ntheta_, double t_max_) : nt(nt_), ntheta(ntheta_), t_max(t_max_) {
    require(nt >= 2 && ntheta >= 1, "Sinogram: need nt >= 2 and ntheta >= 1");
    require(t_max > 0.0, "Sinogram: t_max must be positive");
    values.assign(static_cast<std::size_t>(nt) * ntheta, 0.0);
}

void Sinogram::validate() const {
    require(nt >= 2 && ntheta >= 1, "Sinogram: need nt >= 2 and ntheta >= 1");
    require(t_max > 0.0, "Sinogram: t_max must be positive");
    require(values.size() == static_cast<std::size_t>(nt) * ntheta, "Sinogram: size mismatch");
    require_finite(values, "Sinogram");
}

PolarSinogram::PolarSinogram(int ns_, int nphi_, double s_max_) : ns(ns_), nphi(nphi_), s_max(s_max_) {
    require(ns >= 1 && nphi >= 2, "PolarSinogram: need ns >= 1 and nphi >= 2");
    require(s_max > 0.0, "PolarSinogram: s_max must be positive");
    values.assign(static_cast<std::size_t>(ns + 1) * nphi, 0.0);
}

void PolarSinogram::validate() const {
    require(ns >= 1 && nphi >= 2, "PolarSinogram: need ns >= 1 and nphi >= 2");
    require(values.size() == static_cast<std::size_t>(ns + 1) * nphi, "PolarSinogram: size mismatch");
    require_finite(values, "PolarSinogram");
}

LogPolarImage::LogPolarImage(int nrho_, int nphi_, double rho0_) : nrho(nrho_), nphi(nphi_), rho0(rho0_) {
    require(rho0 < 0.0, "LogPolarImage: rho0 must be negative");
    require(nrho >= 2 && nphi >= 2, "LogPolarImage: need nrho >= 2 and nphi >= 2");
    values.assign(static_cast<std::size_t>(nrho) * nphi, 0.0);
}

double LogPolarImage::fovea_radius() const { return std::exp(rho0); }

void LogPolarImage::validate() const {
    require(rho0 < 0.0, "LogPolarImage: rho0 must be negative");
    require(nrho >= 2 && nphi >= 2, "LogPolarImage: need nrho >= 2 and nphi >= 2");
    require(values.size() == static_cast<std::size_t>(nrho) * nphi, "LogPolarImage: size mismatch");
    require_finite(values, "LogPolarImage");
}

PolarSpectrum::PolarSpectrum(int nsigma_, int ntheta_, double dsigma_)
    : nsigma(nsigma_), ntheta(ntheta_), dsigma(dsigma_) {
    require(nsigma >= 2 && ntheta >= 1, "PolarSpectrum: need nsigma >= 2 and ntheta >= 1");
    require(dsigma > 0.0, "PolarSpectrum: dsigma must be positive");
    values.assign(static_cast<std::size_t>(nsigma) * ntheta, cplx{});
}

void PolarSpectrum::validate() const {
    require(nsigma >= 2 && ntheta >= 1, "PolarSpectrum: need nsigma >= 2 and ntheta >= 1");
    require(dsigma > 0.0, "PolarSpectrum: dsigma must be positive");
    require(values.size() == static_cast<std::size_t>(nsigma) * ntheta, "PolarSpectrum: size mismatch");
}

FrequencyImage::FrequencyImage(int nx_, int ny_, double period_) : nx(nx_), ny(ny_), period(period_) {
    require(nx >= 1 && ny >= 1 && period > 0.0, "FrequencyImage: invalid dimensions");
    values.assign(static_cast<std::size_t>(nx) * ny, cplx{});
}

double FrequencyImage::omega_x(int i) const { return signed_index(i, nx) * domega(); }
double FrequencyImage::omega_y(int j) const { return signed_index(j, ny) * domega(); }

double sample_image(const CartesianImage& img, double x, double y) {
    const double u = (x + 1.0) / img.dx() - 0.5;
    const double v = (y + 1.0) / img.dy() - 0.5;
    const double fu = std::floor(u), fv = std::floor(v);
    if (fu < -1.0 || fv < -1.0 || fu > img.nx - 1 || fv > img.ny - 1) return 0.0;
    const int i = static_cast<int>(fu), j = static_cast<int>(fv);
    const double a = u - fu, b = v - fv;
    auto get = [&](int ii, int jj) {
        return (ii < 0 || jj < 0 || ii >= img.nx || jj >= img.ny) ? 0.0 : img.at(ii, jj);
    };
    return (1 - a) * (1 - b) * get(i, j) + a * (1 - b) * get(i + 1, j) + (1 - a) * b * get(i, j + 1) +
           a * b * get(i + 1, j + 1);
}

double sample_t(const Sinogram& g, double t, int j) {
    const double u = (t + g.t_max) / g.dt();
    const double fu = std::floor(u);
    if (fu < -1.0 || fu > g.nt - 1) return 0.0;
    const int i = static_cast<int>(fu);
    const double f = u - fu;
    const double* col = g.angle(j);
    const double lo = i >= 0 ? col[i] : 0.0;
    const double hi = i + 1 < g.nt ? col[i + 1] : 0.0;
    return (1.0 - f) * lo + f * hi;
}

double sample_line(const Sinogram& g, double t, double phi) {
    const int ncol = 2 * g.ntheta;
    const double v = wrap_angle(phi) / g.dtheta();
    const double fv = std::floor(v);
    const double w = v - fv;
    auto column = [&](int c) {
        c %= ncol;
        return c < g.ntheta ? sample_t(g, t, c) : sample_t(g, -t, c - g.ntheta);
    };
    const int c = static_cast<int>(fv);
    return (1.0 - w) * column(c) + w * column(c + 1);
}

double sample_s(const PolarSinogram& p, double s, int k) {
    const double u = s / p.ds();
    const double fu = std::floor(u);
    if (u < 0.0 || fu > p.ns) return 0.0;
    const int i = static_cast<int>(fu);
    const double f = u - fu;
    const double lo = p.at(i, k);
    const double hi = i + 1 <= p.ns ? p.at(i + 1, k) : 0.0;
    return (1.0 - f) * lo + f * hi;
}

PolarSinogram sinogram_to_semipolar(const Sinogram& g) {
    g.validate();
    require(g.nt % 2 == 0, "sinogram_to_semipolar: nt must be even");
    PolarSinogram p(g.nt / 2, 2 * g.ntheta, g.t_max);
    parallel_for(0, p.nphi, [&](int k) {
        const bool flipped = k >= g.ntheta;
        const int j = flipped ? k - g.ntheta : k;
        for (int i = 0; i <= p.ns; ++i) {
            const double s = p.s(i);
            p.at(i, k) = sample_t(g, flipped ? -s : s, j);
        }
    });
    return p;
}

Sinogram semipolar_to_sinogram(const PolarSinogram& p) {
    p.validate();
    require(p.nphi % 2 == 0, "semipolar_to_sinogram: nphi must be even");
    Sinogram g(2 * p.ns, p.nphi / 2, p.s_max);
    parallel_for(0, g.ntheta, [&](int j) {
        for (int i = 0; i < g.nt; ++i) {
            const double t = g.t(i);
            g.at(i, j) = t >= 0.0 ? sample_s(p, t, j) : sample_s(p, -t, j + g.ntheta);
        }
    });
    return g;
}

LogPolarImage semipolar_to_logpolar(const PolarSinogram& p, double rho0, int nrho) {
    p.validate();
    require(rho0 < 0.0, "semipolar_to_logpolar: rho0 must be negative");
    require(nrho >= 2, "semipolar_to_logpolar: nrho must be >= 2");
    LogPolarImage l(nrho, p.nphi, rho0);
    parallel_for(0, nrho, [&](int i) {
        const double s = std::exp(l.rho(i));
        for (int k = 0; k < l.nphi; ++k) l.at(i, k) = sample_s(p, s, k);
    });
    return l;
}

namespace {

// Fractional rho index for log-radius lr; the band [rho0, rho_0) clamps to node 0.
bool rho_index(const LogPolarImage& l, double lr, int& i, double& f) {
    if (!(lr >= l.rho0) || lr > 1e-12) return false;
    const double u = (lr - l.rho0) / l.drho() - 1.0;
    if (u <= 0.0) {
        i = 0;
        f = 0.0;
    } else if (u >= l.nrho - 1) {
        i = l.nrho - 1;
        f = 0.0;
    } else {
        i = static_cast<int>(std::floor(u));
        f = u - i;
    }
    return true;
}

}  // namespace

PolarSinogram logpolar_to_semipolar(const LogPolarImage& l, int ns, double s_max) {
    l.validate();
    PolarSinogram p(ns, l.nphi, s_max);
    parallel_for(0, l.nphi, [&](int k) {
        for (int n = 1; n <= ns; ++n) {
            int i;
            double f;
            if (!rho_index(l, std::log(p.s(n)), i, f)) continue;
            const double hi = i + 1 < l.nrho ? l.at(i + 1, k) : 0.0;
            p.at(n, k) = (1.0 - f) * l.at(i, k) + f * hi;
        }
    });
    return p;
}

double sample_logpolar(const LogPolarImage& l, double x, double y) {
    const double r = std::hypot(x, y);
    if (r == 0.0 || r > 1.0) return 0.0;
    int i;
    double fu;
    if (!rho_index(l, std::log(r), i, fu)) return 0.0;
    const int i1 = std::min(i + 1, l.nrho - 1);
    const double v = wrap_angle(std::atan2(y, x)) / l.dphi();
    const double fv0 = std::floor(v);
    const double fv = v - fv0;
    const int k = static_cast<int>(fv0) % l.nphi;
    const int k1 = (k + 1) % l.nphi;
    return (1 - fu) * (1 - fv) * l.at(i, k) + fu * (1 - fv) * l.at(i1, k) +
           (1 - fu) * fv * l.at(i, k1) + fu * fv * l.at(i1, k1);
}

LogPolarImage cartesian_to_logpolar(const CartesianImage& img, double rho0, int nrho, int nphi) {
    img.validate();
    LogPolarImage l(nrho, nphi, rho0);
    parallel_for(0, nrho, [&](int i) {
        const double r = std::exp(l.rho(i));
        for (int k = 0; k < nphi; ++k)
            l.at(i, k) = sample_image(img, r * std::cos(l.phi(k)), r * std::sin(l.phi(k)));
    });
    return l;
}

CartesianImage logpolar_to_cartesian(const LogPolarImage& l, int nx, int ny) {
    l.validate();
    CartesianImage img(nx, ny);
    parallel_for(0, ny, [&](int j) {
        for (int i = 0; i < nx; ++i) img.at(i, j) = sample_logpolar(l, img.x(i), img.y(j));
    });
    return img;
}

namespace detail {

double grid_max_radius(int nx, int ny, double period) {
    const double dw = 2.0 * kPi / period;
    return dw * std::hypot(nx / 2, ny / 2);
}

void grid_polar(const PolarSpectrum& ps, int nx, int ny, double period, int ncols, cplx* out,
                std::size_t row_stride) {
    const double dw = 2.0 * kPi / period;
    const double inv_ds = 1.0 / ps.dsigma;
    const double inv_dth = ps.ntheta / (2.0 * kPi);
    cplx dc{};
    for (int j = 0; j < ps.ntheta; ++j) dc += ps.at(0, j);
    dc /= static_cast<double>(ps.ntheta);
    parallel_for(0, ny, [&](int jy) {
        const double wy = signed_index(jy, ny) * dw;
        cplx* row = out + static_cast<std::size_t>(jy) * row_stride;
        for (int ix = 0; ix < ncols; ++ix) {
            const double wx = signed_index(ix, nx) * dw;
            const double r = std::hypot(wx, wy);
            if (r == 0.0) {
                row[ix] = dc;
                continue;
            }
            const double u = r * inv_ds;
            const int m = static_cast<int>(u);
            const double fu = u - m;
            const double v = wrap_angle(std::atan2(wy, wx)) * inv_dth;
            const int k0 = static_cast<int>(v);
            const double fv = v - k0;
            const int k = k0 % ps.ntheta;
            const int k1 = (k + 1) % ps.ntheta;
            row[ix] = (1 - fu) * (1 - fv) * ps.at(m, k) + fu * (1 - fv) * ps.at(m + 1, k) +
                      (1 - fu) * fv * ps.at(m, k1) + fu * fv * ps.at(m + 1, k1);
        }
    });
}

}  // namespace detail

FrequencyImage polar_to_cartesian_frequency(const PolarSpectrum& ps, int nx, int ny, double period) {
    ps.validate();
    require(nx >= 2 && ny >= 2, "polar_to_cartesian_frequency: nx and ny must be >= 2");
    const double need = detail::grid_max_radius(nx, ny, period);
    if (ps.sigma(ps.nsigma - 2) < need)
        throw std::invalid_argument("polar_to_cartesian_frequency: spectrum reaches sigma = " +
                                    std::to_string(ps.sigma_max()) + " but the grid needs " +
                                    std::to_string(need));
    FrequencyImage fi(nx, ny, period);
    detail::grid_polar(ps, nx, ny, period, nx, fi.values.data(), nx);
    for (int j = 0; j < ny; ++j) {
        const int jm = (ny - j) % ny;
        for (int i = 0; i < nx; ++i) {
            const int im = (nx - i) % nx;
            const std::size_t a = static_cast<std::size_t>(j) * nx + i;
            const std::size_t b = static_cast<std::size_t>(jm) * nx + im;
            if (b < a) continue;
            const cplx va = fi.values[a], vb = fi.values[b];
            fi.values[a] = 0.5 * (va + std::conj(vb));
            fi.values[b] = 0.5 * (vb + std::conj(va));
        }
    }
    return fi;
}

int compute_nrho(int ns, int nx, int ny) {
    require(ns >= 2 && nx >= 2 && ny >= 2, "compute_nrho: counts must be >= 2");
    const double ds = 2.0 / ns;
    const int lo = 2, hi = 64 * ns;
    if (ds >= 1.0) return lo;
    const double ratio = std::log(std::min(1.0 / nx, 1.0 / ny)) / std::log(1.0 - ds);
    const double n = std::ceil(ratio - 1e-12);
    if (n < lo) return lo;
    if (n > hi) return hi;
    return static_cast<int>(n);
}

double adaptive_rho0(int nx, int ny) {
    require(nx >= 2 && ny >= 2, "adaptive_rho0: counts must be >= 2");
    return std::log(std::min(2.0 / nx, 2.0 / ny)) - std::log(2.0);
}

}  // namespace tomo
