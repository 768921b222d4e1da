#include "tomo/bst.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gridding.hpp"
#include "spectral.hpp"
#include "tomo/dft.hpp"
#include "tomo/parallel.hpp"
#include "tomo/phantoms.hpp"
#include "tomo/reference.hpp"

namespace tomo {

namespace detail {

std::vector<double> full_lines(const Sinogram& g) {
    const PolarSinogram p = sinogram_to_semipolar(g);
    const int half = g.nt / 2;
    std::vector<double> lines(static_cast<std::size_t>(g.nt) * g.ntheta);
    parallel_for(0, g.ntheta, [&](int j) {
        double* line = lines.data() + static_cast<std::size_t>(j) * g.nt;
        for (int i = 0; i < g.nt; ++i)
            line[i] = i >= half ? p.at(i - half, j) : p.at(half - i, j + g.ntheta);
    });
    return lines;
}

LineSpectra line_spectra(const std::vector<double>& lines, int nt, int ntheta, double dt, int L) {
    if (L < nt || (L - nt) % 2 != 0)
        throw std::logic_error("line_spectra: padded length must exceed nt by an even count");
    LineSpectra ls;
    ls.L = L;
    ls.ntheta = ntheta;
    ls.dt = dt;
    ls.dsigma = 2.0 * kPi / (L * dt);
    const std::size_t total = static_cast<std::size_t>(L) * ntheta;
    ls.data = alloc_complex(total);
    cplx* d = ls.data.get();
    std::fill(d, d + total, cplx{});
    const int s0 = (L - nt) / 2;
    for (int j = 0; j < ntheta; ++j)
        for (int i = 0; i < nt; ++i)
            d[static_cast<std::size_t>(j) * L + s0 + i] = lines[static_cast<std::size_t>(j) * nt + i];
    fft_lines(d, L, ntheta, -1);
    // Buffer index 0 sits at t = -L dt / 2, hence the (-1)^m phase.
    parallel_for(0, ntheta, [&](int j) {
        cplx* line = d + static_cast<std::size_t>(j) * L;
        for (int m = 0; m < L; ++m) line[m] *= (m % 2 == 0 ? dt : -dt);
    });
    return ls;
}

PolarSpectrum polar_spectrum(const LineSpectra& ls, int nsigma,
                             const std::function<double(double)>& weight) {
    PolarSpectrum ps(nsigma, 2 * ls.ntheta, ls.dsigma);
    parallel_for(0, nsigma, [&](int m) {
        const double w = weight(ps.sigma(m));
        const int a = m % ls.L;
        const int b = (ls.L - a) % ls.L;
        for (int j = 0; j < ls.ntheta; ++j) {
            const cplx* line = ls.line(j);
            ps.at(m, j) = w * line[a];
            ps.at(m, j + ls.ntheta) = w * line[b];
        }
    });
    return ps;
}

int rows_needed(int n, int os, double dsigma) {
    const int n2 = kImagePad * n * os;
    const double period = 2.0 * kImagePad;
    return static_cast<int>(std::ceil(grid_max_radius(n2, n2, period) / dsigma)) + 3;
}

CartesianImage invert_polar(const PolarSpectrum& ps, int n, int os, double scale) {
    const int n2 = kImagePad * n * os;
    const double dx = 2.0 / n;
    const double h = dx / os;
    const double period = n2 * h;
    if (ps.sigma(ps.nsigma - 2) < grid_max_radius(n2, n2, period))
        throw std::logic_error("invert_polar: polar spectrum does not reach the grid corner");

    const int ncols = n2 / 2 + 1;
    const std::size_t stride = 2 * static_cast<std::size_t>(ncols);
    auto buf = alloc_real(stride * n2);
    cplx* c = reinterpret_cast<cplx*>(buf.get());
    grid_polar(ps, n2, n2, period, ncols, c, ncols);

    auto bin = [&](int jy, int ix) -> cplx& { return c[static_cast<std::size_t>(jy) * ncols + ix]; };
    for (int jy = 0; jy < n2; ++jy) bin(jy, n2 / 2) = 0.0;
    for (int ix = 0; ix < ncols; ++ix) bin(n2 / 2, ix) = 0.0;
    bin(0, 0) = bin(0, 0).real();
    for (int jy = 1; jy < n2 / 2; ++jy) {
        const cplx a = bin(jy, 0), b = bin(n2 - jy, 0);
        const cplx sym = 0.5 * (a + std::conj(b));
        bin(jy, 0) = sym;
        bin(n2 - jy, 0) = std::conj(sym);
    }

    // Grid sample j sits at x = -period/2 + dx/2 + j h.
    const double dw = 2.0 * kPi / period;
    const double origin = -0.5 * period + 0.5 * dx;
    std::vector<cplx> phase(n2);
    for (int k = 0; k < n2; ++k) phase[k] = std::polar(1.0, signed_index(k, n2) * dw * origin);
    parallel_for(0, n2, [&](int jy) {
        for (int ix = 0; ix < ncols; ++ix) bin(jy, ix) *= phase[jy] * phase[ix];
    });

    c2r_2d(buf.get(), n2, n2);

    const double norm = scale / (period * period);
    const int j0 = static_cast<int>(std::lround((0.5 * period - 1.0) / h));
    CartesianImage img(n, n);
    for (int l = 0; l < n; ++l) {
        const double* row = buf.get() + static_cast<std::size_t>(j0 + os * l) * stride;
        for (int k = 0; k < n; ++k) img.at(k, l) = norm * row[j0 + os * k];
    }
    return img;
}

double linear_transfer(double sigma, double dt) {
    const double x = 0.5 * sigma * dt;
    if (x == 0.0) return 1.0;
    const double s = std::sin(x) / x;
    return s * s;
}

}  // namespace detail

std::vector<double> kaiser_window(int ns, double beta) {
    if (ns < 2) throw std::invalid_argument("kaiser_window: ns must be >= 2");
    if (beta < 0.0) throw std::invalid_argument("kaiser_window: beta must be >= 0");
    std::vector<double> w(ns);
    const double denom = std::abs(bessel_i0(beta));
    for (int i = 0; i < ns; ++i) {
        const double u = (2.0 * i - ns + 1) / (ns - 1);
        w[i] = std::abs(bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - u * u)))) / denom;
    }
    return w;
}

double kaiser_profile(double beta, double u) {
    const double uu = std::min(std::abs(u), 1.0);
    return bessel_i0(beta * std::sqrt(1.0 - uu * uu)) / bessel_i0(beta);
}

std::vector<double> sigma_kernel(int nsigma, double dsigma) {
    if (!(dsigma > 0.0)) throw std::invalid_argument("sigma_kernel: dsigma must be positive");
    if (nsigma < 1) throw std::invalid_argument("sigma_kernel: nsigma must be >= 1");
    std::vector<double> k(nsigma);
    k[0] = 1.0 / dsigma;
    for (int m = 1; m < nsigma; ++m) k[m] = 1.0 / (m * dsigma);
    return k;
}

namespace {

struct BstSetup {
    int n = 0;
    int os = 1;
    double mbar = 0.0;  // mean per-angle mass
    double phi_mass = 1.0;
    double width = 0.25;
    bool dc_split = false;
    PolarSpectrum ps;
};

int effective_nt(const Sinogram& g) { return static_cast<int>(std::lround(2.0 / g.dt())); }

void check_options(const Sinogram& g, const BstOptions& opts, int n) {
    if (!(opts.zero_pad >= 1.0)) throw std::invalid_argument("bst: zero_pad must be >= 1");
    if (!(opts.beta >= 0.0)) throw std::invalid_argument("bst: beta must be >= 0");
    if (opts.oversample < 1) throw std::invalid_argument("bst: oversample must be >= 1");
    if (!(opts.dc_profile_width > 0.0)) throw std::invalid_argument("bst: dc_profile_width must be positive");
    if (n < 2) throw std::invalid_argument("bst: n_out must be >= 2");
    if (n > 2 * effective_nt(g))
        throw std::invalid_argument("bst: n_out = " + std::to_string(n) +
                                    " exceeds the supported resolution 2/dt * 2 = " +
                                    std::to_string(2 * effective_nt(g)));
    if (g.nt % 2 != 0) throw std::invalid_argument("bst: nt must be even");
}

BstSetup prepare(const Sinogram& g, const BstOptions& opts) {
    g.validate();
    BstSetup s;
    s.n = opts.n_out > 0 ? opts.n_out : effective_nt(g);
    s.os = opts.oversample;
    s.width = opts.dc_profile_width;
    check_options(g, opts, s.n);

    const int nt = g.nt, nth = g.ntheta;
    const double dt = g.dt();
    std::vector<double> lines = detail::full_lines(g);

    if (opts.dc_mode == DcMode::subtract_mean) {
        s.dc_split = true;
        std::vector<double> profile(nt);
        double pm = 0.0;
        for (int i = 0; i < nt; ++i) {
            const double t = g.t(i);
            profile[i] = std::exp(-t * t / (2.0 * s.width * s.width));
            pm += profile[i] * dt;
        }
        s.phi_mass = pm;
        std::vector<double> mass(nth, 0.0);
        for (int j = 0; j < nth; ++j) {
            double* line = lines.data() + static_cast<std::size_t>(j) * nt;
            double m = 0.0;
            for (int i = 0; i < nt; ++i) m += line[i] * dt;
            mass[j] = m;
            for (int i = 0; i < nt; ++i) line[i] -= m * profile[i] / pm;
        }
        double lo = mass[0], hi = mass[0], sum = 0.0;
        for (double m : mass) {
            lo = std::min(lo, m);
            hi = std::max(hi, m);
            sum += m;
        }
        s.mbar = sum / nth;
        spdlog::debug("bst: per-angle mass mean {:.6g}, spread {:.3g}", s.mbar, hi - lo);
    }

    const int L = next_pow2(static_cast<int>(std::ceil(opts.zero_pad * nt)));
    const detail::LineSpectra ls = detail::line_spectra(lines, nt, nth, dt, L);
    lines.clear();
    lines.shrink_to_fit();

    const double dsigma = ls.dsigma;
    const double nyquist = kPi / dt;
    const double beta = opts.beta;
    const int rows = detail::rows_needed(s.n, s.os, dsigma);
    s.ps = detail::polar_spectrum(ls, rows, [&](double sigma) {
        double w = detail::linear_transfer(sigma, dt);
        if (beta > 0.0) w *= kaiser_profile(beta, sigma / nyquist);
        return w * (sigma > 0.0 ? 1.0 / sigma : 1.0 / dsigma);
    });
    if (s.dc_split) {
        // The mean-free lines have no DC; continue the first rows linearly to sigma = 0.
        for (int j = 0; j < s.ps.ntheta; ++j) s.ps.at(0, j) = 2.0 * s.ps.at(1, j) - s.ps.at(2, j);
    }
    return s;
}

void add_dc_profile(CartesianImage& img, const BstSetup& s) {
    if (!s.dc_split) return;
    const double amp = s.mbar / s.phi_mass * kPi;
    const double inv = 1.0 / (4.0 * s.width * s.width);
    for (int j = 0; j < img.ny; ++j)
        for (int i = 0; i < img.nx; ++i) {
            const double r2 = img.x(i) * img.x(i) + img.y(j) * img.y(j);
            img.at(i, j) += amp * bessel_i0e(r2 * inv);
        }
}

}  // namespace

CartesianImage bst_backproject(const Sinogram& g, const BstOptions& opts) {
    BstSetup s = prepare(g, opts);
    CartesianImage img = detail::invert_polar(s.ps, s.n, s.os, kBstScale);
    add_dc_profile(img, s);
    return img;
}

FrequencyImage bst_spectrum(const Sinogram& g, const BstOptions& opts) {
    BstSetup s = prepare(g, opts);
    const int n2 = detail::kImagePad * s.n * s.os;
    const double period = 2.0 * detail::kImagePad;
    FrequencyImage fi = polar_to_cartesian_frequency(s.ps, n2, n2, period);
    const double amp = s.dc_split ? s.mbar / s.phi_mass * s.width * std::sqrt(2.0 * kPi) : 0.0;
    for (int j = 0; j < n2; ++j)
        for (int i = 0; i < n2; ++i) {
            cplx& v = fi.at(i, j);
            v *= kBstScale;
            const double r = std::hypot(fi.omega_x(i), fi.omega_y(j));
            if (r > 0.0 && amp != 0.0)
                v += kBstScale * amp * std::exp(-0.5 * s.width * s.width * r * r) / r;
        }
    return fi;
}

double calibrate_bst_scale(int n, int ntheta) {
    Sinogram g(n, ntheta);
    std::fill(g.values.begin(), g.values.end(), 1.0);
    BstOptions opts;
    opts.beta = 0.0;
    opts.n_out = n;
    BstSetup s = prepare(g, opts);
    const CartesianImage spectral = detail::invert_polar(s.ps, n, 1, 1.0);
    CartesianImage dc(n, n);
    add_dc_profile(dc, s);
    const CartesianImage ref = backproject_naive(g, n);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if (std::hypot(ref.x(i), ref.y(j)) > 0.9) continue;
            const double sv = spectral.at(i, j);
            num += (ref.at(i, j) - dc.at(i, j)) * sv;
            den += sv * sv;
        }
    return num / den;
}

double fst_consistency(const CartesianImage& f, const Sinogram& g, double zero_pad) {
    f.validate();
    g.validate();
    if (zero_pad < 1.0) throw std::invalid_argument("fst_consistency: zero_pad must be >= 1");

    // Continuous 2D spectrum of f on a padded grid: sum f e^{-i w.x} dx dy.
    const int mx = next_pow2(static_cast<int>(std::ceil(zero_pad * f.nx)));
    const int my = next_pow2(static_cast<int>(std::ceil(zero_pad * f.ny)));
    std::vector<cplx> grid(static_cast<std::size_t>(mx) * my);
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i) grid[static_cast<std::size_t>(j) * mx + i] = f.at(i, j);
    grid = dft_2d(grid, mx, my, Direction::forward);
    const double dwx = 2.0 * kPi / (mx * f.dx());
    const double dwy = 2.0 * kPi / (my * f.dy());
    const double x0 = f.x(0), y0 = f.y(0);
    auto f_hat_bin = [&](int kx, int ky) {
        const int ix = ((kx % mx) + mx) % mx, iy = ((ky % my) + my) % my;
        const double wx = kx * dwx, wy = ky * dwy;
        return grid[static_cast<std::size_t>(iy) * mx + ix] * std::polar(f.dx() * f.dy(), -(wx * x0 + wy * y0));
    };
    auto f_hat = [&](double wx, double wy) {
        const double u = wx / dwx, v = wy / dwy;
        const int iu = static_cast<int>(std::floor(u)), iv = static_cast<int>(std::floor(v));
        const double a = u - iu, b = v - iv;
        return (1 - a) * (1 - b) * f_hat_bin(iu, iv) + a * (1 - b) * f_hat_bin(iu + 1, iv) +
               (1 - a) * b * f_hat_bin(iu, iv + 1) + a * b * f_hat_bin(iu + 1, iv + 1);
    };

    const int L = next_pow2(static_cast<int>(std::ceil(zero_pad * g.nt)));
    const double dt = g.dt();
    const double dsigma = 2.0 * kPi / (L * dt);
    const double limit = 0.5 * std::min(kPi / dt, std::min(kPi / f.dx(), kPi / f.dy()));
    const int probes = std::min(8, g.ntheta);
    double worst = 0.0;
    for (int p = 0; p < probes; ++p) {
        const int j = p * g.ntheta / probes;
        std::vector<cplx> line(L);
        for (int i = 0; i < g.nt; ++i) line[i] = g.at(i, j);
        line = dft_1d(line, Direction::forward);
        const double c = std::cos(g.theta(j)), s = std::sin(g.theta(j));
        double diff = 0.0, ref = 0.0;
        for (int m = 0; m * dsigma <= limit; ++m) {
            const double sigma = m * dsigma;
            const cplx gh = line[m] * std::polar(dt, -sigma * g.t(0));
            const cplx fh = f_hat(sigma * c, sigma * s);
            diff += std::norm(gh - fh);
            ref += std::norm(fh);
        }
        if (ref > 0.0) worst = std::max(worst, std::sqrt(diff / ref));
        else if (diff > 0.0) worst = std::max(worst, 1.0);
    }
    return worst;
}

}  // namespace tomo
