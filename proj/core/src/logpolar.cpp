#include "tomo/logpolar.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fft.hpp"
#include "tomo/dft.hpp"
#include "tomo/parallel.hpp"
#include "tomo/radon.hpp"
#include "tomo/reference.hpp"

namespace tomo {

double LogPolarMesh::fovea_radius() const { return std::exp(rho0); }

LogPolarMesh logpolar_mesh(const Sinogram& g, int n, const LogPolarOptions& opts) {
    g.validate();
    if (n < 2) throw std::invalid_argument("logpolar: n must be >= 2");
    if (g.nt % 2 != 0) throw std::invalid_argument("logpolar: nt must be even");
    if (opts.rho_pad < 1) throw std::invalid_argument("logpolar: rho_pad must be >= 1");

    LogPolarMesh mesh;
    mesh.nphi = 2 * g.ntheta;
    mesh.ds = g.dt();
    if (opts.rho0) {
        if (!(*opts.rho0 < 0.0)) throw std::invalid_argument("rho0 must be negative");
        mesh.rho0 = *opts.rho0;
        mesh.nrho = mesh.ds < 1.0
                        ? std::max(2, static_cast<int>(std::ceil(mesh.rho0 / std::log(1.0 - mesh.ds) - 1e-12)))
                        : 2;
    } else {
        mesh.rho0 = adaptive_rho0(n, n);
        mesh.nrho = compute_nrho(static_cast<int>(std::lround(2.0 / mesh.ds)), n, n);
    }
    if (opts.nrho_override) {
        if (*opts.nrho_override < 2) throw std::invalid_argument("logpolar: nrho must be >= 2");
        mesh.nrho = *opts.nrho_override;
    }
    const double step = 1.0 - std::exp(-mesh.drho());
    if (step > mesh.ds * (1.0 + 1e-9))
        throw std::invalid_argument("logpolar: mesh too coarse, radial step " + std::to_string(step) +
                                    " exceeds ds = " + std::to_string(mesh.ds) + " (nrho = " +
                                    std::to_string(mesh.nrho) + ")");
    return mesh;
}

std::vector<double> make_logpolar_kernel(int nrho, int nphi, double drho) {
    if (nrho < 1 || nphi < 1) throw std::invalid_argument("make_logpolar_kernel: empty mesh");
    if (!(drho > 0.0)) throw std::invalid_argument("make_logpolar_kernel: drho must be positive");
    std::vector<double> k(static_cast<std::size_t>(nrho) * nphi, 0.0);
    const double dphi = 2.0 * kPi / nphi;
    std::vector<double> cs(nphi);
    for (int j = 0; j < nphi; ++j) cs[j] = std::cos(-kPi + j * dphi);
    for (int i = 0; i < nrho; ++i) {
        const double e = std::exp(i * drho);
        for (int j = 0; j < nphi; ++j)
            if (std::abs(e * cs[j] - 1.0) <= drho) k[static_cast<std::size_t>(i) * nphi + j] = 1.0 / drho;
    }
    return k;
}

LogPolarImage logpolar_convolve(const LogPolarImage& l, int rho_pad) {
    l.validate();
    if (rho_pad < 1) throw std::invalid_argument("logpolar_convolve: rho_pad must be >= 1");
    const int nrho = l.nrho, nphi = l.nphi;
    const int lr = next_fast_size(rho_pad * nrho);
    const int half = nphi / 2 + 1;
    const std::size_t stride = 2 * static_cast<std::size_t>(half);
    const std::size_t total = stride * lr;

    auto data = detail::alloc_real(total);
    std::fill(data.get(), data.get() + total, 0.0);
    for (int i = 0; i < nrho; ++i)
        std::copy_n(l.values.data() + static_cast<std::size_t>(i) * nphi, nphi, data.get() + i * stride);
    detail::r2c_2d(data.get(), lr, nphi);

    {
        const std::vector<double> k = make_logpolar_kernel(nrho, nphi, l.drho());
        auto kern = detail::alloc_real(total);
        std::fill(kern.get(), kern.get() + total, 0.0);
        // Column c of the padded kernel holds angle c dphi, so lag 0 sits at column 0.
        for (int i = 0; i < nrho; ++i)
            for (int c = 0; c < nphi; ++c)
                kern[i * stride + c] = k[static_cast<std::size_t>(i) * nphi + (c + nphi / 2) % nphi];
        detail::r2c_2d(kern.get(), lr, nphi);
        cplx* a = reinterpret_cast<cplx*>(data.get());
        const cplx* b = reinterpret_cast<const cplx*>(kern.get());
        const std::size_t nc = static_cast<std::size_t>(lr) * half;
        for (std::size_t q = 0; q < nc; ++q) a[q] *= b[q];
    }
    detail::c2r_2d(data.get(), lr, nphi);

    // Box rule counts each crossing over a band of width 2 drho, hence 1/2.
    const double norm = 0.5 * l.drho() * l.dphi() / (static_cast<double>(lr) * nphi);
    LogPolarImage out(nrho, nphi, l.rho0);
    for (int i = 0; i < nrho; ++i)
        for (int k = 0; k < nphi; ++k) out.at(i, k) = norm * data[i * stride + k];
    return out;
}

LogPolarResult logpolar_backproject_full(const Sinogram& g, const LogPolarOptions& opts, int n) {
    if (opts.sector) {
        LogPolarResult r;
        r.mesh = logpolar_mesh(g, n, opts);
        r.image = partial_backproject(g, {*opts.sector}, n, opts.rho_pad);
        return r;
    }
    LogPolarResult r;
    r.mesh = logpolar_mesh(g, n, opts);
    const PolarSinogram p = sinogram_to_semipolar(g);
    const LogPolarImage l = semipolar_to_logpolar(p, r.mesh.rho0, r.mesh.nrho);
    r.logpolar = logpolar_convolve(l, opts.rho_pad);
    r.image = logpolar_to_cartesian(r.logpolar, n, n);
    spdlog::debug("logpolar: rho0 {:.4f}, nrho {}, nphi {}, fovea {:.4g}", r.mesh.rho0, r.mesh.nrho,
                  r.mesh.nphi, r.mesh.fovea_radius());
    return r;
}

CartesianImage logpolar_backproject(const Sinogram& g, const LogPolarOptions& opts, int n) {
    return logpolar_backproject_full(g, opts, n).image;
}

double truncation_error_bound(double rho0, double c) {
    if (!(c >= 0.0)) throw std::invalid_argument("truncation_error_bound: c must be >= 0");
    return 2.0 * kPi * c * c * std::exp(2.0 * rho0);
}

std::vector<Sector> default_sectors() {
    std::vector<Sector> s;
    for (int k = 0; k < 4; ++k) s.push_back(Sector{k * kPi / 4.0, kPi / 8.0, 0.25});
    return s;
}

namespace {

// Distance between two directions modulo pi.
double angle_gap(double a, double b) {
    double d = std::fmod(std::abs(a - b), kPi);
    return std::min(d, kPi - d);
}

// g_r(t/a_r, theta) on round(nt/a_r) nodes over the same t range.
Sinogram rescale_sinogram(const Sinogram& g, double a_r) {
    const int nt = 2 * static_cast<int>(std::lround(0.5 * g.nt / a_r));
    Sinogram out(nt, g.ntheta, g.t_max);
    parallel_for(0, g.ntheta, [&](int j) {
        for (int i = 0; i < nt; ++i) out.at(i, j) = sample_t(g, out.t(i) / a_r, j);
    });
    return out;
}

}  // namespace

CartesianImage partial_backproject(const Sinogram& g, const std::vector<Sector>& sectors, int n,
                                   int rho_pad) {
    g.validate();
    if (sectors.empty()) throw std::invalid_argument("partial_backproject: no sectors");
    for (const Sector& s : sectors) {
        if (!(s.a_r > 0.0 && s.a_r < 0.5))
            throw std::invalid_argument("partial_backproject: a_r must lie in (0, 1/2)");
        if (!(s.beta > 0.0 && s.beta <= 0.5 * kPi))
            throw std::invalid_argument("partial_backproject: beta must lie in (0, pi/2]");
    }
    const int nth = g.ntheta;
    const double ext = 2.0 * g.dtheta();
    const double tol = 1e-9;
    std::vector<int> count(nth, 0);
    for (int j = 0; j < nth; ++j) {
        bool covered = false;
        for (const Sector& s : sectors) {
            const double d = angle_gap(g.theta(j), s.theta0);
            covered = covered || d <= s.beta + tol;
            if (d <= s.beta + ext + tol) ++count[j];
        }
        if (!covered)
            throw std::invalid_argument("partial_backproject: sectors do not cover angle " +
                                        std::to_string(g.theta(j)));
    }

    CartesianImage out(n, n);
    for (const Sector& s : sectors) {
        const int j0 = static_cast<int>(std::lround(s.theta0 / g.dtheta()));
        const double th0 = j0 * g.dtheta();
        Sinogram gr = rotate_sinogram(g, j0);
        // Column j of gr holds original direction j + j0.
        bool any = false;
        for (int j = 0; j < nth; ++j) {
            const int orig = ((j + j0) % nth + nth) % nth;
            const bool in = angle_gap(g.theta(orig), s.theta0) <= s.beta + ext + tol;
            const double w = in ? 1.0 / count[orig] : 0.0;
            any = any || in;
            double* col = gr.angle(j);
            for (int i = 0; i < gr.nt; ++i) col[i] *= w;
        }
        if (!any) continue;

        const Point d{1.0 - s.a_r, 0.0};
        const Sinogram gs = shift_sinogram(rescale_sinogram(gr, s.a_r), d);
        const int np = static_cast<int>(std::lround(n / s.a_r));
        LogPolarOptions lo;
        lo.rho_pad = rho_pad;
        const LogPolarResult r = logpolar_backproject_full(gs, lo, np);

        const double c = std::cos(th0), sn = std::sin(th0);
        parallel_for(0, n, [&](int j) {
            for (int i = 0; i < n; ++i) {
                const double x = out.x(i), y = out.y(j);
                // y' = a_r R(-theta0) x + d
                const double u = s.a_r * (c * x + sn * y) + d[0];
                const double v = s.a_r * (-sn * x + c * y) + d[1];
                out.at(i, j) += sample_logpolar(r.logpolar, u, v);
            }
        });
    }
    return out;
}

}  // namespace tomo
