#include "tomo/reference.hpp"

#include <cmath>
#include <stdexcept>

#include "tomo/parallel.hpp"
#include "tomo/radon.hpp"

namespace tomo {

CartesianImage backproject_naive(const Sinogram& g, int n) {
    g.validate();
    CartesianImage img(n, n);
    std::vector<double> cs(g.ntheta), sn(g.ntheta);
    for (int k = 0; k < g.ntheta; ++k) {
        cs[k] = std::cos(g.theta(k));
        sn[k] = std::sin(g.theta(k));
    }
    const double inv_dt = 1.0 / g.dt();
    const double dx = img.dx();
    const int nt = g.nt;
    parallel_for(0, n, [&](int j) {
        double* row = &img.at(0, j);
        const double y = img.y(j);
        const double x0 = img.x(0);
        for (int k = 0; k < g.ntheta; ++k) {
            const double* col = g.angle(k);
            // u = (t + t_max)/dt, linear along the row
            double u = (x0 * cs[k] + y * sn[k] + g.t_max) * inv_dt;
            const double du = dx * cs[k] * inv_dt;
            for (int i = 0; i < n; ++i, u += du) {
                const double fu = std::floor(u);
                if (fu < -1.0 || fu > nt - 1) continue;
                const int m = static_cast<int>(fu);
                const double f = u - fu;
                const double lo = m >= 0 ? col[m] : 0.0;
                const double hi = m + 1 < nt ? col[m + 1] : 0.0;
                row[i] += lo + f * (hi - lo);
            }
        }
        const double w = g.dtheta();
        for (int i = 0; i < n; ++i) row[i] *= w;
    });
    return img;
}

CartesianImage backproject_circles(const Sinogram& g, int n, int m) {
    g.validate();
    if (m == 0) m = 4 * g.ntheta;
    if (m < 16) throw std::invalid_argument("backproject_circles: m must be >= 16");
    CartesianImage img(n, n);
    std::vector<double> cs(m), sn(m);
    for (int k = 0; k < m; ++k) {
        cs[k] = std::cos(2.0 * kPi * k / m);
        sn[k] = std::sin(2.0 * kPi * k / m);
    }
    const double w = 0.5 * 2.0 * kPi / m;
    parallel_for(0, n, [&](int j) {
        const double y = img.y(j);
        for (int i = 0; i < n; ++i) {
            const double x = img.x(i);
            const double half_r = 0.5 * std::hypot(x, y);
            double acc = 0.0;
            for (int k = 0; k < m; ++k) {
                const double px = 0.5 * x + half_r * cs[k];
                const double py = 0.5 * y + half_r * sn[k];
                acc += sample_line(g, std::hypot(px, py), std::atan2(py, px));
            }
            img.at(i, j) = w * acc;
        }
    });
    return img;
}

Sinogram rotate_sinogram(const Sinogram& g, int j0) {
    g.validate();
    Sinogram out(g.nt, g.ntheta, g.t_max);
    const int period = 2 * g.ntheta;
    for (int j = 0; j < g.ntheta; ++j) {
        int c = ((j + j0) % period + period) % period;
        const bool flip = c >= g.ntheta;
        if (flip) c -= g.ntheta;
        for (int i = 0; i < g.nt; ++i) out.at(i, j) = flip ? sample_t(g, -g.t(i), c) : g.at(i, c);
    }
    return out;
}

double adjointness_gap(const CartesianImage& f, const Sinogram& g) {
    f.validate();
    g.validate();
    if (f.nx != f.ny) throw std::invalid_argument("adjointness_gap: square image required");
    const double step = 0.5 * std::min(f.dx(), f.dy());
    const Sinogram rf = radon_numeric(f, g.nt, g.ntheta, step);
    const CartesianImage bg = backproject_naive(g, f.nx);
    const double dv = g.dt() * g.dtheta();
    const double du = f.dx() * f.dy();
    double lhs = 0.0, rhs = 0.0, nf = 0.0, ng = 0.0;
    for (std::size_t k = 0; k < g.values.size(); ++k) {
        lhs += rf.values[k] * g.values[k];
        ng += g.values[k] * g.values[k];
    }
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        rhs += f.values[k] * bg.values[k];
        nf += f.values[k] * f.values[k];
    }
    const double norm = std::sqrt(nf * du) * std::sqrt(ng * dv);
    if (norm == 0.0) return 0.0;
    return std::abs(lhs * dv - rhs * du) / norm;
}

}  // namespace tomo
