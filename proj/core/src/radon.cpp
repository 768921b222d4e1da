#include "tomo/radon.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "tomo/parallel.hpp"

namespace tomo {

namespace {

// splitmix64: a counter-based generator, so each sample owns an independent stream.
class SplitMix64 {
public:
    using result_type = std::uint64_t;
    explicit SplitMix64(std::uint64_t state) : state_(state) {}
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
    SplitMix64 a(seed);
    SplitMix64 b(a() ^ (i * 0xD1B54A32D192ED03ull));
    SplitMix64 c(b() ^ (j * 0x8CB92BA72F3D8DD7ull));
    return c();
}

}  // namespace

Sinogram radon_ellipses(const EllipseSet& set, int nt, int ntheta) {
    if (set.empty()) throw std::invalid_argument("radon_ellipses: empty ellipse set");
    Sinogram g(nt, ntheta);
    parallel_for(0, ntheta, [&](int j) {
        const double th = g.theta(j);
        const double c = std::cos(th), s = std::sin(th);
        double* col = g.angle(j);
        for (const auto& e : set) {
            const double ct = std::cos(th - e.tilt), st = std::sin(th - e.tilt);
            const double w2 = e.a * e.a * ct * ct + e.b * e.b * st * st;
            const double shift = e.cx * c + e.cy * s;
            const double scale = 2.0 * e.intensity * e.a * e.b / w2;
            for (int i = 0; i < nt; ++i) {
                const double tau = g.t(i) - shift;
                const double d = w2 - tau * tau;
                if (d > 0.0) col[i] += scale * std::sqrt(d);
            }
        }
    });
    return g;
}

Sinogram radon_points(const PointSourceSet& set, int nt, int ntheta, double width_dt) {
    if (!(width_dt >= 0.0 && width_dt <= 3.0)) throw std::invalid_argument("radon_points: width must be in [0, 3] cells");
    Sinogram g(nt, ntheta);
    const double dt = g.dt();
    const double w = width_dt * dt;
    const int reach = static_cast<int>(std::ceil(8.0 * width_dt)) + 1;
    parallel_for(0, ntheta, [&](int j) {
        const double c = std::cos(g.theta(j)), s = std::sin(g.theta(j));
        double* col = g.angle(j);
        for (const auto& p : set.points) {
            const double u = (p[0] * c + p[1] * s + g.t_max) / dt;
            const int i = static_cast<int>(std::floor(u));
            if (w == 0.0) {
                const double f = u - i;
                if (i >= 0 && i < nt) col[i] += (1.0 - f) / dt;
                if (i + 1 >= 0 && i + 1 < nt) col[i + 1] += f / dt;
                continue;
            }
            // Weights normalized on the grid so each point keeps unit mass per angle.
            double wk[64];
            double sum = 0.0;
            const int k0 = i - reach, k1 = i + reach;
            for (int k = k0; k <= k1; ++k) {
                const double d = (k - u) * dt;
                sum += wk[k - k0] = std::exp(-0.5 * d * d / (w * w));
            }
            for (int k = std::max(0, k0); k <= std::min(nt - 1, k1); ++k) col[k] += wk[k - k0] / (sum * dt);
        }
    });
    return g;
}

Sinogram radon_numeric(const CartesianImage& img, int nt, int ntheta, double step) {
    img.validate();
    if (!(step > 0.0) || step > 0.5 * std::min(img.dx(), img.dy()) * (1.0 + 1e-12))
        throw std::invalid_argument("radon_numeric: step must be in (0, min(dx, dy)/2]");
    Sinogram g(nt, ntheta);
    const double qmax = std::sqrt(2.0);
    const int nq = static_cast<int>(std::ceil(2.0 * qmax / step - 1e-9));
    const double h = 2.0 * qmax / nq;
    parallel_for(0, ntheta, [&](int j) {
        const double c = std::cos(g.theta(j)), s = std::sin(g.theta(j));
        double* col = g.angle(j);
        for (int i = 0; i < nt; ++i) {
            const double t = g.t(i);
            double acc = 0.0;
            for (int k = 0; k < nq; ++k) {
                const double q = -qmax + (k + 0.5) * h;
                acc += sample_image(img, t * c - q * s, t * s + q * c);
            }
            col[i] = acc * h;
        }
    });
    return g;
}

Sinogram shift_sinogram(const Sinogram& g, const Point& delta, double* mass_loss) {
    g.validate();
    Sinogram out(g.nt, g.ntheta, g.t_max);
    parallel_for(0, g.ntheta, [&](int j) {
        const double off = std::cos(g.theta(j)) * delta[0] + std::sin(g.theta(j)) * delta[1];
        double* col = out.angle(j);
        for (int i = 0; i < g.nt; ++i) col[i] = sample_t(g, g.t(i) - off, j);
    });
    double before = 0.0, after = 0.0;
    for (double v : g.values) before += std::abs(v);
    for (double v : out.values) after += std::abs(v);
    const double loss = before > 0.0 ? std::max(0.0, (before - after) / before) : 0.0;
    if (mass_loss) *mass_loss = loss;
    if (loss > 1e-3)
        spdlog::warn("shift_sinogram: shift ({}, {}) clips the support, relative mass loss {:.3g}",
                     delta[0], delta[1], loss);
    return out;
}

Sinogram add_poisson_noise(const Sinogram& g, const NoiseSpec& spec) {
    g.validate();
    if (!(spec.photon_scale > 0.0))
        throw std::invalid_argument("add_poisson_noise: photon_scale must be positive");
    const double lo = *std::min_element(g.values.begin(), g.values.end());
    const double offset = lo < 0.0 ? -lo : 0.0;
    if (offset > 0.0)
        spdlog::warn("add_poisson_noise: sinogram has negative values, shifted by {:.6g} for sampling",
                     offset);
    Sinogram out(g.nt, g.ntheta, g.t_max);
    parallel_for(0, g.ntheta, [&](int j) {
        for (int i = 0; i < g.nt; ++i) {
            const double mean = spec.photon_scale * (g.at(i, j) + offset);
            double v = 0.0;
            if (mean > 0.0) {
                SplitMix64 rng(stream_key(spec.seed, static_cast<std::uint64_t>(i),
                                          static_cast<std::uint64_t>(j)));
                std::poisson_distribution<long long> draw(mean);
                v = static_cast<double>(draw(rng)) / spec.photon_scale;
            }
            out.at(i, j) = v - offset;
        }
    });
    return out;
}

}  // namespace tomo
