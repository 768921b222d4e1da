#include "tomo/filtered.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spectral.hpp"
#include "tomo/bst.hpp"
#include "tomo/dft.hpp"
#include "tomo/logpolar.hpp"
#include "tomo/parallel.hpp"
#include "tomo/radon.hpp"
#include "tomo/reference.hpp"

namespace tomo {

void FilterSpec::validate() const {
    if (!(lambda >= 0.0)) throw std::invalid_argument("filter: lambda must be >= 0");
    if (!(cutoff > 0.0 && cutoff <= 1.0)) throw std::invalid_argument("filter: cutoff must lie in (0, 1]");
    if (padding < 1) throw std::invalid_argument("filter: padding must be >= 1");
}

double filter_response(double sigma, const FilterSpec& spec, double dt) {
    const double a = std::abs(sigma);
    if (a > spec.cutoff * kPi / dt * (1.0 + 1e-12)) return 0.0;
    if (spec.kind == FilterKind::ramp) return a;
    return a / (1.0 + spec.lambda * a);
}

Sinogram filter_sinogram(const Sinogram& g, const FilterSpec& spec) {
    g.validate();
    spec.validate();
    const int nt = g.nt, nth = g.ntheta;
    const double dt = g.dt();
    int L = next_pow2(spec.padding * nt);
    if ((L - nt) % 2 != 0) L *= 2;
    const int s0 = (L - nt) / 2;

    std::vector<double> h(L);
    for (int m = 1; m < L; ++m) h[m] = filter_response(2.0 * kPi * signed_index(m, L) / (L * dt), spec, dt);

    auto buf = detail::alloc_complex(static_cast<std::size_t>(L) * nth);
    cplx* d = buf.get();
    std::fill(d, d + static_cast<std::size_t>(L) * nth, cplx{});
    for (int j = 0; j < nth; ++j)
        for (int i = 0; i < nt; ++i) d[static_cast<std::size_t>(j) * L + s0 + i] = g.at(i, j);
    detail::fft_lines(d, L, nth, -1);
    for (int j = 0; j < nth; ++j)
        for (int m = 0; m < L; ++m) d[static_cast<std::size_t>(j) * L + m] *= h[m] / L;
    detail::fft_lines(d, L, nth, +1);

    Sinogram out(L, nth, 0.5 * L * dt);
    for (int j = 0; j < nth; ++j)
        for (int i = 0; i < L; ++i) out.at(i, j) = d[static_cast<std::size_t>(j) * L + i].real();
    return out;
}

CartesianImage fbp(const Sinogram& g, const FilterSpec& spec, Engine engine, int n) {
    const Sinogram q = filter_sinogram(g, spec);
    CartesianImage img;
    switch (engine) {
        case Engine::naive:
            img = backproject_naive(q, n);
            break;
        case Engine::bst: {
            BstOptions opts;
            opts.beta = 0.0;
            opts.zero_pad = 1.0;
            opts.oversample = 2;
            opts.n_out = n;
            img = bst_backproject(q, opts);
            break;
        }
        case Engine::logpolar:
            img = logpolar_backproject(q, LogPolarOptions{}, n);
            break;
    }
    for (double& v : img.values) v /= kFbpScale;
    return img;
}

CartesianImage regularized_fst_reconstruct(const Sinogram& g, double lambda, int n) {
    g.validate();
    if (!(lambda >= 0.0)) throw std::invalid_argument("regularized_fst_reconstruct: lambda must be >= 0");
    if (n < 2) throw std::invalid_argument("regularized_fst_reconstruct: n must be >= 2");
    if (g.nt % 2 != 0) throw std::invalid_argument("regularized_fst_reconstruct: nt must be even");
    const int os = 2;
    const double dt = g.dt();
    const int L = next_pow2(8 * g.nt);
    const detail::LineSpectra ls = detail::line_spectra(detail::full_lines(g), g.nt, g.ntheta, dt, L);
    const double nyq = kPi / dt;
    const int rows = detail::rows_needed(n, os, ls.dsigma);
    const PolarSpectrum ps = detail::polar_spectrum(ls, rows, [&](double sigma) {
        if (sigma == 0.0) return 1.0;
        // Frequency actually seen by a filter sampled on the t grid.
        const double folded = std::abs(std::fmod(sigma + nyq, 2.0 * nyq) - nyq);
        return detail::linear_transfer(sigma, dt) * folded / (1.0 + lambda * folded) / sigma;
    });
    return detail::invert_polar(ps, n, os, 1.0);
}

double normal_equations_residual(const CartesianImage& f, const Sinogram& g, double lambda) {
    f.validate();
    g.validate();
    if (f.nx != f.ny) throw std::invalid_argument("normal_equations_residual: square image required");
    if (!(lambda >= 0.0)) throw std::invalid_argument("normal_equations_residual: lambda must be >= 0");
    const int n = f.nx;
    const Sinogram rf = radon_numeric(f, g.nt, g.ntheta, 0.5 * f.dx());
    const CartesianImage brf = backproject_naive(rf, n);
    const CartesianImage bg = backproject_naive(g, n);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < bg.values.size(); ++k) {
        const double lhs = brf.values[k] / kFbpScale + lambda * f.values[k];
        const double rhs = bg.values[k] / kFbpScale;
        num += (lhs - rhs) * (lhs - rhs);
        den += rhs * rhs;
    }
    if (den == 0.0) return num == 0.0 ? 0.0 : std::sqrt(num);
    return std::sqrt(num / den);
}

}  // namespace tomo
