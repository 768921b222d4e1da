#pragma once

#include "tomo/grids.hpp"

namespace tomo {

enum class FilterKind { ramp, tikhonov };

struct FilterSpec {
    double lambda = 0.0;
    FilterKind kind = FilterKind::tikhonov;
    double cutoff = 1.0;  // fraction of the Nyquist frequency pi/dt, in (0, 1]
    int padding = 8;      // each line is zero-padded to next_pow2(padding * nt)

    void validate() const;
};

enum class Engine { naive, bst, logpolar };

// Global scale between backprojection of the filtered sinogram and the image.
inline constexpr double kFbpScale = 2.0 * kPi;

/// |sigma| / (1 + lambda |sigma|) (or |sigma| for ramp) below cutoff * pi / dt, else 0.
double filter_response(double sigma, const FilterSpec& spec, double dt);

/**
 * Per-angle filtering by DFT. The result keeps the whole padded line:
 * nt_out = next_pow2(padding * nt) samples with the input centered, so
 * t_max_out = nt_out * dt / 2 and the ramp tails outside [-1, 1] are retained.
 */
Sinogram filter_sinogram(const Sinogram& g, const FilterSpec& spec);

// Backprojection of filter_sinogram(g, spec) by the chosen engine, divided by kFbpScale.
CartesianImage fbp(const Sinogram& g, const FilterSpec& spec, Engine engine, int n);

/**
 * Direct Fourier inversion with f^(sigma xi) = g^(sigma, theta) / (1 + lambda sigma),
 * gridded onto the cartesian frequency grid and inverse transformed.
 * Beyond the Nyquist frequency of t the weight follows the aliased sampled
 * frequency, and the linear-interpolation transfer is applied, so lambda = 0
 * reproduces fbp with the ramp filter.
 */
CartesianImage regularized_fst_reconstruct(const Sinogram& g, double lambda, int n);

/**
 * |(B~ R f + lambda f) - B~ g| / |B~ g| with B~ = backproject_naive / (2 pi) and
 * R = radon_numeric on the grid of g. With this scaling the continuum solution
 * has spectrum g^ / (1 + lambda sigma), the output of regularized_fst_reconstruct.
 * Returns 0 when B~ g and the residual both vanish.
 */
double normal_equations_residual(const CartesianImage& f, const Sinogram& g, double lambda);

}  // namespace tomo
