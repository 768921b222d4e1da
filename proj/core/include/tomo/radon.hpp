#pragma once

#include <cstdint>

#include "tomo/grids.hpp"
#include "tomo/phantoms.hpp"

namespace tomo {

struct NoiseSpec {
    double photon_scale = 1e6;  // mean counts per unit of sinogram value
    std::uint64_t seed = 0;
};

// Exact line integrals of an ellipse set on the standard sinogram grid.
Sinogram radon_ellipses(const EllipseSet& set, int nt, int ntheta);

/**
 * Point sources as unit masses. Each delta is sampled as a normalized Gaussian of
 * standard deviation width_dt * dt (at most 3 cells), normalized on the grid; width_dt = 0 splits the mass linearly between
 * the two nearest t nodes instead.
 */
Sinogram radon_points(const PointSourceSet& set, int nt, int ntheta, double width_dt = 1.0);

/**
 * Ray integration of bilinear image samples along x = t xi + q xi_perp,
 * q in [-sqrt 2, sqrt 2], midpoint rule with spacing at most `step`.
 * Requires step <= min(dx, dy)/2.
 */
Sinogram radon_numeric(const CartesianImage& img, int nt, int ntheta, double step);

/**
 * g(t - xi_theta . delta, theta) by linear interpolation in t.
 * Logs a warning when more than 1e-3 of the absolute mass leaves the grid;
 * the relative loss is stored in *mass_loss when given.
 */
Sinogram shift_sinogram(const Sinogram& g, const Point& delta, double* mass_loss = nullptr);

// Poisson(photon_scale * g) / photon_scale per sample, one counter-based stream per (seed, i, j).
Sinogram add_poisson_noise(const Sinogram& g, const NoiseSpec& spec);

}  // namespace tomo
