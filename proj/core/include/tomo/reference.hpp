#pragma once

#include "tomo/grids.hpp"

namespace tomo {

/**
 * Pixel-driven backprojection b(x) = dtheta * sum_k g(x . xi_k, theta_k),
 * linear interpolation in t, reads outside the t grid are 0. Cost O(n^2 ntheta).
 */
CartesianImage backproject_naive(const Sinogram& g, int n);

/**
 * Backprojection as an average over circles through the origin:
 * b(x) = 1/2 * 2 pi/m * sum_k [g]_c(x/2 + |x|/2 xi_k), where [g]_c(y) is the value
 * of the line with normal y/|y| at offset |y|. m = 0 selects 4 * ntheta.
 */
CartesianImage backproject_circles(const Sinogram& g, int n, int m = 0);

// g(t, theta_j) -> g(t, theta_{j + j0}), flipping t for columns that wrap past pi.
Sinogram rotate_sinogram(const Sinogram& g, int j0);

/**
 * |<R f, g> - <f, B g>| / (|f| |g|) with R = radon_numeric (step dx/2) and
 * B = backproject_naive. Inner products and norms are Riemann sums.
 */
double adjointness_gap(const CartesianImage& f, const Sinogram& g);

}  // namespace tomo
