#pragma once

#include <vector>

#include "tomo/grids.hpp"

namespace tomo {

// mean((a - b)^2)
double mse(const CartesianImage& a, const CartesianImage& b);

// |a - b|_2 / |b|_2; 0 when both vanish, infinity when only b vanishes.
double relative_l2(const CartesianImage& a, const CartesianImage& b);

/**
 * Spectral energy of a above `fraction` of the Nyquist radius:
 * sum of |A_k|^2 / (nx ny) over DFT bins with |k| / (n/2) > fraction.
 */
double hf_energy(const CartesianImage& a, double fraction);

// Anisotropic total variation, sum of absolute forward differences times the cell side.
double total_variation(const CartesianImage& a);

// relative_l2 over pixels where mask is true.
double relative_l2_masked(const CartesianImage& a, const CartesianImage& b,
                          const std::vector<bool>& mask);

}  // namespace tomo
