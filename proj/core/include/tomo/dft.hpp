#pragma once

#include <vector>

#include "tomo/grids.hpp"

namespace tomo {

enum class Direction { forward, inverse };

/**
 * Discrete Fourier transform with kernel e^{-i 2 pi k n / N} for forward.
 * Forward is unnormalized, inverse applies 1/N.
 */
std::vector<cplx> dft_1d(const std::vector<cplx>& signal, Direction dir);

// 2D transform of a row-major nx by ny array (y outer), same conventions.
std::vector<cplx> dft_2d(const std::vector<cplx>& data, int nx, int ny, Direction dir);

// Smallest power of two >= n.
int next_pow2(int n);

// Smallest integer >= n whose only prime factors are 2, 3, 5 and 7.
int next_fast_size(int n);

}  // namespace tomo
