#pragma once

#include <cstddef>

#include "tomo/grids.hpp"

namespace tomo::detail {

/**
 * Bilinear gridding of ps onto columns [0, ncols) of an nx by ny frequency grid.
 * Row j starts at out + j*row_stride. The omega = 0 bin takes the ray-average of row 0.
 * Caller guarantees ps reaches past the largest grid radius.
 */
void grid_polar(const PolarSpectrum& ps, int nx, int ny, double period, int ncols, cplx* out,
                std::size_t row_stride);

// Largest radius of the nx by ny frequency grid for a domain of side `period`.
double grid_max_radius(int nx, int ny, double period);

}  // namespace tomo::detail
