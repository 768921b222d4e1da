#pragma once

#include <cstddef>
#include <memory>

#include "tomo/grids.hpp"

namespace tomo::detail {

struct FftwFree {
    void operator()(void* p) const;
};

template <typename T>
using fftw_buffer = std::unique_ptr<T[], FftwFree>;

fftw_buffer<double> alloc_real(std::size_t n);
fftw_buffer<cplx> alloc_complex(std::size_t n);

// In-place batched transform of `howmany` contiguous lines of length n. sign: -1 forward, +1 backward.
void fft_lines(cplx* data, int n, int howmany, int sign);

// In-place 2D complex transform, n0 rows of n1 contiguous samples.
void fft_2d(cplx* data, int n0, int n1, int sign);

// In-place 2D real transforms; buf holds n0 rows of 2*(n1/2+1) doubles.
void r2c_2d(double* buf, int n0, int n1);
void c2r_2d(double* buf, int n0, int n1);

}  // namespace tomo::detail
