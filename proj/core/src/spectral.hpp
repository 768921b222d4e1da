#pragma once

#include <functional>
#include <vector>

#include "fft.hpp"
#include "tomo/grids.hpp"

namespace tomo::detail {

// Per-angle spectra of full lines t in [-t_max, t_max), padded to L samples.
struct LineSpectra {
    int L = 0;
    int ntheta = 0;
    double dt = 0.0;
    double dsigma = 0.0;
    fftw_buffer<cplx> data;

    const cplx* line(int j) const { return data.get() + static_cast<std::size_t>(j) * L; }
};

// Full lines of g (angle-major, nt samples each) rebuilt from the semi-polar form.
std::vector<double> full_lines(const Sinogram& g);

/// DFT of each line centered in L samples, scaled by dt and phase-shifted so that
/// bin m holds sum_i g(t_i) e^{-i sigma_m t_i} dt with sigma_m = m * 2 pi / (L dt).
LineSpectra line_spectra(const std::vector<double>& lines, int nt, int ntheta, double dt, int L);

/**
 * nsigma rows of the polar spectrum over [0, 2 pi): ray j takes bin m mod L of
 * line j, ray j + ntheta takes bin -m mod L. Each row is multiplied by weight(sigma).
 */
PolarSpectrum polar_spectrum(const LineSpectra& ls, int nsigma,
                             const std::function<double(double)>& weight);

// Image-domain padding of the cartesian grid used by the spectral engines.
inline constexpr int kImagePad = 2;

// Rows the polar spectrum needs to cover an n pixel image at oversampling os.
int rows_needed(int n, int os, double dsigma);

// Grid ps, inverse transform, multiply by `scale`, sample the n by n pixel centers.
CartesianImage invert_polar(const PolarSpectrum& ps, int n, int os, double scale);

// sinc^2(sigma dt / 2): transfer function of linear interpolation.
double linear_transfer(double sigma, double dt);

}  // namespace tomo::detail
