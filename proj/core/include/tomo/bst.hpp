#pragma once

#include <vector>

#include "tomo/grids.hpp"

namespace tomo {

enum class DcMode { subtract_mean, kernel_cap };

struct BstOptions {
    double beta = 8.0;      // Kaiser-Bessel shape; 0 disables the window
    double zero_pad = 2.0;  // z: each line is padded to next_pow2(z * nt) samples
    DcMode dc_mode = DcMode::subtract_mean;
    int n_out = 0;          // output size; 0 means nt
    int oversample = 1;     // cartesian frequency grid refinement
    double dc_profile_width = 0.25;
};

// Frozen global scale of the engine, calibrated against the naive backprojector.
inline constexpr double kBstScale = 2.0 * kPi;

/// w_i = I0(beta sqrt(1 - ((2i - ns + 1)/(ns - 1))^2)) / I0(beta), i = 0..ns-1.
std::vector<double> kaiser_window(int ns, double beta);

// Right half of the same window at relative position u in [0, 1]; 1/I0(beta) beyond.
double kaiser_profile(double beta, double u);

// K_0 = 1/dsigma, K_m = 1/(m dsigma).
std::vector<double> sigma_kernel(int nsigma, double dsigma);

/**
 * Backprojection through the slice theorem: per-angle DFT of the full line,
 * 1/sigma kernel, bilinear polar-to-cartesian gridding, inverse 2D DFT.
 */
CartesianImage bst_backproject(const Sinogram& g, const BstOptions& opts);

/**
 * Samples of the continuous spectrum of B g on the engine's cartesian frequency
 * grid (domain side 4, oversampled), including the analytic term for the
 * subtracted per-angle mean. The omega = 0 bin holds the regularized DC value only.
 */
FrequencyImage bst_spectrum(const Sinogram& g, const BstOptions& opts);

/**
 * Refit the global scale: constant sinogram through the engine at unit scale,
 * least squares against backproject_naive on pixels with |x| <= 0.9.
 */
double calibrate_bst_scale(int n, int ntheta);

/**
 * Max over up to 8 probe angles of the relative L2 distance between the 1D DFT of
 * g(., theta) and the bilinearly interpolated radial slice of the 2D DFT of f,
 * for sigma below half the Nyquist frequency. Padding 4 keeps the bilinear
 * interpolation ahead of spectra oscillating with period ~pi (unit-disk support).
 */
double fst_consistency(const CartesianImage& f, const Sinogram& g, double zero_pad = 4.0);

}  // namespace tomo
