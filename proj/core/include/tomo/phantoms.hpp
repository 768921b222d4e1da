#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tomo/grids.hpp"

namespace tomo {

using Point = std::array<double, 2>;

struct Ellipse {
    double cx = 0.0;
    double cy = 0.0;
    double a = 1.0;          // semi-axis along the tilted x direction
    double b = 1.0;          // semi-axis along the tilted y direction
    double tilt = 0.0;       // radians, counter-clockwise
    double intensity = 1.0;  // additive

    bool contains(double x, double y) const;
};

// Ordered, additive ellipse list. Operations taking a set reject an empty one.
using EllipseSet = std::vector<Ellipse>;

struct PointSourceSet {
    std::vector<Point> points;
    std::uint64_t seed = 0;
};

/// Parse "cx cy A B tilt_deg intensity" lines; '#' starts a comment.
EllipseSet parse_ellipses(const std::string& text);
EllipseSet read_ellipses(const std::string& path);

// The 10-ellipse Shepp-Logan head phantom with the original intensities.
EllipseSet shepp_logan();

// Unit disk with intensity 1.
EllipseSet unit_disk();

CartesianImage rasterize(const EllipseSet& set, int n);

/**
 * circ(|x|) on an n by n raster: 1 inside, 0 outside, 1/2 where the pixel
 * center lies within half a pixel diagonal of the unit circle.
 */
CartesianImage circ_phantom(int n);

// `count` points uniform on [-0.3, 0.3]^2, deterministic for a seed.
PointSourceSet point_sources(int count, std::uint64_t seed);

// Unit masses splatted bilinearly onto pixel centers, as a density (mass / pixel area).
CartesianImage rasterize_points(const PointSourceSet& set, int n);

// Backprojection of the Radon transform of delta_a, evaluated at x: 1/|x - a|.
double point_source_psf(const Point& x, const Point& a);

/// The closed form printed for the point-source backprojection:
/// |a| / sqrt((x.a)^2 + (|a|^2 - x.a_perp)^2), a_perp = a rotated by +pi/2.
double point_source_psf_printed(const Point& x, const Point& a);

// J1(w)/w^2, the radial backprojection spectrum of the circ sinogram up to constants.
double circ_bp_spectrum(double omega_norm);

double bessel_j1(double x);
double bessel_i0(double x);
// e^{-|x|} I0(x), safe for large arguments.
double bessel_i0e(double x);

}  // namespace tomo
