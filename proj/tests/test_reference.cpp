#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tomo/metrics.hpp"
#include "tomo/phantoms.hpp"
#include "tomo/radon.hpp"
#include "tomo/reference.hpp"

using namespace tomo;

namespace {

CartesianImage sample_field(const oracle::SmoothField& f, int n) {
    CartesianImage img(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) img.at(i, j) = f(img.x(i), img.y(j));
    return img;
}

Sinogram sample_sino(const oracle::SmoothSino& s, int nt, int nth) {
    Sinogram g(nt, nth);
    for (int j = 0; j < nth; ++j)
        for (int i = 0; i < nt; ++i) g.at(i, j) = s(g.t(i), g.theta(j));
    return g;
}

// Asymmetric test object well inside the unit disk.
EllipseSet lopsided() {
    return {Ellipse{0.2, 0.1, 0.35, 0.15, 0.5, 1.0}, Ellipse{-0.3, -0.25, 0.12, 0.2, -0.3, 0.7}};
}

}  // namespace

TEST(Reference, ConstantSinogramGivesPiC) {
    Sinogram g(128, 90);
    for (double& v : g.values) v = 1.75;
    const CartesianImage b = backproject_naive(g, 64);
    for (int j = 0; j < 64; ++j)
        for (int i = 0; i < 64; ++i)
            if (std::hypot(b.x(i), b.y(j)) <= 1.0 - g.dt()) EXPECT_NEAR(b.at(i, j), kPi * 1.75, 1e-10);
}

TEST(Reference, ZeroAndNonnegative) {
    for (double v : backproject_naive(Sinogram(32, 16), 24).values) EXPECT_EQ(v, 0.0);
    for (double v : backproject_circles(Sinogram(32, 16), 24).values) EXPECT_EQ(v, 0.0);
    const Sinogram g = radon_ellipses(unit_disk(), 64, 32);
    for (double v : backproject_naive(g, 48).values) EXPECT_GE(v, 0.0);
}

TEST(Reference, Linearity) {
    const Sinogram a = radon_ellipses(shepp_logan(), 64, 45), b = radon_ellipses(lopsided(), 64, 45);
    Sinogram c(64, 45);
    for (std::size_t q = 0; q < c.values.size(); ++q) c.values[q] = 2.0 * a.values[q] - b.values[q];
    for (int engine = 0; engine < 2; ++engine) {
        auto bp = [&](const Sinogram& g) { return engine ? backproject_circles(g, 32) : backproject_naive(g, 32); };
        const CartesianImage ba = bp(a), bb = bp(b), bc = bp(c);
        CartesianImage lin(32, 32);
        for (std::size_t q = 0; q < lin.values.size(); ++q) lin.values[q] = 2.0 * ba.values[q] - bb.values[q];
        EXPECT_LE(relative_l2(bc, lin), 1e-12);
    }
}

TEST(Reference, CirclesConstantAndValidation) {
    Sinogram g(128, 64);
    for (double& v : g.values) v = 1.0;
    const CartesianImage b = backproject_circles(g, 32);
    for (int j = 0; j < 32; ++j)
        for (int i = 0; i < 32; ++i)
            if (std::hypot(b.x(i), b.y(j)) <= 0.95) EXPECT_NEAR(b.at(i, j), kPi, 1e-10);
    EXPECT_THROW(backproject_circles(g, 32, 8), std::invalid_argument);
}

TEST(Reference, CirclesAgreeWithNaive) {
    const Sinogram g = radon_ellipses(shepp_logan(), 128, 180);
    const CartesianImage a = backproject_naive(g, 128), b = backproject_circles(g, 128, 4 * 180);
    EXPECT_LE(relative_l2(b, a), 3e-2);
    const Sinogram h = radon_ellipses(lopsided(), 128, 180);
    EXPECT_LE(relative_l2(backproject_circles(h, 128), backproject_naive(h, 128)), 3e-2);
}

TEST(Reference, RotationEquivarianceQuarterTurn) {
    const int n = 64, nth = 90;
    const Sinogram g = radon_ellipses(lopsided(), n, nth);
    const CartesianImage b = backproject_naive(g, n);
    const CartesianImage br = backproject_naive(rotate_sinogram(g, nth / 2), n);
    // Shifting the angle axis by pi/2 backprojects f(Q x): br(x, y) = b(-y, x).
    double num = 0.0, den = 0.0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double ref = b.at(n - 1 - j, i);
            num += std::pow(br.at(i, j) - ref, 2);
            den += ref * ref;
        }
    EXPECT_LE(std::sqrt(num / den), 1e-2);
}

TEST(Reference, RotationEquivarianceGeneralAngle) {
    const int n = 128, nth = 180, j0 = 25;
    const double a = j0 * kPi / nth;
    const Sinogram g = radon_ellipses(lopsided(), n, nth);
    const CartesianImage b = backproject_naive(g, n);
    const CartesianImage br = backproject_naive(rotate_sinogram(g, j0), n);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double x = b.x(i), y = b.y(j);
            if (std::hypot(x, y) > 0.9) continue;
            const double ref = sample_image(b, std::cos(a) * x - std::sin(a) * y, std::sin(a) * x + std::cos(a) * y);
            num += std::pow(br.at(i, j) - ref, 2);
            den += ref * ref;
        }
    // One bilinear resampling of b plus the t interpolation of the flipped columns.
    EXPECT_LE(std::sqrt(num / den), 1e-2);
}

TEST(Reference, RotateSinogramWrapsWithFlip) {
    const Sinogram g = radon_ellipses(lopsided(), 64, 8);
    const Sinogram r = rotate_sinogram(g, 3);
    for (int i = 0; i < 64; ++i) {
        EXPECT_EQ(r.at(i, 0), g.at(i, 3));
        EXPECT_EQ(r.at(i, 4), g.at(i, 7));
    }
    // Column 5 holds direction 8, i.e. theta = pi: g(t, pi) = g(-t, 0).
    for (int i = 1; i < 64; ++i) EXPECT_NEAR(r.at(i, 5), g.at(64 - i, 0), 1e-15);
    const Sinogram full = rotate_sinogram(g, 16);
    for (std::size_t q = 0; q < g.values.size(); ++q) EXPECT_EQ(full.values[q], g.values[q]);
}

TEST(Reference, AdjointnessZeroInputs) {
    EXPECT_EQ(adjointness_gap(CartesianImage(16, 16), radon_ellipses(unit_disk(), 16, 12)), 0.0);
    EXPECT_EQ(adjointness_gap(circ_phantom(16), Sinogram(16, 12)), 0.0);
}

TEST(Reference, AdjointnessSmoothPairs) {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const CartesianImage f = sample_field(oracle::SmoothField(100 + s), 64);
        const Sinogram g = sample_sino(oracle::SmoothSino(200 + s), 64, 90);
        EXPECT_LE(adjointness_gap(f, g), 5e-2);
    }
}

TEST(Reference, AdjointnessRefines) {
    // Rough inputs make the discretization mismatch visible.
    std::vector<double> gaps;
    for (int n : {32, 64, 128}) {
        const CartesianImage f = rasterize(lopsided(), n);
        Sinogram g(n, n + n / 2);
        for (int j = 0; j < g.ntheta; ++j)
            for (int i = 0; i < g.nt; ++i) g.at(i, j) = std::abs(g.t(i)) < 0.6 ? 1.0 + std::cos(3 * g.theta(j)) : 0.0;
        gaps.push_back(adjointness_gap(f, g));
    }
    EXPECT_LE(gaps[1], gaps[0] * 1.2);
    EXPECT_LE(gaps[2], gaps[1] * 1.2);
}
