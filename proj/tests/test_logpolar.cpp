#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tomo/logpolar.hpp"
#include "tomo/metrics.hpp"
#include "tomo/phantoms.hpp"
#include "tomo/radon.hpp"
#include "tomo/reference.hpp"

using namespace tomo;

namespace {

// Pixels with 2 e^{rho0} < |x| <= 1.
std::vector<bool> annulus(int n, double fovea) {
    CartesianImage img(n, n);
    std::vector<bool> m(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double r = std::hypot(img.x(i), img.y(j));
            m[static_cast<std::size_t>(j) * n + i] = r > 2.0 * fovea && r <= 1.0;
        }
    return m;
}

}  // namespace

TEST(LogPolarKernel, Examples) {
    const int nrho = 40, nphi = 64;
    const double drho = 0.05;
    const auto k = make_logpolar_kernel(nrho, nphi, drho);
    auto at = [&](int i, int j) { return k[static_cast<std::size_t>(i) * nphi + j]; };
    EXPECT_DOUBLE_EQ(at(0, nphi / 2), 1.0 / drho);  // rho lag 0, theta = 0
    const int quarter = nphi / 2 + nphi / 4;          // theta = pi/2
    for (int i = 0; i < nrho; ++i) EXPECT_EQ(at(i, quarter), 0.0);
}

TEST(LogPolarKernel, SupportAcrossNrhoDoubling) {
    const double rho0 = -4.0;
    auto count = [&](int nrho, int nphi) {
        int c = 0;
        for (double v : make_logpolar_kernel(nrho, nphi, -rho0 / nrho)) c += v != 0.0;
        return c;
    };
    for (int nrho : {100, 200, 400}) {
        const double ratio = static_cast<double>(count(2 * nrho, 256)) / count(nrho, 256);
        EXPECT_GE(ratio, 0.5);
        EXPECT_LE(ratio, 2.0);
    }
    // The band |e^rho cos(theta) - 1| <= drho is about one rho cell thick, so each
    // theta column near the curve holds one cell: the count follows nphi.
    for (int nphi : {128, 512, 2048}) EXPECT_NEAR(count(400, nphi), nphi, 0.05 * nphi);
}

TEST(LogPolarConvolve, MatchesDirectSum) {
    const int nrho = 16, nphi = 16;
    LogPolarImage l(nrho, nphi, -1.2);
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g(0.0, 1.0);
    for (double& v : l.values) v = g(rng);
    const LogPolarImage out = logpolar_convolve(l, 2);
    const auto ref = oracle::logpolar_direct(l.values, nrho, nphi, l.drho());
    double num = 0.0, den = 0.0;
    for (std::size_t q = 0; q < ref.size(); ++q) {
        num += std::pow(out.values[q] - ref[q], 2);
        den += ref[q] * ref[q];
    }
    ASSERT_GT(den, 0.0);
    EXPECT_LE(std::sqrt(num / den), 1e-10);
}

TEST(LogPolarConvolve, Linear) {
    LogPolarImage a(24, 32, -2.0), b(24, 32, -2.0), c(24, 32, -2.0);
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t q = 0; q < a.values.size(); ++q) {
        a.values[q] = g(rng);
        b.values[q] = g(rng);
        c.values[q] = -1.5 * a.values[q] + b.values[q];
    }
    const auto ca = logpolar_convolve(a), cb = logpolar_convolve(b), cc = logpolar_convolve(c);
    double num = 0.0, den = 0.0;
    for (std::size_t q = 0; q < cc.values.size(); ++q) {
        const double lin = -1.5 * ca.values[q] + cb.values[q];
        num += std::pow(cc.values[q] - lin, 2);
        den += lin * lin;
    }
    EXPECT_LE(std::sqrt(num / den), 1e-10);
}

TEST(LogPolar, MeshReproducesWorkedExample) {
    const LogPolarMesh m = logpolar_mesh(Sinogram(1024, 16), 1024, LogPolarOptions{});
    EXPECT_EQ(m.nrho, 3546);
    EXPECT_NEAR(m.rho0, -std::log(1024.0), 1e-12);
    EXPECT_EQ(m.nphi, 32);
}

TEST(LogPolar, MeshStepNeverExceedsDs) {
    for (int nt : {64, 128, 256})
        for (int n : {32, 64, 128}) {
            const LogPolarMesh m = logpolar_mesh(Sinogram(nt, 32), n, LogPolarOptions{});
            EXPECT_LE(1.0 - std::exp(-m.drho()), m.ds * (1 + 1e-9));
            EXPECT_LE(m.drho(), 2.0 * m.ds);
        }
    LogPolarOptions o;
    o.rho0 = -3.0;
    const LogPolarMesh m = logpolar_mesh(Sinogram(128, 32), 64, o);
    EXPECT_EQ(m.rho0, -3.0);
    EXPECT_EQ(m.nrho, static_cast<int>(std::ceil(-3.0 / std::log(1.0 - 2.0 / 128))));
    o.nrho_override = 10;
    EXPECT_THROW(logpolar_mesh(Sinogram(128, 32), 64, o), std::invalid_argument);
}

TEST(LogPolar, RejectsNonNegativeRho0) {
    LogPolarOptions o;
    o.rho0 = 0.5;
    try {
        logpolar_backproject(Sinogram(64, 32), o, 64);
        FAIL() << "expected invalid_argument";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("rho0 must be negative"), std::string::npos);
    }
}

TEST(LogPolar, ZeroInZeroOut) {
    for (double v : logpolar_backproject(Sinogram(64, 90), LogPolarOptions{}, 64).values) EXPECT_EQ(v, 0.0);
    for (double v : partial_backproject(Sinogram(64, 90), default_sectors(), 64).values) EXPECT_EQ(v, 0.0);
}

TEST(LogPolar, Linearity) {
    const Sinogram a = radon_ellipses(shepp_logan(), 64, 90), b = radon_ellipses(unit_disk(), 64, 90);
    Sinogram c(64, 90);
    for (std::size_t q = 0; q < c.values.size(); ++q) c.values[q] = 2.0 * a.values[q] - 0.7 * b.values[q];
    const LogPolarOptions o;
    const CartesianImage fa = logpolar_backproject(a, o, 64), fb = logpolar_backproject(b, o, 64),
                         fc = logpolar_backproject(c, o, 64);
    CartesianImage lin(64, 64);
    for (std::size_t q = 0; q < lin.values.size(); ++q) lin.values[q] = 2.0 * fa.values[q] - 0.7 * fb.values[q];
    EXPECT_LE(relative_l2(fc, lin), 1e-10);
}

TEST(LogPolar, MatchesNaiveAwayFromFovea) {
    for (auto [n, nth] : {std::pair{64, 90}, std::pair{128, 180}}) {
        const Sinogram gs[3] = {radon_ellipses(shepp_logan(), n, nth), radon_ellipses(unit_disk(), n, nth),
                                radon_points(point_sources(50, 1), n, nth)};
        for (const Sinogram& g : gs) {
            const LogPolarResult r = logpolar_backproject_full(g, LogPolarOptions{}, n);
            const double e =
                relative_l2_masked(r.image, backproject_naive(g, n), annulus(n, r.mesh.fovea_radius()));
            EXPECT_LE(e, 8e-2) << "n " << n;
        }
    }
}

TEST(LogPolar, OutputVanishesOutsideUnitDisk) {
    const LogPolarResult r = logpolar_backproject_full(radon_ellipses(shepp_logan(), 64, 90), LogPolarOptions{}, 64);
    for (int j = 0; j < 64; ++j)
        for (int i = 0; i < 64; ++i)
            if (std::hypot(r.image.x(i), r.image.y(j)) > 1.0) EXPECT_EQ(r.image.at(i, j), 0.0);
}

TEST(LogPolar, TruncationBoundArithmetic) {
    EXPECT_NEAR(truncation_error_bound(-std::log(1024.0), 1.0), 2.0 * kPi / (1024.0 * 1024.0), 1e-18);
    EXPECT_NEAR(truncation_error_bound(-std::log(1024.0), 1.0), 5.99e-6, 1e-8);
    EXPECT_NEAR(truncation_error_bound(-3.0 - std::log(2.0), 2.0) / truncation_error_bound(-3.0, 2.0), 0.25, 1e-14);
    EXPECT_LT(truncation_error_bound(-60.0, 1.0), 1e-50);
    EXPECT_THROW(truncation_error_bound(-1.0, -1.0), std::invalid_argument);
}

TEST(LogPolar, MeasuredTruncationWithinBound) {
    const int n = 128;
    const Sinogram g = radon_ellipses(unit_disk(), n, 180);
    for (double rho0 : {adaptive_rho0(n, n), -2.0, -3.0}) {
        LogPolarOptions a, b;
        a.rho0 = rho0;
        b.rho0 = rho0 - std::log(2.0);
        const LogPolarResult ra = logpolar_backproject_full(g, a, n), rb = logpolar_backproject_full(g, b, n);
        double d2 = 0.0, c = 0.0;
        const double cell = ra.image.dx() * ra.image.dy();
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                d2 += std::pow(ra.image.at(i, j) - rb.image.at(i, j), 2) * cell;
                if (std::hypot(ra.image.x(i), ra.image.y(j)) <= 2.0 * std::exp(rho0) + ra.image.dx())
                    c = std::max(c, std::abs(rb.image.at(i, j)));
            }
        for (int i = 0; i < rb.logpolar.nrho && std::exp(rb.logpolar.rho(i)) <= 2.0 * std::exp(rho0); ++i)
            for (int k = 0; k < rb.logpolar.nphi; ++k) c = std::max(c, std::abs(rb.logpolar.at(i, k)));
        EXPECT_LE(d2, truncation_error_bound(rho0, c)) << "rho0 " << rho0;
    }
}

TEST(Partial, DefaultSectors) {
    const auto s = default_sectors();
    ASSERT_EQ(s.size(), 4u);
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(s[k].theta0, k * kPi / 4, 1e-15);
        EXPECT_NEAR(s[k].beta, kPi / 8, 1e-15);
        EXPECT_EQ(s[k].a_r, 0.25);
    }
}

TEST(Partial, SingleSectorReproducesLogPolar) {
    const int n = 64;
    const Sinogram g = radon_ellipses(shepp_logan(), n, 90);
    const LogPolarResult full = logpolar_backproject_full(g, LogPolarOptions{}, n);
    const CartesianImage p = partial_backproject(g, {Sector{0.0, kPi / 2, 0.25}}, n);
    EXPECT_LE(relative_l2_masked(p, full.image, annulus(n, full.mesh.fovea_radius())), 5e-2);
    LogPolarOptions o;
    o.sector = Sector{0.0, kPi / 2, 0.25};
    EXPECT_EQ(logpolar_backproject(g, o, n).values, p.values);
}

TEST(Partial, FourSectorsMatchNaive) {
    const int n = 64;
    const Sinogram g = radon_ellipses(shepp_logan(), n, 90);
    const LogPolarResult full = logpolar_backproject_full(g, LogPolarOptions{}, n);
    const CartesianImage p = partial_backproject(g, default_sectors(), n);
    EXPECT_LE(relative_l2_masked(p, backproject_naive(g, n), annulus(n, full.mesh.fovea_radius())), 8e-2);
}

TEST(Partial, PointSourceProfile) {
    const int n = 128;
    PointSourceSet ps;
    ps.points = {{0.3, 0.0}};
    const CartesianImage p = partial_backproject(radon_points(ps, n, 180), default_sectors(), n);
    double worst = 0.0;
    int probes = 0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if (std::abs(p.y(j)) > p.dy()) continue;  // the two pixel rows along the ray
            const double d = std::hypot(p.x(i) - 0.3, p.y(j));
            if (d < 0.1 || d > 0.4) continue;
            worst = std::max(worst, std::abs(p.at(i, j) * d - 1.0));
            ++probes;
        }
    EXPECT_GT(probes, 10);
    EXPECT_LE(worst, 0.1);
}

TEST(Partial, Validation) {
    const Sinogram g = radon_ellipses(unit_disk(), 64, 90);
    EXPECT_THROW(partial_backproject(g, {}, 64), std::invalid_argument);
    EXPECT_THROW(partial_backproject(g, {Sector{0.0, kPi / 8, 0.25}}, 64), std::invalid_argument);
    EXPECT_THROW(partial_backproject(g, {Sector{0.0, kPi / 2, 0.6}}, 64), std::invalid_argument);
    EXPECT_THROW(partial_backproject(g, {Sector{0.0, 2.0, 0.25}}, 64), std::invalid_argument);
}
