#include <cmath>
#include <stdexcept>

#include "tomo/phantoms.hpp"

namespace tomo {

double bessel_j1(double x) {
    if (x == 0.0) return 0.0;
    const double v = std::cyl_bessel_j(1.0, std::abs(x));
    return x < 0.0 ? -v : v;
}

double bessel_i0(double x) { return std::cyl_bessel_i(0.0, std::abs(x)); }

double bessel_i0e(double x) {
    const double ax = std::abs(x);
    if (ax < 500.0) return std::exp(-ax) * bessel_i0(ax);
    // Leading terms of the large-argument expansion.
    const double inv = 1.0 / (8.0 * ax);
    return (1.0 + inv + 9.0 * inv * inv / 2.0) / std::sqrt(2.0 * kPi * ax);
}

double circ_bp_spectrum(double omega_norm) {
    if (!(omega_norm > 0.0)) throw std::domain_error("circ_bp_spectrum: |omega| must be positive");
    return bessel_j1(omega_norm) / (omega_norm * omega_norm);
}

double point_source_psf(const Point& x, const Point& a) {
    const double d = std::hypot(x[0] - a[0], x[1] - a[1]);
    if (d == 0.0) throw std::domain_error("point_source_psf: x coincides with the source");
    return 1.0 / d;
}

double point_source_psf_printed(const Point& x, const Point& a) {
    const double na2 = a[0] * a[0] + a[1] * a[1];
    const Point perp{-a[1], a[0]};
    const double xa = x[0] * a[0] + x[1] * a[1];
    const double xp = x[0] * perp[0] + x[1] * perp[1];
    const double den = std::sqrt(xa * xa + (na2 - xp) * (na2 - xp));
    if (den == 0.0) throw std::domain_error("point_source_psf_printed: singular point");
    return std::sqrt(na2) / den;
}

}  // namespace tomo
