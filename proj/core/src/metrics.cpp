#include "tomo/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tomo/dft.hpp"

namespace tomo {

namespace {

void check_dims(const CartesianImage& a, const CartesianImage& b) {
    if (a.nx != b.nx || a.ny != b.ny)
        throw std::invalid_argument("metrics: dimension mismatch " + std::to_string(a.nx) + "x" +
                                    std::to_string(a.ny) + " vs " + std::to_string(b.nx) + "x" +
                                    std::to_string(b.ny));
}

double ratio(double num, double den) {
    if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::sqrt(num / den);
}

}  // namespace

double mse(const CartesianImage& a, const CartesianImage& b) {
    check_dims(a, b);
    double s = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        const double d = a.values[k] - b.values[k];
        s += d * d;
    }
    return s / static_cast<double>(a.values.size());
}

double relative_l2(const CartesianImage& a, const CartesianImage& b) {
    check_dims(a, b);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        const double d = a.values[k] - b.values[k];
        num += d * d;
        den += b.values[k] * b.values[k];
    }
    return ratio(num, den);
}

double relative_l2_masked(const CartesianImage& a, const CartesianImage& b,
                          const std::vector<bool>& mask) {
    check_dims(a, b);
    if (mask.size() != a.values.size()) throw std::invalid_argument("metrics: mask size mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        if (!mask[k]) continue;
        const double d = a.values[k] - b.values[k];
        num += d * d;
        den += b.values[k] * b.values[k];
    }
    return ratio(num, den);
}

double hf_energy(const CartesianImage& a, double fraction) {
    a.validate();
    if (!(fraction >= 0.0 && fraction <= 1.0)) throw std::invalid_argument("hf_energy: fraction must lie in [0, 1]");
    std::vector<cplx> data(a.values.begin(), a.values.end());
    data = dft_2d(data, a.nx, a.ny, Direction::forward);
    const double n = static_cast<double>(a.values.size());
    double e = 0.0;
    for (int j = 0; j < a.ny; ++j) {
        const double ky = signed_index(j, a.ny) / (0.5 * a.ny);
        for (int i = 0; i < a.nx; ++i) {
            const double kx = signed_index(i, a.nx) / (0.5 * a.nx);
            if (std::hypot(kx, ky) > fraction) e += std::norm(data[static_cast<std::size_t>(j) * a.nx + i]);
        }
    }
    return e / n;
}

double total_variation(const CartesianImage& a) {
    a.validate();
    double tv = 0.0;
    for (int j = 0; j < a.ny; ++j)
        for (int i = 0; i < a.nx; ++i) {
            if (i + 1 < a.nx) tv += std::abs(a.at(i + 1, j) - a.at(i, j)) * a.dy();
            if (j + 1 < a.ny) tv += std::abs(a.at(i, j + 1) - a.at(i, j)) * a.dx();
        }
    return tv;
}

}  // namespace tomo
