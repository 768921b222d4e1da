#include "tomo/phantoms.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "tomo/parallel.hpp"

#include "shepp_logan_table.inc"

namespace tomo {

bool Ellipse::contains(double x, double y) const {
    const double dx = x - cx, dy = y - cy;
    const double c = std::cos(tilt), s = std::sin(tilt);
    const double u = (dx * c + dy * s) / a;
    const double v = (-dx * s + dy * c) / b;
    return u * u + v * v <= 1.0;
}

EllipseSet parse_ellipses(const std::string& text) {
    EllipseSet set;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        double v[6];
        int got = 0;
        while (got < 6 && fields >> v[got]) ++got;
        if (got == 0 && fields.eof()) continue;
        std::string rest;
        if (got != 6 || (fields >> rest))
            throw std::invalid_argument("ellipse table line " + std::to_string(lineno) +
                                        ": expected 6 numbers");
        if (!(v[2] > 0.0 && v[3] > 0.0))
            throw std::invalid_argument("ellipse table line " + std::to_string(lineno) +
                                        ": semi-axes must be positive");
        set.push_back({v[0], v[1], v[2], v[3], v[4] * kPi / 180.0, v[5]});
    }
    return set;
}

EllipseSet read_ellipses(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ellipse table " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_ellipses(ss.str());
}

EllipseSet shepp_logan() {
    static const EllipseSet table = parse_ellipses(kSheppLoganTable);
    return table;
}

EllipseSet unit_disk() { return {Ellipse{0.0, 0.0, 1.0, 1.0, 0.0, 1.0}}; }

CartesianImage rasterize(const EllipseSet& set, int n) {
    if (set.empty()) throw std::invalid_argument("rasterize: empty ellipse set");
    CartesianImage img(n, n);
    parallel_for(0, n, [&](int j) {
        const double y = img.y(j);
        for (int i = 0; i < n; ++i) {
            double v = 0.0;
            for (const auto& e : set)
                if (e.contains(img.x(i), y)) v += e.intensity;
            img.at(i, j) = v;
        }
    });
    return img;
}

CartesianImage circ_phantom(int n) {
    CartesianImage img(n, n);
    const double half_diag = 0.5 * std::hypot(img.dx(), img.dy());
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double r = std::hypot(img.x(i), img.y(j));
            img.at(i, j) = std::abs(r - 1.0) < half_diag ? 0.5 : (r < 1.0 ? 1.0 : 0.0);
        }
    return img;
}

PointSourceSet point_sources(int count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("point_sources: count must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-0.3, 0.3);
    PointSourceSet set;
    set.seed = seed;
    set.points.reserve(count);
    for (int k = 0; k < count; ++k) {
        const double x = uni(rng);
        const double y = uni(rng);
        set.points.push_back({x, y});
    }
    return set;
}

CartesianImage rasterize_points(const PointSourceSet& set, int n) {
    CartesianImage img(n, n);
    const double inv_area = 1.0 / (img.dx() * img.dy());
    for (const Point& p : set.points) {
        const double u = (p[0] + 1.0) / img.dx() - 0.5;
        const double v = (p[1] + 1.0) / img.dy() - 0.5;
        const int i = static_cast<int>(std::floor(u)), j = static_cast<int>(std::floor(v));
        const double fu = u - i, fv = v - j;
        const double w[4] = {(1 - fu) * (1 - fv), fu * (1 - fv), (1 - fu) * fv, fu * fv};
        const int di[4] = {0, 1, 0, 1}, dj[4] = {0, 0, 1, 1};
        for (int k = 0; k < 4; ++k) {
            const int ii = i + di[k], jj = j + dj[k];
            if (ii >= 0 && ii < n && jj >= 0 && jj < n) img.at(ii, jj) += w[k] * inv_area;
        }
    }
    return img;
}

}  // namespace tomo
