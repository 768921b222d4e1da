#include "tomo/bench.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "tomo/bst.hpp"
#include "tomo/filtered.hpp"
#include "tomo/logpolar.hpp"
#include "tomo/metrics.hpp"
#include "tomo/parallel.hpp"
#include "tomo/phantoms.hpp"
#include "tomo/radon.hpp"
#include "tomo/reference.hpp"

namespace tomo {
namespace bench {

const char* method_name(Method m) {
    switch (m) {
        case Method::naive: return "naive";
        case Method::bst: return "bst";
        case Method::logpolar: return "logpolar";
    }
    return "?";
}

Method parse_method(const std::string& name) {
    if (name == "naive") return Method::naive;
    if (name == "bst") return Method::bst;
    if (name == "logpolar") return Method::logpolar;
    throw std::invalid_argument("unknown method '" + name + "' (expected naive, bst or logpolar)");
}

double median_ms(const std::function<void()>& fn, const Timing& t) {
    if (t.repetitions < 1) throw std::invalid_argument("timing: repetitions must be >= 1");
    for (int k = 0; k < t.warmup; ++k) fn();
    std::vector<double> ms;
    for (int k = 0; k < t.repetitions; ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    std::sort(ms.begin(), ms.end());
    const std::size_t m = ms.size();
    return m % 2 ? ms[m / 2] : 0.5 * (ms[m / 2 - 1] + ms[m / 2]);
}

namespace {

CartesianImage run_engine(Method m, const Sinogram& g, int n, double z) {
    switch (m) {
        case Method::naive:
            return backproject_naive(g, n);
        case Method::bst: {
            BstOptions opts;
            opts.zero_pad = z;
            opts.n_out = n;
            return bst_backproject(g, opts);
        }
        case Method::logpolar: {
            LogPolarOptions opts;
            opts.rho_pad = std::max(1, static_cast<int>(std::lround(z)));
            return logpolar_backproject(g, opts, n);
        }
    }
    throw std::logic_error("unreachable");
}

Engine engine_of(Method m) {
    switch (m) {
        case Method::naive: return Engine::naive;
        case Method::bst: return Engine::bst;
        case Method::logpolar: return Engine::logpolar;
    }
    return Engine::naive;
}

double sinogram_rel_error(const Sinogram& a, const Sinogram& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        num += (a.values[k] - b.values[k]) * (a.values[k] - b.values[k]);
        den += b.values[k] * b.values[k];
    }
    return std::sqrt(num / den);
}

}  // namespace

std::vector<BenchRecord> bench_scaling(int k_min, int k_max, const std::vector<Method>& methods,
                                       const Timing& timing, int naive_k_max) {
    if (k_min < 0 || k_max < k_min) throw std::invalid_argument("bench_scaling: bad k range");
    spdlog::info("bench scaling: k = {}..{}, {} threads", k_min, k_max, thread_count());
    const EllipseSet sl = shepp_logan();
    std::vector<BenchRecord> out;
    for (int k = k_min; k <= k_max; ++k) {
        const int n = 256 << k;
        const Sinogram g = radon_ellipses(sl, n, n);
        CartesianImage ref;
        for (Method m : methods) {
            if (m == Method::naive && k > naive_k_max) continue;
            CartesianImage img;
            const double ms = median_ms([&] { img = run_engine(m, g, n, 2.0); }, timing);
            if (ref.values.empty()) ref = m == Method::naive ? img : backproject_naive(g, n);
            BenchRecord r{method_name(m), n, n, 2.0, 0.0, 0, ms, mse(img, ref), relative_l2(img, ref)};
            spdlog::info("  {} N={} {:.1f} ms rel_l2 {:.3g}", r.method, n, ms, r.rel_l2);
            out.push_back(r);
        }
    }
    return out;
}

std::vector<BenchRecord> bench_zero_padding(const std::vector<double>& z_list, const Timing& timing, int n) {
    for (double z : z_list)
        if (!(z >= 1.0)) throw std::invalid_argument("bench_zero_padding: z must be >= 1");
    const Sinogram g = radon_ellipses(shepp_logan(), n, n);
    const CartesianImage ref = backproject_naive(g, n);
    std::vector<BenchRecord> out;
    for (Method m : {Method::bst, Method::logpolar})
        for (double z : z_list) {
            CartesianImage img;
            const double ms = median_ms([&] { img = run_engine(m, g, n, z); }, timing);
            BenchRecord r{method_name(m), n, n, z, 0.0, 0, ms, mse(img, ref), relative_l2(img, ref)};
            spdlog::info("  {} z={} {:.1f} ms rel_l2 {:.3g}", r.method, z, ms, r.rel_l2);
            out.push_back(r);
        }
    return out;
}

double calibrate_photon_scale(double target, int nt, int ntheta, std::uint64_t seed) {
    if (!(target > 0.0 && target < 1.0)) throw std::invalid_argument("noise level must lie in (0, 1)");
    const Sinogram clean = radon_ellipses(shepp_logan(), nt, ntheta);
    auto level = [&](double log_scale) {
        return sinogram_rel_error(add_poisson_noise(clean, NoiseSpec{std::pow(10.0, log_scale), seed}), clean);
    };
    // Error falls roughly like scale^{-1/2}.
    double lo = -2.0, hi = 12.0;
    if (level(lo) < target || level(hi) > target)
        throw std::invalid_argument("noise level " + std::to_string(target) + " is not reachable by photon scaling");
    for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (level(mid) > target) lo = mid;
        else hi = mid;
    }
    return std::pow(10.0, 0.5 * (lo + hi));
}

std::vector<BenchRecord> bench_noise(const std::vector<double>& levels, const std::vector<Method>& methods,
                                     const Timing& timing, int n, int ntheta, std::uint64_t seed) {
    const EllipseSet sl = shepp_logan();
    const Sinogram clean = radon_ellipses(sl, n, ntheta);
    const CartesianImage truth = rasterize(sl, n);
    std::vector<BenchRecord> out;
    for (double level : levels) {
        if (level < 0.0) throw std::invalid_argument("noise level must be >= 0");
        Sinogram g = clean;
        if (level > 0.0) g = add_poisson_noise(clean, NoiseSpec{calibrate_photon_scale(level, n, ntheta, seed), seed});
        for (Method m : methods) {
            CartesianImage img;
            const double ms = median_ms([&] { img = fbp(g, FilterSpec{}, engine_of(m), n); }, timing);
            BenchRecord r{method_name(m), n, ntheta, level, 0.0, seed, ms, mse(img, truth), relative_l2(img, truth)};
            spdlog::info("  {} level={} rel_l2 {:.4g}", r.method, level, r.rel_l2);
            out.push_back(r);
        }
    }
    return out;
}

double complexity_model(Method m, const Sizes& s) {
    auto lg = [](double v) { return std::log2(v); };
    switch (m) {
        case Method::bst:
            if (!(s.ns > 0 && s.nx > 0 && s.ny > 0 && s.ntheta > 0))
                throw std::invalid_argument("complexity_model: sizes must be positive");
            return s.ntheta * s.ns * lg(s.ns) + s.nx * s.ny * (lg(s.nx) + lg(s.ny)) + s.ns * s.ns;
        case Method::logpolar:
            if (!(s.nrho > 0 && s.ntheta > 0)) throw std::invalid_argument("complexity_model: sizes must be positive");
            return s.ntheta * s.nrho * (lg(s.nrho) + lg(s.ntheta)) + 2.0 * s.nrho * s.ntheta;
        case Method::naive:
            if (!(s.nx > 0 && s.ny > 0 && s.ntheta > 0))
                throw std::invalid_argument("complexity_model: sizes must be positive");
            return s.nx * s.ny * s.ntheta;
    }
    return 0.0;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 matching points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double u = std::log2(x[k]), v = std::log2(y[k]);
        sx += u;
        sy += v;
        sxx += u * u;
        sxy += u * v;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void write_csv(const std::vector<BenchRecord>& records, std::ostream& out) {
    out << kCsvHeader << '\n';
    out << std::setprecision(10);
    for (const BenchRecord& r : records)
        out << r.method << ',' << r.n << ',' << r.ntheta << ',' << r.z << ',' << r.lambda << ',' << r.seed << ','
            << r.wall_ms << ',' << r.mse << ',' << r.rel_l2 << '\n';
}

void write_csv(const std::vector<BenchRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_csv(records, out);
}

std::vector<BenchRecord> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error(path + ": unexpected CSV header");
    std::vector<BenchRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream f(line);
        BenchRecord r;
        if (!(f >> r.method >> r.n >> r.ntheta >> r.z >> r.lambda >> r.seed >> r.wall_ms >> r.mse >> r.rel_l2))
            throw std::runtime_error(path + ": malformed row");
        out.push_back(r);
    }
    return out;
}

}  // namespace bench
}  // namespace tomo
