#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace tomo {
namespace bench {

enum class Method { naive, bst, logpolar };

const char* method_name(Method m);
Method parse_method(const std::string& name);

/**
 * One CSV row. For noise runs z holds the target relative error of the input
 * sinogram; elsewhere it is the zero-padding factor.
 */
struct BenchRecord {
    std::string method;
    int n = 0;
    int ntheta = 0;
    double z = 1.0;
    double lambda = 0.0;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;
    double mse = 0.0;
    double rel_l2 = 0.0;
};

struct Timing {
    int repetitions = 5;
    int warmup = 1;
};

// Median wall time in milliseconds of fn over t.repetitions runs after t.warmup untimed runs.
double median_ms(const std::function<void()>& fn, const Timing& t);

/**
 * Backprojection of the Shepp-Logan sinogram with N = 256 * 2^k, nt = ntheta = N,
 * for k in [k_min, k_max]. Naive runs stop at naive_k_max. Errors are against
 * the naive engine at the same size.
 */
std::vector<BenchRecord> bench_scaling(int k_min, int k_max, const std::vector<Method>& methods,
                                       const Timing& timing, int naive_k_max = 2);

// bst zero_pad = z and logpolar rho_pad = round(z), at N = nt = ntheta = n.
std::vector<BenchRecord> bench_zero_padding(const std::vector<double>& z_list, const Timing& timing,
                                            int n = 256);

/**
 * For each target relative error of the sinogram, bisect log10(photon_scale)
 * until Poisson noise reaches it, then run FBP (lambda = 0) with each engine.
 * Errors are against the rasterized Shepp-Logan phantom. Level 0 means no noise.
 */
std::vector<BenchRecord> bench_noise(const std::vector<double>& levels, const std::vector<Method>& methods,
                                     const Timing& timing, int n = 128, int ntheta = 180,
                                     std::uint64_t seed = 1);

// Photon scale whose Poisson noise gives the target relative L2 error on the Shepp-Logan sinogram.
double calibrate_photon_scale(double target, int nt, int ntheta, std::uint64_t seed);

struct Sizes {
    double ns = 0;      // radial samples N_s
    double nx = 0;
    double ny = 0;
    double ntheta = 0;
    double nrho = 0;    // log-polar only
};

/**
 * Predicted operation counts:
 *   bst      N_theta N_s log2 N_s + N_x N_y (log2 N_x + log2 N_y) + N_s^2
 *   logpolar N_theta N_rho (log2 N_rho + log2 N_theta) + 2 N_rho N_theta
 *   naive    N_x N_y N_theta
 */
double complexity_model(Method m, const Sizes& s);

// Least-squares slope of log2(y) against log2(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

inline constexpr const char* kCsvHeader = "method,N,Ntheta,z,lambda,seed,wall_ms,mse,rel_l2";

void write_csv(const std::vector<BenchRecord>& records, std::ostream& out);
void write_csv(const std::vector<BenchRecord>& records, const std::string& path);
std::vector<BenchRecord> read_csv(const std::string& path);

}  // namespace bench
}  // namespace tomo
