#include "cli.hpp"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tomo/bench.hpp"
#include "tomo/bst.hpp"
#include "tomo/filtered.hpp"
#include "tomo/io.hpp"
#include "tomo/logpolar.hpp"
#include "tomo/metrics.hpp"
#include "tomo/phantoms.hpp"
#include "tomo/radon.hpp"
#include "tomo/reference.hpp"

namespace tomo {
namespace cli {

namespace {

// Raised for violated preconditions detected by the tool itself; maps to exit code 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <typename T>
T load_as(const std::string& path, const char* what) {
    io::GridObject obj = io::read_image(path);
    if (auto* p = std::get_if<T>(&obj)) return std::move(*p);
    throw UsageError(path + ": expected a " + what + " file");
}

struct PhantomArgs {
    std::string kind = "shepp-logan";
    int n = 256;
    std::uint64_t seed = 1;
    int count = 50;
    std::string out;
};

struct RadonArgs {
    std::string in;
    std::string kind;
    int nt = 256;
    int ntheta = 180;
    bool analytic = false;
    double noise_scale = 0.0;
    std::uint64_t seed = 1;
    int count = 50;
    std::string out;
};

struct BackprojectArgs {
    std::string method = "bst";
    int n = 0;
    double beta = 8.0;
    double zero_pad = 2.0;
    std::string dc_mode = "subtract-mean";
    std::string rho0 = "auto";
    int nrho = 0;
    int rho_pad = 2;
    std::string sectors;
    std::string in;
    std::string out;
};

struct FbpArgs {
    double lambda = 0.0;
    double cutoff = 1.0;
    std::string engine = "bst";
    int n = 0;
    std::string in;
    std::string out;
};

struct BenchArgs {
    std::string kind;
    std::string out_csv;
    int k_max = 3;
    int naive_k_max = 2;
    int repetitions = 5;
    std::vector<double> z{1, 2, 4, 8};
    std::vector<double> levels{0, 0.01, 0.02, 0.05, 0.1};
    int n = 0;
};

struct CompareArgs {
    std::string a;
    std::string b;
    std::string report;
};

struct ExportArgs {
    std::string in;
    std::string out;
};

std::optional<double> parse_rho0(const std::string& text) {
    if (text == "auto") return std::nullopt;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size()) throw UsageError("--rho0 expects 'auto' or a number, got '" + text + "'");
    if (!(v < 0.0)) throw UsageError("rho0 must be negative");
    return v;
}

int run_phantom(const PhantomArgs& a, std::ostream& out) {
    CartesianImage img;
    if (a.kind == "shepp-logan") img = rasterize(shepp_logan(), a.n);
    else if (a.kind == "circ") img = circ_phantom(a.n);
    else img = rasterize_points(point_sources(a.count, a.seed), a.n);
    io::write_image(img, a.out);
    out << "wrote " << a.kind << " phantom " << a.n << "x" << a.n << " to " << a.out << '\n';
    return 0;
}

int run_radon(const RadonArgs& a, std::ostream& out) {
    if (a.in.empty() == a.kind.empty()) throw UsageError("radon: give exactly one of --in and --kind");
    if (a.analytic && a.kind.empty()) throw UsageError("radon: --analytic needs --kind");
    if (a.noise_scale < 0.0) throw UsageError("radon: --noise-scale must be >= 0");
    Sinogram g;
    if (!a.in.empty()) {
        const CartesianImage img = load_as<CartesianImage>(a.in, "cartesian image");
        g = radon_numeric(img, a.nt, a.ntheta, 0.5 * std::min(img.dx(), img.dy()));
    } else if (a.analytic) {
        if (a.kind == "shepp-logan") g = radon_ellipses(shepp_logan(), a.nt, a.ntheta);
        else if (a.kind == "circ") g = radon_ellipses(unit_disk(), a.nt, a.ntheta);
        else g = radon_points(point_sources(a.count, a.seed), a.nt, a.ntheta);
    } else {
        CartesianImage img;
        if (a.kind == "shepp-logan") img = rasterize(shepp_logan(), a.nt);
        else if (a.kind == "circ") img = circ_phantom(a.nt);
        else img = rasterize_points(point_sources(a.count, a.seed), a.nt);
        g = radon_numeric(img, a.nt, a.ntheta, 0.5 * img.dx());
    }
    if (a.noise_scale > 0.0) g = add_poisson_noise(g, NoiseSpec{a.noise_scale, a.seed});
    io::write_image(g, a.out);
    out << "wrote sinogram " << g.nt << "x" << g.ntheta << " to " << a.out << '\n';
    return 0;
}

int run_backproject(const BackprojectArgs& a, std::ostream& out) {
    const std::optional<double> rho0 = parse_rho0(a.rho0);
    const Sinogram g = load_as<Sinogram>(a.in, "sinogram");
    const int n = a.n > 0 ? a.n : static_cast<int>(std::lround(2.0 / g.dt()));
    CartesianImage img;
    if (a.method == "naive") {
        img = backproject_naive(g, n);
    } else if (a.method == "circles") {
        img = backproject_circles(g, n);
    } else if (a.method == "bst") {
        BstOptions o;
        o.beta = a.beta;
        o.zero_pad = a.zero_pad;
        o.dc_mode = a.dc_mode == "kernel-cap" ? DcMode::kernel_cap : DcMode::subtract_mean;
        o.n_out = n;
        img = bst_backproject(g, o);
    } else if (a.method == "logpolar") {
        LogPolarOptions o;
        o.rho0 = rho0;
        if (a.nrho > 0) o.nrho_override = a.nrho;
        o.rho_pad = a.rho_pad;
        const LogPolarResult r = logpolar_backproject_full(g, o, n);
        out << "log-polar mesh: rho0 " << r.mesh.rho0 << ", nrho " << r.mesh.nrho << ", nphi " << r.mesh.nphi
            << ", fovea radius " << r.mesh.fovea_radius() << '\n';
        img = r.image;
    } else {
        const std::vector<Sector> sectors = a.sectors.empty() ? default_sectors() : io::read_sectors(a.sectors);
        img = partial_backproject(g, sectors, n, a.rho_pad);
    }
    io::write_image(img, a.out);
    out << "wrote " << a.method << " backprojection " << n << "x" << n << " to " << a.out << '\n';
    return 0;
}

int run_fbp(const FbpArgs& a, std::ostream& out) {
    const Sinogram g = load_as<Sinogram>(a.in, "sinogram");
    const int n = a.n > 0 ? a.n : static_cast<int>(std::lround(2.0 / g.dt()));
    CartesianImage img;
    if (a.engine == "fst") {
        img = regularized_fst_reconstruct(g, a.lambda, n);
    } else {
        FilterSpec spec;
        spec.lambda = a.lambda;
        spec.cutoff = a.cutoff;
        const Engine e = a.engine == "naive" ? Engine::naive : a.engine == "logpolar" ? Engine::logpolar : Engine::bst;
        img = fbp(g, spec, e, n);
    }
    io::write_image(img, a.out);
    out << "wrote reconstruction " << n << "x" << n << " (" << a.engine << ", lambda " << a.lambda << ") to "
        << a.out << '\n';
    return 0;
}

int run_bench(const BenchArgs& a, std::ostream& out) {
    bench::Timing timing;
    timing.repetitions = a.repetitions;
    std::vector<bench::BenchRecord> rec;
    if (a.kind == "scaling") {
        rec = bench::bench_scaling(0, a.k_max, {bench::Method::naive, bench::Method::bst, bench::Method::logpolar},
                                   timing, a.naive_k_max);
        for (const char* m : {"naive", "bst", "logpolar"}) {
            std::vector<double> xs, ys;
            for (const auto& r : rec)
                if (r.method == m) {
                    xs.push_back(r.n);
                    ys.push_back(r.wall_ms);
                }
            if (xs.size() >= 2) out << m << " log-log slope " << bench::loglog_slope(xs, ys) << '\n';
        }
    } else if (a.kind == "zeropad") {
        rec = bench::bench_zero_padding(a.z, timing, a.n > 0 ? a.n : 256);
    } else {
        rec = bench::bench_noise(a.levels, {bench::Method::naive, bench::Method::bst, bench::Method::logpolar}, timing,
                                 a.n > 0 ? a.n : 128);
    }
    if (a.out_csv.empty()) bench::write_csv(rec, out);
    else {
        bench::write_csv(rec, a.out_csv);
        out << "wrote " << rec.size() << " rows to " << a.out_csv << '\n';
    }
    return 0;
}

int run_compare(const CompareArgs& a, std::ostream& out) {
    const CartesianImage x = load_as<CartesianImage>(a.a, "cartesian image");
    const CartesianImage y = load_as<CartesianImage>(a.b, "cartesian image");
    nlohmann::ordered_json j;
    j["a"] = a.a;
    j["b"] = a.b;
    j["mse"] = mse(x, y);
    j["rel_l2"] = relative_l2(x, y);
    j["hf_energy_a"] = hf_energy(x, 0.5);
    j["hf_energy_b"] = hf_energy(y, 0.5);
    j["total_variation_a"] = total_variation(x);
    j["total_variation_b"] = total_variation(y);
    const std::string text = j.dump(2) + "\n";
    if (a.report.empty()) out << text;
    else {
        std::ofstream f(a.report);
        if (!f) throw std::runtime_error("cannot write " + a.report);
        f << text;
        out << "mse " << j["mse"].get<double>() << ", rel_l2 " << j["rel_l2"].get<double>() << '\n';
    }
    return 0;
}

int run_export(const ExportArgs& a, std::ostream& out) {
    const CartesianImage img = load_as<CartesianImage>(a.in, "cartesian image");
    io::export_pgm(img, a.out);
    out << "wrote " << a.out << '\n';
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Parallel-beam tomography toolkit: phantoms, projections, backprojection engines, reconstruction"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Debug logging");

    PhantomArgs pa;
    auto* phantom = app.add_subcommand("phantom", "Rasterize a test phantom");
    phantom->add_option("--kind", pa.kind, "Phantom kind")->check(CLI::IsMember({"shepp-logan", "circ", "points"}));
    phantom->add_option("--n", pa.n, "Image size")->check(CLI::Range(2, 1 << 15));
    phantom->add_option("--seed", pa.seed, "Seed for point sources");
    phantom->add_option("--count", pa.count, "Number of point sources")->check(CLI::PositiveNumber);
    phantom->add_option("--out", pa.out, "Output file")->required();

    RadonArgs ra;
    auto* radon = app.add_subcommand("radon", "Compute a sinogram");
    radon->add_option("--in", ra.in, "Input cartesian image (numeric projection)");
    radon->add_option("--kind", ra.kind, "Phantom kind")->check(CLI::IsMember({"shepp-logan", "circ", "points"}));
    radon->add_option("--nt", ra.nt, "Samples per projection")->check(CLI::Range(2, 1 << 15));
    radon->add_option("--ntheta", ra.ntheta, "Projection angles")->check(CLI::Range(1, 1 << 15));
    radon->add_flag("--analytic", ra.analytic, "Exact projections of the phantom (needs --kind)");
    radon->add_option("--noise-scale", ra.noise_scale, "Poisson photon scale, 0 disables noise");
    radon->add_option("--seed", ra.seed, "Seed for noise and point sources");
    radon->add_option("--count", ra.count, "Number of point sources")->check(CLI::PositiveNumber);
    radon->add_option("--out", ra.out, "Output file")->required();

    BackprojectArgs ba;
    auto* bp = app.add_subcommand("backproject", "Backproject a sinogram");
    bp->add_option("--method", ba.method, "Engine")
        ->check(CLI::IsMember({"naive", "circles", "bst", "logpolar", "partial"}));
    bp->add_option("--n", ba.n, "Output size, default 2/dt")->check(CLI::NonNegativeNumber);
    bp->add_option("--beta", ba.beta, "Kaiser-Bessel beta, 0 disables the window");
    bp->add_option("--zero-pad", ba.zero_pad, "Line zero-padding factor z");
    bp->add_option("--dc-mode", ba.dc_mode, "DC handling")->check(CLI::IsMember({"subtract-mean", "kernel-cap"}));
    bp->add_option("--rho0", ba.rho0, "Log-polar rho0: auto or a negative number");
    bp->add_option("--nrho", ba.nrho, "Override the log-polar radial count")->check(CLI::NonNegativeNumber);
    bp->add_option("--rho-pad", ba.rho_pad, "Log-polar rho padding factor")->check(CLI::PositiveNumber);
    bp->add_option("--sectors", ba.sectors, "Sector file for --method partial");
    bp->add_option("--in", ba.in, "Input sinogram")->required();
    bp->add_option("--out", ba.out, "Output file")->required();

    FbpArgs fa;
    auto* fb = app.add_subcommand("fbp", "Filtered or regularized reconstruction");
    fb->add_option("--lambda", fa.lambda, "Regularization weight")->check(CLI::NonNegativeNumber);
    fb->add_option("--cutoff", fa.cutoff, "Low-pass cutoff as a fraction of Nyquist");
    fb->add_option("--engine", fa.engine, "Backprojection engine, or fst for direct Fourier inversion")
        ->check(CLI::IsMember({"naive", "bst", "logpolar", "fst"}));
    fb->add_option("--n", fa.n, "Output size, default 2/dt")->check(CLI::NonNegativeNumber);
    fb->add_option("--in", fa.in, "Input sinogram")->required();
    fb->add_option("--out", fa.out, "Output file")->required();

    BenchArgs ka;
    auto* bench = app.add_subcommand("bench", "Timing and accuracy studies");
    bench->add_option("kind", ka.kind, "scaling, zeropad or noise")
        ->required()
        ->check(CLI::IsMember({"scaling", "zeropad", "noise"}));
    bench->add_option("--out-csv", ka.out_csv, "CSV output, stdout when omitted");
    bench->add_option("--k-max", ka.k_max, "Largest k, N = 256 * 2^k")->check(CLI::Range(0, 4));
    bench->add_option("--naive-k-max", ka.naive_k_max, "Largest k for the naive engine")->check(CLI::Range(0, 4));
    bench->add_option("--reps", ka.repetitions, "Timed repetitions")->check(CLI::PositiveNumber);
    bench->add_option("--z", ka.z, "Zero-padding factors")->delimiter(',');
    bench->add_option("--levels", ka.levels, "Sinogram relative error levels")->delimiter(',');
    bench->add_option("--n", ka.n, "Image size for zeropad and noise")->check(CLI::NonNegativeNumber);

    CompareArgs ca;
    auto* cmp = app.add_subcommand("compare", "Error metrics between two images");
    cmp->add_option("--a", ca.a, "Image")->required();
    cmp->add_option("--b", ca.b, "Reference image")->required();
    cmp->add_option("--report", ca.report, "JSON report path, stdout when omitted");

    ExportArgs ea;
    auto* exp = app.add_subcommand("export-pgm", "Write a 16-bit PGM");
    exp->add_option("--in", ea.in, "Input cartesian image")->required();
    exp->add_option("--out", ea.out, "Output .pgm")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        app.exit(e, out, err);
        return 2;
    }
    spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::warn);

    try {
        if (phantom->parsed()) return run_phantom(pa, out);
        if (radon->parsed()) return run_radon(ra, out);
        if (bp->parsed()) return run_backproject(ba, out);
        if (fb->parsed()) return run_fbp(fa, out);
        if (bench->parsed()) return run_bench(ka, out);
        if (cmp->parsed()) return run_compare(ca, out);
        if (exp->parsed()) return run_export(ea, out);
    } catch (const io::FormatError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace cli
}  // namespace tomo
