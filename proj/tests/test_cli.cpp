#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "tomo/io.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "tomo");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = tomo::cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("tomo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, Pipeline) {
    ASSERT_EQ(run({"phantom", "--kind", "shepp-logan", "--n", "64", "--out", path("f.tomo")}).code, 0);
    ASSERT_EQ(run({"radon", "--kind", "shepp-logan", "--analytic", "--nt", "64", "--ntheta", "90", "--out",
                   path("g.tomo")})
                  .code,
              0);
    for (const char* m : {"naive", "bst", "logpolar", "partial", "circles"}) {
        const CliRun r = run({"backproject", "--method", m, "--in", path("g.tomo"), "--out", path(std::string(m) + ".tomo")});
        EXPECT_EQ(r.code, 0) << m << ": " << r.err;
        const auto img = std::get<tomo::CartesianImage>(tomo::io::read_image(path(std::string(m) + ".tomo")));
        EXPECT_EQ(img.nx, 64);
    }
    const CliRun lp = run({"backproject", "--method", "logpolar", "--in", path("g.tomo"), "--out", path("lp.tomo")});
    EXPECT_NE(lp.out.find("nrho"), std::string::npos);

    for (const char* e : {"bst", "fst"}) {
        const CliRun r = run({"fbp", "--engine", e, "--lambda", "0.02", "--in", path("g.tomo"), "--out", path("r.tomo")});
        EXPECT_EQ(r.code, 0) << e << ": " << r.err;
    }
    const CliRun c = run({"compare", "--a", path("r.tomo"), "--b", path("f.tomo")});
    ASSERT_EQ(c.code, 0);
    EXPECT_NE(c.out.find("\"rel_l2\""), std::string::npos);
    EXPECT_EQ(run({"compare", "--a", path("r.tomo"), "--b", path("f.tomo"), "--report", path("rep.json")}).code, 0);
    EXPECT_TRUE(fs::exists(path("rep.json")));
    EXPECT_EQ(run({"export-pgm", "--in", path("f.tomo"), "--out", path("f.pgm")}).code, 0);
    EXPECT_EQ(fs::file_size(path("f.pgm")), std::string("P5\n64 64\n65535\n").size() + 64 * 64 * 2);
}

TEST_F(CliTest, NumericRadonAndNoise) {
    ASSERT_EQ(run({"phantom", "--kind", "circ", "--n", "32", "--out", path("f.tomo")}).code, 0);
    EXPECT_EQ(run({"radon", "--in", path("f.tomo"), "--nt", "32", "--ntheta", "16", "--out", path("g.tomo")}).code, 0);
    EXPECT_EQ(run({"radon", "--kind", "points", "--count", "5", "--noise-scale", "1e4", "--nt", "32", "--ntheta",
                   "16", "--out", path("p.tomo")})
                  .code,
              0);
}

TEST_F(CliTest, PositiveRho0IsAUsageError) {
    ASSERT_EQ(run({"radon", "--kind", "circ", "--analytic", "--nt", "32", "--ntheta", "16", "--out", path("g.tomo")}).code,
              0);
    const CliRun r = run({"backproject", "--method", "logpolar", "--rho0", "0.5", "--in", path("g.tomo"), "--out",
                       path("b.tomo")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("rho0 must be negative"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(path("b.tomo")));
}

TEST_F(CliTest, UsageErrors) {
    const CliRun unknown = run({"backproject", "--bogus"});
    EXPECT_EQ(unknown.code, 2);
    EXPECT_NE(unknown.err.find("--method"), std::string::npos);  // help text
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"phantom", "--kind", "banana", "--out", path("x.tomo")}).code, 2);
    EXPECT_EQ(run({"radon", "--out", path("x.tomo")}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, BadInputFileIsARuntimeError) {
    {
        std::ofstream f(path("junk.tomo"), std::ios::binary);
        f << "not a tomo file at all, definitely longer than the header is.......";
    }
    const CliRun r = run({"backproject", "--in", path("junk.tomo"), "--out", path("b.tomo")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("error"), std::string::npos);
    EXPECT_EQ(run({"backproject", "--in", path("missing.tomo"), "--out", path("b.tomo")}).code, 1);
    // A cartesian file where a sinogram is expected.
    ASSERT_EQ(run({"phantom", "--n", "16", "--out", path("f.tomo")}).code, 0);
    EXPECT_EQ(run({"fbp", "--in", path("f.tomo"), "--out", path("r.tomo")}).code, 2);
}

TEST_F(CliTest, BenchWritesCsv) {
    const CliRun r = run({"bench", "zeropad", "--z", "1,2", "--n", "64", "--reps", "1", "--out-csv", path("z.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream in(path("z.csv"));
    std::string head;
    std::getline(in, head);
    EXPECT_EQ(head, "method,N,Ntheta,z,lambda,seed,wall_ms,mse,rel_l2");
}
