#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "tomo/io.hpp"
#include "tomo/metrics.hpp"
#include "tomo/phantoms.hpp"

using namespace tomo;
namespace fs = std::filesystem;

namespace {

class IoTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("tomo_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::vector<unsigned char> slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void dump(const std::string& p, const std::vector<unsigned char>& bytes) {
    std::ofstream out(p, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

template <typename T>
void fill_random(T& obj, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (auto& v : obj.values) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, cplx>)
            v = {g(rng), g(rng)};
        else
            v = g(rng);
    }
}

}  // namespace

TEST_F(IoTest, RoundTripsAllKinds) {
    CartesianImage c(7, 5);
    Sinogram s(8, 6, 1.5);
    PolarSinogram p(4, 12, 0.75);
    LogPolarImage l(9, 10, -2.5);
    PolarSpectrum sp(5, 8, 0.125);
    fill_random(c, 1);
    fill_random(s, 2);
    fill_random(p, 3);
    fill_random(l, 4);
    fill_random(sp, 5);

    io::write_image(c, path("c.tomo"));
    io::write_image(s, path("s.tomo"));
    io::write_image(p, path("p.tomo"));
    io::write_image(l, path("l.tomo"));
    io::write_image(sp, path("sp.tomo"));

    const auto rc = std::get<CartesianImage>(io::read_image(path("c.tomo")));
    EXPECT_EQ(rc.nx, 7);
    EXPECT_EQ(rc.ny, 5);
    EXPECT_EQ(rc.values, c.values);
    const auto rs = std::get<Sinogram>(io::read_image(path("s.tomo")));
    EXPECT_EQ(rs.nt, 8);
    EXPECT_EQ(rs.ntheta, 6);
    EXPECT_EQ(rs.t_max, 1.5);
    EXPECT_EQ(rs.values, s.values);
    const auto rp = std::get<PolarSinogram>(io::read_image(path("p.tomo")));
    EXPECT_EQ(rp.ns, 4);
    EXPECT_EQ(rp.nphi, 12);
    EXPECT_EQ(rp.s_max, 0.75);
    EXPECT_EQ(rp.values, p.values);
    const auto rl = std::get<LogPolarImage>(io::read_image(path("l.tomo")));
    EXPECT_EQ(rl.nrho, 9);
    EXPECT_EQ(rl.nphi, 10);
    EXPECT_EQ(rl.rho0, -2.5);
    EXPECT_EQ(rl.values, l.values);
    const auto rsp = std::get<PolarSpectrum>(io::read_image(path("sp.tomo")));
    EXPECT_EQ(rsp.nsigma, 5);
    EXPECT_EQ(rsp.ntheta, 8);
    EXPECT_EQ(rsp.dsigma, 0.125);
    EXPECT_EQ(rsp.values, sp.values);
}

TEST_F(IoTest, HeaderLayout) {
    Sinogram s(8, 6);
    io::write_image(s, path("s.tomo"));
    const auto bytes = slurp(path("s.tomo"));
    ASSERT_EQ(bytes.size(), io::kHeaderBytes + 8 * 6 * 8);
    EXPECT_EQ(std::memcmp(bytes.data(), "TOMO1", 5), 0);
    EXPECT_EQ(bytes[5], 1);  // sinogram
    EXPECT_EQ(bytes[6], 1);  // real64
    EXPECT_EQ(bytes[7], 'L');
    std::uint64_t dim0 = 0, dim1 = 0;
    for (int b = 7; b >= 0; --b) {
        dim0 = (dim0 << 8) | bytes[8 + b];
        dim1 = (dim1 << 8) | bytes[16 + b];
    }
    EXPECT_EQ(dim0, 8u);
    EXPECT_EQ(dim1, 6u);
    const io::FileHeader h = io::read_header(path("s.tomo"));
    EXPECT_EQ(h.payload_bytes(), 8u * 6u * 8u);
}

TEST_F(IoTest, SidecarDuplicatesHeader) {
    LogPolarImage l(9, 10, -2.5);
    io::write_image(l, path("l.tomo"));
    EXPECT_EQ(io::sidecar_path(path("l.tomo")), path("l.json"));
    std::ifstream in(path("l.json"));
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j.at("magic"), "TOMO1");
    EXPECT_EQ(j.at("kind"), "logpolar");
    EXPECT_EQ(j.at("dtype"), "real64");
    EXPECT_EQ(j.at("dims")[0], 10);
    EXPECT_EQ(j.at("dims")[1], 9);
}

TEST_F(IoTest, TruncatedPayloadNamesByteCounts) {
    CartesianImage c(4, 4);
    io::write_image(c, path("c.tomo"));
    auto bytes = slurp(path("c.tomo"));
    bytes.resize(bytes.size() - 8);
    dump(path("t.tomo"), bytes);
    try {
        io::read_image(path("t.tomo"));
        FAIL() << "expected FormatError";
    } catch (const io::FormatError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("120"), std::string::npos) << msg;
        EXPECT_NE(msg.find("128"), std::string::npos) << msg;
        EXPECT_EQ(e.offset(), io::kHeaderBytes);
    }
}

TEST_F(IoTest, MalformedHeaderReportsOffset) {
    CartesianImage c(4, 4);
    io::write_image(c, path("c.tomo"));
    const auto good = slurp(path("c.tomo"));
    auto expect_offset = [&](std::size_t at, unsigned char value, std::size_t offset) {
        auto bad = good;
        bad[at] = value;
        dump(path("bad.tomo"), bad);
        try {
            io::read_image(path("bad.tomo"));
            FAIL() << "expected FormatError for byte " << at;
        } catch (const io::FormatError& e) {
            EXPECT_EQ(e.offset(), offset);
        }
    };
    expect_offset(0, 'X', 0);
    expect_offset(5, 9, 5);
    expect_offset(6, 9, 6);
    expect_offset(7, 'B', 7);
    expect_offset(8, 0, 8);  // dim0 = 0
    dump(path("short.tomo"), {good.begin(), good.begin() + 10});
    EXPECT_THROW(io::read_image(path("short.tomo")), io::FormatError);
}

TEST_F(IoTest, NarrowDtypesAreWidened) {
    // Hand-built real32 cartesian file, 2 by 2.
    std::vector<unsigned char> bytes(io::kHeaderBytes, 0);
    std::memcpy(bytes.data(), "TOMO1", 5);
    bytes[5] = 0;
    bytes[6] = 0;
    bytes[7] = 'L';
    bytes[8] = 2;
    bytes[16] = 2;
    const float v[4] = {1.5f, -2.0f, 0.25f, 3.0f};
    const auto* raw = reinterpret_cast<const unsigned char*>(v);
    bytes.insert(bytes.end(), raw, raw + sizeof(v));
    dump(path("f.tomo"), bytes);
    const auto c = std::get<CartesianImage>(io::read_image(path("f.tomo")));
    EXPECT_EQ(c.values, (std::vector<double>{1.5, -2.0, 0.25, 3.0}));
}

TEST_F(IoTest, PgmExport) {
    CartesianImage c(4, 3);
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 4; ++i) c.at(i, j) = (i + 4 * j) / 11.0;
    io::export_pgm(c, path("c.pgm"));
    const auto bytes = slurp(path("c.pgm"));
    const std::string head = "P5\n4 3\n65535\n";
    ASSERT_EQ(bytes.size(), head.size() + 4 * 3 * 2);
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + head.size()), head);
    unsigned maxv = 0;
    for (std::size_t q = head.size(); q < bytes.size(); q += 2) maxv = std::max(maxv, static_cast<unsigned>((bytes[q] << 8u) | bytes[q + 1]));
    EXPECT_EQ(maxv, 65535u);
    // Top row is the largest y: its last pixel holds the maximum.
    const std::size_t top_last = head.size() + 3 * 2;
    EXPECT_EQ((bytes[top_last] << 8u) | bytes[top_last + 1], 65535u);
    // First pixel of the bottom row is the minimum.
    const std::size_t bottom_first = head.size() + 2 * 4 * 2;
    EXPECT_EQ((bytes[bottom_first] << 8u) | bytes[bottom_first + 1], 0u);
}

TEST(Sectors, Parse) {
    const auto s = io::parse_sectors("# sectors\n0.0\n0.785 0.4\n\n1.57 0.4 0.2  # last\n");
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s[0].theta0, 0.0);
    EXPECT_EQ(s[0].beta, kPi / 8);
    EXPECT_EQ(s[1].beta, 0.4);
    EXPECT_EQ(s[2].a_r, 0.2);
    EXPECT_THROW(io::parse_sectors("abc\n"), std::invalid_argument);
    EXPECT_THROW(io::parse_sectors("# only comments\n"), std::invalid_argument);
    EXPECT_THROW(io::parse_sectors("0 1 2 3\n"), std::invalid_argument);
}

TEST(Metrics, Basics) {
    const CartesianImage a = rasterize(shepp_logan(), 32);
    EXPECT_EQ(mse(a, a), 0.0);
    CartesianImage b2 = a;
    for (double& v : b2.values) v *= 2.0;
    EXPECT_NEAR(relative_l2(a, b2), 0.5, 1e-15);
    EXPECT_NEAR(relative_l2(b2, a), 1.0, 1e-15);
    EXPECT_EQ(relative_l2(CartesianImage(4, 4), CartesianImage(4, 4)), 0.0);
    EXPECT_TRUE(std::isinf(relative_l2(a, CartesianImage(32, 32))));
    EXPECT_THROW(mse(a, CartesianImage(16, 16)), std::invalid_argument);

    const CartesianImage flat(16, 16, 3.0);
    EXPECT_NEAR(hf_energy(flat, 0.5), 0.0, 1e-20);
    EXPECT_EQ(total_variation(flat), 0.0);
    EXPECT_NEAR(mse(flat, CartesianImage(16, 16)), 9.0, 1e-15);
}

TEST(Metrics, HfEnergyAndTotalVariation) {
    CartesianImage checker(16, 16);
    for (int j = 0; j < 16; ++j)
        for (int i = 0; i < 16; ++i) checker.at(i, j) = (i + j) % 2 ? 1.0 : -1.0;
    // All energy sits at the Nyquist corner; Parseval gives sum |x|^2.
    EXPECT_NEAR(hf_energy(checker, 0.5), 256.0, 1e-9);
    EXPECT_NEAR(hf_energy(checker, 0.0), 256.0, 1e-9);
    // 15 jumps of 2 per row and column, 16 rows and 16 columns, cell side 1/8.
    EXPECT_NEAR(total_variation(checker), 2.0 * 16 * 15 * 2.0 * (2.0 / 16), 1e-12);
    std::vector<bool> mask(256, false);
    mask[0] = true;
    CartesianImage other = checker;
    other.values[1] = 5.0;
    EXPECT_EQ(relative_l2_masked(other, checker, mask), 0.0);
}
