#include "tomo/io.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace tomo {
namespace io {

static_assert(std::endian::native == std::endian::little, "payloads are written in host order");

namespace {

constexpr char kMagic[5] = {'T', 'O', 'M', 'O', '1'};

template <typename T>
void put(std::vector<char>& buf, std::size_t at, T v) {
    std::memcpy(buf.data() + at, &v, sizeof(T));
}

template <typename T>
T get(const std::vector<char>& buf, std::size_t at) {
    T v;
    std::memcpy(&v, buf.data() + at, sizeof(T));
    return v;
}

std::vector<char> read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return std::vector<char>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

FileHeader parse_header(const std::vector<char>& buf) {
    if (buf.size() < kHeaderBytes)
        throw FormatError("file holds " + std::to_string(buf.size()) + " bytes, header needs " +
                              std::to_string(kHeaderBytes),
                          buf.size());
    if (std::memcmp(buf.data(), kMagic, 5) != 0) throw FormatError("bad magic, expected TOMO1", 0);
    FileHeader h;
    const auto kind = static_cast<std::uint8_t>(buf[5]);
    if (kind > 4) throw FormatError("unknown grid kind " + std::to_string(kind), 5);
    h.kind = static_cast<GridKind>(kind);
    const auto dtype = static_cast<std::uint8_t>(buf[6]);
    if (dtype > 3) throw FormatError("unknown dtype " + std::to_string(dtype), 6);
    h.dtype = static_cast<DType>(dtype);
    if (buf[7] != 'L') throw FormatError("unsupported endianness tag, expected 'L'", 7);
    h.dim0 = get<std::uint64_t>(buf, 8);
    h.dim1 = get<std::uint64_t>(buf, 16);
    for (int k = 0; k < 4; ++k) h.params[k] = get<double>(buf, 24 + 8 * k);

    const bool complex_kind = h.kind == GridKind::spectrum;
    const bool complex_type = h.dtype == DType::complex64 || h.dtype == DType::complex128;
    if (complex_kind != complex_type)
        throw FormatError(std::string("dtype ") + dtype_name(h.dtype) + " does not match kind " + kind_name(h.kind), 6);
    constexpr std::uint64_t limit = std::uint64_t{1} << 31;
    if (h.dim0 < 1 || h.dim0 > limit) throw FormatError("dim0 out of range: " + std::to_string(h.dim0), 8);
    if (h.dim1 < 1 || h.dim1 > limit) throw FormatError("dim1 out of range: " + std::to_string(h.dim1), 16);
    return h;
}

template <typename Src>
std::vector<double> widen_real(const char* p, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        Src v;
        std::memcpy(&v, p + k * sizeof(Src), sizeof(Src));
        out[k] = static_cast<double>(v);
    }
    return out;
}

std::vector<double> real_payload(const FileHeader& h, const char* p) {
    const std::size_t count = h.dim0 * h.dim1;
    return h.dtype == DType::real32 ? widen_real<float>(p, count) : widen_real<double>(p, count);
}

std::vector<cplx> complex_payload(const FileHeader& h, const char* p) {
    const std::size_t count = h.dim0 * h.dim1;
    std::vector<cplx> out(count);
    if (h.dtype == DType::complex64) {
        const std::vector<double> parts = widen_real<float>(p, 2 * count);
        for (std::size_t k = 0; k < count; ++k) out[k] = cplx(parts[2 * k], parts[2 * k + 1]);
    } else {
        const std::vector<double> parts = widen_real<double>(p, 2 * count);
        for (std::size_t k = 0; k < count; ++k) out[k] = cplx(parts[2 * k], parts[2 * k + 1]);
    }
    return out;
}

int as_int(std::uint64_t v, std::size_t offset) {
    if (v > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
        throw FormatError("dimension too large", offset);
    return static_cast<int>(v);
}

}  // namespace

FormatError::FormatError(const std::string& what, std::size_t offset)
    : std::runtime_error("format error at byte " + std::to_string(offset) + ": " + what), offset_(offset) {}

std::size_t FileHeader::element_bytes() const {
    switch (dtype) {
        case DType::real32: return 4;
        case DType::real64: return 8;
        case DType::complex64: return 8;
        case DType::complex128: return 16;
    }
    return 0;
}

std::size_t FileHeader::payload_bytes() const { return element_bytes() * dim0 * dim1; }

const char* kind_name(GridKind k) {
    switch (k) {
        case GridKind::cartesian: return "cartesian";
        case GridKind::sinogram: return "sinogram";
        case GridKind::polar: return "polar";
        case GridKind::logpolar: return "logpolar";
        case GridKind::spectrum: return "spectrum";
    }
    return "?";
}

const char* dtype_name(DType d) {
    switch (d) {
        case DType::real32: return "real32";
        case DType::real64: return "real64";
        case DType::complex64: return "complex64";
        case DType::complex128: return "complex128";
    }
    return "?";
}

FileHeader header_of(const GridObject& obj) {
    FileHeader h;
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, CartesianImage>) {
                h.kind = GridKind::cartesian;
                h.dim0 = g.nx;
                h.dim1 = g.ny;
            } else if constexpr (std::is_same_v<T, Sinogram>) {
                h.kind = GridKind::sinogram;
                h.dim0 = g.nt;
                h.dim1 = g.ntheta;
                h.params[0] = g.t_max;
            } else if constexpr (std::is_same_v<T, PolarSinogram>) {
                h.kind = GridKind::polar;
                h.dim0 = g.nodes();
                h.dim1 = g.nphi;
                h.params[0] = g.s_max;
            } else if constexpr (std::is_same_v<T, LogPolarImage>) {
                // rho-major storage: phi is the fast axis
                h.kind = GridKind::logpolar;
                h.dim0 = g.nphi;
                h.dim1 = g.nrho;
                h.params[0] = g.rho0;
            } else {
                h.kind = GridKind::spectrum;
                h.dtype = DType::complex128;
                h.dim0 = g.ntheta;
                h.dim1 = g.nsigma;
                h.params[0] = g.dsigma;
            }
        },
        obj);
    return h;
}

std::string header_json(const FileHeader& h) {
    nlohmann::ordered_json j;
    j["magic"] = "TOMO1";
    j["kind"] = kind_name(h.kind);
    j["dtype"] = dtype_name(h.dtype);
    j["endianness"] = "little";
    j["dims"] = {h.dim0, h.dim1};
    const char* pname = "unused";
    switch (h.kind) {
        case GridKind::cartesian: pname = "extent"; break;
        case GridKind::sinogram: pname = "t_max"; break;
        case GridKind::polar: pname = "s_max"; break;
        case GridKind::logpolar: pname = "rho0"; break;
        case GridKind::spectrum: pname = "dsigma"; break;
    }
    if (h.kind == GridKind::cartesian)
        j["params"] = {{"extent", {-1.0, 1.0}}};
    else
        j["params"] = {{pname, h.params[0]}};
    j["header_bytes"] = kHeaderBytes;
    j["payload_bytes"] = h.payload_bytes();
    return j.dump(2) + "\n";
}

std::string sidecar_path(const std::string& path) {
    return std::filesystem::path(path).replace_extension(".json").string();
}

void write_image(const GridObject& obj, const std::string& path) {
    std::visit([](const auto& g) { g.validate(); }, obj);
    const FileHeader h = header_of(obj);
    std::vector<char> buf(kHeaderBytes + h.payload_bytes());
    std::memcpy(buf.data(), kMagic, 5);
    buf[5] = static_cast<char>(h.kind);
    buf[6] = static_cast<char>(h.dtype);
    buf[7] = 'L';
    put(buf, 8, h.dim0);
    put(buf, 16, h.dim1);
    for (int k = 0; k < 4; ++k) put(buf, 24 + 8 * k, h.params[k]);
    std::visit(
        [&](const auto& g) {
            std::memcpy(buf.data() + kHeaderBytes, g.values.data(), h.payload_bytes());
        },
        obj);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
    std::ofstream side(sidecar_path(path));
    side << header_json(h);
    if (!side) throw std::runtime_error("write failed: " + sidecar_path(path));
}

FileHeader read_header(const std::string& path) { return parse_header(read_all(path)); }

GridObject read_image(const std::string& path) {
    const std::vector<char> buf = read_all(path);
    const FileHeader h = parse_header(buf);
    const std::size_t have = buf.size() - kHeaderBytes;
    if (have != h.payload_bytes())
        throw FormatError("payload holds " + std::to_string(have) + " bytes, expected " +
                              std::to_string(h.payload_bytes()),
                          kHeaderBytes);
    const char* p = buf.data() + kHeaderBytes;
    const int d0 = as_int(h.dim0, 8), d1 = as_int(h.dim1, 16);
    try {
        switch (h.kind) {
            case GridKind::cartesian: {
                CartesianImage img(d0, d1);
                img.values = real_payload(h, p);
                img.validate();
                return img;
            }
            case GridKind::sinogram: {
                Sinogram g(d0, d1, h.params[0]);
                g.values = real_payload(h, p);
                g.validate();
                return g;
            }
            case GridKind::polar: {
                PolarSinogram q(d0 - 1, d1, h.params[0]);
                q.values = real_payload(h, p);
                q.validate();
                return q;
            }
            case GridKind::logpolar: {
                LogPolarImage l(d1, d0, h.params[0]);
                l.values = real_payload(h, p);
                l.validate();
                return l;
            }
            case GridKind::spectrum: {
                PolarSpectrum s(d1, d0, h.params[0]);
                s.values = complex_payload(h, p);
                s.validate();
                return s;
            }
        }
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what(), 8);
    }
    throw FormatError("unknown grid kind", 5);
}

void export_pgm(const CartesianImage& img, const std::string& path) {
    img.validate();
    double lo = img.values[0], hi = img.values[0];
    for (double v : img.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double scale = hi > lo ? 65535.0 / (hi - lo) : 0.0;
    std::ostringstream head;
    head << "P5\n" << img.nx << ' ' << img.ny << "\n65535\n";
    std::string data = head.str();
    data.reserve(data.size() + 2 * img.values.size());
    for (int j = img.ny - 1; j >= 0; --j)
        for (int i = 0; i < img.nx; ++i) {
            const auto v = static_cast<std::uint16_t>(std::lround((img.at(i, j) - lo) * scale));
            data.push_back(static_cast<char>(v >> 8));
            data.push_back(static_cast<char>(v & 0xff));
        }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

std::vector<Sector> parse_sectors(const std::string& text) {
    std::vector<Sector> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::vector<double> v;
        double x;
        while (fields >> x) v.push_back(x);
        if (!fields.eof())
            throw std::invalid_argument("sectors: line " + std::to_string(lineno) + ": not a number");
        if (v.empty()) continue;
        if (v.size() > 3)
            throw std::invalid_argument("sectors: line " + std::to_string(lineno) + ": expected theta0 [beta [a_r]]");
        Sector s;
        s.theta0 = v[0];
        if (v.size() > 1) s.beta = v[1];
        if (v.size() > 2) s.a_r = v[2];
        out.push_back(s);
    }
    if (out.empty()) throw std::invalid_argument("sectors: no sectors given");
    return out;
}

std::vector<Sector> read_sectors(const std::string& path) {
    const std::vector<char> buf = read_all(path);
    return parse_sectors(std::string(buf.begin(), buf.end()));
}

}  // namespace io
}  // namespace tomo
