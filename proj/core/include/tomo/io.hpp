#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tomo/grids.hpp"
#include "tomo/logpolar.hpp"

namespace tomo {
namespace io {

enum class GridKind : std::uint8_t { cartesian = 0, sinogram = 1, polar = 2, logpolar = 3, spectrum = 4 };
enum class DType : std::uint8_t { real32 = 0, real64 = 1, complex64 = 2, complex128 = 3 };

inline constexpr std::size_t kHeaderBytes = 56;

/**
 * Fixed 56-byte header, all fields little-endian:
 *   0  char[5] "TOMO1"
 *   5  u8      kind
 *   6  u8      dtype
 *   7  char    'L'
 *   8  u64     dim0 (fast axis of the payload)
 *   16 u64     dim1
 *   24 f64[4]  params; params[0] is t_max, s_max, rho0 or dsigma, the rest are 0
 */
struct FileHeader {
    GridKind kind = GridKind::cartesian;
    DType dtype = DType::real64;
    std::uint64_t dim0 = 0;
    std::uint64_t dim1 = 0;
    std::array<double, 4> params{};

    std::size_t element_bytes() const;
    std::size_t payload_bytes() const;
};

using GridObject = std::variant<CartesianImage, Sinogram, PolarSinogram, LogPolarImage, PolarSpectrum>;

class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, std::size_t offset);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

const char* kind_name(GridKind k);
const char* dtype_name(DType d);

FileHeader header_of(const GridObject& obj);
std::string header_json(const FileHeader& h);

// Writes path and the sidecar path with extension .json. Real data as real64, spectra as complex128.
void write_image(const GridObject& obj, const std::string& path);

// Parses header and payload; real32/complex64 payloads are widened.
GridObject read_image(const std::string& path);
FileHeader read_header(const std::string& path);

// Sidecar path: same stem, .json extension.
std::string sidecar_path(const std::string& path);

/**
 * 16-bit binary PGM (P5, big-endian samples, maxval 65535), top row is the
 * largest y. min maps to 0 and max to 65535; a constant image writes zeros.
 */
void export_pgm(const CartesianImage& img, const std::string& path);

/// Sector list: one sector per line as "theta0 [beta [a_r]]" in radians,
/// '#' starts a comment, blank lines are skipped.
std::vector<Sector> parse_sectors(const std::string& text);
std::vector<Sector> read_sectors(const std::string& path);

}  // namespace io
}  // namespace tomo
