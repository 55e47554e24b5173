#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "iwpp/grid.hpp"

namespace iwpp {

/// Malformed or truncated image data; offset() is the byte where parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct PgmImage {
  Image2D image;
  Intensity maxval = 255;
};

/// Reads binary (P5) or ASCII (P2) PGM. 16-bit P5 samples are big-endian.
/// The returned image has a zero frame.
PgmImage read_pgm(std::span<const std::byte> bytes);
/// Writes P5; values above maxval are rejected with std::invalid_argument.
std::vector<std::byte> write_pgm(const Image2D& img, Intensity maxval);
std::vector<std::byte> write_pgm_ascii(const Image2D& img, Intensity maxval);

// Raw dump: "IW2D", u32 width, u32 height, u32 reserved, then width*height
// little-endian u32 interior values, row-major.
std::vector<std::byte> write_raw(const Image2D& img);
Image2D read_raw(std::span<const std::byte> bytes);

std::vector<std::byte> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::byte> bytes);

/// Loads .raw files as IW2D dumps and anything else as PGM (raw maxval is
/// the largest interior value, at least 1).
PgmImage load_image(const std::filesystem::path& path);

}  // namespace iwpp
