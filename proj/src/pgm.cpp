#include "iwpp/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>

namespace iwpp {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::byte> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  bool at_end() const { return pos_ >= bytes_.size(); }
  char peek() const { return static_cast<char>(bytes_[pos_]); }

  void skip_space_and_comments() {
    while (!at_end()) {
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::uint64_t number(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (value > 0xFFFFFFFFull) throw ParseError(std::string("PGM: ") + what + " too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError(std::string("PGM: expected ") + what, start);
    return value;
  }

 private:
  std::span<const std::byte> bytes_;
  std::size_t pos_ = 0;
};

void append(std::vector<std::byte>& out, const std::string& s) {
  for (char c : s) out.push_back(static_cast<std::byte>(c));
}

void append_u32le(std::vector<std::byte>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFFu));
}

std::uint32_t u32le(std::span<const std::byte> bytes, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= std::to_integer<std::uint32_t>(bytes[at + static_cast<std::size_t>(i)]) << (8 * i);
  }
  return v;
}

void check_maxval(const Image2D& img, Intensity maxval) {
  if (maxval == 0 || maxval > 65535) {
    throw std::invalid_argument("write_pgm: maxval must be in [1, 65535]");
  }
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      if (img.at(x, y) > maxval) {
        throw std::invalid_argument("write_pgm: pixel (" + std::to_string(x) + "," +
                                    std::to_string(y) + ") exceeds maxval");
      }
    }
  }
}

}  // namespace

PgmImage read_pgm(std::span<const std::byte> bytes) {
  HeaderReader in(bytes);
  if (bytes.size() < 2 || static_cast<char>(bytes[0]) != 'P' ||
      (static_cast<char>(bytes[1]) != '5' && static_cast<char>(bytes[1]) != '2')) {
    throw ParseError("PGM: missing P5/P2 magic", 0);
  }
  const bool binary = static_cast<char>(bytes[1]) == '5';
  in.advance(2);
  const std::size_t width_at = in.pos();
  const std::uint64_t width = in.number("width");
  const std::uint64_t height = in.number("height");
  const std::size_t maxval_at = in.pos();
  const std::uint64_t maxval = in.number("maxval");
  if (width == 0 || height == 0) throw ParseError("PGM: zero dimension", width_at);
  if (maxval == 0 || maxval > 65535) throw ParseError("PGM: maxval out of range", maxval_at);

  PgmImage out{Image2D(width, height, 0, 0), static_cast<Intensity>(maxval)};
  Image2D& img = out.image;
  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    if (in.at_end() || !std::isspace(static_cast<unsigned char>(in.peek()))) {
      throw ParseError("PGM: expected whitespace before raster", in.pos());
    }
    in.advance(1);
    const std::size_t sample = maxval > 255 ? 2 : 1;
    const std::size_t need = width * height * sample;
    if (bytes.size() - in.pos() < need) {
      throw ParseError("PGM: truncated raster", bytes.size());
    }
    std::size_t at = in.pos();
    for (std::size_t y = 0; y < height; ++y) {
      for (std::size_t x = 0; x < width; ++x) {
        Intensity v = std::to_integer<Intensity>(bytes[at++]);
        if (sample == 2) v = (v << 8) | std::to_integer<Intensity>(bytes[at++]);
        if (v > maxval) throw ParseError("PGM: sample exceeds maxval", at - sample);
        img.at(x, y) = v;
      }
    }
  } else {
    for (std::size_t y = 0; y < height; ++y) {
      for (std::size_t x = 0; x < width; ++x) {
        in.skip_space_and_comments();
        if (in.at_end()) throw ParseError("PGM: truncated raster", in.pos());
        const std::size_t at = in.pos();
        const std::uint64_t v = in.number("sample");
        if (v > maxval) throw ParseError("PGM: sample exceeds maxval", at);
        img.at(x, y) = static_cast<Intensity>(v);
      }
    }
  }
  return out;
}

std::vector<std::byte> write_pgm(const Image2D& img, Intensity maxval) {
  check_maxval(img, maxval);
  std::vector<std::byte> out;
  append(out, "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n" +
                  std::to_string(maxval) + "\n");
  const bool wide = maxval > 255;
  out.reserve(out.size() + img.interior_size() * (wide ? 2 : 1));
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      const Intensity v = img.at(x, y);
      if (wide) out.push_back(static_cast<std::byte>(v >> 8));
      out.push_back(static_cast<std::byte>(v & 0xFFu));
    }
  }
  return out;
}

std::vector<std::byte> write_pgm_ascii(const Image2D& img, Intensity maxval) {
  check_maxval(img, maxval);
  std::vector<std::byte> out;
  append(out, "P2\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n" +
                  std::to_string(maxval) + "\n");
  for (std::size_t y = 0; y < img.height(); ++y) {
    std::string line;
    for (std::size_t x = 0; x < img.width(); ++x) {
      if (x) line += ' ';
      line += std::to_string(img.at(x, y));
    }
    append(out, line + "\n");
  }
  return out;
}

std::vector<std::byte> write_raw(const Image2D& img) {
  std::vector<std::byte> out;
  out.reserve(16 + 4 * img.interior_size());
  append(out, "IW2D");
  append_u32le(out, static_cast<std::uint32_t>(img.width()));
  append_u32le(out, static_cast<std::uint32_t>(img.height()));
  append_u32le(out, 0);
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) append_u32le(out, img.at(x, y));
  }
  return out;
}

Image2D read_raw(std::span<const std::byte> bytes) {
  if (bytes.size() < 16) throw ParseError("IW2D: truncated header", bytes.size());
  if (static_cast<char>(bytes[0]) != 'I' || static_cast<char>(bytes[1]) != 'W' ||
      static_cast<char>(bytes[2]) != '2' || static_cast<char>(bytes[3]) != 'D') {
    throw ParseError("IW2D: bad magic", 0);
  }
  const std::uint32_t width = u32le(bytes, 4);
  const std::uint32_t height = u32le(bytes, 8);
  if (width == 0 || height == 0) throw ParseError("IW2D: zero dimension", 4);
  const std::size_t need = 16 + std::size_t{4} * width * height;
  if (bytes.size() < need) throw ParseError("IW2D: truncated raster", bytes.size());
  Image2D img(width, height, 0, 0);
  std::size_t at = 16;
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x, at += 4) img.at(x, y) = u32le(bytes, at);
  }
  return img;
}

std::vector<std::byte> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::byte> out(raw.size());
  std::transform(raw.begin(), raw.end(), out.begin(), [](char c) { return static_cast<std::byte>(c); });
  return out;
}

void write_file(const std::filesystem::path& path, std::span<const std::byte> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

PgmImage load_image(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  if (path.extension() == ".raw") {
    Image2D img = read_raw(bytes);
    Intensity maxval = 1;
    for (Intensity v : img.interior()) maxval = std::max(maxval, v);
    return {std::move(img), maxval};
  }
  return read_pgm(bytes);
}

}  // namespace iwpp
