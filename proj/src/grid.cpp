#include "iwpp/grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace iwpp {

Image2D::Image2D(std::size_t width, std::size_t height, Intensity fill, Intensity pad_value)
    : width_(width), height_(height), pad_value_(pad_value) {
  if (width == 0 || height == 0) {
    throw std::invalid_argument("Image2D: width and height must be at least 1");
  }
  // The two top values are reserved as sentinels by operators.
  if ((width + 2) * (height + 2) >= std::size_t{kInfinity} - 1) {
    throw std::invalid_argument("Image2D: image too large for 32-bit addressing");
  }
  data_.assign(stride() * padded_height(), pad_value);
  for (std::size_t y = 0; y < height_; ++y) {
    auto row = data_.begin() + static_cast<std::ptrdiff_t>(addr(0, y));
    std::fill(row, row + static_cast<std::ptrdiff_t>(width_), fill);
  }
}

Image2D make_image(std::size_t width, std::size_t height, Intensity fill, Intensity pad_value) {
  return Image2D(width, height, fill, pad_value);
}

Image2D copy_rows(const Image2D& img, std::size_t row_begin, std::size_t rows) {
  if (rows == 0 || row_begin + rows > img.height()) {
    throw std::invalid_argument("copy_rows: row range outside the image");
  }
  Image2D out(img.width(), rows, 0, img.pad_value());
  const auto src = img.data();
  const auto dst = out.data();
  for (std::size_t y = 0; y < rows; ++y) {
    const auto from = src.begin() + img.addr(0, row_begin + y);
    std::copy(from, from + static_cast<std::ptrdiff_t>(img.width()), dst.begin() + out.addr(0, y));
  }
  return out;
}

void paste_rows(Image2D& dst, const Image2D& strip, std::size_t row_begin) {
  if (strip.width() != dst.width() || row_begin + strip.height() > dst.height()) {
    throw std::invalid_argument("paste_rows: strip does not fit");
  }
  const auto src = strip.data();
  const auto out = dst.data();
  for (std::size_t y = 0; y < strip.height(); ++y) {
    const auto from = src.begin() + strip.addr(0, y);
    std::copy(from, from + static_cast<std::ptrdiff_t>(strip.width()), out.begin() + dst.addr(0, row_begin + y));
  }
}

bool Image2D::is_interior(Addr a) const {
  const std::size_t s = stride();
  if (a >= data_.size()) return false;
  const std::size_t row = a / s;
  const std::size_t col = a % s;
  return row >= kPad && row <= height_ && col >= kPad && col <= width_;
}

void Image2D::set_pad_value(Intensity pad) {
  pad_value_ = pad;
  const std::size_t s = stride();
  const std::size_t last_row = padded_height() - 1;
  std::fill_n(data_.begin(), s, pad);
  std::fill_n(data_.begin() + static_cast<std::ptrdiff_t>(last_row * s), s, pad);
  for (std::size_t row = 1; row < last_row; ++row) {
    data_[row * s] = pad;
    data_[row * s + s - 1] = pad;
  }
}

std::vector<Intensity> Image2D::interior() const {
  std::vector<Intensity> out;
  out.reserve(interior_size());
  for (std::size_t y = 0; y < height_; ++y) {
    auto row = data_.begin() + static_cast<std::ptrdiff_t>(addr(0, y));
    out.insert(out.end(), row, row + static_cast<std::ptrdiff_t>(width_));
  }
  return out;
}

Image2D Image2D::from_interior(std::size_t width, std::size_t height,
                               std::span<const Intensity> values, Intensity pad_value) {
  Image2D img(width, height, 0, pad_value);
  if (values.size() != width * height) {
    throw std::invalid_argument("Image2D::from_interior: value count does not match shape");
  }
  for (std::size_t y = 0; y < height; ++y) {
    std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(y * width), width,
                img.data_.begin() + static_cast<std::ptrdiff_t>(img.addr(0, y)));
  }
  return img;
}

bool Image2D::same_interior(const Image2D& other) const {
  if (!same_shape(other)) return false;
  for (std::size_t y = 0; y < height_; ++y) {
    const Addr a = addr(0, y);
    if (!std::equal(data_.begin() + a, data_.begin() + a + static_cast<std::ptrdiff_t>(width_),
                    other.data_.begin() + a)) {
      return false;
    }
  }
  return true;
}

Neighborhood::Neighborhood(Connectivity connectivity, std::size_t stride)
    : connectivity_(connectivity), stride_(stride) {
  const auto s = static_cast<std::ptrdiff_t>(stride);
  if (connectivity == Connectivity::kFour) {
    offsets_ = {-s, -1, 1, s, 0, 0, 0, 0};
    size_ = 4;
  } else {
    offsets_ = {-s - 1, -s, -s + 1, -1, 1, s - 1, s, s + 1};
    size_ = 8;
  }
}

std::vector<Addr> neighbors_of(const Image2D& img, Addr a, const Neighborhood& nb) {
  IWPP_EXPECTS(img.is_interior(a), "neighbors_of: address is not an interior pixel");
  std::vector<Addr> out;
  out.reserve(nb.size());
  for (std::ptrdiff_t d : nb.offsets()) out.push_back(static_cast<Addr>(a + d));
  return out;
}

ScanRange::ScanRange(const Image2D& img, bool forward, std::size_t row_begin,
                     std::size_t row_end) {
  row_end = std::min(row_end, img.height());
  if (row_begin >= row_end) return;
  begin_.width_ = img.width();
  begin_.forward_ = forward;
  begin_.remaining_ = (row_end - row_begin) * img.width();
  if (forward) {
    begin_.addr_ = img.addr(0, row_begin);
    begin_.col_ = 0;
  } else {
    begin_.addr_ = img.addr(img.width() - 1, row_end - 1);
    begin_.col_ = img.width() - 1;
  }
}

}  // namespace iwpp
