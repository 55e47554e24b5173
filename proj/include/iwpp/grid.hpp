#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

#include "iwpp/contract.hpp"

namespace iwpp {

/// Linear address of a cell in the padded, row-major buffer of an Image2D.
using Addr = std::uint32_t;
using Intensity = std::uint32_t;

/// Unassigned / unbounded marker (all ones).
inline constexpr Intensity kInfinity = 0xFFFFFFFFu;

/// Which way an operator moves cell values: up (dilation-like) or down.
enum class Direction { kMax, kMin };

struct Coord {
  std::size_t x = 0;
  std::size_t y = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
};

/// Row-major 2D grid of 32-bit cells surrounded by a one-cell frame.
///
/// Interior pixel (x, y) lives at (y + 1) * stride() + (x + 1) with
/// stride() == width() + 2. The frame holds pad_value() and lets every
/// interior cell add a constant neighbor offset without bounds checks.
class Image2D {
 public:
  static constexpr std::size_t kPad = 1;

  Image2D() = default;
  /// Throws std::invalid_argument on a zero dimension.
  Image2D(std::size_t width, std::size_t height, Intensity fill = 0,
          Intensity pad_value = 0);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t stride() const { return width_ + 2 * kPad; }
  std::size_t padded_height() const { return height_ + 2 * kPad; }
  std::size_t interior_size() const { return width_ * height_; }
  Intensity pad_value() const { return pad_value_; }
  bool empty() const { return data_.empty(); }

  std::span<Intensity> data() { return data_; }
  std::span<const Intensity> data() const { return data_; }

  Addr addr(std::size_t x, std::size_t y) const {
    return static_cast<Addr>((y + kPad) * stride() + (x + kPad));
  }
  Coord coords(Addr a) const {
    const std::size_t s = stride();
    return {a % s - kPad, a / s - kPad};
  }
  bool is_interior(Addr a) const;

  Intensity& operator[](Addr a) { return data_[a]; }
  Intensity operator[](Addr a) const { return data_[a]; }
  Intensity& at(std::size_t x, std::size_t y) { return data_[addr(x, y)]; }
  Intensity at(std::size_t x, std::size_t y) const { return data_[addr(x, y)]; }

  /// Rewrites every frame cell with `pad`.
  void set_pad_value(Intensity pad);

  /// Interior values, row-major, without the frame.
  std::vector<Intensity> interior() const;
  /// Builds an image from row-major interior values.
  static Image2D from_interior(std::size_t width, std::size_t height,
                               std::span<const Intensity> values,
                               Intensity pad_value = 0);

  bool same_shape(const Image2D& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }
  /// Equal shape and equal interior; frames are ignored.
  bool same_interior(const Image2D& other) const;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  Intensity pad_value_ = 0;
  std::vector<Intensity> data_;
};

Image2D make_image(std::size_t width, std::size_t height, Intensity fill,
                   Intensity pad_value);

/// Rows [row_begin, row_begin + rows) as a standalone image with its own
/// frame. Shares the stride, so a cell moves by row_begin * stride().
Image2D copy_rows(const Image2D& img, std::size_t row_begin, std::size_t rows);
/// Writes the interior of `strip` back over rows starting at row_begin.
void paste_rows(Image2D& dst, const Image2D& strip, std::size_t row_begin);

enum class Connectivity { kFour = 4, kEight = 8 };

/// Constant linear-address offsets of a pixel's neighbors.
///
/// Offsets are sorted ascending, so the first half (negative deltas) are the
/// neighbors preceding a pixel in raster order and the second half follow it.
class Neighborhood {
 public:
  static constexpr std::size_t kMaxSize = 8;

  Neighborhood(Connectivity connectivity, std::size_t stride);
  static Neighborhood of(const Image2D& img, Connectivity connectivity) {
    return Neighborhood(connectivity, img.stride());
  }

  Connectivity connectivity() const { return connectivity_; }
  std::size_t size() const { return size_; }
  std::size_t stride() const { return stride_; }
  std::span<const std::ptrdiff_t> offsets() const { return {offsets_.data(), size_}; }
  std::span<const std::ptrdiff_t> raster_half() const { return {offsets_.data(), size_ / 2}; }
  std::span<const std::ptrdiff_t> anti_raster_half() const {
    return {offsets_.data() + size_ / 2, size_ / 2};
  }

 private:
  Connectivity connectivity_;
  std::size_t stride_;
  std::size_t size_;
  std::array<std::ptrdiff_t, kMaxSize> offsets_{};
};

/// Addresses of the neighbors of an interior pixel. Throws ContractViolation
/// for frame addresses.
std::vector<Addr> neighbors_of(const Image2D& img, Addr a, const Neighborhood& nb);

/// Interior addresses in raster (ascending) or anti-raster (descending) order.
class ScanRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Addr;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    Addr operator*() const { return addr_; }
    iterator& operator++() {
      if (forward_) {
        if (++col_ == width_) {
          col_ = 0;
          addr_ += 3;
        } else {
          ++addr_;
        }
      } else {
        if (col_-- == 0) {
          col_ = width_ - 1;
          addr_ -= 3;
        } else {
          --addr_;
        }
      }
      --remaining_;
      return *this;
    }
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.remaining_ == b.remaining_;
    }

   private:
    friend class ScanRange;
    Addr addr_ = 0;
    std::size_t col_ = 0;
    std::size_t width_ = 0;
    std::size_t remaining_ = 0;
    bool forward_ = true;
  };

  ScanRange(const Image2D& img, bool forward, std::size_t row_begin, std::size_t row_end);

  iterator begin() const { return begin_; }
  iterator end() const { return iterator{}; }

 private:
  iterator begin_;
};

inline ScanRange scan_raster(const Image2D& img) {
  return ScanRange(img, true, 0, img.height());
}
inline ScanRange scan_antiraster(const Image2D& img) {
  return ScanRange(img, false, 0, img.height());
}
/// Scans restricted to interior rows [row_begin, row_end).
inline ScanRange scan_raster(const Image2D& img, std::size_t row_begin, std::size_t row_end) {
  return ScanRange(img, true, row_begin, row_end);
}
inline ScanRange scan_antiraster(const Image2D& img, std::size_t row_begin,
                                 std::size_t row_end) {
  return ScanRange(img, false, row_begin, row_end);
}

}  // namespace iwpp
