#pragma once

#include <cstddef>
#include <cstdint>

#include "iwpp/grid.hpp"

namespace iwpp {

/// Name of the generator behind every synthetic fixture.
inline constexpr const char* kRngName = "mt19937_64";

struct TissueParams {
  std::size_t width = 256;
  std::size_t height = 256;
  double coverage = 50.0;  // percent of foreground pixels
  std::size_t blobs = 12;
  std::uint64_t seed = 1;
};

/// Synthetic "tissue" image on 0..255: blobs grow one ring at a time around
/// random centers, round-robin, until the requested share of pixels is
/// foreground (the last ring is cut off at the exact count). Each blob has a
/// base brightness in 96..255 and every pixel subtracts noise in 0..63,
/// never reaching 0. Background is 0. Deterministic for equal parameters.
/// Throws std::invalid_argument for coverage outside [0, 100].
Image2D generate_tissue(const TissueParams& params);

/// max(I - h, 0): the usual marker for peak extraction under mask I.
Image2D lowered_marker(const Image2D& mask, Intensity h);

/// 0 where `img` is 0, 1 elsewhere.
Image2D binarize(const Image2D& img);

/// Share of non-zero interior pixels, in percent.
double coverage_percent(const Image2D& img);

}  // namespace iwpp
