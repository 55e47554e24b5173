#include "iwpp/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace iwpp {

namespace {

struct Blob {
  std::int64_t cx = 0;
  std::int64_t cy = 0;
  Intensity base = 0;
};

/// Smallest r with r * r >= d2.
std::uint32_t ring_of(std::uint64_t d2) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(d2)));
  while (r * r < d2) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= d2) --r;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

Image2D generate_tissue(const TissueParams& params) {
  if (!(params.coverage >= 0.0 && params.coverage <= 100.0)) {
    throw std::invalid_argument("coverage must lie in [0, 100]");
  }
  if (params.blobs == 0 && params.coverage > 0.0) throw std::invalid_argument("need at least one blob");
  const std::size_t w = params.width;
  const std::size_t h = params.height;
  Image2D img(w, h, 0, 0);
  std::mt19937_64 rng(params.seed);

  std::vector<Blob> blobs(params.blobs);
  for (Blob& b : blobs) {
    b.cx = static_cast<std::int64_t>(rng() % w);
    b.cy = static_cast<std::int64_t>(rng() % h);
    b.base = 96 + static_cast<Intensity>(rng() % 160);
  }
  std::vector<Intensity> noise(w * h);
  for (Intensity& n : noise) n = static_cast<Intensity>(rng() % 64);

  const std::size_t total = w * h;
  const auto target = static_cast<std::size_t>(std::llround(params.coverage / 100.0 * static_cast<double>(total)));
  if (target == 0) return img;

  // Round-robin ring growth paints pixels in order of (ring, blob, raster
  // position), where ring is the rounded-up distance to the nearest center.
  struct Cell {
    std::uint32_t ring;
    std::uint32_t blob;
    std::uint32_t index;
  };
  std::vector<Cell> cells(total);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      std::uint64_t best = ~std::uint64_t{0};
      std::uint32_t owner = 0;
      for (std::uint32_t b = 0; b < blobs.size(); ++b) {
        const std::int64_t dx = static_cast<std::int64_t>(x) - blobs[b].cx;
        const std::int64_t dy = static_cast<std::int64_t>(y) - blobs[b].cy;
        const auto d2 = static_cast<std::uint64_t>(dx * dx + dy * dy);
        if (d2 < best) {
          best = d2;
          owner = b;
        }
      }
      const std::size_t i = y * w + x;
      cells[i] = {ring_of(best), owner, static_cast<std::uint32_t>(i)};
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.ring != b.ring) return a.ring < b.ring;
    if (a.blob != b.blob) return a.blob < b.blob;
    return a.index < b.index;
  });
  for (std::size_t k = 0; k < target; ++k) {
    const Cell& c = cells[k];
    const Intensity base = blobs[c.blob].base;
    const Intensity n = noise[c.index];
    img.at(c.index % w, c.index / w) = base > n ? base - n : 1;
  }
  return img;
}

Image2D lowered_marker(const Image2D& mask, Intensity h) {
  Image2D out(mask);
  for (const Addr p : scan_raster(out)) out[p] = out[p] > h ? out[p] - h : 0;
  return out;
}

Image2D binarize(const Image2D& img) {
  Image2D out(img.width(), img.height(), 0, 0);
  for (const Addr p : scan_raster(img)) out[p] = img[p] == 0 ? 0 : 1;
  return out;
}

double coverage_percent(const Image2D& img) {
  std::size_t fg = 0;
  for (const Addr p : scan_raster(img)) fg += img[p] != 0 ? 1 : 0;
  return 100.0 * static_cast<double>(fg) / static_cast<double>(img.interior_size());
}

}  // namespace iwpp
