// Fixture generators and brute-force oracles shared by the tests. Nothing
// here calls into the library's algorithms; only Image2D is used.
#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <random>
#include <vector>

#include "iwpp/grid.hpp"

namespace iwpp::test {

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) { return engine() % n; }
  bool chance(unsigned percent) { return below(100) < percent; }
};

inline Image2D random_image(Rng& rng, std::size_t w, std::size_t h, Intensity max_value) {
  Image2D img(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) img.at(x, y) = static_cast<Intensity>(rng.below(max_value + 1ull));
  }
  return img;
}

struct ReconPair {
  Image2D marker;
  Image2D mask;
};

/// Three fixture families, chosen by `kind % 3`: the mask lowered by a
/// constant, a few peaks on an empty marker, and random per-pixel decrements.
inline ReconPair random_recon_pair(Rng& rng, std::size_t w, std::size_t h, unsigned kind) {
  ReconPair p{Image2D(w, h), random_image(rng, w, h, 255)};
  // Smooth the mask a little so that waves travel further than one pixel.
  if (rng.chance(50)) {
    Image2D smooth(p.mask);
    for (std::size_t y = 0; y < h; ++y) {
      for (std::size_t x = 0; x < w; ++x) {
        std::uint64_t sum = 0, n = 0;
        for (std::size_t v = y > 0 ? y - 1 : 0; v <= std::min(h - 1, y + 1); ++v) {
          for (std::size_t u = x > 0 ? x - 1 : 0; u <= std::min(w - 1, x + 1); ++u) {
            sum += p.mask.at(u, v);
            ++n;
          }
        }
        smooth.at(x, y) = static_cast<Intensity>(sum / n);
      }
    }
    p.mask = smooth;
  }
  switch (kind % 3) {
    case 0: {
      const auto drop = static_cast<Intensity>(1 + rng.below(64));
      for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
          const Intensity v = p.mask.at(x, y);
          p.marker.at(x, y) = v > drop ? v - drop : 0;
        }
      }
      break;
    }
    case 1: {
      const std::uint64_t peaks = 1 + rng.below(6);
      for (std::uint64_t k = 0; k < peaks; ++k) {
        const auto x = rng.below(w), y = rng.below(h);
        p.marker.at(x, y) = p.mask.at(x, y);
      }
      break;
    }
    default:
      for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
          const Intensity v = p.mask.at(x, y);
          p.marker.at(x, y) = v - static_cast<Intensity>(rng.below(v + 1ull));
        }
      }
  }
  return p;
}

/// 0 = background with probability `bg_percent`, else 1.
inline Image2D random_binary(Rng& rng, std::size_t w, std::size_t h, unsigned bg_percent) {
  Image2D img(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) img.at(x, y) = rng.chance(bg_percent) ? 0 : 1;
  }
  return img;
}

/// Union of random discs as foreground on a background of 0.
inline Image2D random_blobs(Rng& rng, std::size_t w, std::size_t h, unsigned discs) {
  Image2D img(w, h);
  for (unsigned k = 0; k < discs; ++k) {
    const auto cx = static_cast<std::int64_t>(rng.below(w));
    const auto cy = static_cast<std::int64_t>(rng.below(h));
    const auto r = static_cast<std::int64_t>(2 + rng.below(std::max<std::size_t>(3, w / 4)));
    for (std::size_t y = 0; y < h; ++y) {
      for (std::size_t x = 0; x < w; ++x) {
        const std::int64_t dx = static_cast<std::int64_t>(x) - cx, dy = static_cast<std::int64_t>(y) - cy;
        if (dx * dx + dy * dy <= r * r) img.at(x, y) = 1;
      }
    }
  }
  return img;
}

inline bool has_background(const Image2D& b) {
  for (std::size_t y = 0; y < b.height(); ++y) {
    for (std::size_t x = 0; x < b.width(); ++x) {
      if (b.at(x, y) == 0) return true;
    }
  }
  return false;
}

/// Exact squared Euclidean distance to the nearest background pixel, by
/// scanning all of them. kInfinity when there is no background.
inline Image2D brute_force_edt(const Image2D& b) {
  std::vector<std::pair<std::int64_t, std::int64_t>> bg;
  for (std::size_t y = 0; y < b.height(); ++y) {
    for (std::size_t x = 0; x < b.width(); ++x) {
      if (b.at(x, y) == 0) bg.emplace_back(x, y);
    }
  }
  Image2D out(b.width(), b.height());
  for (std::size_t y = 0; y < b.height(); ++y) {
    for (std::size_t x = 0; x < b.width(); ++x) {
      std::uint64_t best = kInfinity;
      for (const auto& [u, v] : bg) {
        const std::int64_t dx = static_cast<std::int64_t>(x) - u, dy = static_cast<std::int64_t>(y) - v;
        best = std::min<std::uint64_t>(best, static_cast<std::uint64_t>(dx * dx + dy * dy));
      }
      out.at(x, y) = static_cast<Intensity>(best);
    }
  }
  return out;
}

/// City-block (four) or chessboard (eight) distance to the nearest
/// background pixel, by scanning all of them.
inline Image2D brute_force_chamfer(const Image2D& b, Connectivity conn) {
  Image2D out(b.width(), b.height());
  for (std::size_t y = 0; y < b.height(); ++y) {
    for (std::size_t x = 0; x < b.width(); ++x) {
      std::uint64_t best = kInfinity;
      for (std::size_t v = 0; v < b.height(); ++v) {
        for (std::size_t u = 0; u < b.width(); ++u) {
          if (b.at(u, v) != 0) continue;
          const std::uint64_t dx = x > u ? x - u : u - x, dy = y > v ? y - v : v - y;
          best = std::min(best, conn == Connectivity::kFour ? dx + dy : std::max(dx, dy));
        }
      }
      out.at(x, y) = static_cast<Intensity>(best);
    }
  }
  return out;
}

/// Binary fill-holes by flooding the background from the border: background
/// pixels the flood cannot reach become `fill`.
inline Image2D flood_fill_holes(const Image2D& img, Connectivity conn, Intensity fill) {
  const std::size_t w = img.width(), h = img.height();
  std::vector<char> seen(w * h, 0);
  std::deque<std::pair<std::size_t, std::size_t>> todo;
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const bool border = x == 0 || y == 0 || x + 1 == w || y + 1 == h;
      if (border && img.at(x, y) == 0) {
        seen[y * w + x] = 1;
        todo.emplace_back(x, y);
      }
    }
  }
  while (!todo.empty()) {
    const auto [x, y] = todo.front();
    todo.pop_front();
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if ((dx == 0 && dy == 0) || (conn == Connectivity::kFour && dx != 0 && dy != 0)) continue;
        const auto u = static_cast<std::int64_t>(x) + dx, v = static_cast<std::int64_t>(y) + dy;
        if (u < 0 || v < 0 || u >= static_cast<std::int64_t>(w) || v >= static_cast<std::int64_t>(h)) continue;
        const auto i = static_cast<std::size_t>(v) * w + static_cast<std::size_t>(u);
        if (seen[i] || img.at(static_cast<std::size_t>(u), static_cast<std::size_t>(v)) != 0) continue;
        seen[i] = 1;
        todo.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
      }
    }
  }
  Image2D out(img);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      if (img.at(x, y) == 0 && !seen[y * w + x]) out.at(x, y) = fill;
    }
  }
  return out;
}

inline Image2D from_rows(std::size_t w, std::size_t h, std::vector<Intensity> values) {
  return Image2D::from_interior(w, h, values);
}

}  // namespace iwpp::test
