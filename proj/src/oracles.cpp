#include "iwpp/oracles.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace iwpp {

namespace {

Intensity plus_one(Intensity v) { return v == kInfinity ? kInfinity : v + 1; }

bool has_background(const Image2D& binary) {
  for (const Addr p : scan_raster(binary)) {
    if (binary[p] == 0) return true;
  }
  return false;
}

/// Binary input as 0 / 1 with a frame that never reads as background.
Image2D as_unit(const Image2D& binary, Intensity pad) {
  Image2D out(binary.width(), binary.height(), 0, pad);
  for (const Addr p : scan_raster(binary)) out[p] = binary[p] == 0 ? 0 : 1;
  return out;
}

Image2D flood_from_seeds(Image2D img, const Neighborhood& nb, std::deque<Addr> fifo) {
  while (!fifo.empty()) {
    const Addr p = fifo.front();
    fifo.pop_front();
    for (const std::ptrdiff_t d : nb.offsets()) {
      const auto q = static_cast<Addr>(p + d);
      if (img[q] == 1) {
        img[q] = img[p] + 1;
        fifo.push_back(q);
      }
    }
  }
  return img;
}

bool touches_background(const Image2D& img, Addr p, const Neighborhood& nb) {
  for (const std::ptrdiff_t d : nb.offsets()) {
    if (img[static_cast<Addr>(p + d)] == 0) return true;
  }
  return false;
}

}  // namespace

Image2D oracle_recon_parallel(const Image2D& marker, const Image2D& mask, Connectivity conn) {
  if (!marker.same_shape(mask)) throw std::invalid_argument("oracle_recon_parallel: shape mismatch");
  Image2D j(marker);
  j.set_pad_value(0);
  const Neighborhood nb = Neighborhood::of(j, conn);
  bool changed = true;
  while (changed) {
    changed = false;
    const Image2D prev(j);
    for (const Addr p : scan_raster(j)) {
      Intensity v = prev[p];
      for (const std::ptrdiff_t d : nb.offsets()) v = std::max(v, prev[static_cast<Addr>(p + d)]);
      v = std::min(v, mask[p]);
      if (v != j[p]) {
        j[p] = v;
        changed = true;
      }
    }
  }
  return j;
}

Image2D oracle_dt_parallel(const Image2D& binary, Connectivity conn) {
  if (!has_background(binary)) return Image2D(binary.width(), binary.height(), kInfinity, kInfinity);
  Image2D i = as_unit(binary, kInfinity);
  const Neighborhood nb = Neighborhood::of(i, conn);
  bool changed = true;
  while (changed) {
    changed = false;
    Image2D j(i);
    for (const Addr p : scan_raster(i)) {
      if (binary[p] == 0) continue;
      Intensity v = kInfinity;
      for (const std::ptrdiff_t d : nb.offsets()) v = std::min(v, i[static_cast<Addr>(p + d)]);
      j[p] = plus_one(v);
      changed |= j[p] != i[p];
    }
    i = std::move(j);
  }
  return i;
}

Image2D oracle_dt_sequential(const Image2D& binary, Connectivity conn) {
  if (!has_background(binary)) return Image2D(binary.width(), binary.height(), kInfinity, kInfinity);
  Image2D i = as_unit(binary, kInfinity);
  const Neighborhood nb = Neighborhood::of(i, conn);
  for (const Addr p : scan_raster(i)) {
    if (i[p] == 0) continue;
    Intensity v = kInfinity;
    for (const std::ptrdiff_t d : nb.raster_half()) v = std::min(v, plus_one(i[static_cast<Addr>(p + d)]));
    i[p] = v;
  }
  for (const Addr p : scan_antiraster(i)) {
    if (i[p] == 0) continue;
    Intensity v = i[p];
    for (const std::ptrdiff_t d : nb.anti_raster_half()) v = std::min(v, plus_one(i[static_cast<Addr>(p + d)]));
    i[p] = v;
  }
  return i;
}

Image2D oracle_dt_queue(const Image2D& binary, Connectivity conn) {
  Image2D i = as_unit(binary, kInfinity);
  const Neighborhood nb = Neighborhood::of(i, conn);
  std::deque<Addr> fifo;
  for (const Addr p : scan_raster(i)) {
    if (i[p] == 1 && touches_background(i, p, nb)) {
      fifo.push_back(p);
      i[p] = 2;
    }
  }
  return flood_from_seeds(std::move(i), nb, std::move(fifo));
}

Image2D oracle_dt_hybrid(const Image2D& binary, Connectivity conn) {
  Image2D i = as_unit(binary, kInfinity);
  const Neighborhood nb = Neighborhood::of(i, conn);
  std::deque<Addr> fifo;
  for (const Addr p : scan_raster(i)) {
    if (i[p] != 0 && touches_background(i, p, nb)) {
      fifo.push_back(p);
      i[p] = 2;
    }
  }
  return flood_from_seeds(std::move(i), nb, std::move(fifo));
}

Image2D normalize_seeded_dt(const Image2D& dt) {
  Image2D out(dt);
  for (const Addr p : scan_raster(out)) {
    if (out[p] == 1) {
      out[p] = kInfinity;
    } else if (out[p] >= 2 && out[p] != kInfinity) {
      out[p] -= 1;
    }
  }
  return out;
}

}  // namespace iwpp
