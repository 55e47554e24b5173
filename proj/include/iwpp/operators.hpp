#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>

#include "iwpp/engine.hpp"
#include "iwpp/execution.hpp"
#include "iwpp/grid.hpp"
#include "iwpp/pixel_queue.hpp"

namespace iwpp {

/// Frame value of address-valued or distance-valued state; never a receiver
/// and never a donor. Differs from kInfinity, which marks "unassigned".
inline constexpr Intensity kOutside = kInfinity - 1;

/// Rejected operator input. Carries the first offending pixel when there is one.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what, std::optional<Coord> where = std::nullopt)
      : std::invalid_argument(what), where_(where) {}
  const std::optional<Coord>& where() const { return where_; }

 private:
  std::optional<Coord> where_;
};

/// Grayscale reconstruction of a marker J under a mask I: J grows toward its
/// neighbors' values, clamped by I.
class ReconOp {
 public:
  static constexpr Direction kDirection = Direction::kMax;

  explicit ReconOp(std::shared_ptr<const Image2D> mask);

  const Image2D& mask() const { return *mask_; }
  const Image2D& lane_bound() const { return *mask_; }

  bool condition(Addr r, Intensity rv, Intensity dv) const { return rv < dv && rv < (*mask_)[r]; }
  Intensity push_value(Addr r, Intensity, Intensity dv) const { return std::min(dv, (*mask_)[r]); }
  Intensity pull(Addr r, Intensity rv, std::span<const Intensity> nbrs) const {
    Intensity best = rv;
    for (const Intensity v : nbrs) best = std::max(best, v);
    return std::min(best, (*mask_)[r]);
  }
  bool improves(Addr, Intensity candidate, Intensity current) const { return candidate > current; }
  std::uint32_t priority_key(Addr r, Intensity dv) const { return std::min(dv, (*mask_)[r]); }

  /// Raster and anti-raster scans over the marker; returns the seeds.
  WaveQueue initialize(Image2D& marker, const Neighborhood& nb) const;
  ReconOp slice(std::size_t row_begin, std::size_t rows) const;
  Intensity to_global(Intensity v, Addr) const { return v; }
  Intensity pad_value() const { return 0; }

 private:
  std::shared_ptr<const Image2D> mask_;
};

/// Squared Euclidean distance between two addresses of images with `stride`.
inline std::uint64_t squared_distance(Addr a, Addr b, std::size_t stride) {
  const auto ax = static_cast<std::int64_t>(a % stride), ay = static_cast<std::int64_t>(a / stride);
  const auto bx = static_cast<std::int64_t>(b % stride), by = static_cast<std::int64_t>(b / stride);
  return static_cast<std::uint64_t>((ax - bx) * (ax - bx) + (ay - by) * (ay - by));
}

/// Wavefront EDT: the state holds each pixel's Voronoi root, the address of
/// its nearest background candidate (kInfinity while unassigned).
///
/// Roots are ranked by squared distance to the receiver, then by address, so
/// that ties resolve the same way in every engine.
class EdtOp {
 public:
  static constexpr Direction kDirection = Direction::kMin;

  explicit EdtOp(std::size_t stride) : stride_(stride) {}

  std::uint64_t rank(Addr r, Intensity root) const {
    if (root >= kOutside) return ~std::uint64_t{0};
    return (squared_distance(r, root, stride_) << 32) | root;
  }
  bool condition(Addr r, Intensity rv, Intensity dv) const {
    return rv != kOutside && dv < kOutside && rank(r, dv) < rank(r, rv);
  }
  Intensity push_value(Addr, Intensity, Intensity dv) const { return dv; }
  Intensity pull(Addr r, Intensity rv, std::span<const Intensity> nbrs) const {
    Intensity best = rv;
    for (const Intensity v : nbrs) {
      if (v < kOutside && rank(r, v) < rank(r, best)) best = v;
    }
    return best;
  }
  bool improves(Addr r, Intensity candidate, Intensity current) const {
    return candidate < kOutside && rank(r, candidate) < rank(r, current);
  }
  std::uint32_t priority_key(Addr r, Intensity dv) const {
    if (dv >= kOutside) return kInfinity;
    return static_cast<std::uint32_t>(std::min<std::uint64_t>(squared_distance(r, dv, stride_), kInfinity));
  }

  /// Binary input (0 = background) to roots: background points at itself,
  /// foreground is unassigned. Seeds are background pixels next to foreground.
  WaveQueue initialize(Image2D& state, const Neighborhood& nb) const;
  EdtOp slice(std::size_t, std::size_t) const { return *this; }
  Intensity to_global(Intensity v, Addr shift) const { return v < kOutside ? v + shift : v; }
  Intensity pad_value() const { return kOutside; }
  std::size_t stride() const { return stride_; }

 private:
  std::size_t stride_;
};

/// Chamfer distance (city-block with N4, chessboard with N8): one step per
/// neighbor hop. Used to exercise the engines against the scan-based oracles.
class ChamferOp {
 public:
  static constexpr Direction kDirection = Direction::kMin;

  bool condition(Addr, Intensity rv, Intensity dv) const { return rv != kOutside && dv < kOutside && dv + 1 < rv; }
  Intensity push_value(Addr, Intensity, Intensity dv) const { return dv + 1; }
  Intensity pull(Addr, Intensity rv, std::span<const Intensity> nbrs) const {
    Intensity best = rv;
    for (const Intensity v : nbrs) {
      if (v < kOutside && v + 1 < best) best = v + 1;
    }
    return best;
  }
  bool improves(Addr, Intensity candidate, Intensity current) const { return candidate < current; }
  std::uint32_t priority_key(Addr, Intensity dv) const { return dv < kOutside ? dv + 1 : kInfinity; }

  /// Binary input to 0 on background and kInfinity on foreground.
  WaveQueue initialize(Image2D& state, const Neighborhood& nb) const;
  ChamferOp slice(std::size_t, std::size_t) const { return *this; }
  Intensity to_global(Intensity v, Addr) const { return v; }
  Intensity pad_value() const { return kOutside; }
};

/// Hybrid initialization for reconstruction: a raster pass over the preceding
/// half-neighborhood, then an anti-raster pass over the following half that
/// also enqueues every pixel able to raise one of its following neighbors.
/// Sets both frames to 0. Throws InvalidInput when shapes differ or J > I
/// somewhere.
WaveQueue recon_init_scans(Image2D& marker, const Image2D& mask, const Neighborhood& nb);

/// First pixel with marker > mask, if any.
std::optional<Coord> first_excess(const Image2D& marker, const Image2D& mask);

struct ReconResult {
  Image2D image;
  RunStats stats;
};

struct EdtResult {
  Image2D distance;  // squared distances; kInfinity where no root was found
  Image2D voronoi;   // root addresses; kInfinity where unassigned
  RunStats stats;
  bool complete = true;  // false when some pixel has no root (no background)
};

struct DtResult {
  Image2D distance;
  RunStats stats;
};

ReconResult reconstruct(const Image2D& marker, const Image2D& mask, Connectivity conn,
                        const ExecutionConfig& cfg = {});

/// Binary input: 0 is background, anything else foreground.
EdtResult edt(const Image2D& binary, Connectivity conn, const ExecutionConfig& cfg = {});

/// Raises dark regions not connected to the image border up to the level of
/// their surroundings. `maxval` is the brightest representable value.
ReconResult fill_holes(const Image2D& img, Intensity maxval, Connectivity conn,
                       const ExecutionConfig& cfg = {});

DtResult chamfer_dt(const Image2D& binary, Connectivity conn, const ExecutionConfig& cfg = {});

/// Fill-holes inputs: mask = maxval - img, marker = mask on the outermost
/// interior ring and 0 elsewhere.
std::pair<Image2D, Image2D> fill_holes_inputs(const Image2D& img, Intensity maxval);

}  // namespace iwpp
