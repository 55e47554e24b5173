#include "iwpp/operators.hpp"

#include <string>

namespace iwpp {

namespace {

/// Seeds for the distance operators: background pixels with a foreground
/// neighbor, in raster order.
WaveQueue border_seeds(const Image2D& binary, const Neighborhood& nb) {
  WaveQueue seeds(QueueKind::kFifo, Direction::kMin);
  for (const Addr p : scan_raster(binary)) {
    if (binary[p] != 0) continue;
    for (const std::ptrdiff_t d : nb.offsets()) {
      const auto q = static_cast<Addr>(p + d);
      if (binary.is_interior(q) && binary[q] != 0) {
        seeds.push(p, 0);
        break;
      }
    }
  }
  return seeds;
}

}  // namespace

ReconOp::ReconOp(std::shared_ptr<const Image2D> mask) : mask_(std::move(mask)) {
  if (!mask_) throw std::invalid_argument("ReconOp: null mask");
}

WaveQueue ReconOp::initialize(Image2D& marker, const Neighborhood& nb) const {
  return recon_init_scans(marker, *mask_, nb);
}

ReconOp ReconOp::slice(std::size_t row_begin, std::size_t rows) const {
  auto part = std::make_shared<Image2D>(copy_rows(*mask_, row_begin, rows));
  part->set_pad_value(0);
  return ReconOp(std::move(part));
}

std::optional<Coord> first_excess(const Image2D& marker, const Image2D& mask) {
  for (const Addr p : scan_raster(marker)) {
    if (marker[p] > mask[p]) return marker.coords(p);
  }
  return std::nullopt;
}

WaveQueue recon_init_scans(Image2D& marker, const Image2D& mask, const Neighborhood& nb) {
  if (!marker.same_shape(mask)) throw InvalidInput("reconstruction: marker and mask differ in shape");
  if (const auto bad = first_excess(marker, mask)) {
    throw InvalidInput("reconstruction: marker exceeds mask at (" + std::to_string(bad->x) + ", " +
                           std::to_string(bad->y) + ")",
                       bad);
  }
  IWPP_EXPECTS(mask.pad_value() == 0, "reconstruction: mask frame must be 0");
  marker.set_pad_value(0);

  for (const Addr p : scan_raster(marker)) {
    Intensity v = marker[p];
    for (const std::ptrdiff_t d : nb.raster_half()) v = std::max(v, marker[static_cast<Addr>(p + d)]);
    marker[p] = std::min(v, mask[p]);
  }
  WaveQueue seeds(QueueKind::kFifo, Direction::kMax);
  for (const Addr p : scan_antiraster(marker)) {
    Intensity v = marker[p];
    for (const std::ptrdiff_t d : nb.anti_raster_half()) v = std::max(v, marker[static_cast<Addr>(p + d)]);
    v = std::min(v, mask[p]);
    marker[p] = v;
    for (const std::ptrdiff_t d : nb.anti_raster_half()) {
      const auto q = static_cast<Addr>(p + d);
      if (marker[q] < v && marker[q] < mask[q]) {
        seeds.push(p, v);
        break;
      }
    }
  }
  return seeds;
}

WaveQueue EdtOp::initialize(Image2D& state, const Neighborhood& nb) const {
  IWPP_EXPECTS(state.stride() == stride_, "EdtOp: stride mismatch");
  state.set_pad_value(kOutside);
  WaveQueue seeds = border_seeds(state, nb);
  for (const Addr p : scan_raster(state)) state[p] = state[p] == 0 ? p : kInfinity;
  return seeds;
}

WaveQueue ChamferOp::initialize(Image2D& state, const Neighborhood& nb) const {
  state.set_pad_value(kOutside);
  WaveQueue seeds = border_seeds(state, nb);
  for (const Addr p : scan_raster(state)) state[p] = state[p] == 0 ? 0 : kInfinity;
  return seeds;
}

ReconResult reconstruct(const Image2D& marker, const Image2D& mask, Connectivity conn,
                        const ExecutionConfig& cfg) {
  if (!marker.same_shape(mask)) throw InvalidInput("reconstruction: marker and mask differ in shape");
  auto bound = std::make_shared<Image2D>(mask);
  bound->set_pad_value(0);
  ReconResult out{marker, {}};
  out.image.set_pad_value(0);
  const ReconOp op(bound);
  out.stats = execute(out.image, op, Neighborhood::of(out.image, conn), cfg);
  return out;
}

EdtResult edt(const Image2D& binary, Connectivity conn, const ExecutionConfig& cfg) {
  EdtResult out;
  out.voronoi = binary;
  const EdtOp op(binary.stride());
  out.stats = execute(out.voronoi, op, Neighborhood::of(binary, conn), cfg);
  out.distance = Image2D(binary.width(), binary.height(), 0, 0);
  for (const Addr p : scan_raster(out.voronoi)) {
    const Intensity root = out.voronoi[p];
    if (root >= kOutside) {
      out.distance[p] = kInfinity;
      out.complete = false;
    } else {
      out.distance[p] = static_cast<Intensity>(
          std::min<std::uint64_t>(squared_distance(p, root, binary.stride()), kInfinity - 1));
    }
  }
  return out;
}

std::pair<Image2D, Image2D> fill_holes_inputs(const Image2D& img, Intensity maxval) {
  Image2D mask(img.width(), img.height(), 0, 0);
  Image2D marker(img.width(), img.height(), 0, 0);
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      const Intensity v = img.at(x, y);
      if (v > maxval) throw InvalidInput("fill_holes: value exceeds maxval", Coord{x, y});
      mask.at(x, y) = maxval - v;
      const bool ring = x == 0 || y == 0 || x + 1 == img.width() || y + 1 == img.height();
      if (ring) marker.at(x, y) = maxval - v;
    }
  }
  return {std::move(marker), std::move(mask)};
}

ReconResult fill_holes(const Image2D& img, Intensity maxval, Connectivity conn, const ExecutionConfig& cfg) {
  auto [marker, mask] = fill_holes_inputs(img, maxval);
  ReconResult out = reconstruct(marker, mask, conn, cfg);
  for (const Addr p : scan_raster(out.image)) out.image[p] = maxval - out.image[p];
  out.image.set_pad_value(0);
  return out;
}

DtResult chamfer_dt(const Image2D& binary, Connectivity conn, const ExecutionConfig& cfg) {
  DtResult out{binary, {}};
  out.stats = execute(out.distance, ChamferOp{}, Neighborhood::of(binary, conn), cfg);
  return out;
}

}  // namespace iwpp
