#pragma once

#include "iwpp/grid.hpp"

namespace iwpp {

/// Reference reconstruction: full synchronous sweeps, each pixel taking the
/// maximum of itself and its neighbors in the previous sweep, clamped by the
/// mask, until nothing changes. Quadratic in the worst case.
Image2D oracle_recon_parallel(const Image2D& marker, const Image2D& mask, Connectivity conn);

// Chamfer distance baselines on binary inputs (0 = background). Cells outside
// the image never act as background. With no background at all the sweep and
// scan versions return kInfinity everywhere and the queue versions leave the
// foreground at 1.

/// Synchronous sweeps of min(neighbors) + 1 until stable.
Image2D oracle_dt_parallel(const Image2D& binary, Connectivity conn);
/// One raster and one anti-raster pass, in place.
Image2D oracle_dt_sequential(const Image2D& binary, Connectivity conn);
/// FIFO flood from the boundary; boundary pixels are seeded with 2.
Image2D oracle_dt_queue(const Image2D& binary, Connectivity conn);
/// Raster scan to find the boundary, then the same FIFO flood (seed value 2).
Image2D oracle_dt_hybrid(const Image2D& binary, Connectivity conn);

/// Maps the queue oracles' convention to plain distances: v >= 2 becomes
/// v - 1 and an unreached 1 becomes kInfinity; 0 stays 0.
Image2D normalize_seeded_dt(const Image2D& dt);

}  // namespace iwpp
