#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "iwpp/engine.hpp"
#include "iwpp/parallel.hpp"

namespace iwpp {

using Rational = boost::multiprecision::cpp_rational;

/// P_i = 100 * S_i / sum(S). Exact; the result always sums to 100.
/// Throws std::invalid_argument on an empty list or a non-positive speedup.
std::vector<Rational> partition_by_speedup(const std::vector<Rational>& speedups);

/// Splits `total` units by percentages (summing to 100): floors first, then
/// one extra unit to the largest remainders, ties to the lower index.
std::vector<std::size_t> largest_remainder(const std::vector<Rational>& percentages, std::size_t total);

/// Accepts "3", "1.25" and "3/2".
Rational parse_rational(std::string_view text);

struct WorkerSpec {
  std::string name = "cpu";
  Rational speedup = 1;
  std::size_t threads = 1;
};

/// "name:speedup[:threads]"
WorkerSpec parse_worker(std::string_view text);

class InvalidPlan : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Strip {
  std::size_t row_begin = 0;
  std::size_t rows = 0;
  std::size_t worker = 0;
};

/// Last row of one strip and first row of the next.
struct Seam {
  std::size_t upper_row = 0;
  std::size_t lower_row = 0;
};

struct TilePlan {
  std::vector<Strip> strips;
  std::vector<Seam> seams;
  std::vector<WorkerSpec> workers;
};

/// k horizontal strips; strip j goes to worker j mod |workers| and its height
/// is proportional to that worker's speedup. Throws InvalidPlan if a strip
/// would get no rows.
TilePlan make_tile_plan(std::size_t height, std::size_t tiles, std::vector<WorkerSpec> workers);
/// Plan with explicit strip heights, assigned round-robin.
TilePlan make_tile_plan_rows(std::size_t height, const std::vector<std::size_t>& rows,
                             std::vector<WorkerSpec> workers);
/// Throws InvalidPlan unless the strips are non-empty, contiguous and cover
/// `height` rows, and the seams and worker indices match.
void validate_plan(const TilePlan& plan, std::size_t height);

/// Operators that can run on strips: they initialize a raw input in place
/// (frame included), slice their context to a row range, and map state
/// values from strip coordinates back to the full image.
template <class Op>
concept TileableOperator = PropagationOperator<Op> &&
    requires(const Op& op, Image2D& img, const Neighborhood& nb, std::size_t n, Intensity v, Addr a) {
      { op.initialize(img, nb) } -> std::same_as<WaveQueue>;
      { op.slice(n, n) } -> std::same_as<Op>;
      { op.to_global(v, a) } -> std::same_as<Intensity>;
      { op.pad_value() } -> std::same_as<Intensity>;
    };

struct TileOptions {
  /// Order in which stage-2 tasks enter the shared task queue; empty means
  /// strip order.
  std::vector<std::size_t> task_order;
  /// Called after stage 3 with the merged, uncorrected image.
  std::function<void(const Image2D&)> on_merged;
};

struct TiledResult {
  RunStats stats;       // whole pipeline
  RunStats tiles;       // stage 2, tiles overlapped in time
  RunStats correction;  // stage 4
  std::size_t seam_seeds = 0;
};

/// Pixels on either side of a seam that can still propagate across it.
template <PropagationOperator Op>
WaveQueue seam_seeds(const Image2D& state, const Op& op, const Neighborhood& nb, const Seam& seam) {
  WaveQueue seeds(QueueKind::kFifo, Op::kDirection);
  const auto stride = static_cast<std::ptrdiff_t>(state.stride());
  const auto scan_row = [&](std::size_t row, bool downward) {
    for (std::size_t x = 0; x < state.width(); ++x) {
      const Addr p = state.addr(x, row);
      for (const std::ptrdiff_t d : nb.offsets()) {
        const bool crosses = downward ? d >= stride - 1 : d <= -(stride - 1);
        if (!crosses) continue;
        const auto q = static_cast<Addr>(p + d);
        if (op.condition(q, state[q], state[p])) {
          seeds.push(p, op.priority_key(p, state[p]));
          break;
        }
      }
    }
  };
  scan_row(seam.upper_row, true);
  scan_row(seam.lower_row, false);
  return seeds;
}

/// Four-stage cooperative run over horizontal strips.
///
/// 1. each strip is copied into its own framed image, context sliced alike;
/// 2. worker threads take their strips from a shared task queue and run each
///    tile to a local fixpoint using only the strip's data;
/// 3. tiles are written back;
/// 4. both sides of every seam are checked with the operator's condition and
///    the engine runs on the full image from those seeds.
///
/// `state` holds the raw input on entry and the result on exit.
template <TileableOperator Op>
TiledResult run_tiled(Image2D& state, const Op& op, const Neighborhood& nb, const TilePlan& plan,
                      EngineVariant variant, QueueKind kind, std::size_t correction_threads = 1,
                      const EngineOptions& opt = {}, const TileOptions& tile_opt = {}) {
  validate_plan(plan, state.height());
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = plan.strips.size();

  std::vector<Image2D> tiles;
  std::vector<Op> ops;
  tiles.reserve(n);
  ops.reserve(n);
  for (const Strip& s : plan.strips) {
    tiles.push_back(copy_rows(state, s.row_begin, s.rows));
    ops.push_back(op.slice(s.row_begin, s.rows));
  }

  std::vector<std::size_t> pending = tile_opt.task_order;
  if (pending.empty()) {
    for (std::size_t i = 0; i < n; ++i) pending.push_back(i);
  }
  {
    std::vector<std::size_t> sorted = pending;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted.size() != n || sorted[i] != i) throw InvalidPlan("run_tiled: task order is not a permutation");
    }
  }

  std::mutex lock;
  std::vector<RunStats> tile_stats(n);
  std::vector<std::exception_ptr> errors(plan.workers.size());
  const auto take = [&](std::size_t worker) -> std::optional<std::size_t> {
    std::lock_guard<std::mutex> guard(lock);
    const auto it = std::find_if(pending.begin(), pending.end(),
                                 [&](std::size_t t) { return plan.strips[t].worker == worker; });
    if (it == pending.end()) return std::nullopt;
    const std::size_t task = *it;
    pending.erase(it);
    return task;
  };
  const auto work = [&](std::size_t worker) {
    try {
      while (const auto task = take(worker)) {
        const auto t0 = std::chrono::steady_clock::now();
        Image2D& tile = tiles[*task];
        WaveQueue seeds = ops[*task].initialize(tile, nb);
        const double init_ms = detail::ms_since(t0);
        const std::size_t threads = std::max<std::size_t>(1, plan.workers[worker].threads);
        RunStats st = run_parallel(tile, std::move(seeds), ops[*task], nb, partition_rows(tile.height(), threads),
                                   variant, kind, opt).merged;
        st.init_ms = init_ms;
        st.total_ms = detail::ms_since(t0);
        tile_stats[*task] = st;
      }
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < plan.workers.size(); ++w) pool.emplace_back(work, w);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  TiledResult result;
  for (const RunStats& s : tile_stats) result.tiles = combine_concurrent(result.tiles, s);

  for (std::size_t i = 0; i < n; ++i) {
    const Strip& s = plan.strips[i];
    const auto shift = static_cast<Addr>(s.row_begin * state.stride());
    for (const Addr a : scan_raster(tiles[i])) tiles[i][a] = ops[i].to_global(tiles[i][a], shift);
    paste_rows(state, tiles[i], s.row_begin);
  }
  state.set_pad_value(op.pad_value());
  if (tile_opt.on_merged) tile_opt.on_merged(state);

  const auto t4 = std::chrono::steady_clock::now();
  WaveQueue seeds(QueueKind::kFifo, Op::kDirection);
  for (const Seam& seam : plan.seams) {
    WaveQueue part = seam_seeds(state, op, nb, seam);
    while (auto e = part.pop()) seeds.push(e->addr, e->key);
  }
  result.seam_seeds = seeds.size();
  result.correction = run_parallel(state, std::move(seeds), op, nb, partition_rows(state.height(), correction_threads),
                                   variant, kind, opt).merged;
  result.correction.total_ms = detail::ms_since(t4);

  result.stats = combine_sequential(result.tiles, result.correction);
  result.stats.total_ms = detail::ms_since(start);
  return result;
}

}  // namespace iwpp
