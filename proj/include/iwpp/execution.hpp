#pragma once

#include <cstddef>
#include <vector>

#include "iwpp/engine.hpp"
#include "iwpp/parallel.hpp"
#include "iwpp/tiling.hpp"

namespace iwpp {

struct ExecutionConfig {
  EngineVariant engine = EngineVariant::kTwoPhase;
  QueueKind queue = QueueKind::kFifo;
  std::size_t threads = 1;
  /// More than one tile runs the strip pipeline.
  std::size_t tiles = 1;
  /// Tile workers; empty means a single worker using `threads`.
  std::vector<WorkerSpec> workers;
  EngineOptions options;
};

/// Initializes `state` (raw input on entry) with the operator and runs it to
/// the fixpoint with the configured engine, threads and tiles.
template <TileableOperator Op>
RunStats execute(Image2D& state, const Op& op, const Neighborhood& nb, const ExecutionConfig& cfg) {
  if (cfg.threads == 0) throw std::invalid_argument("execute: thread count must be at least 1");
  if (cfg.tiles == 0) throw std::invalid_argument("execute: tile count must be at least 1");
  if (cfg.tiles > 1) {
    std::vector<WorkerSpec> workers = cfg.workers;
    if (workers.empty()) workers.push_back(WorkerSpec{"cpu", 1, cfg.threads});
    const TilePlan plan = make_tile_plan(state.height(), cfg.tiles, std::move(workers));
    return run_tiled(state, op, nb, plan, cfg.engine, cfg.queue, cfg.threads, cfg.options).stats;
  }
  const auto start = std::chrono::steady_clock::now();
  WaveQueue seeds = op.initialize(state, nb);
  const double init_ms = detail::ms_since(start);
  RunStats st;
  if (cfg.threads > 1) {
    st = run_parallel(state, std::move(seeds), op, nb, partition_rows(state.height(), cfg.threads), cfg.engine,
                      cfg.queue, cfg.options).merged;
  } else {
    st = run_engine(cfg.engine, state, std::move(seeds), op, nb, cfg.queue, cfg.options);
  }
  st.init_ms = init_ms;
  st.total_ms = detail::ms_since(start);
  return st;
}

}  // namespace iwpp
