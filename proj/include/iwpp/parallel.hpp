#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

#include "iwpp/contract.hpp"
#include "iwpp/engine.hpp"

namespace iwpp {

struct RowBlock {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive
  std::size_t size() const { return end - begin; }
};

struct ParallelPlan {
  std::size_t threads = 1;
  std::vector<RowBlock> blocks;  // one per thread, contiguous and ordered

  /// Index of the block owning `row`.
  std::size_t owner_of(std::size_t row) const;
};

/// Balanced contiguous row blocks; sizes differ by at most one and the larger
/// blocks come first. Throws std::invalid_argument when threads == 0.
ParallelPlan partition_rows(std::size_t height, std::size_t threads);

struct ParallelResult {
  RunStats merged;
  std::vector<RunStats> per_thread;
};

namespace detail {

template <PropagationOperator Op>
std::vector<WaveQueue> split_seeds(const Image2D& state, WaveQueue& seeds, const ParallelPlan& plan) {
  std::vector<WaveQueue> out(plan.blocks.size(), WaveQueue(QueueKind::kFifo, Op::kDirection));
  while (auto e = seeds.pop()) out[plan.owner_of(state.coords(e->addr).y)].push(e->addr, e->key);
  return out;
}

}  // namespace detail

/// Runs the engine with one thread per row block over a shared state image.
///
/// Seeds are handed to the thread owning their row, in the order given. Each
/// thread keeps its own queue pair and stops when its own queues drain, so
/// waves may cross into other blocks freely. Cells are read with relaxed
/// atomic loads and written with a monotone merge; after the join the state is
/// checked to be a fixpoint when contract checks are enabled.
template <PropagationOperator Op>
ParallelResult run_parallel(Image2D& state, WaveQueue seeds, const Op& op, const Neighborhood& nb,
                            const ParallelPlan& plan, EngineVariant variant, QueueKind kind,
                            const EngineOptions& opt = {}) {
  IWPP_EXPECTS(!plan.blocks.empty(), "run_parallel: empty plan");
  const auto start = std::chrono::steady_clock::now();
  ParallelResult result;
  result.per_thread.resize(plan.blocks.size());
  std::vector<WaveQueue> parts = detail::split_seeds<Op>(state, seeds, plan);

  if (plan.blocks.size() == 1) {
    result.per_thread[0] = detail::run_variant(detail::LocalCells{state.data()}, parts[0], op, nb, variant, kind, opt);
  } else {
    const detail::SharedCells cells{state.data()};
    std::vector<std::exception_ptr> errors(plan.blocks.size());
    std::vector<std::thread> workers;
    workers.reserve(plan.blocks.size());
    for (std::size_t t = 0; t < plan.blocks.size(); ++t) {
      workers.emplace_back([&, t] {
        try {
          result.per_thread[t] = detail::run_variant(cells, parts[t], op, nb, variant, kind, opt);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  for (const RunStats& s : result.per_thread) result.merged = combine_concurrent(result.merged, s);
  result.merged.prop_ms = result.merged.total_ms = detail::ms_since(start);

#if defined(IWPP_CONTRACT_CHECKS) && IWPP_CONTRACT_CHECKS
  if (find_violation(state, op, nb)) {
    throw ContractViolation("run_parallel: state is not a fixpoint after join");
  }
#endif
  return result;
}

}  // namespace iwpp
