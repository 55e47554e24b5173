#pragma once

#include <array>
#include <atomic>
#include <chrono>
#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "iwpp/grid.hpp"
#include "iwpp/lanes.hpp"
#include "iwpp/pixel_queue.hpp"

namespace iwpp {

enum class EngineVariant { kClassic, kTwoPhase, kBatched };

const char* engine_name(EngineVariant v);
const char* queue_name(QueueKind k);

struct RunStats {
  std::uint64_t elements_identified = 0;  // pushes to the next wave
  std::uint64_t elements_propagated = 0;  // pops in the propagation phase
  std::uint64_t iterations = 0;
  double init_ms = 0.0;
  double prop_ms = 0.0;
  double total_ms = 0.0;
};

/// Runs that happened one after the other: everything adds up.
RunStats combine_sequential(const RunStats& a, const RunStats& b);
/// Runs that overlapped in time: counters add, iterations and times take the max.
RunStats combine_concurrent(const RunStats& a, const RunStats& b);

class UnsupportedOperator : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IterationLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A propagation rule over 32-bit cell states.
///
///  condition(r, state(r), state(d))   receiver r can be improved by donor d
///  push_value(r, state(r), state(d))  value a donor writes into r (classic)
///  pull(r, state(r), neighbor states) value r computes from its neighborhood
///  improves(r, candidate, current)    candidate is strictly better for r
///  priority_key(r, state(d))          queue key of r when reached from d
///
/// pull() must never move a cell against kDirection and must be idempotent.
template <class Op>
concept PropagationOperator =
    requires(const Op& op, Addr a, Intensity v, std::span<const Intensity> nbrs) {
      { Op::kDirection } -> std::convertible_to<Direction>;
      { op.condition(a, v, v) } -> std::same_as<bool>;
      { op.push_value(a, v, v) } -> std::same_as<Intensity>;
      { op.pull(a, v, nbrs) } -> std::same_as<Intensity>;
      { op.improves(a, v, v) } -> std::same_as<bool>;
      { op.priority_key(a, v) } -> std::same_as<std::uint32_t>;
    };

/// Reconstruction-style operators the batched kernel can run: the state moves
/// toward donors and is clamped per cell by lane_bound().
template <class Op>
concept LaneOperator = PropagationOperator<Op> && requires(const Op& op) {
  { op.lane_bound() } -> std::same_as<const Image2D&>;
};

struct EngineOptions {
  /// Wave generations (classic: queue extractions) allowed before
  /// IterationLimitExceeded; 0 disables the ceiling.
  std::uint64_t max_iterations = 0;
  /// Called after every wave generation (classic: every extraction).
  std::function<void(std::uint64_t)> on_iteration;
  lanes::Backend backend = lanes::Backend::kAuto;
};

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

/// Direct access for single-threaded runs.
struct LocalCells {
  std::span<Intensity> data;

  Intensity load(Addr a) const { return data[a]; }
  /// Stores `candidate` if it improves the cell; true when it did.
  template <class Op>
  bool merge(const Op& op, Addr a, Intensity candidate) const {
    if (!op.improves(a, candidate, data[a])) return false;
    data[a] = candidate;
    return true;
  }
  template <class B>
  lanes::LaneBatch gather(const lanes::LaneBatch& addrs) const {
    return B::gather(data, addrs);
  }
};

/// Access to a state image shared between threads. Loads are relaxed and may
/// be stale; stores go through a compare-exchange so a cell only ever moves in
/// the operator's direction.
struct SharedCells {
  std::span<Intensity> data;

  Intensity load(Addr a) const {
    return std::atomic_ref<Intensity>(data[a]).load(std::memory_order_relaxed);
  }
  template <class Op>
  bool merge(const Op& op, Addr a, Intensity candidate) const {
    std::atomic_ref<Intensity> cell(data[a]);
    Intensity current = cell.load(std::memory_order_relaxed);
    while (op.improves(a, candidate, current)) {
      if (cell.compare_exchange_weak(current, candidate, std::memory_order_relaxed)) return true;
    }
    return false;
  }
  template <class B>
  lanes::LaneBatch gather(const lanes::LaneBatch& addrs) const {
    lanes::LaneBatch out;
    for (std::size_t i = 0; i < lanes::kLaneCount; ++i) {
      IWPP_DEBUG_EXPECTS(addrs[i] < data.size(), "gather: address out of bounds");
      out[i] = load(addrs[i]);
    }
    return out;
  }
};

inline void check_ceiling(std::uint64_t iterations, const EngineOptions& opt) {
  if (opt.max_iterations != 0 && iterations > opt.max_iterations) {
    throw IterationLimitExceeded("engine exceeded " + std::to_string(opt.max_iterations) +
                                 " iterations");
  }
}

/// Push-style loop: each extracted donor writes into improvable neighbors and
/// enqueues them.
template <PropagationOperator Op, class Cells>
RunStats classic_loop(const Cells& cells, WaveQueue& queue, const Op& op, const Neighborhood& nb,
                      const EngineOptions& opt) {
  RunStats st;
  const auto offs = nb.offsets();
  while (auto e = queue.pop()) {
    ++st.elements_propagated;
    check_ceiling(++st.iterations, opt);
    const Addr p = e->addr;
    const Intensity vp = cells.load(p);
    for (const std::ptrdiff_t d : offs) {
      const auto q = static_cast<Addr>(p + d);
      const Intensity vq = cells.load(q);
      if (!op.condition(q, vq, vp)) continue;
      cells.merge(op, q, op.push_value(q, vq, vp));
      queue.push(q, op.priority_key(q, vp));
      ++st.elements_identified;
    }
    if (opt.on_iteration) opt.on_iteration(st.iterations);
  }
  return st;
}

/// Two-phase loop: identification only reads and collects receivers into
/// `next`; propagation lets each receiver recompute its own cell from its
/// neighborhood. Receivers whose cell changed form the following wave; a
/// duplicate that finds its cell already updated is dropped there, otherwise
/// copies would multiply with every wave.
template <PropagationOperator Op, class Cells>
RunStats two_phase_loop(const Cells& cells, WaveQueue& current, WaveQueue& next, const Op& op,
                        const Neighborhood& nb, const EngineOptions& opt) {
  RunStats st;
  const auto offs = nb.offsets();
  std::array<Intensity, Neighborhood::kMaxSize> nbr{};
  while (!current.empty()) {
    check_ceiling(++st.iterations, opt);
    while (auto e = current.pop()) {
      const Addr p = e->addr;
      const Intensity vp = cells.load(p);
      for (const std::ptrdiff_t d : offs) {
        const auto q = static_cast<Addr>(p + d);
        if (op.condition(q, cells.load(q), vp)) {
          next.push(q, op.priority_key(q, vp));
          ++st.elements_identified;
        }
      }
    }
    while (auto e = next.pop()) {
      ++st.elements_propagated;
      const Addr q = e->addr;
      for (std::size_t i = 0; i < offs.size(); ++i) nbr[i] = cells.load(static_cast<Addr>(q + offs[i]));
      const Intensity candidate = op.pull(q, cells.load(q), std::span<const Intensity>(nbr.data(), offs.size()));
      if (cells.merge(op, q, candidate)) current.push(q, op.priority_key(q, candidate));
    }
    if (opt.on_iteration) opt.on_iteration(st.iterations);
  }
  return st;
}

constexpr Direction opposite(Direction d) {
  return d == Direction::kMax ? Direction::kMin : Direction::kMax;
}

/// One propagation step of the batched kernel: the 8-neighborhoods of p1 and
/// p2 share one 16-lane gather (p1 in lanes 0-7, p2 in 8-15). Returns the
/// candidates for both cells; p1 == p2 yields identical candidates because
/// both halves come from the same gather.
template <LaneOperator Op, class B, class Cells>
std::array<Intensity, 2> pair_candidates(const Cells& cells, const Op& op, const Neighborhood& nb,
                                         Addr p1, Addr p2) {
  constexpr Direction dir = Op::kDirection;
  const Image2D& bound = op.lane_bound();
  const lanes::LaneBatch addrs = B::shift_offsets_dual(p1, p2, nb);
  const lanes::LaneBatch vals = cells.template gather<B>(addrs);
  const Intensity v1 = cells.load(p1);
  const Intensity v2 = cells.load(p2);
  lanes::LaneBatch own;
  for (std::size_t i = 0; i < 8; ++i) {
    own[i] = v1;
    own[i + 8] = v2;
  }
  // Lanes whose neighbor can still propagate into the half's pixel.
  const lanes::LaneMask donors =
      B::cmp_mask(vals, own, dir == Direction::kMax ? lanes::Relation::kGreater : lanes::Relation::kLess);
  const Intensity best1 = B::reduce_extremum(vals, donors & lanes::kLowHalf, dir, v1);
  const Intensity best2 = B::reduce_extremum(vals, donors & lanes::kHighHalf, dir, v2);
  const auto clamp = [&](Intensity v, Addr p) {
    const Intensity b = bound[p];
    return dir == Direction::kMax ? (v < b ? v : b) : (v > b ? v : b);
  };
  return {clamp(best1, p1), clamp(best2, p2)};
}

template <LaneOperator Op, class B, class Cells>
RunStats batched_loop(const Cells& cells, WaveQueue& current, WaveQueue& next, const Op& op,
                      const Neighborhood& nb, const EngineOptions& opt) {
  constexpr Direction dir = Op::kDirection;
  constexpr lanes::Relation behind = dir == Direction::kMax ? lanes::Relation::kLess : lanes::Relation::kGreater;
  const std::span<const Intensity> bound = op.lane_bound().data();
  RunStats st;
  while (!current.empty()) {
    check_ceiling(++st.iterations, opt);
    // Identification: gather the neighborhood, compare to a mask, compact the
    // selected lanes into the next wave through the prefix sum.
    while (auto e = current.pop()) {
      const Addr p = e->addr;
      const lanes::LaneBatch addrs = B::shift_offsets(p, nb);
      const lanes::LaneBatch vals = cells.template gather<B>(addrs);
      const lanes::LaneBatch bounds = B::gather(bound, addrs);
      const lanes::LaneBatch donor = lanes::LaneBatch::broadcast(cells.load(p));
      // Lanes past the neighborhood hold p itself; a concurrent writer can
      // raise p between the load and the gather, so they are masked off.
      const lanes::LaneMask mask =
          B::cmp_mask(vals, donor, behind) & B::cmp_mask(vals, bounds, behind) & lanes::kLowHalf;
      const lanes::LaneBatch keys = B::combine(donor, bounds, opposite(dir));
      st.elements_identified += next.batch_append(addrs, keys, mask, B::prefix_sum8(mask));
    }
    // Propagation: two receivers per step; an odd tail duplicates p1 into the
    // upper half.
    while (auto first = next.pop()) {
      const auto second = next.pop();
      const Addr p1 = first->addr;
      const Addr p2 = second ? second->addr : p1;
      st.elements_propagated += second ? 2 : 1;
      // With p1 == p2 both candidates are equal and the second merge is a
      // no-op.
      const auto cand = pair_candidates<Op, B>(cells, op, nb, p1, p2);
      if (cells.merge(op, p1, cand[0])) current.push(p1, op.priority_key(p1, cand[0]));
      if (cells.merge(op, p2, cand[1])) current.push(p2, op.priority_key(p2, cand[1]));
    }
    if (opt.on_iteration) opt.on_iteration(st.iterations);
  }
  return st;
}

inline WaveQueue requeue(WaveQueue& seeds, QueueKind kind, Direction order) {
  WaveQueue out(kind, order);
  while (auto e = seeds.pop()) out.push(e->addr, e->key);
  return out;
}

/// Runs `variant` from `seeds` over the cells. The batched variant needs a
/// LaneOperator and an 8-neighborhood; with 4-neighborhoods it runs the
/// scalar two-phase loop.
template <PropagationOperator Op, class Cells>
RunStats run_variant(const Cells& cells, WaveQueue& seeds, const Op& op, const Neighborhood& nb,
                     EngineVariant variant, QueueKind kind, const EngineOptions& opt) {
  WaveQueue current = requeue(seeds, kind, Op::kDirection);
  if (variant == EngineVariant::kClassic) return classic_loop(cells, current, op, nb, opt);
  WaveQueue next(kind, Op::kDirection);
  if (variant == EngineVariant::kBatched) {
    if constexpr (LaneOperator<Op>) {
      if (nb.size() == 8) {
        if (lanes::resolve(opt.backend) == lanes::Backend::kHardware) {
          return batched_loop<Op, lanes::HardwareBackend>(cells, current, next, op, nb, opt);
        }
        return batched_loop<Op, lanes::ScalarBackend>(cells, current, next, op, nb, opt);
      }
    } else {
      throw UnsupportedOperator("operator has no lane form; batched engine unavailable");
    }
  }
  return two_phase_loop(cells, current, next, op, nb, opt);
}

}  // namespace detail

/// Classic push-style propagation: extract a donor, write every improvable
/// neighbor, enqueue it. Uses the seeds' queue kind.
template <PropagationOperator Op>
RunStats run_classic(Image2D& state, WaveQueue seeds, const Op& op, const Neighborhood& nb,
                     const EngineOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  RunStats st = detail::run_variant(detail::LocalCells{state.data()}, seeds, op, nb,
                                    EngineVariant::kClassic, seeds.kind(), opt);
  st.prop_ms = st.total_ms = detail::ms_since(start);
  return st;
}

/// Two-phase propagation: receivers are identified first, then each one
/// updates only its own cell.
template <PropagationOperator Op>
RunStats run_two_phase(Image2D& state, WaveQueue seeds, const Op& op, const Neighborhood& nb,
                       QueueKind kind, const EngineOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  RunStats st = detail::run_variant(detail::LocalCells{state.data()}, seeds, op, nb,
                                    EngineVariant::kTwoPhase, kind, opt);
  st.prop_ms = st.total_ms = detail::ms_since(start);
  return st;
}

/// Two-phase propagation on 16-lane batches. Throws UnsupportedOperator for
/// operators without a lane form.
template <PropagationOperator Op>
RunStats run_two_phase_batched(Image2D& state, WaveQueue seeds, const Op& op,
                               const Neighborhood& nb, QueueKind kind,
                               const EngineOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  RunStats st = detail::run_variant(detail::LocalCells{state.data()}, seeds, op, nb,
                                    EngineVariant::kBatched, kind, opt);
  st.prop_ms = st.total_ms = detail::ms_since(start);
  return st;
}

template <PropagationOperator Op>
RunStats run_engine(EngineVariant variant, Image2D& state, WaveQueue seeds, const Op& op,
                    const Neighborhood& nb, QueueKind kind, const EngineOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  RunStats st = detail::run_variant(detail::LocalCells{state.data()}, seeds, op, nb, variant, kind, opt);
  st.prop_ms = st.total_ms = detail::ms_since(start);
  return st;
}

struct Violation {
  Addr donor = 0;
  Addr receiver = 0;
};

/// Full sweep for a pair (donor, receiver) on which the operator could still
/// propagate. Empty result means the state is a fixpoint.
template <PropagationOperator Op>
std::optional<Violation> find_violation(const Image2D& state, const Op& op, const Neighborhood& nb) {
  for (const Addr p : scan_raster(state)) {
    for (const std::ptrdiff_t d : nb.offsets()) {
      const auto q = static_cast<Addr>(p + d);
      if (op.condition(q, state[q], state[p])) return Violation{p, q};
    }
  }
  return std::nullopt;
}

}  // namespace iwpp
