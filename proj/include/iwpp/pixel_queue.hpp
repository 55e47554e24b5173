#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "iwpp/grid.hpp"
#include "iwpp/lanes.hpp"

namespace iwpp {

enum class QueueKind { kFifo, kPriority };

struct QueueEntry {
  Addr addr = 0;
  std::uint32_t key = 0;
  friend bool operator==(const QueueEntry&, const QueueEntry&) = default;
};

/// Wavefront container: a growable FIFO ring or a binary heap.
///
/// Priority keys are captured at push time and never updated. With
/// Direction::kMax the largest key pops first; kMin pops the smallest.
/// Order among equal keys is unspecified. A queue is owned by one thread.
class WaveQueue {
 public:
  explicit WaveQueue(QueueKind kind = QueueKind::kFifo, Direction order = Direction::kMax);

  QueueKind kind() const { return kind_; }
  Direction order() const { return order_; }

  void push(Addr addr, std::uint32_t key = 0);
  std::optional<QueueEntry> pop();
  bool empty() const { return size() == 0; }
  std::size_t size() const;
  /// Drops all entries; counters are kept.
  void clear();

  std::uint64_t pushes() const { return pushes_; }
  std::uint64_t pops() const { return pops_; }

  /// Appends the lanes selected by `mask` in ascending lane order.
  ///
  /// `prefix` must hold, for each selected lane i, the count of mask bits
  /// 0..i; lane i lands at tail + prefix[i] - 1. Returns popcount(mask).
  std::uint8_t batch_append(const lanes::LaneBatch& addrs, const lanes::LaneBatch& keys,
                            lanes::LaneMask mask, const lanes::LaneBatch& prefix);

  /// current <- next, next <- empty (counters travel with the contents).
  friend void swap_waves(WaveQueue& current, WaveQueue& next);

 private:
  bool heap_before(const QueueEntry& a, const QueueEntry& b) const;
  void reserve_ring(std::size_t extra);

  QueueKind kind_;
  Direction order_;
  // FIFO: power-of-two ring.
  std::vector<QueueEntry> ring_;
  std::size_t head_ = 0;
  std::size_t count_ = 0;
  // PRIORITY: binary heap.
  std::vector<QueueEntry> heap_;
  std::uint64_t pushes_ = 0;
  std::uint64_t pops_ = 0;
};

}  // namespace iwpp
