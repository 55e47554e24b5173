#include "iwpp/pixel_queue.hpp"

#include <algorithm>
#include <utility>

namespace iwpp {

namespace {
constexpr std::size_t kInitialRing = 64;
}

WaveQueue::WaveQueue(QueueKind kind, Direction order) : kind_(kind), order_(order) {}

bool WaveQueue::heap_before(const QueueEntry& a, const QueueEntry& b) const {
  // std heap algorithms keep the "largest" element on top.
  return order_ == Direction::kMax ? a.key < b.key : a.key > b.key;
}

std::size_t WaveQueue::size() const {
  return kind_ == QueueKind::kFifo ? count_ : heap_.size();
}

void WaveQueue::reserve_ring(std::size_t extra) {
  if (count_ + extra <= ring_.size()) return;
  std::size_t cap = ring_.empty() ? kInitialRing : ring_.size();
  while (cap < count_ + extra) cap *= 2;
  std::vector<QueueEntry> grown(cap);
  const std::size_t mask = ring_.size() - 1;
  for (std::size_t i = 0; i < count_; ++i) grown[i] = ring_[(head_ + i) & mask];
  ring_ = std::move(grown);
  head_ = 0;
}

void WaveQueue::push(Addr addr, std::uint32_t key) {
  ++pushes_;
  if (kind_ == QueueKind::kFifo) {
    reserve_ring(1);
    ring_[(head_ + count_) & (ring_.size() - 1)] = {addr, key};
    ++count_;
  } else {
    heap_.push_back({addr, key});
    std::push_heap(heap_.begin(), heap_.end(),
                   [this](const QueueEntry& a, const QueueEntry& b) { return heap_before(a, b); });
  }
}

std::optional<QueueEntry> WaveQueue::pop() {
  if (empty()) return std::nullopt;
  ++pops_;
  if (kind_ == QueueKind::kFifo) {
    const QueueEntry e = ring_[head_];
    head_ = (head_ + 1) & (ring_.size() - 1);
    --count_;
    return e;
  }
  std::pop_heap(heap_.begin(), heap_.end(),
                [this](const QueueEntry& a, const QueueEntry& b) { return heap_before(a, b); });
  const QueueEntry e = heap_.back();
  heap_.pop_back();
  return e;
}

void WaveQueue::clear() {
  head_ = 0;
  count_ = 0;
  heap_.clear();
}

std::uint8_t WaveQueue::batch_append(const lanes::LaneBatch& addrs, const lanes::LaneBatch& keys,
                                     lanes::LaneMask mask, const lanes::LaneBatch& prefix) {
  const auto n = lanes::ScalarBackend::popcount(mask);
#if defined(IWPP_CONTRACT_CHECKS) && IWPP_CONTRACT_CHECKS
  {
    std::uint32_t running = 0;
    for (std::size_t i = 0; i < lanes::kLaneCount; ++i) {
      if (!mask.test(i)) continue;
      ++running;
      IWPP_EXPECTS(prefix[i] == running, "batch_append: prefix inconsistent with mask");
    }
  }
#endif
  if (n == 0) return 0;
  pushes_ += n;
  if (kind_ == QueueKind::kFifo) {
    // Scatter: selected lane i goes to slot tail + prefix[i] - 1.
    reserve_ring(n);
    const std::size_t tail = head_ + count_;
    const std::size_t wrap = ring_.size() - 1;
    for (std::size_t i = 0; i < lanes::kLaneCount; ++i) {
      if (mask.test(i)) ring_[(tail + prefix[i] - 1) & wrap] = {addrs[i], keys[i]};
    }
    count_ += n;
  } else {
    const auto before = [this](const QueueEntry& a, const QueueEntry& b) { return heap_before(a, b); };
    for (std::size_t i = 0; i < lanes::kLaneCount; ++i) {
      if (!mask.test(i)) continue;
      heap_.push_back({addrs[i], keys[i]});
      std::push_heap(heap_.begin(), heap_.end(), before);
    }
  }
  return n;
}

void swap_waves(WaveQueue& current, WaveQueue& next) {
  std::swap(current, next);
  next.clear();
  next.pushes_ = next.pops_ = 0;
}

}  // namespace iwpp
