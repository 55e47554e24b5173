#include "iwpp/parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace iwpp {

std::size_t ParallelPlan::owner_of(std::size_t row) const {
  const auto it = std::upper_bound(blocks.begin(), blocks.end(), row,
                                   [](std::size_t r, const RowBlock& b) { return r < b.end; });
  IWPP_EXPECTS(it != blocks.end(), "ParallelPlan: row outside every block");
  return static_cast<std::size_t>(it - blocks.begin());
}

ParallelPlan partition_rows(std::size_t height, std::size_t threads) {
  if (threads == 0) throw std::invalid_argument("partition_rows: thread count must be at least 1");
  ParallelPlan plan;
  plan.threads = threads;
  const std::size_t base = height / threads;
  const std::size_t extra = height % threads;
  std::size_t row = 0;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t rows = base + (t < extra ? 1 : 0);
    plan.blocks.push_back({row, row + rows});
    row += rows;
  }
  return plan;
}

}  // namespace iwpp
