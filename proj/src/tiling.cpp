#include "iwpp/tiling.hpp"

#include <numeric>
#include <string>

namespace iwpp {

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_digits(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("invalid number: '" + std::string(whole) + "'");
  cpp_int v = 0;
  for (const char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("invalid number: '" + std::string(whole) + "'");
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

std::vector<Rational> partition_by_speedup(const std::vector<Rational>& speedups) {
  if (speedups.empty()) throw std::invalid_argument("partition_by_speedup: no workers");
  Rational total = 0;
  for (const Rational& s : speedups) {
    if (s <= 0) throw std::invalid_argument("partition_by_speedup: speedups must be positive");
    total += s;
  }
  std::vector<Rational> out;
  out.reserve(speedups.size());
  for (const Rational& s : speedups) out.push_back(Rational(100) * s / total);
  return out;
}

std::vector<std::size_t> largest_remainder(const std::vector<Rational>& percentages, std::size_t total) {
  std::vector<std::size_t> out(percentages.size());
  std::vector<Rational> rest(percentages.size());
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < percentages.size(); ++i) {
    const Rational exact = percentages[i] * total / 100;
    const cpp_int floor = numerator(exact) / denominator(exact);
    out[i] = floor.convert_to<std::size_t>();
    rest[i] = exact - Rational(floor);
    assigned += out[i];
  }
  IWPP_EXPECTS(assigned <= total, "largest_remainder: percentages exceed 100");
  std::vector<std::size_t> order(percentages.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rest[a] > rest[b]; });
  for (std::size_t k = 0; assigned < total && k < order.size(); ++k, ++assigned) ++out[order[k]];
  return out;
}

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational v;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const cpp_int den = parse_digits(s.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("invalid number: '" + std::string(text) + "' (zero denominator)");
    v = Rational(parse_digits(s.substr(0, slash), text), den);
  } else if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = s.substr(dot + 1);
    const cpp_int whole = dot == 0 ? cpp_int(0) : parse_digits(s.substr(0, dot), text);
    const cpp_int part = frac.empty() ? cpp_int(0) : parse_digits(frac, text);
    cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    v = Rational(whole * scale + part, scale);
  } else {
    v = Rational(parse_digits(s, text));
  }
  return negative ? Rational(-v) : v;
}

WorkerSpec parse_worker(std::string_view text) {
  WorkerSpec w;
  const auto first = text.find(':');
  if (first == std::string_view::npos || first == 0) {
    throw std::invalid_argument("worker spec must be name:speedup[:threads], got '" + std::string(text) + "'");
  }
  w.name = std::string(text.substr(0, first));
  std::string_view rest = text.substr(first + 1);
  const auto second = rest.find(':');
  w.speedup = parse_rational(rest.substr(0, second));
  if (w.speedup <= 0) throw std::invalid_argument("worker speedup must be positive: '" + std::string(text) + "'");
  if (second != std::string_view::npos) {
    const cpp_int threads = parse_digits(rest.substr(second + 1), text);
    if (threads == 0) throw std::invalid_argument("worker thread count must be at least 1");
    w.threads = threads.convert_to<std::size_t>();
  }
  return w;
}

void validate_plan(const TilePlan& plan, std::size_t height) {
  if (plan.strips.empty()) throw InvalidPlan("tile plan has no strips");
  if (plan.workers.empty()) throw InvalidPlan("tile plan has no workers");
  std::size_t row = 0;
  for (const Strip& s : plan.strips) {
    if (s.rows == 0) throw InvalidPlan("tile plan: strip shorter than one row");
    if (s.row_begin != row) throw InvalidPlan("tile plan: strips are not contiguous");
    if (s.worker >= plan.workers.size()) throw InvalidPlan("tile plan: strip assigned to unknown worker");
    row += s.rows;
  }
  if (row != height) throw InvalidPlan("tile plan: strips do not cover the image");
  if (plan.seams.size() != plan.strips.size() - 1) throw InvalidPlan("tile plan: seam count mismatch");
  for (std::size_t i = 0; i < plan.seams.size(); ++i) {
    const std::size_t lower = plan.strips[i + 1].row_begin;
    if (plan.seams[i].lower_row != lower || plan.seams[i].upper_row + 1 != lower) {
      throw InvalidPlan("tile plan: seam does not match strip boundary");
    }
  }
}

TilePlan make_tile_plan_rows(std::size_t height, const std::vector<std::size_t>& rows,
                             std::vector<WorkerSpec> workers) {
  if (workers.empty()) workers.push_back(WorkerSpec{});
  TilePlan plan;
  plan.workers = std::move(workers);
  std::size_t row = 0;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (j > 0) plan.seams.push_back({row - 1, row});
    plan.strips.push_back({row, rows[j], j % plan.workers.size()});
    row += rows[j];
  }
  validate_plan(plan, height);
  return plan;
}

TilePlan make_tile_plan(std::size_t height, std::size_t tiles, std::vector<WorkerSpec> workers) {
  if (tiles == 0) throw InvalidPlan("tile count must be at least 1");
  if (workers.empty()) workers.push_back(WorkerSpec{});
  std::vector<Rational> weights;
  for (std::size_t j = 0; j < tiles; ++j) weights.push_back(workers[j % workers.size()].speedup);
  const std::vector<std::size_t> rows = largest_remainder(partition_by_speedup(weights), height);
  return make_tile_plan_rows(height, rows, std::move(workers));
}

}  // namespace iwpp
