#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "iwpp/engine.hpp"
#include "iwpp/execution.hpp"
#include "iwpp/grid.hpp"

namespace iwpp {

/// 64-bit FNV-1a over the interior, each cell as 4 little-endian bytes.
std::uint64_t checksum(const Image2D& img);

struct BenchRecord {
  std::string op;
  std::string engine;
  std::string queue;
  std::size_t threads = 1;
  std::size_t tiles = 1;
  std::size_t width = 0;
  std::size_t height = 0;
  double coverage = 0.0;
  double init_ms = 0.0;
  double prop_ms = 0.0;
  double total_ms = 0.0;
  std::uint64_t identified = 0;
  std::uint64_t propagated = 0;
  std::uint64_t checksum = 0;
};

/// operator,engine,queue,threads,tiles,width,height,coverage,init_ms,prop_ms,total_ms,identified,propagated,checksum
std::string csv_header();
/// One CSV line without the newline. Times are rounded to whole
/// milliseconds, the checksum is 16 hex digits.
std::string csv_line(const BenchRecord& r);

BenchRecord make_record(const std::string& op, const ExecutionConfig& cfg, const Image2D& result,
                        double coverage, const RunStats& stats);

struct Size2D {
  std::size_t width = 0;
  std::size_t height = 0;
};

struct BenchMatrix {
  std::vector<std::string> ops{"recon"};
  std::vector<EngineVariant> engines{EngineVariant::kTwoPhase};
  std::vector<QueueKind> queues{QueueKind::kFifo};
  std::vector<std::size_t> threads{1};
  std::vector<std::size_t> tiles{1};
  std::vector<Size2D> sizes{{256, 256}};
  std::vector<double> coverages{50.0};
  std::vector<WorkerSpec> workers;
  Connectivity connectivity = Connectivity::kEight;
  std::size_t repeats = 1;
  std::size_t blobs = 12;
  std::uint64_t seed = 1;
  Intensity marker_drop = 32;
};

struct BenchDivergence {
  std::string first;
  std::string second;
};

struct BenchOutcome {
  std::vector<BenchRecord> records;
  std::optional<BenchDivergence> divergence;
  std::vector<std::string> notes;  // skipped configurations and similar
};

/// Runs every configuration `repeats` times on generated fixtures, writing
/// the CSV to `out` as it goes (header first, then one line per run, with
/// "# ..." comment lines for notes and the coefficient of variation).
/// Stops at the first checksum that differs from another configuration on
/// the same input.
BenchOutcome run_bench(const BenchMatrix& matrix, std::ostream& out);

/// Runs one operator by name ("recon", "edt", "fill") on a generated
/// fixture's inputs and returns the output image.
struct OpRun {
  Image2D image;
  RunStats stats;
};
OpRun run_named(const std::string& op, const Image2D& tissue, Connectivity conn, const ExecutionConfig& cfg,
                Intensity marker_drop = 32);

}  // namespace iwpp
