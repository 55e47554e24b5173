#include "iwpp/bench.hpp"

#include <cmath>
#include <cstdio>
#include <locale>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "iwpp/generate.hpp"
#include "iwpp/operators.hpp"

namespace iwpp {

std::uint64_t checksum(const Image2D& img) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const Addr p : scan_raster(img)) {
    const Intensity v = img[p];
    for (int b = 0; b < 4; ++b) {
      h ^= (v >> (8 * b)) & 0xFFu;
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

std::string csv_header() {
  return "operator,engine,queue,threads,tiles,width,height,coverage,init_ms,prop_ms,total_ms,identified,"
         "propagated,checksum";
}

std::string csv_line(const BenchRecord& r) {
  char sum[17];
  std::snprintf(sum, sizeof sum, "%016llx", static_cast<unsigned long long>(r.checksum));
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << r.op << ',' << r.engine << ',' << r.queue << ',' << r.threads << ',' << r.tiles << ',' << r.width << ','
     << r.height << ',' << r.coverage << ',' << std::llround(r.init_ms) << ','
     << std::llround(r.prop_ms) << ',' << std::llround(r.total_ms) << ',' << r.identified << ',' << r.propagated
     << ',' << sum;
  return os.str();
}

BenchRecord make_record(const std::string& op, const ExecutionConfig& cfg, const Image2D& result,
                        double coverage, const RunStats& stats) {
  BenchRecord r;
  r.op = op;
  r.engine = engine_name(cfg.engine);
  r.queue = queue_name(cfg.queue);
  r.threads = cfg.threads;
  r.tiles = cfg.tiles;
  r.width = result.width();
  r.height = result.height();
  r.coverage = coverage;
  r.init_ms = stats.init_ms;
  r.prop_ms = stats.prop_ms;
  r.total_ms = stats.total_ms;
  r.identified = stats.elements_identified;
  r.propagated = stats.elements_propagated;
  r.checksum = checksum(result);
  return r;
}

OpRun run_named(const std::string& op, const Image2D& tissue, Connectivity conn, const ExecutionConfig& cfg,
                Intensity marker_drop) {
  if (op == "recon") {
    auto r = reconstruct(lowered_marker(tissue, marker_drop), tissue, conn, cfg);
    return {std::move(r.image), r.stats};
  }
  if (op == "edt") {
    auto r = edt(binarize(tissue), conn, cfg);
    return {std::move(r.distance), r.stats};
  }
  if (op == "fill") {
    auto r = fill_holes(tissue, 255, conn, cfg);
    return {std::move(r.image), r.stats};
  }
  throw std::invalid_argument("unknown operator '" + op + "'");
}

namespace {

std::string describe(const BenchRecord& r) {
  std::ostringstream os;
  os << r.op << '/' << r.engine << '/' << r.queue << "/threads=" << r.threads << "/tiles=" << r.tiles;
  return os.str();
}

double coefficient_of_variation(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double mean = 0.0;
  for (const double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (mean == 0.0) return 0.0;
  double var = 0.0;
  for (const double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(xs.size() - 1);
  return std::sqrt(var) / mean;
}

}  // namespace

BenchOutcome run_bench(const BenchMatrix& m, std::ostream& out) {
  BenchOutcome outcome;
  out << "# iwpp bench; fixtures from " << kRngName << " seed " << m.seed << ", connectivity "
      << static_cast<int>(m.connectivity) << '\n'
      << csv_header() << '\n';
  for (const Size2D& size : m.sizes) {
    for (const double coverage : m.coverages) {
      const Image2D tissue = generate_tissue({size.width, size.height, coverage, m.blobs, m.seed});
      for (const std::string& op : m.ops) {
        std::optional<BenchRecord> reference;
        for (const EngineVariant engine : m.engines) {
          for (const QueueKind queue : m.queues) {
            for (const std::size_t threads : m.threads) {
              for (const std::size_t tiles : m.tiles) {
                ExecutionConfig cfg;
                cfg.engine = engine;
                cfg.queue = queue;
                cfg.threads = threads;
                cfg.tiles = tiles;
                cfg.workers = m.workers;
                std::vector<double> times;
                for (std::size_t rep = 0; rep < m.repeats; ++rep) {
                  OpRun run;
                  try {
                    run = run_named(op, tissue, m.connectivity, cfg, m.marker_drop);
                  } catch (const UnsupportedOperator& e) {
                    const std::string note = op + "/" + engine_name(engine) + ": skipped (" + e.what() + ")";
                    out << "# " << note << '\n';
                    outcome.notes.push_back(note);
                    break;
                  }
                  const BenchRecord rec = make_record(op, cfg, run.image, coverage, run.stats);
                  out << csv_line(rec) << '\n';
                  outcome.records.push_back(rec);
                  times.push_back(rec.total_ms);
                  if (!reference) {
                    reference = rec;
                  } else if (reference->checksum != rec.checksum) {
                    outcome.divergence = BenchDivergence{describe(*reference), describe(rec)};
                    out << "# checksum divergence: " << outcome.divergence->first << " vs "
                        << outcome.divergence->second << '\n';
                    out.flush();
                    return outcome;
                  }
                }
                if (times.size() > 1) {
                  char cv[32];
                  std::snprintf(cv, sizeof cv, "%.4f", coefficient_of_variation(times));
                  out << "# cv " << describe(outcome.records.back()) << " " << size.width << 'x' << size.height
                      << " coverage=" << std::llround(coverage) << " total_ms=" << cv << '\n';
                }
              }
            }
          }
        }
      }
    }
  }
  out.flush();
  return outcome;
}

}  // namespace iwpp
