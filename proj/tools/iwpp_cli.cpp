// iwpp: generate fixtures, run operators, benchmark engine variants.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iwpp/bench.hpp"
#include "iwpp/generate.hpp"
#include "iwpp/operators.hpp"
#include "iwpp/pgm.hpp"

namespace {

using namespace iwpp;

const std::map<std::string, EngineVariant> kEngines{
    {"classic", EngineVariant::kClassic},
    {"two-phase", EngineVariant::kTwoPhase},
    {"two_phase", EngineVariant::kTwoPhase},
    {"batched", EngineVariant::kBatched},
};
const std::map<std::string, QueueKind> kQueues{{"fifo", QueueKind::kFifo}, {"priority", QueueKind::kPriority}};

struct ExecFlags {
  std::string engine = "two-phase";
  std::string queue = "fifo";
  std::size_t threads = 1;
  std::size_t tiles = 1;
  int connectivity = 8;
  std::vector<std::string> workers;
};

void add_exec_flags(CLI::App* cmd, ExecFlags& f) {
  cmd->add_option("--connectivity", f.connectivity, "4 or 8")->check(CLI::IsMember({4, 8}));
  cmd->add_option("--threads", f.threads, "worker threads (default $IWPP_THREADS or 1)")
      ->envname("IWPP_THREADS")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tiles", f.tiles, "horizontal strips")->check(CLI::PositiveNumber);
  cmd->add_option("--worker", f.workers, "tile worker name:speedup[:threads], repeatable");
}

Connectivity to_connectivity(int c) { return c == 4 ? Connectivity::kFour : Connectivity::kEight; }

std::vector<WorkerSpec> parse_workers(const std::vector<std::string>& specs) {
  std::vector<WorkerSpec> out;
  for (const auto& s : specs) out.push_back(parse_worker(s));
  return out;
}

void append_csv(const std::string& path, const BenchRecord& rec) {
  if (path.empty()) {
    std::cout << csv_header() << '\n' << csv_line(rec) << '\n';
    return;
  }
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream os(path, std::ios::app);
  if (!os) throw std::runtime_error("cannot open " + path);
  if (fresh) os << csv_header() << '\n';
  os << csv_line(rec) << '\n';
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void save_image(const std::string& path, const Image2D& img, Intensity maxval) {
  if (ends_with(path, ".raw")) {
    write_file(path, write_raw(img));
  } else {
    write_file(path, write_pgm(img, maxval));
  }
}

/// Distances for display: rounded square roots in a PGM, squared values in
/// raw files. Unreachable pixels saturate the PGM.
void save_distance(const std::string& path, const Image2D& squared) {
  if (ends_with(path, ".raw")) {
    write_file(path, write_raw(squared));
    return;
  }
  Image2D shown(squared.width(), squared.height(), 0, 0);
  Intensity top = 1;
  for (const Addr p : scan_raster(squared)) {
    const double d = squared[p] == kInfinity ? 65535.0 : std::round(std::sqrt(static_cast<double>(squared[p])));
    shown[p] = static_cast<Intensity>(std::min(d, 65535.0));
    top = std::max(top, shown[p]);
  }
  write_file(path, write_pgm(shown, top));
}

int cmd_generate(std::size_t width, std::size_t height, double coverage, std::size_t blobs, std::uint64_t seed,
                 const std::string& out, const std::string& marker_out, Intensity drop) {
  const Image2D img = generate_tissue({width, height, coverage, blobs, seed});
  write_file(out, write_pgm(img, 255));
  if (!marker_out.empty()) write_file(marker_out, write_pgm(lowered_marker(img, drop), 255));
  std::cerr << "generated " << width << "x" << height << " coverage " << coverage_percent(img) << "%\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Irregular wavefront propagation: reconstruction, distance transform, fill-holes"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a synthetic tissue-like PGM");
  std::size_t g_width = 256, g_height = 256, g_blobs = 12;
  double g_coverage = 50.0;
  std::uint64_t g_seed = 1;
  std::string g_out, g_marker;
  Intensity g_drop = 32;
  gen->add_option("--width", g_width)->check(CLI::PositiveNumber);
  gen->add_option("--height", g_height)->check(CLI::PositiveNumber);
  gen->add_option("--coverage", g_coverage, "foreground percent");
  gen->add_option("--blobs", g_blobs);
  gen->add_option("--seed", g_seed);
  gen->add_option("--out", g_out)->required();
  gen->add_option("--marker-out", g_marker, "also write the marker max(I - drop, 0)");
  gen->add_option("--drop", g_drop, "marker drop h");

  // run
  auto* run = app.add_subcommand("run", "run one operator");
  std::string r_op, r_marker, r_mask, r_in, r_out, r_csv;
  ExecFlags r_flags;
  run->add_option("op", r_op, "recon | edt | fill")->required()->check(CLI::IsMember({"recon", "edt", "fill"}));
  run->add_option("--marker", r_marker);
  run->add_option("--mask", r_mask);
  run->add_option("--in", r_in);
  run->add_option("--out", r_out)->required();
  run->add_option("--csv", r_csv, "append the run record here instead of stdout");
  run->add_option("--engine", r_flags.engine)->transform(CLI::IsMember(kEngines));
  run->add_option("--queue", r_flags.queue)->transform(CLI::IsMember(kQueues));
  add_exec_flags(run, r_flags);

  // bench
  auto* bench = app.add_subcommand("bench", "benchmark a matrix of configurations");
  std::vector<std::string> b_ops{"recon"}, b_engines{"two-phase"}, b_queues{"fifo"};
  std::vector<std::size_t> b_threads{1}, b_tiles{1}, b_widths{256}, b_heights{256};
  std::vector<double> b_coverages{50.0};
  std::size_t b_repeats = 1, b_blobs = 12;
  std::uint64_t b_seed = 1;
  std::string b_csv;
  int b_conn = 8;
  std::vector<std::string> b_workers;
  bench->add_option("--op", b_ops)->check(CLI::IsMember({"recon", "edt", "fill"}));
  bench->add_option("--engine", b_engines)->check(CLI::IsMember(kEngines));
  bench->add_option("--queue", b_queues)->check(CLI::IsMember(kQueues));
  bench->add_option("--threads", b_threads)->envname("IWPP_THREADS")->check(CLI::PositiveNumber);
  bench->add_option("--tiles", b_tiles)->check(CLI::PositiveNumber);
  bench->add_option("--width", b_widths)->check(CLI::PositiveNumber);
  bench->add_option("--height", b_heights)->check(CLI::PositiveNumber);
  bench->add_option("--coverage", b_coverages);
  bench->add_option("--repeats", b_repeats)->check(CLI::PositiveNumber);
  bench->add_option("--blobs", b_blobs);
  bench->add_option("--seed", b_seed);
  bench->add_option("--csv", b_csv, "write CSV here instead of stdout");
  bench->add_option("--connectivity", b_conn)->check(CLI::IsMember({4, 8}));
  bench->add_option("--worker", b_workers, "tile worker name:speedup[:threads], repeatable");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_generate(g_width, g_height, g_coverage, g_blobs, g_seed, g_out, g_marker, g_drop);

    if (*run) {
      ExecutionConfig cfg;
      cfg.engine = kEngines.at(r_flags.engine);
      cfg.queue = kQueues.at(r_flags.queue);
      cfg.threads = r_flags.threads;
      cfg.tiles = r_flags.tiles;
      cfg.workers = parse_workers(r_flags.workers);
      const Connectivity conn = to_connectivity(r_flags.connectivity);
      Image2D result;
      RunStats stats;
      double coverage = 0.0;
      if (r_op == "recon") {
        if (r_marker.empty() || r_mask.empty()) {
          std::cerr << "run recon needs --marker and --mask\n";
          return 1;
        }
        const PgmImage marker = load_image(r_marker);
        const PgmImage mask = load_image(r_mask);
        if (!marker.image.same_shape(mask.image)) {
          std::cerr << "marker and mask differ in size\n";
          return 2;
        }
        if (const auto bad = first_excess(marker.image, mask.image)) {
          std::cerr << "marker exceeds mask at pixel (" << bad->x << ", " << bad->y << "): "
                    << marker.image.at(bad->x, bad->y) << " > " << mask.image.at(bad->x, bad->y) << '\n';
          return 2;
        }
        auto r = reconstruct(marker.image, mask.image, conn, cfg);
        coverage = coverage_percent(mask.image);
        save_image(r_out, r.image, std::max(mask.maxval, marker.maxval));
        result = std::move(r.image);
        stats = r.stats;
      } else {
        if (r_in.empty()) {
          std::cerr << "run " << r_op << " needs --in\n";
          return 1;
        }
        const PgmImage in = load_image(r_in);
        coverage = coverage_percent(in.image);
        if (r_op == "edt") {
          auto r = edt(in.image, conn, cfg);
          if (!r.complete) std::cerr << "warning: no background pixel; distances are unbounded\n";
          save_distance(r_out, r.distance);
          result = std::move(r.distance);
          stats = r.stats;
        } else {
          auto r = fill_holes(in.image, in.maxval, conn, cfg);
          save_image(r_out, r.image, in.maxval);
          result = std::move(r.image);
          stats = r.stats;
        }
      }
      append_csv(r_csv, make_record(r_op, cfg, result, coverage, stats));
      return 0;
    }

    if (*bench) {
      BenchMatrix m;
      m.ops = b_ops;
      m.engines.clear();
      for (const auto& e : b_engines) m.engines.push_back(kEngines.at(e));
      m.queues.clear();
      for (const auto& q : b_queues) m.queues.push_back(kQueues.at(q));
      m.threads = b_threads;
      m.tiles = b_tiles;
      m.sizes.clear();
      for (const auto w : b_widths) {
        for (const auto h : b_heights) m.sizes.push_back({w, h});
      }
      m.coverages = b_coverages;
      m.repeats = b_repeats;
      m.blobs = b_blobs;
      m.seed = b_seed;
      m.connectivity = to_connectivity(b_conn);
      m.workers = parse_workers(b_workers);
      BenchOutcome outcome;
      if (b_csv.empty()) {
        outcome = run_bench(m, std::cout);
      } else {
        std::ofstream os(b_csv);
        if (!os) {
          std::cerr << "cannot open " << b_csv << '\n';
          return 1;
        }
        outcome = run_bench(m, os);
      }
      if (outcome.divergence) {
        std::cerr << "checksum divergence between " << outcome.divergence->first << " and "
                  << outcome.divergence->second << '\n';
        return 3;
      }
      return 0;
    }
  } catch (const InvalidInput& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
