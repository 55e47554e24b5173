// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exits non-zero when any criterion fails.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "iwpp/bench.hpp"
#include "iwpp/generate.hpp"
#include "iwpp/operators.hpp"
#include "iwpp/oracles.hpp"
#include "iwpp/tiling.hpp"
#include "support.hpp"

using namespace iwpp;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;

  void fail_if(bool bad) { pass = pass && !bad; }
  __attribute__((format(printf, 2, 3))) void note(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    details.emplace_back(buf);
  }
};

constexpr std::array kConns{Connectivity::kFour, Connectivity::kEight};
constexpr std::array kEngines{EngineVariant::kClassic, EngineVariant::kTwoPhase, EngineVariant::kBatched};
constexpr std::array kQueues{QueueKind::kFifo, QueueKind::kPriority};

const char* conn_name(Connectivity c) { return c == Connectivity::kFour ? "N4" : "N8"; }

std::vector<test::ReconPair> recon_fixtures(std::size_t count, std::uint64_t seed) {
  test::Rng rng(seed);
  std::vector<test::ReconPair> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(test::random_recon_pair(rng, 64, 64, static_cast<unsigned>(i)));
  return out;
}

ExecutionConfig config(EngineVariant e, QueueKind q, std::size_t threads = 1, std::size_t tiles = 1) {
  ExecutionConfig c;
  c.engine = e;
  c.queue = q;
  c.threads = threads;
  c.tiles = tiles;
  return c;
}

// 1. Every reconstruction variant equals the sweep oracle.
Outcome oracle_equivalence() {
  Outcome o;
  const auto fixtures = recon_fixtures(200, 1001);
  std::size_t runs = 0, bad = 0;
  for (const auto conn : kConns) {
    std::size_t conn_bad = 0;
    for (const auto& p : fixtures) {
      const Image2D want = oracle_recon_parallel(p.marker, p.mask, conn);
      for (const auto e : kEngines) {
        for (const auto q : kQueues) {
          for (const std::size_t threads : {1u, 2u, 4u, 8u}) {
            for (const std::size_t tiles : {1u, 2u, 4u}) {
              ++runs;
              if (!reconstruct(p.marker, p.mask, conn, config(e, q, threads, tiles)).image.same_interior(want)) {
                ++conn_bad;
              }
            }
          }
        }
      }
    }
    o.note("%s: %zu mismatching runs", conn_name(conn), conn_bad);
    bad += conn_bad;
  }
  o.fail_if(bad != 0);
  o.summary = std::to_string(runs) + " runs, " + std::to_string(bad) + " mismatches";
  return o;
}

// 2. Prefix sums against a scalar inclusive scan, every mask.
template <class B>
std::size_t prefix_mismatches() {
  std::size_t bad = 0;
  for (std::uint32_t m = 0; m < 256; ++m) {
    const auto got = B::prefix_sum8({static_cast<std::uint16_t>(m)});
    std::uint32_t count = 0;
    for (std::size_t i = 0; i < 8; ++i) {
      count += (m >> i) & 1u;
      bad += got[i] != count;
    }
  }
  for (std::uint32_t m = 0; m < 65536; ++m) {
    const auto got = B::prefix_sum16({static_cast<std::uint16_t>(m)});
    std::uint32_t count = 0;
    for (std::size_t i = 0; i < 16; ++i) {
      count += (m >> i) & 1u;
      bad += got[i] != count;
    }
  }
  return bad;
}

Outcome exhaustive_prefix() {
  Outcome o;
  const std::size_t scalar = prefix_mismatches<lanes::ScalarBackend>();
  o.note("scalar backend: %zu wrong lanes", scalar);
  o.fail_if(scalar != 0);
  if (lanes::hardware_available()) {
    const std::size_t hw = prefix_mismatches<lanes::HardwareBackend>();
    o.note("avx512 backend: %zu wrong lanes", hw);
    o.fail_if(hw != 0);
  } else {
    o.note("avx512 backend: not available on this machine");
  }
  o.summary = "256 eight-lane and 65536 sixteen-lane masks";
  return o;
}

// 3. The four chamfer baselines agree.
Outcome dt_baselines() {
  Outcome o;
  test::Rng rng(3003);
  std::size_t bad = 0;
  for (int i = 0; i < 200; ++i) {
    const Image2D b = test::random_binary(rng, 16, 16, 1 + static_cast<unsigned>(rng.below(40)));
    for (const auto conn : kConns) {
      const Image2D ref = oracle_dt_parallel(b, conn);
      const bool agree = oracle_dt_sequential(b, conn).same_interior(ref) &&
                         normalize_seeded_dt(oracle_dt_queue(b, conn)).same_interior(ref) &&
                         normalize_seeded_dt(oracle_dt_hybrid(b, conn)).same_interior(ref) &&
                         test::brute_force_chamfer(b, conn).same_interior(ref);
      bad += !agree;
    }
  }
  o.fail_if(bad != 0);
  o.summary = "200 images x {N4, N8}, " + std::to_string(bad) + " disagreements";
  return o;
}

// 4. EDT bounds against brute force.
Outcome edt_properties() {
  Outcome o;
  test::Rng rng(4004);
  std::vector<Image2D> images;
  while (images.size() < 50) {
    Image2D b = test::random_blobs(rng, 48, 48, 3 + static_cast<unsigned>(rng.below(8)));
    if (test::has_background(b)) images.push_back(std::move(b));
  }
  std::vector<Image2D> exact;
  for (const auto& b : images) exact.push_back(test::brute_force_edt(b));
  double worst = 0.0;
  for (const auto conn : kConns) {
    for (const auto e : {EngineVariant::kClassic, EngineVariant::kTwoPhase}) {
      for (const auto q : kQueues) {
        std::size_t under = 0, bg_nonzero = 0, inexact = 0, fg_total = 0;
        double worst_mean = 0.0;
        for (std::size_t i = 0; i < images.size(); ++i) {
          const auto r = edt(images[i], conn, config(e, q));
          double rel = 0.0;
          std::size_t fg = 0;
          for (const Addr a : scan_raster(images[i])) {
            const Intensity m = r.distance[a], x = exact[i][a];
            under += m < x;
            inexact += m != x;
            if (images[i][a] == 0) {
              bg_nonzero += m != 0;
              continue;
            }
            ++fg;
            rel += (std::sqrt(static_cast<double>(m)) - std::sqrt(static_cast<double>(x))) /
                   std::sqrt(static_cast<double>(x));
          }
          fg_total += fg;
          if (fg) worst_mean = std::max(worst_mean, rel / static_cast<double>(fg));
        }
        o.note("%s %s/%s: %zu below exact, %zu nonzero background, %zu of %zu foreground inexact, "
               "worst per-image mean relative error %.2e",
               conn_name(conn), engine_name(e), queue_name(q), under, bg_nonzero, inexact, fg_total, worst_mean);
        o.fail_if(under != 0 || bg_nonzero != 0 || worst_mean > 0.01);
        worst = std::max(worst, worst_mean);
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "50 blob images, worst mean relative error %.2e (limit 1e-2)", worst);
  o.summary = buf;
  return o;
}

// 5. Priority order does not add propagation work on the 512x512 fixture.
Outcome priority_reduction() {
  Outcome o;
  const Image2D mask = generate_tissue({512, 512, 75.0, 12, 42});
  const Image2D marker = lowered_marker(mask, 32);
  o.note("fixture: 512x512, coverage %.2f%%, %s seed 42, marker = mask - 32", coverage_percent(mask), kRngName);
  for (const auto conn : kConns) {
    for (const auto e : kEngines) {
      const auto fifo = reconstruct(marker, mask, conn, config(e, QueueKind::kFifo));
      const auto prio = reconstruct(marker, mask, conn, config(e, QueueKind::kPriority));
      const bool same = checksum(fifo.image) == checksum(prio.image);
      const auto f = fifo.stats.elements_propagated, p = prio.stats.elements_propagated;
      o.note("%s %-9s propagated fifo %9llu priority %9llu ratio %.3f checksums %s", conn_name(conn), engine_name(e),
             static_cast<unsigned long long>(f), static_cast<unsigned long long>(p),
             static_cast<double>(f) / static_cast<double>(std::max<std::uint64_t>(p, 1)), same ? "equal" : "DIFFER");
      o.fail_if(!same || p > f);
    }
  }
  o.summary = "priority propagated <= fifo with identical checksums, every engine and connectivity";
  return o;
}

// 6. Tiled runs equal untiled runs.
Outcome tiled_equals_untiled() {
  Outcome o;
  const auto recon = recon_fixtures(20, 6006);
  std::vector<Image2D> tissue;
  for (std::uint64_t s = 0; s < 20; ++s) tissue.push_back(generate_tissue({64, 64, 30.0 + 3.0 * s, 6, 600 + s}));
  const std::size_t strip_counts[] = {2, 3, 4, 8};

  struct Tally {
    std::size_t runs = 0, bad = 0, pixels = 0;
  };
  auto check = [&](const char* name, const std::function<Image2D(std::size_t, Connectivity, const ExecutionConfig&)>& run,
                   std::size_t count, bool lane) {
    Tally t;
    for (std::size_t i = 0; i < count; ++i) {
      for (const auto conn : kConns) {
        for (const auto e : kEngines) {
          if (e == EngineVariant::kBatched && !lane) continue;
          for (const auto q : kQueues) {
            const Image2D flat = run(i, conn, config(e, q));
            for (const std::size_t k : strip_counts) {
              const Image2D tiled = run(i, conn, config(e, q, 1, k));
              ++t.runs;
              if (!tiled.same_interior(flat)) {
                ++t.bad;
                for (const Addr a : scan_raster(flat)) t.pixels += tiled[a] != flat[a];
              }
            }
          }
        }
      }
    }
    o.note("%-5s %zu tiled runs, %zu differ from untiled (%zu pixels in total)", name, t.runs, t.bad, t.pixels);
    o.fail_if(t.bad != 0);
  };
  check("recon", [&](std::size_t i, Connectivity c, const ExecutionConfig& cfg) {
    return reconstruct(recon[i].marker, recon[i].mask, c, cfg).image;
  }, recon.size(), true);
  check("fill", [&](std::size_t i, Connectivity c, const ExecutionConfig& cfg) {
    return fill_holes(tissue[i], 255, c, cfg).image;
  }, tissue.size(), true);
  check("edt", [&](std::size_t i, Connectivity c, const ExecutionConfig& cfg) {
    return edt(binarize(tissue[i]), c, cfg).distance;
  }, tissue.size(), false);
  // EDT has no unique fixpoint, so exact equality is not guaranteed; report
  // whether the tiled results still meet the EDT bounds of criterion 4.
  std::size_t under = 0, worst_runs = 0, bounded_runs = 0;
  for (std::size_t i = 0; i < tissue.size(); ++i) {
    const Image2D b = binarize(tissue[i]);
    if (!test::has_background(b)) continue;
    const Image2D exact = test::brute_force_edt(b);
    for (const auto conn : kConns) {
      for (const std::size_t k : strip_counts) {
        const Image2D m = edt(b, conn, config(EngineVariant::kTwoPhase, QueueKind::kFifo, 1, k)).distance;
        double rel = 0.0;
        std::size_t fg = 0;
        for (const Addr a : scan_raster(b)) {
          under += m[a] < exact[a];
          if (b[a] == 0) continue;
          ++fg;
          rel += (std::sqrt(static_cast<double>(m[a])) - std::sqrt(static_cast<double>(exact[a]))) /
                 std::sqrt(static_cast<double>(exact[a]));
        }
        ++bounded_runs;
        worst_runs += fg && rel / static_cast<double>(fg) > 0.01;
      }
    }
  }
  o.note("edt   tiled results against brute force: %zu pixels below exact, %zu of %zu runs above 1%% mean "
         "relative error",
         under, worst_runs, bounded_runs);
  o.summary = "strips {2,3,4,8}, recon/fill/edt on 64x64 fixtures";
  return o;
}

// 7. Thread count does not change checksums.
Outcome thread_determinism() {
  Outcome o;
  const auto fixtures = recon_fixtures(100, 7007);
  std::size_t bad = 0, runs = 0;
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const auto conn = i % 2 ? Connectivity::kFour : Connectivity::kEight;
    for (const auto e : kEngines) {
      const auto q = i % 3 ? QueueKind::kFifo : QueueKind::kPriority;
      std::uint64_t first = 0;
      for (const std::size_t t : {1u, 2u, 4u, 8u}) {
        const std::uint64_t sum = checksum(reconstruct(fixtures[i].marker, fixtures[i].mask, conn, config(e, q, t)).image);
        if (t == 1) first = sum;
        bad += sum != first;
        ++runs;
      }
    }
  }
  o.fail_if(bad != 0);
  o.summary = std::to_string(runs) + " runs on 100 fixtures, " + std::to_string(bad) + " checksum changes";
  return o;
}

// 8. The batched kernel equals the scalar two-phase loop.
Outcome batched_equals_scalar() {
  Outcome o;
  const auto fixtures = recon_fixtures(200, 1001);
  std::size_t runs = 0, bad = 0;
  std::vector<lanes::Backend> backends{lanes::Backend::kScalar};
  if (lanes::hardware_available()) backends.push_back(lanes::Backend::kHardware);
  for (const auto conn : kConns) {
    for (const auto& p : fixtures) {
      for (const auto q : kQueues) {
        auto mask = std::make_shared<Image2D>(p.mask);
        const ReconOp op(mask);
        Image2D scalar = p.marker;
        const auto nb = Neighborhood::of(scalar, conn);
        const WaveQueue seeds = op.initialize(scalar, nb);
        const Image2D initialized = scalar;
        run_two_phase(scalar, seeds, op, nb, q);
        for (const auto backend : backends) {
          Image2D batched = initialized;
          EngineOptions opt;
          opt.backend = backend;
          run_two_phase_batched(batched, seeds, op, nb, q, opt);
          ++runs;
          bad += !batched.same_interior(scalar);
        }
      }
    }
  }
  o.note("%zu runs over the criterion-1 fixtures and backends, %zu differ", runs, bad);
  o.fail_if(bad != 0);

  // Directed: a single receiver forms an odd wave and is paired with itself.
  const Image2D mask = test::from_rows(3, 1, {5, 4, 4});
  const ReconOp op(std::make_shared<Image2D>(mask));
  Image2D a = test::from_rows(3, 1, {5, 0, 0}), b = a;
  const auto nb = Neighborhood::of(a, Connectivity::kEight);
  WaveQueue seed_a, seed_b;
  seed_a.push(a.addr(0, 0), 5);
  seed_b.push(b.addr(0, 0), 5);
  const RunStats sa = run_two_phase_batched(a, std::move(seed_a), op, nb, QueueKind::kFifo);
  run_two_phase(b, std::move(seed_b), op, nb, QueueKind::kFifo);
  const bool odd_ok = a.same_interior(b) && a.interior() == std::vector<Intensity>{5, 4, 4};
  // Both halves of a self-paired step see the same neighborhood.
  bool pair_ok = true;
  test::Rng rng(8008);
  for (int i = 0; i < 200 && pair_ok; ++i) {
    const auto p = test::random_recon_pair(rng, 8, 8, static_cast<unsigned>(i));
    Image2D s = p.marker;
    const ReconOp pop(std::make_shared<Image2D>(p.mask));
    const auto n8 = Neighborhood::of(s, Connectivity::kEight);
    const detail::LocalCells cells{s.data()};
    for (const Addr x : scan_raster(s)) {
      const auto c = detail::pair_candidates<ReconOp, lanes::ScalarBackend>(cells, pop, n8, x, x);
      std::array<Intensity, 8> nbr{};
      for (std::size_t k = 0; k < 8; ++k) nbr[k] = s[static_cast<Addr>(x + n8.offsets()[k])];
      pair_ok = pair_ok && c[0] == c[1] && c[0] == pop.pull(x, s[x], nbr);
    }
  }
  o.note("duplicate pair p1 = p2: odd wave %s (%llu propagated), self-paired candidates %s", odd_ok ? "ok" : "WRONG",
         static_cast<unsigned long long>(sa.elements_propagated), pair_ok ? "equal single processing" : "DIFFER");
  o.fail_if(!odd_ok || !pair_ok);
  o.summary = "bit-exact on " + std::to_string(runs) + " runs, duplicate-pair path covered";
  return o;
}

// 9. Work partition.
Outcome work_partition() {
  Outcome o;
  auto rs = [](std::initializer_list<int> v) {
    std::vector<Rational> out;
    for (const int x : v) out.emplace_back(x);
    return out;
  };
  const bool a = partition_by_speedup(rs({1, 1})) == rs({50, 50});
  const bool b = partition_by_speedup(rs({10, 20})) == std::vector<Rational>{Rational(100, 3), Rational(200, 3)};
  const bool c = partition_by_speedup(rs({1, 1, 2})) == rs({25, 25, 50});
  o.note("[1,1] -> [50,50] %s; [10,20] -> [100/3,200/3] %s; [1,1,2] -> [25,25,50] %s", a ? "ok" : "WRONG",
         b ? "ok" : "WRONG", c ? "ok" : "WRONG");
  test::Rng rng(9009);
  std::size_t bad = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<Rational> s;
    const std::size_t n = 1 + rng.below(10);
    for (std::size_t k = 0; k < n; ++k) s.emplace_back(1 + rng.below(10000), 1 + rng.below(100));
    const auto shares = partition_by_speedup(s);
    const Rational total = std::accumulate(s.begin(), s.end(), Rational(0));
    bool ok = std::accumulate(shares.begin(), shares.end(), Rational(0)) == 100;
    for (std::size_t k = 0; k < n; ++k) ok = ok && shares[k] == 100 * s[k] / total;
    bad += !ok;
  }
  o.note("1000 random speedup vectors: %zu not summing to exactly 100 or off the formula", bad);
  o.fail_if(!a || !b || !c || bad != 0);
  o.summary = "exact rational shares";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  Outcome (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "reconstruction variants equal the sweep oracle", 60, oracle_equivalence},
      {2, "exhaustive prefix sums", 1, exhaustive_prefix},
      {3, "distance-transform baselines agree", 10, dt_baselines},
      {4, "EDT bounds against brute force", 30, edt_properties},
      {5, "priority queue work reduction", 30, priority_reduction},
      {6, "tiled equals untiled", 30, tiled_equals_untiled},
      {7, "thread-count determinism", 60, thread_determinism},
      {8, "batched kernel equals scalar two-phase", 60, batched_equals_scalar},
      {9, "work partition by speedup", 5, work_partition},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %d. %s: %s (%.1f s, budget %.0f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.summary.c_str(), secs, c.budget_s);
    for (const auto& d : o.details) std::printf("       %s\n", d.c_str());
    if (secs > c.budget_s) std::printf("       note: over the time budget on this machine\n");
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("[N/A ] 10. hardware speedups (vectorization gain, many-core scaling, GPU comparison, device\n"
              "       combinations) are not reproducible at desk scale; bench CSV reports times and element\n"
              "       counts for local measurement, with no threshold on wall time. lane backend here: %s\n",
              lanes::backend_name(lanes::resolve(lanes::Backend::kAuto)));
  std::printf("%d of 9 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
