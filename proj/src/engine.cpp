#include "iwpp/engine.hpp"

#include <algorithm>

namespace iwpp {

const char* engine_name(EngineVariant v) {
  switch (v) {
    case EngineVariant::kClassic: return "classic";
    case EngineVariant::kTwoPhase: return "two_phase";
    case EngineVariant::kBatched: return "batched";
  }
  return "?";
}

const char* queue_name(QueueKind k) { return k == QueueKind::kFifo ? "fifo" : "priority"; }

RunStats combine_sequential(const RunStats& a, const RunStats& b) {
  RunStats out;
  out.elements_identified = a.elements_identified + b.elements_identified;
  out.elements_propagated = a.elements_propagated + b.elements_propagated;
  out.iterations = a.iterations + b.iterations;
  out.init_ms = a.init_ms + b.init_ms;
  out.prop_ms = a.prop_ms + b.prop_ms;
  out.total_ms = a.total_ms + b.total_ms;
  return out;
}

RunStats combine_concurrent(const RunStats& a, const RunStats& b) {
  RunStats out;
  out.elements_identified = a.elements_identified + b.elements_identified;
  out.elements_propagated = a.elements_propagated + b.elements_propagated;
  out.iterations = std::max(a.iterations, b.iterations);
  out.init_ms = std::max(a.init_ms, b.init_ms);
  out.prop_ms = std::max(a.prop_ms, b.prop_ms);
  out.total_ms = std::max(a.total_ms, b.total_ms);
  return out;
}

}  // namespace iwpp
