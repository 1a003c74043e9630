#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "otsv/bounds.hpp"
#include "otsv/social/model.hpp"
#include "otsv/value.hpp"

namespace otsv::verify {

// Flattened description of the run configuration; embedded in reports and
// counterexamples so both are self-describing and replayable.
struct BoundsSummary {
  std::vector<std::string> accounts;
  std::vector<std::uint64_t> uids;
  std::vector<std::string> payloads;

  bool operator==(const BoundsSummary&) const = default;
};

BoundsSummary summarize_bounds(const Bounds& b);
Bounds bounds_from_summary(const BoundsSummary& s, const StructuralCaps& caps);

struct TraceStep {
  std::string transition;
  std::vector<Value> args;
  bool applied = true;
  std::string digest;  // short state digest after the step
};

struct ViolationRef {
  std::string invariant;
  std::vector<Value> params;
};

struct ReachTrace {
  social::NetworkOts::Config model;
  BoundsSummary bounds;
  StructuralCaps caps;
  std::vector<TraceStep> steps;
  ViolationRef violated;
};

struct InductionPair {
  social::NetworkOts::Config model;
  BoundsSummary bounds;
  StructuralCaps caps;
  std::vector<std::string> lemmas;  // hypotheses assumed at the pre-state
  social::NetworkState prestate;
  std::string transition;
  std::vector<Value> args;
  ViolationRef violated;
};

using CounterExample = std::variant<ReachTrace, InductionPair>;

enum class Verdict : std::uint8_t { Holds, Violated, Vacuous };
const char* verdict_name(Verdict v);

struct InvariantVerdict {
  std::string invariant;
  Verdict verdict = Verdict::Holds;
  std::uint64_t instantiations = 0;  // parameter tuples swept
  std::optional<CounterExample> counterexample;
};

// Per-transition case-split accounting for induct/stutter modes. Counts are
// raw (state, argument-tuple) pairs: cond_true + cond_false always equals
// states * instances.
struct TransitionTally {
  std::string transition;
  std::uint64_t instances = 0;
  std::uint64_t cond_true = 0;
  std::uint64_t cond_false = 0;
  bool pass = true;
};

struct RunStats {
  std::uint64_t states = 0;
  std::uint64_t edges = 0;
  std::uint64_t instances = 0;
  std::int64_t millis = 0;
};

struct Report {
  std::string mode;  // reach | induct | base | stutter
  social::NetworkOts::Config model;
  BoundsSummary bounds;
  StructuralCaps caps;
  bool complete = true;
  std::vector<InvariantVerdict> verdicts;
  std::vector<TransitionTally> transitions;  // induct / stutter only
  std::vector<std::string> lemmas_used;      // induct only
  RunStats stats;
};

nlohmann::json report_to_json(const Report& r);

// Deterministic serialization: sorted keys, stats.millis excluded. Two runs
// with identical config produce byte-identical canonical bodies.
std::string canonical_body(const Report& r);

nlohmann::json counterexample_to_json(const CounterExample& ce);

}  // namespace otsv::verify
