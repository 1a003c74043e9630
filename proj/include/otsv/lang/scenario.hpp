#pragma once

#include <json.hpp>
#include <span>
#include <string>
#include <vector>

#include "otsv/bounds.hpp"
#include "otsv/lang/ast.hpp"
#include "otsv/social/model.hpp"

namespace otsv::lang {

struct TraceEntry {
  int index = 0;
  Stmt::Kind kind = Stmt::Kind::Step;
  std::string rendered;
  bool applied = false;  // Step / ExpectStutter only
  bool ok = true;
  std::string message;   // failure explanation, empty when ok
  std::string digest;    // short state digest after this statement
  SourceSpan span;
};

struct TraceReport {
  std::string scenario;
  bool passed = true;
  std::vector<TraceEntry> entries;
  social::NetworkState final_state;
};

// Bounds inferred from the scenario text: the declared account list (or the
// account literals appearing in calls/predicates), nat literals as uids,
// payload literals. Falls back to {alice}/{1}/{p0} for empty domains.
Bounds scenario_bounds(const ScenarioAst& sc, const Signature& sig);

// Executes every statement from the initial state; failures become report
// entries, never exceptions. The registry backs expect-violation statements.
TraceReport run_scenario(const social::NetworkOts& model,
                         std::span<const InvariantDef> registry, const Bounds& bounds,
                         const ScenarioAst& sc);

nlohmann::json trace_report_to_json(const TraceReport& r);

}  // namespace otsv::lang
