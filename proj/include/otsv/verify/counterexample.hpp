#pragma once

#include <json.hpp>
#include <span>
#include <string>
#include <string_view>

#include "otsv/lang/ast.hpp"
#include "otsv/verify/report.hpp"

namespace otsv::verify {

// Rebuilds a counterexample from its JSON form. Argument and parameter
// literals are re-parsed sort-directed against the rebuilt model's signature
// and the invariant's parameter declarations. Throws ReplayError on
// malformed input.
CounterExample counterexample_from_json(const nlohmann::json& j,
                                        std::span<const lang::InvariantDef> defs);

// Re-executes a counterexample against a freshly rebuilt model. A reach
// trace must re-run with identical applied flags and digests, stay within
// the caps, and end in a state falsifying the violated instantiation. An
// induction pair needs a structurally valid pre-state satisfying its
// recorded lemmas, an enabled transition, and the instantiation true before
// and false after the step. On failure the reason lands in *why.
bool replay(const CounterExample& ce, std::span<const lang::InvariantDef> defs,
            std::string* why = nullptr);

// Greedy minimization: drops one step at a time (recomputing applied flags
// and digests) as long as the shrunk trace still replays; stops at a
// fixpoint. A trace that does not replay comes back unchanged.
ReachTrace shrink(const ReachTrace& ce, std::span<const lang::InvariantDef> defs);

const lang::InvariantDef* find_definition(std::span<const lang::InvariantDef> defs,
                                          std::string_view name);

}  // namespace otsv::verify
