#pragma once

#include <span>
#include <string_view>

#include "otsv/lang/ast.hpp"

namespace otsv::verify {

// The stock privacy invariants inv1 (photo views) and inv2 (friend-list
// views) plus the supporting lemma L1, with fast native evaluators attached.
std::span<const lang::InvariantDef> builtin_definitions();

// The same definitions in DSL form (also shipped as data/invariants/
// builtin.inv).
std::string_view builtin_text();

// Parses builtin_text() and structurally compares every definition with its
// compiled form; throws ConfigError on any disagreement. Run at CLI startup.
void ensure_builtin_consistency();

}  // namespace otsv::verify
