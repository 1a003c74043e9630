#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "otsv/bounds.hpp"
#include "otsv/lang/ast.hpp"
#include "otsv/social/model.hpp"

// Independent reference implementations the unit tests check the library
// against. Everything here is deliberately naive: plain loops, plain string
// keys, no sharing, no pre-computation.
namespace oracle {

// Ad-hoc unambiguous rendering of states from public accessors only. Two
// states render equally iff they are structurally equal.
std::string render(const otsv::social::ProfileState& p);
std::string render(const otsv::social::NetworkState& s);

struct ExploreResult {
  std::uint64_t states = 0;
  std::uint64_t edges = 0;
  std::set<std::string> keys;
};

// Straight-line breadth-first reachability through the kernel with the same
// structural-caps filter the checker uses, deduplicated by render().
ExploreResult naive_explore(const otsv::social::NetworkOts& model, const otsv::Bounds& b);

// Every structurally valid profile state for one owner, rendered. Candidates
// come from a redundant generation sweep (duplicate uids, owner-in-friends
// and overlapping friends/pending candidates included) and are then rejected
// against the structural rules.
std::set<std::string> profile_states(const std::string& owner, const otsv::Bounds& b);

std::uint64_t count_universe(const otsv::Bounds& b);

// Every structurally valid network state, rendered. Tiny bounds only.
std::set<std::string> universe_states(const otsv::Bounds& b);

// Random well-formed predicate over the given parameters; identifier
// literals are drawn from a pool disjoint from parameter names and atom
// keywords.
otsv::lang::PredPtr random_pred(std::mt19937& rng,
                                std::span<const otsv::lang::ParamDecl> params, int depth);

// Random well-sorted call of a transition declared by the signature.
otsv::lang::Call random_call(std::mt19937& rng, const otsv::Signature& sig);

// Random scenario script against the signature (steps, stutter expectations,
// literal-only assertions, expect-violation statements).
otsv::lang::ScenarioAst random_scenario(std::mt19937& rng, const otsv::Signature& sig);

}  // namespace oracle
