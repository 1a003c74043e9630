#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>

#include "otsv/bounds.hpp"
#include "otsv/lang/ast.hpp"
#include "otsv/social/model.hpp"
#include "otsv/verify/report.hpp"
#include "otsv/verify/universe.hpp"

namespace otsv::verify {

struct CheckOptions {
  // reach: cap on distinct states kept; induct: universe refusal limit.
  std::uint64_t max_states = kDefaultUniverseLimit;
  // states sampled by check_stutter before the disabled-transition sweep.
  std::uint64_t stutter_budget = 5'000;
};

// Every invariant holds in the (single) initial state.
Report check_base(const social::NetworkOts& model, std::span<const lang::InvariantDef> invs,
                  const Bounds& b);

// Bounded reachability: breadth-first over caps-bounded states, distinct
// modulo observational equivalence under the bounds. A violated invariant
// comes back with a shortest witnessing trace.
Report explore(const social::NetworkOts& model, std::span<const lang::InvariantDef> invs,
               const Bounds& b, const CheckOptions& opts = {});

// Induction step over the full structurally valid universe (not just the
// reachable part): for every universe state where all lemma instantiations
// hold, each invariant instantiation true before an applied transition must
// stay true after it. Per-transition tallies record the case split; for each
// transition, cond_true + cond_false equals universe states times argument
// instances.
Report check_induction(const social::NetworkOts& model, std::span<const lang::InvariantDef> invs,
                       std::span<const lang::InvariantDef> lemmas, const Bounds& b,
                       const CheckOptions& opts = {});

// Single-invariant convenience wrapper around check_induction.
Report check_step(const social::NetworkOts& model, const lang::InvariantDef& inv,
                  std::span<const lang::InvariantDef> lemmas, const Bounds& b,
                  const CheckOptions& opts = {});

// A lemma set supports itself: every lemma holds initially and the set is
// inductive assuming itself.
Report check_lemma_set(const social::NetworkOts& model,
                       std::span<const lang::InvariantDef> lemmas, const Bounds& b,
                       const CheckOptions& opts = {});

// How a disabled transition instance is executed during the stutter check.
// The default runs the kernel (which guards the effect), so for the shipped
// behaviors the law holds by construction; tests inject faulty steppers here
// as a negative control.
using DisabledStep = std::function<social::NetworkState(
    const social::NetworkOts&, const social::NetworkState&, std::string_view,
    std::span<const Value>)>;

// Disabled transitions must leave the state observationally unchanged.
// Samples up to opts.stutter_budget reachable states breadth-first, then
// sweeps every disabled instance over the sample.
Report check_stutter(const social::NetworkOts& model, const Bounds& b,
                     const CheckOptions& opts = {}, const DisabledStep& step = {});

}  // namespace otsv::verify
