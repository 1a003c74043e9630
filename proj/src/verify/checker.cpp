#include "otsv/verify/checker.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <unordered_set>

#include "otsv/errors.hpp"
#include "otsv/kernel.hpp"
#include "otsv/lang/eval.hpp"

namespace otsv::verify {
namespace {

using lang::InvariantDef;
using social::NetworkOts;
using social::NetworkState;
using social::Tr;
using social::TrInstance;

class Timer {
 public:
  std::int64_t millis() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// One decode per (transition, argument tuple); the sweeps then run on
// decoded instances only.
struct DecodedTransition {
  std::string name;
  std::vector<std::vector<Value>> raw;
  std::vector<TrInstance> insts;
};

std::vector<DecodedTransition> decode_transitions(const NetworkOts& model, const Bounds& b) {
  std::vector<DecodedTransition> out;
  for (const TransitionSpec& spec : model.signature().transitions()) {
    DecodedTransition dt;
    dt.name = spec.name;
    dt.raw = enumerate_instances(spec, b);
    dt.insts.reserve(dt.raw.size());
    for (const auto& args : dt.raw) dt.insts.push_back(model.decode(spec.name, args));
    out.push_back(std::move(dt));
  }
  return out;
}

std::vector<std::vector<Value>> instantiations_of(const InvariantDef& def, const Bounds& b) {
  std::vector<Sort> sorts;
  sorts.reserve(def.params.size());
  for (const auto& p : def.params) sorts.push_back(p.sort);
  return enumerate_instances(std::span<const Sort>(sorts), b);
}

bool eval_def(const InvariantDef& def, const NetworkOts& model, const NetworkState& s,
              std::span<const Value> x) {
  if (def.native) return def.native(s, x, model.config().default_visibility);
  return lang::eval_predicate(def.body, model, s, def.params, x);
}

Report make_report(const char* mode, const NetworkOts& model, const Bounds& b) {
  Report r;
  r.mode = mode;
  r.model = model.config();
  r.bounds = summarize_bounds(b);
  r.caps = b.caps;
  return r;
}

struct Meta {
  std::int32_t parent = -1;
  std::int32_t tr = -1;
  std::int32_t inst = -1;
};

// Rebuilds the step list leading to states[idx] by replaying the parent
// chain from the initial state, recomputing digests along the way.
std::vector<TraceStep> trace_steps(const NetworkOts& model, const ObservationPlan& plan,
                                   const std::vector<DecodedTransition>& table,
                                   const std::vector<Meta>& meta, std::size_t idx) {
  std::vector<std::pair<int, int>> hops;
  for (std::int32_t i = static_cast<std::int32_t>(idx); meta[i].parent >= 0; i = meta[i].parent)
    hops.emplace_back(meta[i].tr, meta[i].inst);
  std::reverse(hops.begin(), hops.end());

  std::vector<TraceStep> steps;
  NetworkState s = model.initial();
  for (auto [t, i] : hops) {
    auto res = otsv::apply(model, s, table[t].name, table[t].raw[i]);
    s = std::move(res.state);
    steps.push_back({table[t].name, table[t].raw[i], res.applied,
                     digest_hex(observation_digest(model, s, plan))});
  }
  return steps;
}

}  // namespace

Report check_base(const NetworkOts& model, std::span<const InvariantDef> invs, const Bounds& b) {
  Timer timer;
  Report r = make_report("base", model, b);
  const NetworkState init = model.initial();
  for (const InvariantDef& inv : invs) {
    InvariantVerdict v;
    v.invariant = inv.name;
    const auto tuples = instantiations_of(inv, b);
    v.instantiations = tuples.size();
    if (tuples.empty()) v.verdict = Verdict::Vacuous;
    for (const auto& x : tuples) {
      ++r.stats.instances;
      if (!eval_def(inv, model, init, x)) {
        v.verdict = Verdict::Violated;
        v.counterexample = ReachTrace{model.config(), r.bounds, b.caps, {}, {inv.name, x}};
        break;
      }
    }
    r.verdicts.push_back(std::move(v));
  }
  r.stats.states = 1;
  r.stats.millis = timer.millis();
  return r;
}

Report explore(const NetworkOts& model, std::span<const InvariantDef> invs, const Bounds& b,
               const CheckOptions& opts) {
  Timer timer;
  Report r = make_report("reach", model, b);
  const ObservationPlan plan(model.signature(), b);
  const auto table = decode_transitions(model, b);

  struct Tracked {
    const InvariantDef* def;
    std::vector<std::vector<Value>> tuples;
    bool violated = false;
    std::optional<CounterExample> ce;
  };
  std::vector<Tracked> tracked;
  std::size_t open = 0;  // non-vacuous, not yet violated
  for (const InvariantDef& inv : invs) {
    tracked.push_back({&inv, instantiations_of(inv, b), false, std::nullopt});
    if (!tracked.back().tuples.empty()) ++open;
  }
  std::size_t violations = 0;

  std::vector<NetworkState> states;
  std::vector<Meta> meta;
  std::unordered_set<std::string> struct_seen;  // cheap pre-filter
  std::unordered_set<std::string> digest_seen;  // authoritative identity

  auto check_state = [&](std::size_t idx) {
    if (open == 0) return;
    for (Tracked& t : tracked) {
      if (t.violated || t.tuples.empty()) continue;
      for (const auto& x : t.tuples) {
        if (eval_def(*t.def, model, states[idx], x)) continue;
        t.violated = true;
        t.ce = ReachTrace{model.config(), r.bounds, b.caps,
                          trace_steps(model, plan, table, meta, idx),
                          {t.def->name, x}};
        --open;
        ++violations;
        break;
      }
    }
  };

  {
    NetworkState init = model.initial();
    struct_seen.insert(social::structural_key(init));
    digest_seen.insert(observation_digest(model, init, plan));
    states.push_back(std::move(init));
    meta.push_back({});
    check_state(0);
  }

  bool truncated = false;
  bool stopped_early = false;
  for (std::size_t idx = 0; idx < states.size() && !truncated; ++idx) {
    if (violations > 0 && open == 0) {
      stopped_early = true;
      break;
    }
    const NetworkState cur = states[idx];  // copy: states may reallocate
    for (std::size_t t = 0; t < table.size() && !truncated; ++t) {
      const DecodedTransition& dt = table[t];
      for (std::size_t i = 0; i < dt.insts.size() && !truncated; ++i) {
        ++r.stats.instances;
        if (!model.condition(cur, dt.insts[i])) continue;
        NetworkState ns = model.effect(cur, dt.insts[i]);
        if (!social::within_caps(ns, b.caps)) continue;
        ++r.stats.edges;
        if (!struct_seen.insert(social::structural_key(ns)).second) continue;
        if (!digest_seen.insert(observation_digest(model, ns, plan)).second) continue;
        if (states.size() >= opts.max_states) {
          truncated = true;
          break;
        }
        states.push_back(std::move(ns));
        meta.push_back({static_cast<std::int32_t>(idx), static_cast<std::int32_t>(t),
                        static_cast<std::int32_t>(i)});
        check_state(states.size() - 1);
      }
    }
  }

  r.complete = !truncated && !stopped_early;
  r.stats.states = states.size();
  for (Tracked& t : tracked) {
    InvariantVerdict v;
    v.invariant = t.def->name;
    v.instantiations = t.tuples.size();
    v.verdict = t.tuples.empty() ? Verdict::Vacuous
                                 : (t.violated ? Verdict::Violated : Verdict::Holds);
    v.counterexample = std::move(t.ce);
    r.verdicts.push_back(std::move(v));
  }
  r.stats.millis = timer.millis();
  return r;
}

namespace {

// Which installed profiles a transition instance may modify (add/del also
// change the accounts set, which only affects atoms about that same id).
// Static per instance, so the induction sweep can pre-compute, for every
// (invariant, instance) pair, which instantiations could change at all.
std::vector<std::string> touched_ids(const TrInstance& t) {
  switch (t.tr) {
    case Tr::Add:
    case Tr::Del:
    case Tr::SetVisibility:
      return {t.a1.v};
    default:
      if (t.a1.v == t.a2.v) return {t.a1.v};
      return {t.a1.v, t.a2.v};
  }
}

// The account id each atom kind reads through (profile fields, installed
// status or accounts membership of exactly that id).
int atom_owner_pos(lang::AtomKind k) {
  switch (k) {
    case lang::AtomKind::InFriends:
    case lang::AtomKind::InPending:
    case lang::AtomKind::InLikes:
      return 1;
    default:
      return 0;
  }
}

void collect_owner_exprs(const lang::Pred& p, std::vector<lang::Expr>& out) {
  if (p.kind == lang::Pred::Kind::Leaf) {
    out.push_back(p.atom.args[atom_owner_pos(p.atom.kind)]);
    return;
  }
  if (p.lhs) collect_owner_exprs(*p.lhs, out);
  if (p.rhs) collect_owner_exprs(*p.rhs, out);
}

struct Target {
  const InvariantDef* def;
  std::vector<std::vector<Value>> tuples;
  // sorted unique ids the body can read, per instantiation; empty optional
  // when the body is unavailable (then every instantiation counts as
  // affected by every instance)
  std::optional<std::vector<std::vector<std::string>>> owners;
  std::optional<CounterExample> ce;
  bool violated = false;
};

Target compile_target(const InvariantDef& def, const Bounds& b) {
  Target t{&def, instantiations_of(def, b), std::nullopt, std::nullopt, false};
  if (!def.body) return t;
  std::vector<lang::Expr> exprs;
  collect_owner_exprs(*def.body, exprs);
  std::vector<std::vector<std::string>> owners;
  owners.reserve(t.tuples.size());
  for (const auto& x : t.tuples) {
    std::vector<std::string> ids;
    for (const lang::Expr& e : exprs) {
      if (e.kind == lang::Expr::Kind::Param) {
        for (std::size_t pi = 0; pi < def.params.size(); ++pi)
          if (def.params[pi].name == e.token) {
            ids.push_back(x[pi].token());
            break;
          }
      } else if (e.kind == lang::Expr::Kind::IdLit) {
        ids.push_back(e.token);
      }
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    owners.push_back(std::move(ids));
  }
  t.owners = std::move(owners);
  return t;
}

bool intersects(const std::vector<std::string>& sorted, const std::vector<std::string>& small) {
  for (const std::string& s : small)
    if (std::binary_search(sorted.begin(), sorted.end(), s)) return true;
  return false;
}

}  // namespace

Report check_induction(const NetworkOts& model, std::span<const InvariantDef> invs,
                       std::span<const InvariantDef> lemmas, const Bounds& b,
                       const CheckOptions& opts) {
  Timer timer;
  Report r = make_report("induct", model, b);
  for (const InvariantDef& l : lemmas) r.lemmas_used.push_back(l.name);

  const auto table = decode_transitions(model, b);
  UniverseEnumerator uni(b, opts.max_states);

  std::vector<Target> targets;
  for (const InvariantDef& inv : invs) targets.push_back(compile_target(inv, b));
  std::vector<std::pair<const InvariantDef*, std::vector<std::vector<Value>>>> hyp;
  for (const InvariantDef& l : lemmas) hyp.emplace_back(&l, instantiations_of(l, b));

  // affected[t][tr][i]: instantiation indices of target t whose readable ids
  // overlap the ids instance i of transition tr can touch
  std::vector<std::vector<std::vector<std::vector<std::uint32_t>>>> affected(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    affected[t].resize(table.size());
    for (std::size_t tr = 0; tr < table.size(); ++tr) {
      affected[t][tr].resize(table[tr].insts.size());
      for (std::size_t i = 0; i < table[tr].insts.size(); ++i) {
        const auto touched = touched_ids(table[tr].insts[i]);
        auto& list = affected[t][tr][i];
        for (std::uint32_t xi = 0; xi < targets[t].tuples.size(); ++xi)
          if (!targets[t].owners || intersects((*targets[t].owners)[xi], touched))
            list.push_back(xi);
      }
    }
  }

  std::uint64_t total_insts = 0;
  for (const DecodedTransition& dt : table) {
    r.transitions.push_back({dt.name, dt.insts.size(), 0, 0, true});
    total_insts += dt.insts.size();
  }
  // done[t][tr]: first violation for this pair already recorded
  std::vector<std::vector<char>> done(targets.size(),
                                      std::vector<char>(table.size(), 0));

  std::vector<std::vector<char>> pre(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) pre[t].resize(targets[t].tuples.size());

  NetworkState u;
  NetworkState post;
  std::uint64_t n_states = 0;
  while (uni.next(u)) {
    ++n_states;
    bool hyp_holds = true;
    for (const auto& [def, tuples] : hyp) {
      for (const auto& x : tuples)
        if (!eval_def(*def, model, u, x)) {
          hyp_holds = false;
          break;
        }
      if (!hyp_holds) break;
    }
    if (hyp_holds)
      for (std::size_t t = 0; t < targets.size(); ++t)
        for (std::size_t xi = 0; xi < targets[t].tuples.size(); ++xi)
          pre[t][xi] = eval_def(*targets[t].def, model, u, targets[t].tuples[xi]);

    for (std::size_t tr = 0; tr < table.size(); ++tr) {
      const DecodedTransition& dt = table[tr];
      TransitionTally& tally = r.transitions[tr];
      for (std::size_t i = 0; i < dt.insts.size(); ++i) {
        if (!model.condition(u, dt.insts[i])) {
          ++tally.cond_false;
          continue;
        }
        ++tally.cond_true;
        if (!hyp_holds) continue;
        bool need = false;
        for (std::size_t t = 0; t < targets.size() && !need; ++t) {
          if (done[t][tr]) continue;
          for (std::uint32_t xi : affected[t][tr][i])
            if (pre[t][xi]) {
              need = true;
              break;
            }
        }
        if (!need) continue;
        post = model.effect(u, dt.insts[i]);
        for (std::size_t t = 0; t < targets.size(); ++t) {
          if (done[t][tr]) continue;
          Target& tg = targets[t];
          for (std::uint32_t xi : affected[t][tr][i]) {
            if (!pre[t][xi]) continue;
            if (eval_def(*tg.def, model, post, tg.tuples[xi])) continue;
            done[t][tr] = 1;
            tally.pass = false;
            tg.violated = true;
            if (!tg.ce)
              tg.ce = InductionPair{model.config(), r.bounds,         b.caps,
                                    r.lemmas_used,  u,                dt.name,
                                    dt.raw[i],      {tg.def->name, tg.tuples[xi]}};
            break;
          }
        }
      }
    }
  }

  r.stats.states = n_states;
  r.stats.instances = n_states * total_insts;
  for (const TransitionTally& t : r.transitions) r.stats.edges += t.cond_true;
  for (Target& t : targets) {
    InvariantVerdict v;
    v.invariant = t.def->name;
    v.instantiations = t.tuples.size();
    v.verdict = t.tuples.empty() ? Verdict::Vacuous
                                 : (t.violated ? Verdict::Violated : Verdict::Holds);
    v.counterexample = std::move(t.ce);
    r.verdicts.push_back(std::move(v));
  }
  r.stats.millis = timer.millis();
  return r;
}

Report check_step(const NetworkOts& model, const InvariantDef& inv,
                  std::span<const InvariantDef> lemmas, const Bounds& b,
                  const CheckOptions& opts) {
  return check_induction(model, {&inv, 1}, lemmas, b, opts);
}

Report check_lemma_set(const NetworkOts& model, std::span<const InvariantDef> lemmas,
                       const Bounds& b, const CheckOptions& opts) {
  Report base = check_base(model, lemmas, b);
  Report step = check_induction(model, lemmas, lemmas, b, opts);
  for (std::size_t i = 0; i < step.verdicts.size(); ++i)
    if (base.verdicts[i].verdict == Verdict::Violated) step.verdicts[i] = base.verdicts[i];
  step.stats.instances += base.stats.instances;
  step.stats.millis += base.stats.millis;
  return step;
}

Report check_stutter(const NetworkOts& model, const Bounds& b, const CheckOptions& opts,
                     const DisabledStep& step) {
  Timer timer;
  Report r = make_report("stutter", model, b);
  const ObservationPlan plan(model.signature(), b);
  const auto table = decode_transitions(model, b);

  std::uint64_t total_insts = 0;
  for (const DecodedTransition& dt : table) {
    r.transitions.push_back({dt.name, dt.insts.size(), 0, 0, true});
    total_insts += dt.insts.size();
  }

  std::vector<NetworkState> states;
  std::vector<Meta> meta;
  std::unordered_set<std::string> struct_seen;
  std::unordered_set<std::string> digest_seen;
  {
    NetworkState init = model.initial();
    struct_seen.insert(social::structural_key(init));
    digest_seen.insert(observation_digest(model, init, plan));
    states.push_back(std::move(init));
    meta.push_back({});
  }

  InvariantVerdict verdict;
  verdict.invariant = "stutter-law";
  bool truncated = false;

  for (std::size_t idx = 0; idx < states.size(); ++idx) {
    const NetworkState cur = states[idx];
    for (std::size_t t = 0; t < table.size(); ++t) {
      const DecodedTransition& dt = table[t];
      TransitionTally& tally = r.transitions[t];
      for (std::size_t i = 0; i < dt.insts.size(); ++i) {
        ++r.stats.instances;
        if (model.condition(cur, dt.insts[i])) {
          ++tally.cond_true;
          NetworkState ns = model.effect(cur, dt.insts[i]);
          if (!social::within_caps(ns, b.caps)) continue;
          ++r.stats.edges;
          if (!struct_seen.insert(social::structural_key(ns)).second) continue;
          if (!digest_seen.insert(observation_digest(model, ns, plan)).second) continue;
          if (states.size() >= opts.stutter_budget) {
            truncated = true;
            continue;
          }
          states.push_back(std::move(ns));
          meta.push_back({static_cast<std::int32_t>(idx), static_cast<std::int32_t>(t),
                          static_cast<std::int32_t>(i)});
        } else {
          ++tally.cond_false;
          ++verdict.instantiations;
          NetworkState res = step ? step(model, cur, dt.name, dt.raw[i])
                                  : otsv::apply(model, cur, dt.name, dt.raw[i]).state;
          if (states_equivalent(model, res, cur, plan)) continue;
          tally.pass = false;
          if (verdict.verdict == Verdict::Violated) continue;
          verdict.verdict = Verdict::Violated;
          ReachTrace ce{model.config(), r.bounds, b.caps,
                        trace_steps(model, plan, table, meta, idx),
                        {"stutter-law", dt.raw[i]}};
          ce.steps.push_back({dt.name, dt.raw[i], false,
                              digest_hex(observation_digest(model, res, plan))});
          verdict.counterexample = std::move(ce);
        }
      }
    }
  }

  r.complete = !truncated;
  r.stats.states = states.size();
  r.verdicts.push_back(std::move(verdict));
  r.stats.millis = timer.millis();
  return r;
}

}  // namespace otsv::verify
