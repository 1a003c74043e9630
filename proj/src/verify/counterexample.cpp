#include "otsv/verify/counterexample.hpp"

#include <algorithm>

#include "otsv/errors.hpp"
#include "otsv/kernel.hpp"
#include "otsv/lang/eval.hpp"
#include "otsv/lang/parser.hpp"
#include "otsv/social/state_json.hpp"

namespace otsv::verify {
namespace {

using lang::InvariantDef;
using nlohmann::json;
using social::NetworkOts;
using social::NetworkState;

bool eval_def(const InvariantDef& def, const NetworkOts& model, const NetworkState& s,
              std::span<const Value> x) {
  if (def.native) return def.native(s, x, model.config().default_visibility);
  return lang::eval_predicate(def.body, model, s, def.params, x);
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw ReplayError("counterexample is missing the '" + std::string(key) + "' field");
  return *it;
}

NetworkOts::Config model_from_json(const json& j) {
  NetworkOts::Config cfg;
  cfg.default_visibility = field(j, "default_visibility").get<bool>();
  for (const auto& e : field(j, "extensions")) {
    if (e.get<std::string>() == "set-visibility")
      cfg.set_visibility_extension = true;
    else
      throw ReplayError("unknown extension '" + e.get<std::string>() + "'");
  }
  return cfg;
}

BoundsSummary bounds_from_json(const json& j) {
  BoundsSummary b;
  for (const auto& a : field(j, "accounts")) b.accounts.push_back(a.get<std::string>());
  for (const auto& u : field(j, "uids")) b.uids.push_back(u.get<std::uint64_t>());
  for (const auto& p : field(j, "payloads")) b.payloads.push_back(p.get<std::string>());
  return b;
}

StructuralCaps caps_from_json(const json& j) {
  StructuralCaps c;
  c.max_seq = field(j, "seq").get<unsigned>();
  c.max_set = field(j, "set").get<unsigned>();
  c.max_content = field(j, "content").get<unsigned>();
  if (j.contains("accounts")) c.max_accounts = j["accounts"].get<unsigned>();
  return c;
}

std::vector<Value> parse_args(const Signature& sig, const std::string& transition,
                              const json& args) {
  const TransitionSpec* spec = nullptr;
  for (const TransitionSpec& t : sig.transitions())
    if (t.name == transition) spec = &t;
  if (!spec) throw ReplayError("counterexample uses unknown transition '" + transition + "'");
  if (args.size() != spec->params.size())
    throw ReplayError("'" + transition + "' takes " + std::to_string(spec->params.size()) +
                      " argument(s), counterexample has " + std::to_string(args.size()));
  std::vector<Value> out;
  for (std::size_t i = 0; i < spec->params.size(); ++i)
    out.push_back(lang::parse_call_argument(args[i].get<std::string>(), spec->params[i]));
  return out;
}

ViolationRef violation_from_json(const json& j, std::span<const InvariantDef> defs) {
  ViolationRef v;
  v.invariant = field(j, "invariant").get<std::string>();
  const json& params = field(j, "params");
  if (v.invariant == "stutter-law") {
    // Free-form: the offending transition arguments, kept as id tokens.
    for (const auto& p : params) v.params.push_back(Value::id(p.get<std::string>()));
    return v;
  }
  const InvariantDef* def = find_definition(defs, v.invariant);
  if (!def) throw ReplayError("counterexample violates unknown invariant '" + v.invariant + "'");
  if (params.size() != def->params.size())
    throw ReplayError("invariant '" + v.invariant + "' takes " +
                      std::to_string(def->params.size()) + " parameter(s), counterexample has " +
                      std::to_string(params.size()));
  for (std::size_t i = 0; i < def->params.size(); ++i)
    v.params.push_back(lang::parse_call_argument(params[i].get<std::string>(),
                                                 def->params[i].sort));
  return v;
}

bool fail(std::string* why, std::string msg) {
  if (why) *why = std::move(msg);
  return false;
}

bool replay_trace(const ReachTrace& rt, std::span<const InvariantDef> defs, std::string* why) {
  if (rt.violated.invariant == "stutter-law")
    return fail(why,
                "stutter-law counterexamples witness a faulty step function and cannot be "
                "reproduced by the conforming kernel");
  const NetworkOts model(rt.model);
  const Bounds b = bounds_from_summary(rt.bounds, rt.caps);
  const ObservationPlan plan(model.signature(), b);

  NetworkState s = model.initial();
  for (std::size_t i = 0; i < rt.steps.size(); ++i) {
    const TraceStep& st = rt.steps[i];
    auto res = otsv::apply(model, s, st.transition, st.args);
    if (res.applied != st.applied)
      return fail(why, "step " + std::to_string(i + 1) + " (" + st.transition + ") recorded " +
                           (st.applied ? "applied" : "stuttering") + " but replayed " +
                           (res.applied ? "applied" : "stuttering"));
    s = std::move(res.state);
    if (!social::within_caps(s, rt.caps))
      return fail(why, "step " + std::to_string(i + 1) + " leaves the structural caps");
    std::string dig = digest_hex(observation_digest(model, s, plan));
    if (dig != st.digest)
      return fail(why, "step " + std::to_string(i + 1) + " digest mismatch: recorded " +
                           st.digest + ", replayed " + dig);
  }

  const InvariantDef* def = find_definition(defs, rt.violated.invariant);
  if (!def) return fail(why, "unknown invariant '" + rt.violated.invariant + "'");
  if (rt.violated.params.size() != def->params.size())
    return fail(why, "invariant '" + def->name + "' parameter count mismatch");
  if (eval_def(*def, model, s, rt.violated.params))
    return fail(why, "instantiation of '" + def->name + "' still holds in the final state");
  return true;
}

bool replay_pair(const InductionPair& ip, std::span<const InvariantDef> defs, std::string* why) {
  const NetworkOts model(ip.model);
  const Bounds b = bounds_from_summary(ip.bounds, ip.caps);

  if (auto err = social::network_structural_error(ip.prestate))
    return fail(why, "pre-state is malformed: " + *err);
  if (!social::within_caps(ip.prestate, ip.caps))
    return fail(why, "pre-state exceeds the structural caps");

  for (const std::string& name : ip.lemmas) {
    const InvariantDef* lem = find_definition(defs, name);
    if (!lem) return fail(why, "unknown lemma '" + name + "'");
    std::vector<Sort> sorts;
    for (const auto& p : lem->params) sorts.push_back(p.sort);
    for (const auto& x : enumerate_instances(std::span<const Sort>(sorts), b))
      if (!eval_def(*lem, model, ip.prestate, x))
        return fail(why, "lemma '" + name + "' does not hold at the pre-state");
  }

  const InvariantDef* def = find_definition(defs, ip.violated.invariant);
  if (!def) return fail(why, "unknown invariant '" + ip.violated.invariant + "'");
  if (ip.violated.params.size() != def->params.size())
    return fail(why, "invariant '" + def->name + "' parameter count mismatch");

  social::TrInstance inst = model.decode(ip.transition, ip.args);
  if (!model.condition(ip.prestate, inst))
    return fail(why, "transition '" + ip.transition + "' is disabled at the pre-state");
  if (!eval_def(*def, model, ip.prestate, ip.violated.params))
    return fail(why, "instantiation of '" + def->name + "' is already false at the pre-state");
  NetworkState post = model.effect(ip.prestate, inst);
  if (eval_def(*def, model, post, ip.violated.params))
    return fail(why, "instantiation of '" + def->name + "' still holds after the step");
  return true;
}

}  // namespace

const InvariantDef* find_definition(std::span<const InvariantDef> defs, std::string_view name) {
  for (const InvariantDef& d : defs)
    if (d.name == name) return &d;
  return nullptr;
}

CounterExample counterexample_from_json(const json& j, std::span<const InvariantDef> defs) {
  if (!j.is_object()) throw ReplayError("counterexample must be a JSON object");
  const std::string type = field(j, "type").get<std::string>();
  if (type == "reach-trace") {
    ReachTrace rt;
    rt.model = model_from_json(field(j, "model"));
    rt.bounds = bounds_from_json(field(j, "bounds"));
    rt.caps = caps_from_json(field(j, "caps"));
    const NetworkOts model(rt.model);
    for (const auto& js : field(j, "steps")) {
      TraceStep st;
      st.transition = field(js, "transition").get<std::string>();
      st.args = parse_args(model.signature(), st.transition, field(js, "args"));
      st.applied = field(js, "applied").get<bool>();
      st.digest = field(js, "digest").get<std::string>();
      rt.steps.push_back(std::move(st));
    }
    rt.violated = violation_from_json(field(j, "violated"), defs);
    return rt;
  }
  if (type == "induction-pair") {
    InductionPair ip;
    ip.model = model_from_json(field(j, "model"));
    ip.bounds = bounds_from_json(field(j, "bounds"));
    ip.caps = caps_from_json(field(j, "caps"));
    for (const auto& l : field(j, "lemmas")) ip.lemmas.push_back(l.get<std::string>());
    ip.prestate = social::state_from_json(field(j, "prestate"));
    ip.transition = field(j, "transition").get<std::string>();
    const NetworkOts model(ip.model);
    ip.args = parse_args(model.signature(), ip.transition, field(j, "args"));
    ip.violated = violation_from_json(field(j, "violated"), defs);
    return ip;
  }
  throw ReplayError("unknown counterexample type '" + type + "'");
}

bool replay(const CounterExample& ce, std::span<const InvariantDef> defs, std::string* why) {
  if (const auto* rt = std::get_if<ReachTrace>(&ce)) return replay_trace(*rt, defs, why);
  return replay_pair(std::get<InductionPair>(ce), defs, why);
}

ReachTrace shrink(const ReachTrace& ce, std::span<const InvariantDef> defs) {
  if (!replay(ce, defs)) return ce;
  const NetworkOts model(ce.model);
  const Bounds b = bounds_from_summary(ce.bounds, ce.caps);
  const ObservationPlan plan(model.signature(), b);

  auto recompute = [&](ReachTrace t) {
    NetworkState s = model.initial();
    for (TraceStep& st : t.steps) {
      auto res = otsv::apply(model, s, st.transition, st.args);
      st.applied = res.applied;
      s = std::move(res.state);
      st.digest = digest_hex(observation_digest(model, s, plan));
    }
    return t;
  };

  ReachTrace cur = ce;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t k = 0; k < cur.steps.size(); ++k) {
      ReachTrace cand = cur;
      cand.steps.erase(cand.steps.begin() + static_cast<std::ptrdiff_t>(k));
      cand = recompute(std::move(cand));
      if (replay(cand, defs)) {
        cur = std::move(cand);
        improved = true;
        break;
      }
    }
  }
  return cur;
}

}  // namespace otsv::verify
