#include "otsv/verify/report.hpp"

#include "otsv/errors.hpp"
#include "otsv/social/state_json.hpp"

namespace otsv::verify {
namespace {

using nlohmann::json;

json caps_to_json(const StructuralCaps& c) {
  json j;
  j["seq"] = c.max_seq;
  j["set"] = c.max_set;
  j["content"] = c.max_content;
  if (c.max_accounts != StructuralCaps{}.max_accounts) j["accounts"] = c.max_accounts;
  return j;
}

json model_to_json(const social::NetworkOts::Config& m) {
  json j;
  j["default_visibility"] = m.default_visibility;
  json ext = json::array();
  if (m.set_visibility_extension) ext.push_back("set-visibility");
  j["extensions"] = ext;
  return j;
}

json domains_to_json(const BoundsSummary& b) {
  json j;
  j["accounts"] = b.accounts;
  j["uids"] = b.uids;
  j["payloads"] = b.payloads;
  return j;
}

json violation_to_json(const ViolationRef& v) {
  json j;
  j["invariant"] = v.invariant;
  json params = json::array();
  for (const auto& p : v.params) params.push_back(p.display());
  j["params"] = params;
  return j;
}

json steps_to_json(const std::vector<TraceStep>& steps) {
  json arr = json::array();
  for (const auto& st : steps) {
    json s;
    s["transition"] = st.transition;
    json args = json::array();
    for (const auto& a : st.args) args.push_back(a.display());
    s["args"] = args;
    s["applied"] = st.applied;
    s["digest"] = st.digest;
    arr.push_back(std::move(s));
  }
  return arr;
}

}  // namespace

BoundsSummary summarize_bounds(const Bounds& b) {
  BoundsSummary s;
  if (const auto* d = b.find_domain("accountid"))
    for (const auto& v : *d) s.accounts.push_back(v.token());
  if (const auto* d = b.find_domain("nat"))
    for (const auto& v : *d) s.uids.push_back(v.as_nat());
  if (const auto* d = b.find_domain("payload"))
    for (const auto& v : *d) s.payloads.push_back(v.token());
  return s;
}

Bounds bounds_from_summary(const BoundsSummary& s, const StructuralCaps& caps) {
  Bounds b = social::make_bounds(s.accounts, s.uids, s.payloads);
  b.caps = caps;
  return b;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::Vacuous: return "vacuous";
  }
  return "?";
}

json counterexample_to_json(const CounterExample& ce) {
  json j;
  if (const auto* rt = std::get_if<ReachTrace>(&ce)) {
    j["type"] = "reach-trace";
    j["model"] = model_to_json(rt->model);
    j["bounds"] = domains_to_json(rt->bounds);
    j["caps"] = caps_to_json(rt->caps);
    j["steps"] = steps_to_json(rt->steps);
    j["violated"] = violation_to_json(rt->violated);
  } else {
    const auto& ip = std::get<InductionPair>(ce);
    j["type"] = "induction-pair";
    j["model"] = model_to_json(ip.model);
    j["bounds"] = domains_to_json(ip.bounds);
    j["caps"] = caps_to_json(ip.caps);
    j["lemmas"] = ip.lemmas;
    j["prestate"] = social::state_to_json(ip.prestate);
    j["transition"] = ip.transition;
    json args = json::array();
    for (const auto& a : ip.args) args.push_back(a.display());
    j["args"] = args;
    j["violated"] = violation_to_json(ip.violated);
  }
  return j;
}

json report_to_json(const Report& r) {
  json j;
  j["schema"] = 1;
  j["mode"] = r.mode;
  json bounds = domains_to_json(r.bounds);
  bounds["default_visibility"] = r.model.default_visibility;
  json ext = json::array();
  if (r.model.set_visibility_extension) ext.push_back("set-visibility");
  bounds["extensions"] = ext;
  j["bounds"] = bounds;
  j["caps"] = caps_to_json(r.caps);
  j["complete"] = r.complete;

  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    json jv;
    jv["invariant"] = v.invariant;
    jv["verdict"] = verdict_name(v.verdict);
    jv["instantiations"] = v.instantiations;
    if (v.counterexample) jv["counterexample"] = counterexample_to_json(*v.counterexample);
    verdicts.push_back(std::move(jv));
  }
  j["verdicts"] = verdicts;

  if (!r.transitions.empty()) {
    json rows = json::array();
    for (const auto& t : r.transitions) {
      json row;
      row["transition"] = t.transition;
      row["instances"] = t.instances;
      row["cond_true"] = t.cond_true;
      row["cond_false"] = t.cond_false;
      row["pass"] = t.pass;
      rows.push_back(std::move(row));
    }
    j["transitions"] = rows;
  }
  if (r.mode == "induct") j["lemmas"] = r.lemmas_used;

  json stats;
  stats["states"] = r.stats.states;
  stats["edges"] = r.stats.edges;
  stats["instances"] = r.stats.instances;
  stats["millis"] = r.stats.millis;
  j["stats"] = stats;
  return j;
}

std::string canonical_body(const Report& r) {
  json j = report_to_json(r);
  j["stats"].erase("millis");
  return j.dump();  // object keys are kept sorted, so this is canonical
}

}  // namespace otsv::verify
