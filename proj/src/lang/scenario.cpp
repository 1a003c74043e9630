#include "otsv/lang/scenario.hpp"

#include <algorithm>
#include <set>

#include "otsv/kernel.hpp"
#include "otsv/lang/eval.hpp"
#include "otsv/lang/printer.hpp"

namespace otsv::lang {

namespace {

struct Collected {
  std::set<std::string> accounts;
  std::set<std::uint64_t> uids;
  std::set<std::string> payloads;
};

void collect_value(const Value& v, const Sort& sort, Collected& out) {
  switch (sort.kind()) {
    case Sort::Kind::Id:
      if (sort.name() == "payload")
        out.payloads.insert(v.token());
      else
        out.accounts.insert(v.token());
      return;
    case Sort::Kind::Nat:
      out.uids.insert(v.as_nat());
      return;
    case Sort::Kind::Tuple: {
      const auto& sorts = sort.elems();
      for (size_t i = 0; i < sorts.size() && i < v.elems().size(); ++i)
        collect_value(v.elems()[i], sorts[i], out);
      return;
    }
    default:
      return;
  }
}

void collect_pred(const Pred& p, Collected& out) {
  if (p.kind == Pred::Kind::Leaf) {
    for (const Expr& e : p.atom.args) {
      if (e.kind == Expr::Kind::IdLit) out.accounts.insert(e.token);
      if (e.kind == Expr::Kind::NatLit) out.uids.insert(e.nat);
    }
    return;
  }
  if (p.lhs) collect_pred(*p.lhs, out);
  if (p.rhs) collect_pred(*p.rhs, out);
}

}  // namespace

Bounds scenario_bounds(const ScenarioAst& sc, const Signature& sig) {
  Collected c;
  for (const Stmt& st : sc.statements) {
    if (st.kind == Stmt::Kind::Step || st.kind == Stmt::Kind::ExpectStutter) {
      const TransitionSpec& spec = sig.transition(st.call.transition);
      for (size_t i = 0; i < spec.params.size(); ++i)
        collect_value(st.call.args[i], spec.params[i], c);
    } else if (st.kind == Stmt::Kind::Assert && st.pred) {
      collect_pred(*st.pred, c);
    }
  }
  std::vector<std::string> accounts;
  if (sc.accounts) {
    accounts = *sc.accounts;
    for (const std::string& a : c.accounts)
      if (std::find(accounts.begin(), accounts.end(), a) == accounts.end())
        accounts.push_back(a);
  } else {
    accounts.assign(c.accounts.begin(), c.accounts.end());
  }
  if (accounts.empty()) accounts.push_back("alice");
  std::vector<std::uint64_t> uids(c.uids.begin(), c.uids.end());
  if (uids.empty()) uids.push_back(1);
  std::vector<std::string> payloads(c.payloads.begin(), c.payloads.end());
  if (payloads.empty()) payloads.push_back("p0");
  return social::make_bounds(accounts, uids, payloads);
}

TraceReport run_scenario(const social::NetworkOts& model,
                         std::span<const InvariantDef> registry, const Bounds& bounds,
                         const ScenarioAst& sc) {
  ObservationPlan plan(model.signature(), bounds);
  TraceReport report;
  report.scenario = sc.name;
  social::NetworkState state = model.initial();

  int index = 0;
  for (const Stmt& st : sc.statements) {
    TraceEntry e;
    e.index = index++;
    e.kind = st.kind;
    e.span = st.span;
    switch (st.kind) {
      case Stmt::Kind::Step:
      case Stmt::Kind::ExpectStutter: {
        auto res = apply(model, state, st.call.transition, st.call.args);
        e.applied = res.applied;
        e.rendered = (st.kind == Stmt::Kind::Step ? "step " : "expect-stutter ") +
                     print_call(st.call);
        if (st.kind == Stmt::Kind::ExpectStutter && res.applied) {
          e.ok = false;
          e.message = "transition applied but was expected to stutter";
        }
        if (st.kind == Stmt::Kind::Step && !res.applied) {
          e.ok = false;
          e.message = "transition condition is false (state unchanged)";
        }
        state = std::move(res.state);
        break;
      }
      case Stmt::Kind::Assert: {
        e.rendered = "assert " + print_canonical(*st.pred);
        if (!eval_predicate(*st.pred, model, state, {}, {})) {
          e.ok = false;
          e.message = "assertion evaluated to false";
        }
        break;
      }
      case Stmt::Kind::ExpectViolation: {
        e.rendered = "expect-violation " + st.target;
        const InvariantDef* def = nullptr;
        for (const InvariantDef& d : registry)
          if (d.name == st.target) def = &d;
        if (!def) {
          e.ok = false;
          e.message = "unknown invariant '" + st.target + "'";
          break;
        }
        std::vector<Sort> sorts;
        for (const ParamDecl& pd : def->params) sorts.push_back(pd.sort);
        bool violated = false;
        for (const auto& inst : enumerate_instances(std::span<const Sort>(sorts), bounds))
          if (!eval_predicate(*def->body, model, state, def->params, inst)) {
            violated = true;
            break;
          }
        if (!violated) {
          e.ok = false;
          e.message = "no instantiation of '" + st.target + "' is violated here";
        }
        break;
      }
    }
    e.digest = digest_hex(observation_digest(model, state, plan));
    if (!e.ok) report.passed = false;
    report.entries.push_back(std::move(e));
  }
  report.final_state = std::move(state);
  return report;
}

nlohmann::json trace_report_to_json(const TraceReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const TraceEntry& e : r.entries) {
    nlohmann::json je = {{"index", e.index},
                         {"text", e.rendered},
                         {"ok", e.ok},
                         {"digest", e.digest},
                         {"line", e.span.line},
                         {"column", e.span.column}};
    if (e.kind == Stmt::Kind::Step || e.kind == Stmt::Kind::ExpectStutter)
      je["applied"] = e.applied;
    if (!e.message.empty()) je["message"] = e.message;
    entries.push_back(std::move(je));
  }
  return {{"schema", 1}, {"scenario", r.scenario}, {"passed", r.passed}, {"entries", entries}};
}

}  // namespace otsv::lang
