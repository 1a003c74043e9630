#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "otsv/errors.hpp"
#include "otsv/kernel.hpp"
#include "otsv/lang/parser.hpp"
#include "otsv/lang/printer.hpp"
#include "otsv/lang/scenario.hpp"
#include "otsv/social/model.hpp"
#include "otsv/social/state_json.hpp"
#include "otsv/verify/builtin.hpp"
#include "otsv/verify/checker.hpp"
#include "otsv/verify/counterexample.hpp"
#include "otsv/verify/report.hpp"
#include "otsv/verify/universe.hpp"

namespace {

using nlohmann::json;
using otsv::Bounds;
using otsv::StructuralCaps;
using otsv::Value;
using otsv::lang::InvariantDef;
using otsv::social::NetworkOts;
using otsv::social::NetworkState;
using otsv::verify::Report;
using otsv::verify::Verdict;

struct CommonOpts {
  std::vector<std::string> accounts{"alice", "bob"};
  std::vector<std::uint64_t> uids{1, 2};
  std::vector<std::string> payloads{"p0"};
  std::string caps;
  bool default_visibility = true;
  std::vector<std::string> extensions;
  std::string invariants = "builtin";
  std::string lemmas;
  bool json_output = false;
  std::uint64_t max_states = otsv::verify::kDefaultUniverseLimit;
  bool max_states_set = false;
};

void add_model_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--caps", o.caps,
                  "structural caps as k=v pairs: seq=,set=,content=,accounts= (default "
                  "seq=1,set=2,content=1, accounts unlimited)");
  cmd->add_option("--default-visibility", o.default_visibility,
                  "initial visibility of fresh profiles (default true)");
  cmd->add_option("--ext", o.extensions, "enable an extension (set-visibility)");
}

void add_bounds_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--accounts", o.accounts, "account id domain (default alice,bob)")
      ->delimiter(',');
  cmd->add_option("--uids", o.uids, "content uid domain (default 1,2)")->delimiter(',');
  cmd->add_option("--payloads", o.payloads, "payload token domain (default p0)")
      ->delimiter(',');
}

void add_registry_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--invariants", o.invariants, "invariant file path, or 'builtin'");
  cmd->add_option("--lemmas", o.lemmas, "lemma file path, or 'builtin' for the stock L1");
}

StructuralCaps parse_caps(const std::string& spec) {
  StructuralCaps c;
  if (spec.empty()) return c;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos)
      throw otsv::ConfigError("bad --caps entry '" + part + "', expected key=value");
    const std::string key = part.substr(0, eq);
    unsigned value = 0;
    try {
      value = static_cast<unsigned>(std::stoul(part.substr(eq + 1)));
    } catch (const std::exception&) {
      throw otsv::ConfigError("bad --caps value in '" + part + "'");
    }
    if (value == 0) throw otsv::ConfigError("caps must be positive ('" + part + "')");
    if (key == "seq")
      c.max_seq = value;
    else if (key == "set")
      c.max_set = value;
    else if (key == "content")
      c.max_content = value;
    else if (key == "accounts")
      c.max_accounts = value;
    else
      throw otsv::ConfigError("unknown --caps key '" + key + "'");
  }
  return c;
}

NetworkOts::Config model_config(const CommonOpts& o) {
  NetworkOts::Config cfg;
  cfg.default_visibility = o.default_visibility;
  for (const std::string& e : o.extensions) {
    if (e == "set-visibility")
      cfg.set_visibility_extension = true;
    else
      throw otsv::ConfigError("unknown extension '" + e + "'");
  }
  return cfg;
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw otsv::ConfigError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<InvariantDef> load_defs(const std::string& spec) {
  if (spec == "builtin") {
    auto s = otsv::verify::builtin_definitions();
    return {s.begin(), s.end()};
  }
  return otsv::lang::parse_invariant_file(slurp(spec));
}

// File/builtin definitions first, then any stock definition not shadowed by
// name (so expect-violation and replay always know inv1/inv2/L1).
std::vector<InvariantDef> full_registry(const CommonOpts& o) {
  std::vector<InvariantDef> defs = load_defs(o.invariants);
  if (!o.lemmas.empty() && o.lemmas != "builtin")
    for (const InvariantDef& d : load_defs(o.lemmas))
      if (!otsv::verify::find_definition(defs, d.name)) defs.push_back(d);
  for (const InvariantDef& d : otsv::verify::builtin_definitions())
    if (!otsv::verify::find_definition(defs, d.name)) defs.push_back(d);
  return defs;
}

std::vector<InvariantDef> checked_invariants(const CommonOpts& o) {
  std::vector<InvariantDef> out;
  for (const InvariantDef& d : load_defs(o.invariants))
    if (!d.is_lemma) out.push_back(d);
  if (out.empty())
    throw otsv::ConfigError("'" + o.invariants + "' declares no invariants to check");
  return out;
}

std::vector<InvariantDef> hypothesis_lemmas(const CommonOpts& o) {
  if (o.lemmas.empty()) return {};
  std::vector<InvariantDef> out;
  for (const InvariantDef& d : load_defs(o.lemmas))
    if (d.is_lemma) out.push_back(d);
  if (out.empty()) throw otsv::ConfigError("'" + o.lemmas + "' declares no lemmas");
  return out;
}

std::string join_values(std::span<const Value> vals) {
  std::string out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out += ", ";
    out += vals[i].display();
  }
  return out;
}

std::string describe_counterexample(const otsv::verify::CounterExample& ce) {
  if (const auto* rt = std::get_if<otsv::verify::ReachTrace>(&ce)) {
    std::string out = "trace (" + std::to_string(rt->steps.size()) + " steps): ";
    for (std::size_t i = 0; i < rt->steps.size(); ++i) {
      if (i) out += "; ";
      out += rt->steps[i].transition + "(" + join_values(rt->steps[i].args) + ")";
    }
    if (rt->steps.empty()) out += "(initial state)";
    out += " => " + rt->violated.invariant + "(" + join_values(rt->violated.params) + ")";
    return out;
  }
  const auto& ip = std::get<otsv::verify::InductionPair>(ce);
  return "induction pair: " + ip.transition + "(" + join_values(ip.args) + ") breaks " +
         ip.violated.invariant + "(" + join_values(ip.violated.params) + ")";
}

void print_report_human(const Report& r) {
  std::cout << "mode: " << r.mode << "\n";
  std::cout << "accounts: " << [&] {
    std::string s;
    for (std::size_t i = 0; i < r.bounds.accounts.size(); ++i)
      s += (i ? ", " : "") + r.bounds.accounts[i];
    return s;
  }() << "  uids:";
  for (auto u : r.bounds.uids) std::cout << ' ' << u;
  std::cout << "  payloads:";
  for (const auto& p : r.bounds.payloads) std::cout << ' ' << p;
  std::cout << "\ncaps: seq=" << r.caps.max_seq << " set=" << r.caps.max_set
            << " content=" << r.caps.max_content;
  if (r.caps.max_accounts != StructuralCaps{}.max_accounts)
    std::cout << " accounts=" << r.caps.max_accounts;
  std::cout << "\ndefault visibility: " << (r.model.default_visibility ? "true" : "false");
  std::cout << "\nextensions:" << (r.model.set_visibility_extension ? " set-visibility" : " none");
  if (r.mode == "induct") {
    std::cout << "\nlemmas:";
    if (r.lemmas_used.empty())
      std::cout << " none";
    else
      for (const auto& l : r.lemmas_used) std::cout << ' ' << l;
  }
  std::cout << "\ncomplete: " << (r.complete ? "yes" : "no") << "\n";
  for (const auto& v : r.verdicts) {
    std::cout << v.invariant << ": " << otsv::verify::verdict_name(v.verdict) << " ("
              << v.instantiations << " instantiations)\n";
    if (v.counterexample)
      std::cout << "  " << describe_counterexample(*v.counterexample) << "\n";
  }
  if (!r.transitions.empty()) {
    std::cout << "transitions:\n";
    for (const auto& t : r.transitions)
      std::cout << "  " << t.transition << ": instances=" << t.instances
                << " cond_true=" << t.cond_true << " cond_false=" << t.cond_false << " "
                << (t.pass ? "pass" : "FAIL") << "\n";
  }
  std::cout << "stats: states=" << r.stats.states << " edges=" << r.stats.edges
            << " instances=" << r.stats.instances << " millis=" << r.stats.millis << "\n";
}

int finish_report(const Report& r, bool json_output) {
  if (json_output)
    std::cout << otsv::verify::report_to_json(r).dump(2) << "\n";
  else
    print_report_human(r);
  for (const auto& v : r.verdicts)
    if (v.verdict == Verdict::Violated) return 1;
  return 0;
}

int cmd_check(const CommonOpts& o, const std::string& mode) {
  otsv::verify::ensure_builtin_consistency();
  const NetworkOts model(model_config(o));
  Bounds b = otsv::social::make_bounds(o.accounts, o.uids, o.payloads);
  b.caps = parse_caps(o.caps);
  const auto invs = checked_invariants(o);
  const auto lemmas = hypothesis_lemmas(o);
  otsv::verify::CheckOptions opts;
  opts.max_states = o.max_states;
  if (o.max_states_set) opts.stutter_budget = o.max_states;

  Report rep;
  if (mode == "base") {
    rep = otsv::verify::check_base(model, invs, b);
  } else if (mode == "reach") {
    rep = otsv::verify::explore(model, invs, b, opts);
  } else if (mode == "induct") {
    Report base = otsv::verify::check_base(model, invs, b);
    rep = otsv::verify::check_induction(model, invs, lemmas, b, opts);
    for (std::size_t i = 0; i < rep.verdicts.size(); ++i)
      if (base.verdicts[i].verdict == Verdict::Violated &&
          rep.verdicts[i].verdict != Verdict::Violated)
        rep.verdicts[i] = base.verdicts[i];
    rep.stats.instances += base.stats.instances;
    rep.stats.millis += base.stats.millis;
    if (!lemmas.empty()) {
      Report ls = otsv::verify::check_lemma_set(model, lemmas, b, opts);
      for (auto& v : ls.verdicts) rep.verdicts.push_back(std::move(v));
      rep.stats.millis += ls.stats.millis;
    }
  } else {  // stutter
    rep = otsv::verify::check_stutter(model, b, opts);
  }
  return finish_report(rep, o.json_output);
}

int cmd_run(const CommonOpts& o, const std::string& path) {
  otsv::verify::ensure_builtin_consistency();
  const NetworkOts model(model_config(o));
  const otsv::lang::ScenarioAst sc =
      otsv::lang::parse_scenario(slurp(path), model.signature());
  Bounds b = otsv::lang::scenario_bounds(sc, model.signature());
  b.caps = parse_caps(o.caps);
  const auto registry = full_registry(o);
  const otsv::lang::TraceReport rep = otsv::lang::run_scenario(model, registry, b, sc);

  if (o.json_output) {
    std::cout << otsv::lang::trace_report_to_json(rep).dump(2) << "\n";
  } else {
    std::cout << "scenario \"" << rep.scenario << "\"\n";
    for (const auto& e : rep.entries) {
      std::cout << "  " << (e.ok ? "ok   " : "FAIL ") << e.rendered;
      if (!e.message.empty()) std::cout << "  -- " << e.message;
      std::cout << "  [" << e.digest << "]\n";
    }
    std::cout << (rep.passed ? "passed" : "FAILED") << "\n";
  }
  return rep.passed ? 0 : 1;
}

void print_deltas(const NetworkOts& model, const otsv::ObservationPlan& plan,
                  const NetworkState& before, const NetworkState& after) {
  for (const auto& entry : plan.entries())
    for (const auto& tuple : entry.tuples) {
      const Value v1 = model.observe(before, entry.name, tuple);
      const Value v2 = model.observe(after, entry.name, tuple);
      if (v1 == v2) continue;
      std::cout << "      " << entry.name << "(" << join_values(tuple)
                << "): " << v1.display() << " -> " << v2.display() << "\n";
    }
}

void explain_one(const otsv::verify::CounterExample& ce,
                 std::span<const InvariantDef> registry) {
  using otsv::verify::InductionPair;
  using otsv::verify::ReachTrace;
  if (const auto* rt = std::get_if<ReachTrace>(&ce)) {
    const NetworkOts model(rt->model);
    const Bounds b = otsv::verify::bounds_from_summary(rt->bounds, rt->caps);
    const otsv::ObservationPlan plan(model.signature(), b);
    std::cout << "reach trace violating " << rt->violated.invariant << "("
              << join_values(rt->violated.params) << ")\n";
    NetworkState s = model.initial();
    for (std::size_t i = 0; i < rt->steps.size(); ++i) {
      const auto& st = rt->steps[i];
      std::cout << "  " << (i + 1) << ". " << st.transition << "(" << join_values(st.args)
                << ")" << (st.applied ? "" : "  [stutter]") << "  [" << st.digest << "]\n";
      auto res = otsv::apply(model, s, st.transition, st.args);
      print_deltas(model, plan, s, res.state);
      s = std::move(res.state);
    }
    return;
  }
  const auto& ip = std::get<InductionPair>(ce);
  const NetworkOts model(ip.model);
  const Bounds b = otsv::verify::bounds_from_summary(ip.bounds, ip.caps);
  const otsv::ObservationPlan plan(model.signature(), b);
  std::cout << "induction pair violating " << ip.violated.invariant << "("
            << join_values(ip.violated.params) << ")\n";
  if (!ip.lemmas.empty()) {
    std::cout << "  assuming:";
    for (const auto& l : ip.lemmas) std::cout << ' ' << l;
    std::cout << "\n";
  }
  std::cout << "  pre-state: " << otsv::social::state_to_json(ip.prestate).dump() << "\n";
  std::cout << "  step: " << ip.transition << "(" << join_values(ip.args) << ")\n";
  const auto inst = model.decode(ip.transition, ip.args);
  if (model.condition(ip.prestate, inst))
    print_deltas(model, plan, ip.prestate, model.effect(ip.prestate, inst));
  else
    std::cout << "      (transition disabled at the pre-state)\n";
  const InvariantDef* def = otsv::verify::find_definition(registry, ip.violated.invariant);
  if (def && def->body)
    std::cout << "  definition: " << otsv::lang::print_canonical(*def->body) << "\n";
}

int cmd_explain(const CommonOpts& o, const std::string& path, bool do_shrink) {
  otsv::verify::ensure_builtin_consistency();
  const json j = json::parse(slurp(path));
  const auto registry = full_registry(o);

  std::vector<otsv::verify::CounterExample> ces;
  if (j.is_object() && j.contains("type")) {
    ces.push_back(otsv::verify::counterexample_from_json(j, registry));
  } else if (j.is_object() && j.contains("schema")) {
    if (j.at("schema").get<int>() != 1)
      throw otsv::ConfigError("unsupported report schema version");
    for (const auto& v : j.at("verdicts"))
      if (v.contains("counterexample"))
        ces.push_back(otsv::verify::counterexample_from_json(v.at("counterexample"), registry));
  } else {
    throw otsv::ReplayError("input is neither a report nor a counterexample");
  }
  if (ces.empty()) {
    std::cout << "report carries no counterexamples; nothing to explain\n";
    return 0;
  }

  bool all_ok = true;
  for (auto& ce : ces) {
    if (do_shrink)
      if (auto* rt = std::get_if<otsv::verify::ReachTrace>(&ce)) {
        const std::size_t before = rt->steps.size();
        *rt = otsv::verify::shrink(*rt, registry);
        if (rt->steps.size() < before)
          std::cout << "shrunk from " << before << " to " << rt->steps.size() << " steps\n";
      }
    explain_one(ce, registry);
    std::string why;
    if (otsv::verify::replay(ce, registry, &why)) {
      std::cout << "replay: reproduced\n";
    } else {
      std::cout << "replay FAILED: " << why << "\n";
      all_ok = false;
    }
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"observational transition system toolkit (social network model)"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string mode;
  std::string scenario_path;
  std::string explain_path;
  bool do_shrink = false;

  CLI::App* check = app.add_subcommand("check", "verify invariants against the model");
  check->add_option("--mode", mode, "reach | induct | base | stutter")
      ->required()
      ->check(CLI::IsMember({"reach", "induct", "base", "stutter"}));
  add_bounds_flags(check, o);
  add_model_flags(check, o);
  add_registry_flags(check, o);
  check->add_flag("--json", o.json_output, "emit the report as JSON");
  check->add_option("--max-states", o.max_states,
                    "state cap for reach, universe limit for induct, sample budget for stutter");

  CLI::App* run = app.add_subcommand("run", "execute a scenario script");
  run->add_option("scenario", scenario_path, "path to the .sns file (or - for stdin)")
      ->required();
  add_model_flags(run, o);
  add_registry_flags(run, o);
  run->add_flag("--json", o.json_output, "emit the trace report as JSON");

  CLI::App* explain = app.add_subcommand("explain", "replay and pretty-print counterexamples");
  explain->add_option("input", explain_path, "report or counterexample JSON (or - for stdin)")
      ->required();
  add_registry_flags(explain, o);
  explain->add_flag("--shrink", do_shrink, "minimize reach traces before explaining");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  o.max_states_set = check->count("--max-states") > 0;

  try {
    if (check->parsed()) return cmd_check(o, mode);
    if (run->parsed()) return cmd_run(o, scenario_path);
    return cmd_explain(o, explain_path, do_shrink);
  } catch (const otsv::lang::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const otsv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "json error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
