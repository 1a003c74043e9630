#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "otsv/errors.hpp"
#include "otsv/lang/eval.hpp"
#include "otsv/lang/lexer.hpp"
#include "otsv/lang/parser.hpp"
#include "otsv/lang/printer.hpp"
#include "otsv/lang/scenario.hpp"
#include "otsv/social/model.hpp"
#include "otsv/verify/builtin.hpp"
#include "support/oracle.hpp"

using namespace otsv;
using namespace otsv::lang;
using otsv::social::NetworkOts;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PredPtr vis(Expr o) { return p_atom({AtomKind::Visibility, {std::move(o)}, {}}); }
PredPtr in_accounts(Expr m) { return p_atom({AtomKind::InAccounts, {std::move(m)}, {}}); }

bool throws_with(const std::function<void()>& f, const std::string& needle) {
  try {
    f();
  } catch (const Error& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("lexer tokenizes the concrete syntax") {
  auto toks = lex("foo(bar, 12) := x == y = z : [w]");
  std::vector<TokType> types;
  for (const Token& t : toks) types.push_back(t.type);
  CHECK(types == std::vector<TokType>{
                     TokType::Ident, TokType::LParen, TokType::Ident, TokType::Comma,
                     TokType::Nat, TokType::RParen, TokType::ColonEq, TokType::Ident,
                     TokType::EqEq, TokType::Ident, TokType::Eq, TokType::Ident,
                     TokType::Colon, TokType::LBracket, TokType::Ident, TokType::RBracket,
                     TokType::End});
  CHECK(toks[2].text == "bar");
  CHECK(toks[4].nat == 12);

  SUBCASE("hyphens join identifiers but double hyphens open comments") {
    auto v = lex("viewed-photo");
    REQUIRE(v.size() == 2);
    CHECK(v[0].text == "viewed-photo");

    auto c = lex("x -- trailing words ( [ \"\ny");
    REQUIRE(c.size() == 3);
    CHECK(c[0].text == "x");
    CHECK(c[1].text == "y");
    CHECK(c[1].span.line == 2);

    // "x--y": the double hyphen wins even when glued to an identifier.
    auto g = lex("x--y\nz");
    REQUIRE(g.size() == 3);
    CHECK(g[0].text == "x");
    CHECK(g[1].text == "z");
  }

  SUBCASE("strings decode escapes") {
    auto s = lex("\"a\\\"b\\\\c\\n\\t\"");
    REQUIRE(s.size() == 2);
    CHECK(s[0].type == TokType::String);
    CHECK(s[0].text == "a\"b\\c\n\t");
  }

  SUBCASE("CRLF line endings count lines normally") {
    auto t = lex("a\r\nb");
    REQUIRE(t.size() == 3);
    CHECK(t[0].span.line == 1);
    CHECK(t[1].span.line == 2);
    CHECK(t[1].span.column == 1);
  }

  SUBCASE("spans carry position") {
    auto t = lex("  alpha");
    CHECK(t[0].span.line == 1);
    CHECK(t[0].span.column == 3);
    CHECK(t[0].span.offset == 2);
    CHECK(t[0].span.length == 5);
  }

  SUBCASE("lexical errors") {
    CHECK_THROWS_AS(lex("\"open"), ParseError);
    CHECK_THROWS_AS(lex("\"a\nb\""), ParseError);
    CHECK_THROWS_AS(lex("\"bad \\q escape\""), ParseError);
    CHECK_THROWS_AS(lex("a % b"), ParseError);
    CHECK_THROWS_AS(lex("12345678901234567890"), ParseError);
    CHECK(throws_with([] { lex("x\n  ?"); }, "line 2, column 3"));
  }
}

TEST_CASE("predicate grammar and precedence") {
  SUBCASE("implies is right-associative and binds loosest") {
    PredPtr p = parse_predicate("a in accounts implies b in accounts implies visibility(c)", {});
    PredPtr expect = p_implies(in_accounts(id_lit("a")),
                               p_implies(in_accounts(id_lit("b")), vis(id_lit("c"))));
    CHECK(pred_equal(p, expect));
  }
  SUBCASE("or binds looser than and, not tightest") {
    PredPtr p = parse_predicate("not visibility(a) or visibility(b) and visibility(c)", {});
    PredPtr expect = p_or(p_not(vis(id_lit("a"))),
                          p_and(vis(id_lit("b")), vis(id_lit("c"))));
    CHECK(pred_equal(p, expect));
  }
  SUBCASE("parentheses override") {
    PredPtr p = parse_predicate("(visibility(a) or visibility(b)) and visibility(c)", {});
    PredPtr expect = p_and(p_or(vis(id_lit("a")), vis(id_lit("b"))), vis(id_lit("c")));
    CHECK(pred_equal(p, expect));
    CHECK(print_canonical(*p) == "(visibility(a) or visibility(b)) and visibility(c)");
  }
  SUBCASE("every atom form parses") {
    std::vector<ParamDecl> params = {{"pa", social::accountid_sort()},
                                     {"pn", Sort::natural()}};
    CHECK(parse_predicate("visibility(pa)", params) != nullptr);
    CHECK(parse_predicate("bob in friends(pa)", params) != nullptr);
    CHECK(parse_predicate("pa in pending(bob)", params) != nullptr);
    CHECK(parse_predicate("pa in accounts", params) != nullptr);
    CHECK(parse_predicate("viewed-photo(pa, bob, pn)", params) != nullptr);
    CHECK(parse_predicate("viewed-friends(pa, bob)", params) != nullptr);
    CHECK(parse_predicate("bob in likes(pa, photos, 2)", params) != nullptr);
    CHECK(parse_predicate("myid(pa) == pa", params) != nullptr);
    PredPtr likes = parse_predicate("bob in likes(pa, inbox, pn)", params);
    REQUIRE(likes->kind == Pred::Kind::Leaf);
    CHECK(likes->atom.kind == AtomKind::InLikes);
    CHECK(likes->atom.place == social::Placeholder::Inbox);
    CHECK(likes->atom.args[0] == id_lit("bob"));
    CHECK(likes->atom.args[1] == param_ref("pa"));
    CHECK(likes->atom.args[2] == param_ref("pn"));
  }
  SUBCASE("undeclared identifiers are literals only in id positions") {
    CHECK_THROWS_AS(parse_predicate("bob in likes(alice, wall, pi)", {}), ParseError);
    CHECK_THROWS_AS(parse_predicate("viewed-photo(a, b, n)", {}), ParseError);
    CHECK(parse_predicate("viewed-photo(a, b, 3)", {}) != nullptr);
  }
  SUBCASE("parameter sorts are enforced in both directions") {
    std::vector<ParamDecl> nat_param = {{"pn", Sort::natural()}};
    CHECK(throws_with([&] { parse_predicate("visibility(pn)", nat_param); },
                      "has sort nat, expected accountid"));
    std::vector<ParamDecl> acc_param = {{"pa", social::accountid_sort()}};
    CHECK(throws_with([&] { parse_predicate("viewed-photo(a, b, pa)", acc_param); },
                      "has sort accountid, expected nat"));
  }
  SUBCASE("malformed atoms") {
    CHECK_THROWS_AS(parse_predicate("bob in likes(alice, attic, 1)", {}), ParseError);
    CHECK_THROWS_AS(parse_predicate("bob in wardrobe(alice)", {}), ParseError);
    CHECK_THROWS_AS(parse_predicate("myid(a) = b", {}), ParseError);
    CHECK_THROWS_AS(parse_predicate("visibility(a) visibility(b)", {}), ParseError);
    CHECK_THROWS_AS(parse_predicate("", {}), ParseError);
    CHECK_THROWS_AS(parse_predicate("visibility(a) and", {}), ParseError);
  }
}

TEST_CASE("invariant files parse to named definitions") {
  std::string src =
      "-- sample registry\n"
      "invariant only_installed(a: accountid) := a in accounts\n"
      "lemma self(a: accountid) := myid(a) == a\n"
      "invariant liked(a: accountid, n: nat, p: payload) :=\n"
      "  a in likes(a, wall, n) implies visibility(a)\n";
  auto defs = parse_invariant_file(src);
  REQUIRE(defs.size() == 3);
  CHECK(defs[0].name == "only_installed");
  CHECK_FALSE(defs[0].is_lemma);
  REQUIRE(defs[0].params.size() == 1);
  CHECK(defs[0].params[0].name == "a");
  CHECK(defs[0].params[0].sort == social::accountid_sort());
  CHECK(defs[1].is_lemma);
  CHECK(defs[2].params[2].sort == social::payload_sort());
  CHECK(pred_equal(defs[0].body, in_accounts(param_ref("a"))));

  SUBCASE("rejections") {
    CHECK_THROWS_AS(parse_invariant_file("invariant d(a: accountid) := a in accounts\n"
                                         "invariant d(b: accountid) := b in accounts\n"),
                    ParseError);
    CHECK_THROWS_AS(
        parse_invariant_file("invariant d(a: accountid, a: nat) := a in accounts\n"),
        ParseError);
    CHECK_THROWS_AS(parse_invariant_file("invariant d(a: string) := a in accounts\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_invariant_file("theorem d(a: accountid) := a in accounts\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_invariant_file("invariant d(a: accountid) = a in accounts\n"),
                    ParseError);
  }
}

TEST_CASE("the shipped registry text matches its compiled form") {
  auto parsed = parse_invariant_file(verify::builtin_text());
  auto compiled = verify::builtin_definitions();
  REQUIRE(parsed.size() == compiled.size());
  for (size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].name == compiled[i].name);
    CHECK(parsed[i].is_lemma == compiled[i].is_lemma);
    REQUIRE(parsed[i].params.size() == compiled[i].params.size());
    for (size_t k = 0; k < parsed[i].params.size(); ++k)
      CHECK(parsed[i].params[k] == compiled[i].params[k]);
    CHECK(pred_equal(parsed[i].body, compiled[i].body));
  }
}

TEST_CASE("scenario scripts parse against the model signature") {
  NetworkOts net;
  std::string src =
      "scenario \"smoke\"\n"
      "accounts = [alice, bob]\n"
      "step add(alice)\n"
      "step receiveSN(alice, (bob, 1, p0), bob, wall)\n"
      "expect-stutter del(carol)\n"
      "assert alice in accounts and not visibility(dave)\n"
      "expect-violation inv1\n";
  ScenarioAst sc = parse_scenario(src, net.signature());
  CHECK(sc.name == "smoke");
  REQUIRE(sc.accounts.has_value());
  CHECK(*sc.accounts == std::vector<std::string>{"alice", "bob"});
  REQUIRE(sc.statements.size() == 5);
  CHECK(sc.statements[0].kind == Stmt::Kind::Step);
  CHECK(sc.statements[1].call.transition == "receiveSN");
  REQUIRE(sc.statements[1].call.args.size() == 4);
  CHECK(sc.statements[1].call.args[1] ==
        Value::tuple({Value::id("bob"), Value::nat(1), Value::id("p0")}));
  CHECK(sc.statements[1].call.args[3] == Value::enum_tag("wall"));
  CHECK(sc.statements[2].kind == Stmt::Kind::ExpectStutter);
  CHECK(sc.statements[3].kind == Stmt::Kind::Assert);
  CHECK(sc.statements[4].target == "inv1");

  SUBCASE("statement spans are recorded") {
    CHECK(sc.statements[0].span.line == 3);
    CHECK(sc.statements[4].span.line == 7);
  }
  SUBCASE("unknown transitions suggest the nearest declared name") {
    CHECK(throws_with(
        [&] { parse_scenario("scenario \"x\"\nstep recievefriendSN(a, b)", net.signature()); },
        "nearest is 'receivefriendSN'"));
  }
  SUBCASE("setvisibility needs the extension's signature") {
    std::string vsrc = "scenario \"v\"\nstep setvisibility(alice, false)\n";
    CHECK_THROWS_AS(parse_scenario(vsrc, net.signature()), ParseError);
    NetworkOts ext(NetworkOts::Config{.set_visibility_extension = true});
    ScenarioAst v = parse_scenario(vsrc, ext.signature());
    CHECK(v.statements[0].call.args[1] == Value::boolean(false));
  }
  SUBCASE("arity and literal sorts are enforced") {
    CHECK_THROWS_AS(parse_scenario("scenario \"x\"\nstep add(alice, bob)", net.signature()),
                    ParseError);
    CHECK_THROWS_AS(parse_scenario("scenario \"x\"\nstep add(7)", net.signature()),
                    ParseError);
    CHECK_THROWS_AS(
        parse_scenario("scenario \"x\"\nstep receiveSN(a, (b, 1, p0), b, attic)",
                       net.signature()),
        ParseError);
  }
  SUBCASE("duplicate bounds accounts are rejected") {
    CHECK_THROWS_AS(parse_scenario("scenario \"x\"\naccounts = [a, a]", net.signature()),
                    ParseError);
  }
  SUBCASE("quoted identifiers pass through") {
    ScenarioAst q = parse_scenario("scenario \"q\"\nstep add(\"strange id\")",
                                   net.signature());
    CHECK(q.statements[0].call.args[0] == Value::id("strange id"));
  }
}

TEST_CASE("sort-directed argument literals") {
  CHECK(parse_call_argument("42", Sort::natural()) == Value::nat(42));
  CHECK(parse_call_argument("alice", social::accountid_sort()) == Value::id("alice"));
  CHECK(parse_call_argument("photos", social::placeholder_sort()) ==
        Value::enum_tag("photos"));
  CHECK(parse_call_argument("(bob, 3, p1)", social::content_sort()) ==
        Value::tuple({Value::id("bob"), Value::nat(3), Value::id("p1")}));
  CHECK(parse_call_argument("true", Sort::boolean()) == Value::boolean(true));
  CHECK_THROWS_AS(parse_call_argument("alice bob", social::accountid_sort()), ParseError);
  CHECK_THROWS_AS(parse_call_argument("wall", Sort::natural()), ParseError);
}

TEST_CASE("random predicates round-trip through the printer") {
  std::mt19937 rng(20240811);
  const std::vector<ParamDecl> pools[] = {
      {},
      {{"pa", social::accountid_sort()}},
      {{"pa", social::accountid_sort()}, {"pb", social::accountid_sort()},
       {"pn", Sort::natural()}},
  };
  for (int iter = 0; iter < 1200; ++iter) {
    const auto& params = pools[iter % 3];
    PredPtr p = oracle::random_pred(rng, params, 4);
    std::string text = print_canonical(*p);
    CAPTURE(text);
    PredPtr back = parse_predicate(text, params);
    REQUIRE(pred_equal(p, back));
    // printing is idempotent: the canonical text is a fixpoint.
    REQUIRE(print_canonical(*back) == text);
  }
}

TEST_CASE("random invariant files round-trip through the printer") {
  std::mt19937 rng(7151);
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<InvariantDef> defs;
    int n = 1 + static_cast<int>(rng() % 4);
    for (int d = 0; d < n; ++d) {
      InvariantDef def;
      def.name = (d % 2 ? "prop" : "rule") + std::to_string(d);
      def.is_lemma = rng() % 2 == 0;
      unsigned np = rng() % 4;
      const char* names[] = {"qa", "qb", "qn", "qd"};
      for (unsigned k = 0; k < np; ++k) {
        Sort s = (rng() % 3 == 0) ? Sort::natural() : social::accountid_sort();
        def.params.push_back({names[k], std::move(s)});
      }
      def.body = oracle::random_pred(rng, def.params, 3);
      defs.push_back(std::move(def));
    }
    std::string text = print_canonical(std::span<const InvariantDef>(defs));
    CAPTURE(text);
    auto back = parse_invariant_file(text);
    REQUIRE(back.size() == defs.size());
    for (size_t i = 0; i < defs.size(); ++i) {
      REQUIRE(back[i].name == defs[i].name);
      REQUIRE(back[i].is_lemma == defs[i].is_lemma);
      REQUIRE(back[i].params.size() == defs[i].params.size());
      for (size_t k = 0; k < defs[i].params.size(); ++k)
        REQUIRE(back[i].params[k] == defs[i].params[k]);
      REQUIRE(pred_equal(back[i].body, defs[i].body));
    }
    REQUIRE(print_canonical(std::span<const InvariantDef>(back)) == text);
  }
}

TEST_CASE("random scenarios round-trip through the printer") {
  NetworkOts ext(NetworkOts::Config{.set_visibility_extension = true});
  std::mt19937 rng(424243);
  for (int iter = 0; iter < 300; ++iter) {
    ScenarioAst sc = oracle::random_scenario(rng, ext.signature());
    std::string text = print_canonical(sc);
    CAPTURE(text);
    ScenarioAst back = parse_scenario(text, ext.signature());
    REQUIRE(back == sc);
    REQUIRE(print_canonical(back) == text);
  }
}

TEST_CASE("predicate evaluation totalizes uninstalled owners") {
  NetworkOts net;
  social::NetworkState s = net.initial();
  auto holds = [&](const char* src, const NetworkOts& m, const social::NetworkState& st) {
    return eval_predicate(parse_predicate(src, {}), m, st, {}, {});
  };

  CHECK(holds("visibility(ghost)", net, s));
  CHECK(holds("myid(ghost) == ghost", net, s));
  CHECK_FALSE(holds("myid(ghost) == other", net, s));
  CHECK_FALSE(holds("ghost in accounts", net, s));
  CHECK_FALSE(holds("x in friends(ghost)", net, s));
  CHECK_FALSE(holds("x in pending(ghost)", net, s));
  CHECK_FALSE(holds("viewed-photo(ghost, x, 1)", net, s));
  CHECK_FALSE(holds("viewed-friends(ghost, x)", net, s));
  CHECK_FALSE(holds("x in likes(ghost, wall, 1)", net, s));

  NetworkOts hidden(NetworkOts::Config{.default_visibility = false});
  CHECK_FALSE(holds("visibility(ghost)", hidden, hidden.initial()));

  SUBCASE("parameters bind positionally") {
    auto r = otsv::apply(net, s, "add", std::vector<Value>{Value::id("alice")});
    std::vector<ParamDecl> params = {{"x", social::accountid_sort()},
                                     {"n", Sort::natural()}};
    PredPtr p = parse_predicate("x in accounts", params);
    std::vector<Value> yes = {Value::id("alice"), Value::nat(1)};
    std::vector<Value> no = {Value::id("bob"), Value::nat(1)};
    CHECK(eval_predicate(p, net, r.state, params, yes));
    CHECK_FALSE(eval_predicate(p, net, r.state, params, no));
  }
}

TEST_CASE("scenario bounds inference") {
  NetworkOts net;
  SUBCASE("declared accounts come first, literals are appended") {
    std::string src =
        "scenario \"b\"\n"
        "accounts = [zoe, alice]\n"
        "step receiveSN(zoe, (carol, 7, px), carol, inbox)\n"
        "step receivelikeSN(zoe, inbox, 9, carol)\n"
        "assert dave in friends(zoe) or viewed-photo(zoe, dave, 4)\n";
    Bounds b = scenario_bounds(parse_scenario(src, net.signature()), net.signature());
    const auto* accs = b.find_domain("accountid");
    REQUIRE(accs != nullptr);
    // zoe, alice declared; carol, dave collected from literals.
    CHECK(*accs == std::vector<Value>{Value::id("zoe"), Value::id("alice"),
                                      Value::id("carol"), Value::id("dave")});
    CHECK(*b.find_domain("nat") ==
          std::vector<Value>{Value::nat(4), Value::nat(7), Value::nat(9)});
    CHECK(*b.find_domain("payload") == std::vector<Value>{Value::id("px")});
  }
  SUBCASE("empty domains fall back to singletons") {
    Bounds b = scenario_bounds(parse_scenario("scenario \"empty\"", net.signature()),
                               net.signature());
    CHECK(*b.find_domain("accountid") == std::vector<Value>{Value::id("alice")});
    CHECK(*b.find_domain("nat") == std::vector<Value>{Value::nat(1)});
    CHECK(*b.find_domain("payload") == std::vector<Value>{Value::id("p0")});
  }
}

TEST_CASE("scenario execution reports per-statement outcomes") {
  NetworkOts net;
  auto registry = verify::builtin_definitions();
  auto run = [&](const std::string& src, const NetworkOts& model) {
    ScenarioAst sc = parse_scenario(src, model.signature());
    return run_scenario(model, registry, scenario_bounds(sc, model.signature()), sc);
  };

  SUBCASE("green run") {
    auto r = run("scenario \"ok\"\n"
                 "step add(alice)\n"
                 "assert alice in accounts\n"
                 "expect-stutter add(alice)\n"
                 "expect-violation inv1\n",  // never violated here -> red
                 net);
    CHECK_FALSE(r.passed);  // the last statement fails; the first three are green
    REQUIRE(r.entries.size() == 4);
    CHECK(r.entries[0].ok);
    CHECK(r.entries[0].applied);
    CHECK(r.entries[1].ok);
    CHECK(r.entries[2].ok);
    CHECK_FALSE(r.entries[2].applied);
    CHECK_FALSE(r.entries[3].ok);
    CHECK(r.entries[3].message == "no instantiation of 'inv1' is violated here");
    for (const auto& e : r.entries) {
      CHECK(e.digest.size() == 16);
      CHECK(e.digest.find_first_not_of("0123456789abcdef") == std::string::npos);
    }
    // the two all-green prefixes share the state, so their digests agree
    CHECK(r.entries[1].digest == r.entries[2].digest);
  }
  SUBCASE("a step whose condition is false fails the scenario") {
    auto r = run("scenario \"bad step\"\nstep del(alice)\nassert not (alice in accounts)\n",
                 net);
    CHECK_FALSE(r.passed);
    REQUIRE(r.entries.size() == 2);
    CHECK_FALSE(r.entries[0].ok);
    CHECK(r.entries[0].message == "transition condition is false (state unchanged)");
    CHECK(r.entries[1].ok);  // later statements still execute
  }
  SUBCASE("an expect-stutter that applies fails") {
    auto r = run("scenario \"noisy\"\nexpect-stutter add(alice)\n", net);
    CHECK_FALSE(r.passed);
    CHECK(r.entries[0].message == "transition applied but was expected to stutter");
    CHECK(r.entries[0].applied);
  }
  SUBCASE("failed assertions and unknown invariants") {
    auto r = run("scenario \"checks\"\n"
                 "assert alice in accounts\n"
                 "expect-violation nosuch\n",
                 net);
    CHECK_FALSE(r.passed);
    CHECK(r.entries[0].message == "assertion evaluated to false");
    CHECK(r.entries[1].message == "unknown invariant 'nosuch'");
  }
  SUBCASE("expect-violation sees a genuine violation") {
    NetworkOts ext(NetworkOts::Config{.set_visibility_extension = true});
    auto r = run("scenario \"hide after view\"\n"
                 "step add(alice)\n"
                 "step add(bob)\n"
                 "step receivefriendSN(alice, bob)\n"
                 "step acceptfriendSN(alice, bob)\n"
                 "step receiveSN(alice, (bob, 1, p0), bob, photos)\n"
                 "step viewphotoSN(alice, bob)\n"
                 "step setvisibility(alice, false)\n"
                 "expect-violation inv1\n",
                 ext);
    CHECK(r.passed);
    CHECK(r.entries.back().ok);
  }
}

TEST_CASE("trace reports serialize to JSON") {
  NetworkOts net;
  auto registry = verify::builtin_definitions();
  ScenarioAst sc = parse_scenario("scenario \"json demo\"\n"
                                  "step add(alice)\n"
                                  "expect-stutter add(alice)\n"
                                  "assert bob in accounts\n",
                                  net.signature());
  auto r = run_scenario(net, registry, scenario_bounds(sc, net.signature()), sc);
  nlohmann::json j = trace_report_to_json(r);

  CHECK(j.at("schema") == 1);
  CHECK(j.at("scenario") == "json demo");
  CHECK(j.at("passed") == false);
  REQUIRE(j.at("entries").size() == 3);
  const auto& e0 = j.at("entries")[0];
  CHECK(e0.at("index") == 0);
  CHECK(e0.at("text") == "step add(alice)");
  CHECK(e0.at("ok") == true);
  CHECK(e0.at("applied") == true);
  CHECK(e0.at("line") == 2);
  CHECK_FALSE(e0.contains("message"));
  const auto& e2 = j.at("entries")[2];
  CHECK(e2.at("ok") == false);
  CHECK_FALSE(e2.contains("applied"));  // assertions have no applied flag
  CHECK(e2.at("message") == "assertion evaluated to false");
  CHECK(e2.at("digest").get<std::string>().size() == 16);
}

TEST_CASE("bundled scenario corpus parses, round-trips and replays green") {
  namespace fs = std::filesystem;
  NetworkOts plain;
  NetworkOts ext(NetworkOts::Config{.set_visibility_extension = true});
  auto registry = verify::builtin_definitions();

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(fs::path(OTSV_DATA_DIR) / "scenarios"))
    if (entry.path().extension() == ".sns") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  REQUIRE(files.size() >= 10);

  for (const fs::path& f : files) {
    CAPTURE(f.string());
    std::string src = slurp(f);
    bool needs_ext = src.find("-- requires: set-visibility") != std::string::npos;
    const NetworkOts& model = needs_ext ? ext : plain;

    ScenarioAst sc = parse_scenario(src, model.signature());
    std::string printed = print_canonical(sc);
    ScenarioAst back = parse_scenario(printed, model.signature());
    REQUIRE(back == sc);
    REQUIRE(print_canonical(back) == printed);

    auto report = run_scenario(model, registry, scenario_bounds(sc, model.signature()), sc);
    for (const auto& e : report.entries) {
      CAPTURE(e.rendered);
      CAPTURE(e.message);
      CHECK(e.ok);
    }
    REQUIRE(report.passed);
  }
}
