#include "otsv/lang/parser.hpp"

#include <algorithm>

namespace otsv::lang {

namespace {

std::string describe(const Token& t) {
  switch (t.type) {
    case TokType::Ident:
      return "'" + t.text + "'";
    case TokType::Nat:
      return "number " + t.text;
    case TokType::String:
      return "a string";
    default:
      return token_type_name(t.type);
  }
}

struct Parser {
  const std::vector<Token>& toks;
  std::size_t i = 0;

  const Token& peek() const { return toks[i]; }
  bool at(TokType t) const { return peek().type == t; }
  bool at_ident(std::string_view s) const {
    return at(TokType::Ident) && peek().text == s;
  }
  Token take() {
    Token t = toks[i];
    if (t.type != TokType::End) ++i;
    return t;
  }
  Token expect(TokType t, const std::string& what) {
    if (!at(t)) fail(what);
    return take();
  }
  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError("expected " + expected + ", found " + describe(peek()), peek().span);
  }
};

// ---------------------------------------------------------------------------
// Predicates

struct PredParser {
  Parser& p;
  std::span<const ParamDecl> params;

  const ParamDecl* find_param(std::string_view name) const {
    for (const ParamDecl& d : params)
      if (d.name == name) return &d;
    return nullptr;
  }

  Expr id_expr() {
    Token t = p.expect(TokType::Ident, "an identifier");
    if (const ParamDecl* d = find_param(t.text)) {
      if (!(d->sort == social::accountid_sort()))
        throw ParseError("parameter '" + t.text + "' has sort " + d->sort.name() +
                             ", expected accountid",
                         t.span);
      return param_ref(t.text);
    }
    return id_lit(t.text);
  }

  Expr nat_expr() {
    if (p.at(TokType::Nat)) return nat_lit(p.take().nat);
    Token t = p.expect(TokType::Ident, "a natural number or nat parameter");
    const ParamDecl* d = find_param(t.text);
    if (!d)
      throw ParseError("'" + t.text + "' is not a declared parameter (naturals cannot be bare identifiers)",
                       t.span);
    if (!(d->sort == Sort::natural()))
      throw ParseError("parameter '" + t.text + "' has sort " + d->sort.name() + ", expected nat",
                       t.span);
    return param_ref(t.text);
  }

  social::Placeholder place_tag() {
    Token t = p.expect(TokType::Ident, "'wall', 'inbox' or 'photos'");
    auto tag = social::placeholder_from_tag(t.text);
    if (!tag) throw ParseError("expected 'wall', 'inbox' or 'photos', found '" + t.text + "'", t.span);
    return *tag;
  }

  PredPtr atom() {
    if (!p.at(TokType::Ident)) p.fail("a predicate atom");
    const std::string& name = p.peek().text;
    if (name == "visibility") {
      p.take();
      p.expect(TokType::LParen, "'('");
      Expr owner = id_expr();
      p.expect(TokType::RParen, "')'");
      return p_atom({AtomKind::Visibility, {std::move(owner)}, {}});
    }
    if (name == "viewed-photo") {
      p.take();
      p.expect(TokType::LParen, "'('");
      Expr owner = id_expr();
      p.expect(TokType::Comma, "','");
      Expr viewer = id_expr();
      p.expect(TokType::Comma, "','");
      Expr photo = nat_expr();
      p.expect(TokType::RParen, "')'");
      return p_atom({AtomKind::ViewedPhoto, {std::move(owner), std::move(viewer), std::move(photo)}, {}});
    }
    if (name == "viewed-friends") {
      p.take();
      p.expect(TokType::LParen, "'('");
      Expr owner = id_expr();
      p.expect(TokType::Comma, "','");
      Expr viewer = id_expr();
      p.expect(TokType::RParen, "')'");
      return p_atom({AtomKind::ViewedFriends, {std::move(owner), std::move(viewer)}, {}});
    }
    if (name == "myid") {
      p.take();
      p.expect(TokType::LParen, "'('");
      Expr owner = id_expr();
      p.expect(TokType::RParen, "')'");
      p.expect(TokType::EqEq, "'=='");
      Expr expected = id_expr();
      return p_atom({AtomKind::MyidEq, {std::move(owner), std::move(expected)}, {}});
    }
    // member-in-collection forms
    Expr member = id_expr();
    if (!p.at_ident("in")) p.fail("'in'");
    p.take();
    Token coll = p.expect(TokType::Ident, "'friends', 'pending', 'accounts' or 'likes'");
    if (coll.text == "accounts")
      return p_atom({AtomKind::InAccounts, {std::move(member)}, {}});
    if (coll.text == "friends" || coll.text == "pending") {
      p.expect(TokType::LParen, "'('");
      Expr owner = id_expr();
      p.expect(TokType::RParen, "')'");
      AtomKind k = coll.text == "friends" ? AtomKind::InFriends : AtomKind::InPending;
      return p_atom({k, {std::move(member), std::move(owner)}, {}});
    }
    if (coll.text == "likes") {
      p.expect(TokType::LParen, "'('");
      Expr owner = id_expr();
      p.expect(TokType::Comma, "','");
      social::Placeholder place = place_tag();
      p.expect(TokType::Comma, "','");
      Expr uid = nat_expr();
      p.expect(TokType::RParen, "')'");
      Atom a{AtomKind::InLikes, {std::move(member), std::move(owner), std::move(uid)}, place};
      return p_atom(std::move(a));
    }
    throw ParseError("expected 'friends', 'pending', 'accounts' or 'likes' after 'in', found '" +
                         coll.text + "'",
                     coll.span);
  }

  PredPtr unary() {
    if (p.at_ident("not")) {
      p.take();
      return p_not(unary());
    }
    if (p.at(TokType::LParen)) {
      p.take();
      PredPtr inner = pred();
      p.expect(TokType::RParen, "')'");
      return inner;
    }
    return atom();
  }

  PredPtr and_expr() {
    PredPtr left = unary();
    while (p.at_ident("and")) {
      p.take();
      left = p_and(std::move(left), unary());
    }
    return left;
  }

  PredPtr or_expr() {
    PredPtr left = and_expr();
    while (p.at_ident("or")) {
      p.take();
      left = p_or(std::move(left), and_expr());
    }
    return left;
  }

  PredPtr pred() {
    PredPtr left = or_expr();
    if (p.at_ident("implies")) {
      p.take();
      return p_implies(std::move(left), pred());  // right associative
    }
    return left;
  }
};

Sort param_sort_from_name(const Token& t) {
  if (t.text == "accountid") return social::accountid_sort();
  if (t.text == "nat") return Sort::natural();
  if (t.text == "payload") return social::payload_sort();
  throw ParseError("unknown parameter sort '" + t.text + "' (accountid, nat or payload)",
                   t.span);
}

// ---------------------------------------------------------------------------
// Scenario calls

Value parse_arg(Parser& p, const Sort& sort) {
  switch (sort.kind()) {
    case Sort::Kind::Id: {
      if (p.at(TokType::String)) return Value::id(p.take().text);
      Token t = p.expect(TokType::Ident, "an identifier for sort " + sort.name());
      return Value::id(t.text);
    }
    case Sort::Kind::Nat: {
      Token t = p.expect(TokType::Nat, "a natural number");
      return Value::nat(t.nat);
    }
    case Sort::Kind::Enum: {
      Token t = p.expect(TokType::Ident, "a " + sort.name() + " tag");
      for (const std::string& tag : sort.tags())
        if (tag == t.text) return Value::enum_tag(t.text);
      std::string tags;
      for (const std::string& tag : sort.tags()) {
        if (!tags.empty()) tags += ", ";
        tags += tag;
      }
      throw ParseError("expected one of {" + tags + "}, found '" + t.text + "'", t.span);
    }
    case Sort::Kind::Bool: {
      Token t = p.expect(TokType::Ident, "'true' or 'false'");
      if (t.text == "true") return Value::boolean(true);
      if (t.text == "false") return Value::boolean(false);
      throw ParseError("expected 'true' or 'false', found '" + t.text + "'", t.span);
    }
    case Sort::Kind::Tuple: {
      p.expect(TokType::LParen, "'(' opening a " + sort.name() + " literal");
      std::vector<Value> fields;
      const auto& field_sorts = sort.elems();
      for (size_t k = 0; k < field_sorts.size(); ++k) {
        if (k > 0) p.expect(TokType::Comma, "','");
        fields.push_back(parse_arg(p, field_sorts[k]));
      }
      p.expect(TokType::RParen, "')'");
      return Value::tuple(std::move(fields));
    }
    default:
      p.fail("a literal of sort " + sort.name());
  }
}

Call parse_call(Parser& p, const Signature& sig) {
  Token name = p.expect(TokType::Ident, "a transition name");
  int idx = sig.transition_index(name.text);
  if (idx < 0) {
    std::string near = sig.nearest_transition(name.text);
    std::string msg = "unknown transition '" + name.text + "'";
    if (!near.empty()) msg += "; nearest is '" + near + "'";
    throw ParseError(std::move(msg), name.span);
  }
  const TransitionSpec& spec = sig.transition_at(idx);
  Call call;
  call.transition = name.text;
  call.span = name.span;
  p.expect(TokType::LParen, "'('");
  for (size_t k = 0; k < spec.params.size(); ++k) {
    if (k > 0) {
      if (!p.at(TokType::Comma))
        throw ParseError("'" + spec.name + "' takes " + std::to_string(spec.params.size()) +
                             " argument(s)",
                         p.peek().span);
      p.take();
    }
    call.args.push_back(parse_arg(p, spec.params[k]));
  }
  if (!p.at(TokType::RParen))
    throw ParseError("'" + spec.name + "' takes " + std::to_string(spec.params.size()) +
                         " argument(s)",
                     p.peek().span);
  p.take();
  return call;
}

}  // namespace

PredPtr parse_predicate(std::string_view src, std::span<const ParamDecl> params) {
  std::vector<Token> toks = lex(src);
  Parser p{toks};
  PredParser pp{p, params};
  PredPtr result = pp.pred();
  if (!p.at(TokType::End)) p.fail("end of predicate");
  return result;
}

std::vector<InvariantDef> parse_invariant_file(std::string_view src) {
  std::vector<Token> toks = lex(src);
  Parser p{toks};
  std::vector<InvariantDef> defs;
  while (!p.at(TokType::End)) {
    Token kw = p.expect(TokType::Ident, "'invariant' or 'lemma'");
    if (kw.text != "invariant" && kw.text != "lemma")
      throw ParseError("expected 'invariant' or 'lemma', found '" + kw.text + "'", kw.span);
    Token name = p.expect(TokType::Ident, "a definition name");
    for (const InvariantDef& d : defs)
      if (d.name == name.text)
        throw ParseError("duplicate definition '" + name.text + "'", name.span);
    InvariantDef def;
    def.name = name.text;
    def.is_lemma = kw.text == "lemma";
    p.expect(TokType::LParen, "'('");
    if (!p.at(TokType::RParen)) {
      while (true) {
        Token pname = p.expect(TokType::Ident, "a parameter name");
        for (const ParamDecl& d : def.params)
          if (d.name == pname.text)
            throw ParseError("duplicate parameter '" + pname.text + "'", pname.span);
        p.expect(TokType::Colon, "':'");
        Token sname = p.expect(TokType::Ident, "a parameter sort");
        def.params.push_back({pname.text, param_sort_from_name(sname)});
        if (!p.at(TokType::Comma)) break;
        p.take();
      }
    }
    p.expect(TokType::RParen, "')'");
    p.expect(TokType::ColonEq, "':='");
    PredParser pp{p, def.params};
    def.body = pp.pred();
    defs.push_back(std::move(def));
  }
  return defs;
}

ScenarioAst parse_scenario(std::string_view src, const Signature& model_sig) {
  std::vector<Token> toks = lex(src);
  Parser p{toks};
  Token kw = p.expect(TokType::Ident, "'scenario'");
  if (kw.text != "scenario")
    throw ParseError("expected 'scenario', found '" + kw.text + "'", kw.span);
  ScenarioAst sc;
  sc.name = p.expect(TokType::String, "a scenario name string").text;
  if (p.at_ident("accounts")) {
    p.take();
    p.expect(TokType::Eq, "'='");
    p.expect(TokType::LBracket, "'['");
    std::vector<std::string> ids;
    while (true) {
      Token id = p.expect(TokType::Ident, "an account id");
      if (std::find(ids.begin(), ids.end(), id.text) != ids.end())
        throw ParseError("duplicate account '" + id.text + "' in bounds", id.span);
      ids.push_back(id.text);
      if (!p.at(TokType::Comma)) break;
      p.take();
    }
    p.expect(TokType::RBracket, "']'");
    sc.accounts = std::move(ids);
  }
  while (!p.at(TokType::End)) {
    Token head = p.expect(TokType::Ident,
                          "'step', 'expect-stutter', 'assert' or 'expect-violation'");
    Stmt stmt;
    stmt.span = head.span;
    if (head.text == "step") {
      stmt.kind = Stmt::Kind::Step;
      stmt.call = parse_call(p, model_sig);
    } else if (head.text == "expect-stutter") {
      stmt.kind = Stmt::Kind::ExpectStutter;
      stmt.call = parse_call(p, model_sig);
    } else if (head.text == "assert") {
      stmt.kind = Stmt::Kind::Assert;
      PredParser pp{p, {}};
      stmt.pred = pp.pred();
    } else if (head.text == "expect-violation") {
      stmt.kind = Stmt::Kind::ExpectViolation;
      stmt.target = p.expect(TokType::Ident, "an invariant name").text;
    } else {
      throw ParseError(
          "expected 'step', 'expect-stutter', 'assert' or 'expect-violation', found '" +
              head.text + "'",
          head.span);
    }
    sc.statements.push_back(std::move(stmt));
  }
  return sc;
}

Value parse_call_argument(std::string_view src, const Sort& sort) {
  std::vector<Token> toks = lex(src);
  Parser p{toks};
  Value v = parse_arg(p, sort);
  if (!p.at(TokType::End)) p.fail("end of literal");
  return v;
}

}  // namespace otsv::lang
