#include "otsv/lang/printer.hpp"

namespace otsv::lang {

namespace {

void print_expr(std::string& out, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::IdLit:
    case Expr::Kind::Param:
      out += e.token;
      return;
    case Expr::Kind::NatLit:
      out += std::to_string(e.nat);
      return;
  }
}

void print_atom(std::string& out, const Atom& a) {
  auto arg = [&](size_t i) { print_expr(out, a.args[i]); };
  switch (a.kind) {
    case AtomKind::Visibility:
      out += "visibility(";
      arg(0);
      out += ')';
      return;
    case AtomKind::InFriends:
    case AtomKind::InPending:
      arg(0);
      out += a.kind == AtomKind::InFriends ? " in friends(" : " in pending(";
      arg(1);
      out += ')';
      return;
    case AtomKind::InAccounts:
      arg(0);
      out += " in accounts";
      return;
    case AtomKind::ViewedPhoto:
      out += "viewed-photo(";
      arg(0);
      out += ", ";
      arg(1);
      out += ", ";
      arg(2);
      out += ')';
      return;
    case AtomKind::ViewedFriends:
      out += "viewed-friends(";
      arg(0);
      out += ", ";
      arg(1);
      out += ')';
      return;
    case AtomKind::InLikes:
      arg(0);
      out += " in likes(";
      arg(1);
      out += ", ";
      out += social::placeholder_tag(a.place);
      out += ", ";
      arg(2);
      out += ')';
      return;
    case AtomKind::MyidEq:
      out += "myid(";
      arg(0);
      out += ") == ";
      arg(1);
      return;
  }
}

// Precedence: implies(1, right-assoc) < or(2) < and(3) < not(4) < atom(5).
int prec(const Pred& p) {
  switch (p.kind) {
    case Pred::Kind::Implies:
      return 1;
    case Pred::Kind::Or:
      return 2;
    case Pred::Kind::And:
      return 3;
    case Pred::Kind::Not:
      return 4;
    case Pred::Kind::Leaf:
      return 5;
  }
  return 5;
}

void print_pred(std::string& out, const Pred& p, int min_prec) {
  int pr = prec(p);
  if (pr < min_prec) {
    out += '(';
    print_pred(out, p, 1);
    out += ')';
    return;
  }
  switch (p.kind) {
    case Pred::Kind::Implies:
      print_pred(out, *p.lhs, 2);
      out += " implies ";
      print_pred(out, *p.rhs, 1);
      return;
    case Pred::Kind::Or:
      print_pred(out, *p.lhs, 2);
      out += " or ";
      print_pred(out, *p.rhs, 3);
      return;
    case Pred::Kind::And:
      print_pred(out, *p.lhs, 3);
      out += " and ";
      print_pred(out, *p.rhs, 4);
      return;
    case Pred::Kind::Not:
      out += "not ";
      print_pred(out, *p.lhs, 4);
      return;
    case Pred::Kind::Leaf:
      print_atom(out, p.atom);
      return;
  }
}

void print_quoted(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out += c;
    }
  }
  out += '"';
}

}  // namespace

std::string print_canonical(const Pred& p) {
  std::string out;
  print_pred(out, p, 1);
  return out;
}

std::string print_call(const Call& c) {
  std::string out = c.transition;
  out += '(';
  for (size_t i = 0; i < c.args.size(); ++i) {
    if (i > 0) out += ", ";
    out += c.args[i].display();
  }
  out += ')';
  return out;
}

std::string print_canonical(const ScenarioAst& sc) {
  std::string out = "scenario ";
  print_quoted(out, sc.name);
  out += '\n';
  if (sc.accounts) {
    out += "accounts = [";
    for (size_t i = 0; i < sc.accounts->size(); ++i) {
      if (i > 0) out += ", ";
      out += (*sc.accounts)[i];
    }
    out += "]\n";
  }
  for (const Stmt& st : sc.statements) {
    switch (st.kind) {
      case Stmt::Kind::Step:
        out += "step " + print_call(st.call);
        break;
      case Stmt::Kind::ExpectStutter:
        out += "expect-stutter " + print_call(st.call);
        break;
      case Stmt::Kind::Assert:
        out += "assert " + print_canonical(*st.pred);
        break;
      case Stmt::Kind::ExpectViolation:
        out += "expect-violation " + st.target;
        break;
    }
    out += '\n';
  }
  return out;
}

std::string print_canonical(std::span<const InvariantDef> defs) {
  std::string out;
  for (const InvariantDef& d : defs) {
    out += d.is_lemma ? "lemma " : "invariant ";
    out += d.name;
    out += '(';
    for (size_t i = 0; i < d.params.size(); ++i) {
      if (i > 0) out += ", ";
      out += d.params[i].name;
      out += ": ";
      out += d.params[i].sort.name();
    }
    out += ") := ";
    out += print_canonical(*d.body);
    out += '\n';
  }
  return out;
}

}  // namespace otsv::lang
