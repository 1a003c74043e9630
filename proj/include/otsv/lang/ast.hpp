#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "otsv/social/model.hpp"
#include "otsv/value.hpp"

namespace otsv::lang {

struct SourceSpan {
  int line = 1;
  int column = 1;
  std::size_t offset = 0;
  std::size_t length = 0;
};

// Identifier or natural expression inside a predicate: a literal or a
// reference to a declared parameter.
struct Expr {
  enum class Kind : std::uint8_t { IdLit, NatLit, Param };
  Kind kind = Kind::IdLit;
  std::string token;        // IdLit token or Param name
  std::uint64_t nat = 0;    // NatLit

  bool operator==(const Expr&) const = default;
};

inline Expr id_lit(std::string tok) { return {Expr::Kind::IdLit, std::move(tok), 0}; }
inline Expr nat_lit(std::uint64_t n) { return {Expr::Kind::NatLit, {}, n}; }
inline Expr param_ref(std::string name) { return {Expr::Kind::Param, std::move(name), 0}; }

enum class AtomKind : std::uint8_t {
  Visibility,     // visibility(owner)
  InFriends,      // member in friends(owner)
  InPending,      // member in pending(owner)
  InAccounts,     // member in accounts
  ViewedPhoto,    // viewed-photo(owner, viewer, photo)
  ViewedFriends,  // viewed-friends(owner, viewer)
  InLikes,        // member in likes(owner, place, uid)
  MyidEq          // myid(owner) == expected
};

struct Atom {
  AtomKind kind = AtomKind::Visibility;
  std::vector<Expr> args;  // fixed arity per kind, see the comments above
  social::Placeholder place = social::Placeholder::Wall;  // InLikes only

  bool operator==(const Atom&) const = default;
};

struct Pred;
using PredPtr = std::shared_ptr<const Pred>;

struct Pred {
  enum class Kind : std::uint8_t { Implies, Or, And, Not, Leaf };
  Kind kind = Kind::Leaf;
  PredPtr lhs;  // Implies/Or/And left, Not operand
  PredPtr rhs;  // Implies/Or/And right
  Atom atom;    // Leaf
};

inline PredPtr p_implies(PredPtr l, PredPtr r) {
  return std::make_shared<const Pred>(Pred{Pred::Kind::Implies, std::move(l), std::move(r), {}});
}
inline PredPtr p_or(PredPtr l, PredPtr r) {
  return std::make_shared<const Pred>(Pred{Pred::Kind::Or, std::move(l), std::move(r), {}});
}
inline PredPtr p_and(PredPtr l, PredPtr r) {
  return std::make_shared<const Pred>(Pred{Pred::Kind::And, std::move(l), std::move(r), {}});
}
inline PredPtr p_not(PredPtr e) {
  return std::make_shared<const Pred>(Pred{Pred::Kind::Not, std::move(e), nullptr, {}});
}
inline PredPtr p_atom(Atom a) {
  return std::make_shared<const Pred>(Pred{Pred::Kind::Leaf, nullptr, nullptr, std::move(a)});
}

inline bool pred_equal(const Pred& a, const Pred& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Pred::Kind::Leaf) return a.atom == b.atom;
  auto eq = [](const PredPtr& x, const PredPtr& y) {
    if (!x || !y) return !x && !y;
    return pred_equal(*x, *y);
  };
  return eq(a.lhs, b.lhs) && eq(a.rhs, b.rhs);
}

inline bool pred_equal(const PredPtr& a, const PredPtr& b) {
  if (!a || !b) return !a && !b;
  return pred_equal(*a, *b);
}

struct ParamDecl {
  std::string name;
  Sort sort;  // accountid, nat or payload

  bool operator==(const ParamDecl& o) const { return name == o.name && sort == o.sort; }
};

// Named invariant (or lemma — same shape, flagged). The optional native
// evaluator is a fast path for the built-ins; when set it must agree with
// the AST body (checked at boot).
struct InvariantDef {
  std::string name;
  std::vector<ParamDecl> params;
  PredPtr body;
  bool is_lemma = false;
  std::function<bool(const social::NetworkState&, std::span<const Value>, bool default_vis)>
      native;
};

// ---------------------------------------------------------------------------
// Scenario AST

struct Call {
  std::string transition;
  std::vector<Value> args;
  SourceSpan span;

  bool operator==(const Call& o) const {
    return transition == o.transition && args == o.args;  // spans ignored
  }
};

struct Stmt {
  enum class Kind : std::uint8_t { Step, ExpectStutter, Assert, ExpectViolation };
  Kind kind = Kind::Step;
  Call call;            // Step / ExpectStutter
  PredPtr pred;         // Assert
  std::string target;   // ExpectViolation invariant name
  SourceSpan span;

  bool operator==(const Stmt& o) const {
    return kind == o.kind && call == o.call && pred_equal(pred, o.pred) &&
           target == o.target;  // spans ignored
  }
};

struct ScenarioAst {
  std::string name;
  std::optional<std::vector<std::string>> accounts;  // bounds declaration
  std::vector<Stmt> statements;

  bool operator==(const ScenarioAst& o) const {
    return name == o.name && accounts == o.accounts && statements == o.statements;
  }
};

}  // namespace otsv::lang
