#include "otsv/lang/eval.hpp"

#include <algorithm>

#include "otsv/errors.hpp"

namespace otsv::lang {

using social::AccountId;
using social::NetworkState;
using social::ProfileState;

namespace {

struct Env {
  std::span<const ParamDecl> params;
  std::span<const Value> bindings;

  const Value& lookup(const std::string& name) const {
    for (size_t i = 0; i < params.size(); ++i)
      if (params[i].name == name) return bindings[i];
    throw Error("unbound parameter '" + name + "'");
  }

  const std::string& id_of(const Expr& e) const {
    if (e.kind == Expr::Kind::Param) return lookup(e.token).token();
    return e.token;
  }

  std::uint64_t nat_of(const Expr& e) const {
    if (e.kind == Expr::Kind::Param) return lookup(e.token).as_nat();
    return e.nat;
  }
};

bool id_in(const std::vector<AccountId>& xs, const std::string& id) {
  return std::binary_search(xs.begin(), xs.end(), AccountId{id});
}

bool eval_atom(const Atom& a, const social::NetworkOts& model, const NetworkState& s,
               const Env& env) {
  auto profile = [&](const Expr& owner) -> const ProfileState* {
    const auto* found = s.find(env.id_of(owner));
    return found ? found->get() : nullptr;
  };
  switch (a.kind) {
    case AtomKind::Visibility: {
      const ProfileState* p = profile(a.args[0]);
      return p ? p->visibility : model.config().default_visibility;
    }
    case AtomKind::InFriends: {
      const ProfileState* p = profile(a.args[1]);
      return p && id_in(p->friends, env.id_of(a.args[0]));
    }
    case AtomKind::InPending: {
      const ProfileState* p = profile(a.args[1]);
      return p && id_in(p->pending, env.id_of(a.args[0]));
    }
    case AtomKind::InAccounts:
      return s.data.contains(env.id_of(a.args[0]));
    case AtomKind::ViewedPhoto: {
      const ProfileState* p = profile(a.args[0]);
      if (!p) return false;
      social::PhotoView pv{AccountId{env.id_of(a.args[1])}, env.nat_of(a.args[2])};
      return std::binary_search(p->photo_views.begin(), p->photo_views.end(), pv);
    }
    case AtomKind::ViewedFriends: {
      const ProfileState* p = profile(a.args[0]);
      return p && id_in(p->friend_list_views, env.id_of(a.args[1]));
    }
    case AtomKind::InLikes: {
      const ProfileState* p = profile(a.args[1]);
      if (!p) return false;
      const social::LikeEntry* e = social::find_like(*p, a.place, env.nat_of(a.args[2]));
      return e && id_in(e->likers, env.id_of(a.args[0]));
    }
    case AtomKind::MyidEq: {
      const std::string& owner = env.id_of(a.args[0]);
      const std::string& expected = env.id_of(a.args[1]);
      const auto* found = s.find(owner);
      return (found ? (*found)->myid.v : owner) == expected;
    }
  }
  return false;
}

bool eval_node(const Pred& p, const social::NetworkOts& model, const NetworkState& s,
               const Env& env) {
  switch (p.kind) {
    case Pred::Kind::Implies:
      return !eval_node(*p.lhs, model, s, env) || eval_node(*p.rhs, model, s, env);
    case Pred::Kind::Or:
      return eval_node(*p.lhs, model, s, env) || eval_node(*p.rhs, model, s, env);
    case Pred::Kind::And:
      return eval_node(*p.lhs, model, s, env) && eval_node(*p.rhs, model, s, env);
    case Pred::Kind::Not:
      return !eval_node(*p.lhs, model, s, env);
    case Pred::Kind::Leaf:
      return eval_atom(p.atom, model, s, env);
  }
  return false;
}

}  // namespace

bool eval_predicate(const Pred& p, const social::NetworkOts& model, const NetworkState& s,
                    std::span<const ParamDecl> params, std::span<const Value> bindings) {
  return eval_node(p, model, s, Env{params, bindings});
}

}  // namespace otsv::lang
