#pragma once

#include <span>

#include "otsv/lang/ast.hpp"
#include "otsv/social/model.hpp"

namespace otsv::lang {

// Total predicate evaluation against a network state. Atoms observe through
// totalized projection: an uninstalled owner behaves like a fresh profile
// (default visibility, empty collections, myid = owner). Bindings are
// positional against params.
bool eval_predicate(const Pred& p, const social::NetworkOts& model,
                    const social::NetworkState& s, std::span<const ParamDecl> params,
                    std::span<const Value> bindings);

inline bool eval_predicate(const PredPtr& p, const social::NetworkOts& model,
                           const social::NetworkState& s, std::span<const ParamDecl> params,
                           std::span<const Value> bindings) {
  return eval_predicate(*p, model, s, params, bindings);
}

}  // namespace otsv::lang
