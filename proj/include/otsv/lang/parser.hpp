#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "otsv/lang/ast.hpp"
#include "otsv/lang/lexer.hpp"
#include "otsv/signature.hpp"

namespace otsv::lang {

// Parses a bare predicate. Undeclared identifiers in id positions are
// literals; identifiers in natural positions must be declared nat params.
PredPtr parse_predicate(std::string_view src, std::span<const ParamDecl> params);

// `invariant NAME(p: sort, ...) := PRED` / `lemma NAME(...) := PRED`, any
// number of definitions. Duplicate definition or parameter names rejected.
std::vector<InvariantDef> parse_invariant_file(std::string_view src);

// Scenario scripts. Transition names, arities and argument sorts are
// validated against the model signature during the parse.
ScenarioAst parse_scenario(std::string_view src, const Signature& model_sig);

// Sort-directed parse of one argument literal (used when reloading
// counterexample JSON). Must consume the whole input.
Value parse_call_argument(std::string_view src, const Sort& sort);

}  // namespace otsv::lang
