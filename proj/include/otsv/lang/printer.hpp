#pragma once

#include <span>
#include <string>

#include "otsv/lang/ast.hpp"

namespace otsv::lang {

// Canonical pretty-printers. parse(print(x)) is structurally equal to x;
// parentheses are emitted only where precedence demands them.
std::string print_canonical(const Pred& p);
std::string print_canonical(const ScenarioAst& sc);
std::string print_canonical(std::span<const InvariantDef> defs);

std::string print_call(const Call& c);

}  // namespace otsv::lang
