#pragma once

#include <string>

#include "lcacalc/classify.hpp"
#include "lcacalc/cover.hpp"
#include "lcacalc/expr.hpp"

namespace lca {

// Input grammar (ASCII only):
//   operand  := 'Xi(' prime ')' | expr
//   expr     := '0' | term ('+' term)*
//   term     := atom ('^' nat)?
//   atom     := 'Z' | 'Q' | 'R' | 'T' | 'T^w' | 'Sol' | 'C(' nat ')' |
//               'Pr(' prime ')' | 'Zp(' prime ')' | 'Qp(' prime ')' |
//               'PC(' prime ')' | 'SC(' prime ')'
// 'C(n)' accepts composite n and is normalized by CRT splitting.
// Throws ParseError (with position), UnknownAtom, InvalidAtom.
GroupExpr parse_expr(const std::string& text);
Operand parse_operand(const std::string& text);

// Category names as printed by to_string(CategoryTag), e.g. "TDLCPAb",
// "LCPAb(2)", "LH(TorLCPAb)". Throws UnknownCategory.
CategoryTag parse_category(const std::string& text);

std::string render(const GroupExpr& g);
std::string render(const Operand& o);

} // namespace lca
