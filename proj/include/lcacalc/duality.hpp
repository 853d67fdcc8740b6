#pragma once

#include "lcacalc/expr.hpp"

namespace lca {

// Pontryagin dual at atom level. Throws DualUnsupported for OmegaTorus,
// whose dual (the infinite-support direct sum of copies of Z) is not an atom.
Atom dual(const Atom& a);
GroupExpr dual(const GroupExpr& g);

bool dual_representable(const Atom& a);
bool dual_representable(const GroupExpr& g);

// True iff dual(g) is divisible. Propagates DualUnsupported.
bool is_codivisible(const GroupExpr& g);

} // namespace lca
