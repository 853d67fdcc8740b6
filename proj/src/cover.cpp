#include "lcacalc/cover.hpp"

namespace lca {

std::string to_string(const CoverExpr& c) {
    switch (c.kind) {
    case CoverExpr::Kind::Split:
        return to_string(c.ambient);
    case CoverExpr::Kind::Xi:
        return "Xi(" + std::to_string(c.p) + ")";
    case CoverExpr::Kind::DenseFree:
        return to_string(c.ambient) + "/<free rank " + std::to_string(c.kernel_rank) + " dense>";
    case CoverExpr::Kind::TaggedCoker:
        return to_string(c.ambient) + "/<coker: " + c.note + ">";
    }
    return "?";
}

std::string to_string(const Operand& o) {
    return o.is_expr() ? to_string(o.expr()) : to_string(o.cover());
}

} // namespace lca
