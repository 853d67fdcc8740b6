#include "lcacalc/duality.hpp"

#include "lcacalc/classify.hpp"

namespace lca {

bool dual_representable(const Atom& a) { return a.tag != AtomTag::OmegaTorus; }

bool dual_representable(const GroupExpr& g) {
    for (const Atom& a : g.atoms())
        if (!dual_representable(a)) return false;
    return true;
}

Atom dual(const Atom& a) {
    switch (a.tag) {
    case AtomTag::Int: return atom_circle();
    case AtomTag::Circle: return atom_int();
    case AtomTag::Real: return atom_real();
    case AtomTag::Rat: return atom_solenoid();
    case AtomTag::Solenoid: return atom_rat();
    case AtomTag::Cyclic: return a; // finite cyclic groups are self-dual
    case AtomTag::Prufer: return atom_zp(a.p);
    case AtomTag::PadicInt: return atom_prufer(a.p);
    case AtomTag::PadicRat: return a; // Qp is self-dual
    case AtomTag::OmegaProd: return atom_omega_sum(a.p);
    case AtomTag::OmegaSum: return atom_omega_prod(a.p);
    case AtomTag::OmegaTorus:
        throw dual_unsupported("dual of T^w is the infinite direct sum of copies of Z, "
                               "which is outside the atom catalog");
    }
    throw invalid_atom("unknown atom tag");
}

GroupExpr dual(const GroupExpr& g) {
    std::vector<Atom> out;
    out.reserve(g.size());
    for (const Atom& a : g.atoms()) out.push_back(dual(a));
    return GroupExpr(std::move(out));
}

bool is_codivisible(const GroupExpr& g) { return is_divisible(dual(g)); }

} // namespace lca
