#include "lcacalc/classify.hpp"

#include <algorithm>

#include "lcacalc/duality.hpp"

namespace lca {

bool atom_compact(const Atom& a) {
    switch (a.tag) {
    case AtomTag::Circle:
    case AtomTag::Cyclic:
    case AtomTag::PadicInt:
    case AtomTag::Solenoid:
    case AtomTag::OmegaTorus:
    case AtomTag::OmegaProd:
        return true;
    default:
        return false;
    }
}

bool atom_discrete(const Atom& a) {
    switch (a.tag) {
    case AtomTag::Int:
    case AtomTag::Rat:
    case AtomTag::Cyclic:
    case AtomTag::Prufer:
    case AtomTag::OmegaSum:
        return true;
    default:
        return false;
    }
}

bool atom_countable(const Atom& a) { return atom_discrete(a); }

bool atom_connected(const Atom& a) {
    switch (a.tag) {
    case AtomTag::Real:
    case AtomTag::Circle:
    case AtomTag::Solenoid:
    case AtomTag::OmegaTorus:
        return true;
    default:
        return false;
    }
}

bool atom_td(const Atom& a) { return !atom_connected(a); }

bool atom_tt(const Atom& a) {
    switch (a.tag) {
    case AtomTag::Cyclic:
    case AtomTag::Prufer:
    case AtomTag::PadicInt:
    case AtomTag::PadicRat:
    case AtomTag::OmegaProd:
    case AtomTag::OmegaSum:
        return true;
    default:
        return false;
    }
}

bool atom_divisible(const Atom& a) {
    switch (a.tag) {
    case AtomTag::Rat:
    case AtomTag::Real:
    case AtomTag::Circle:
    case AtomTag::PadicRat:
    case AtomTag::Prufer:
    case AtomTag::Solenoid:
    case AtomTag::OmegaTorus:
        return true;
    default:
        return false;
    }
}

bool atom_in_D(const Atom& a) {
    switch (a.tag) {
    case AtomTag::Real:
    case AtomTag::Circle:
    case AtomTag::OmegaTorus:
    case AtomTag::Rat:
    case AtomTag::Prufer:
        return true;
    default:
        return false;
    }
}

namespace {

template <typename Pred>
bool all_atoms(const GroupExpr& g, Pred pred) {
    return std::all_of(g.atoms().begin(), g.atoms().end(), pred);
}

bool atom_lie(const Atom& a) {
    switch (a.tag) {
    case AtomTag::Int:
    case AtomTag::Rat:
    case AtomTag::Real:
    case AtomTag::Circle:
    case AtomTag::Cyclic:
    case AtomTag::Prufer:
        return true;
    default:
        return false;
    }
}

bool atom_extended(const Atom& a) {
    return a.tag == AtomTag::OmegaTorus || a.tag == AtomTag::OmegaProd ||
           a.tag == AtomTag::OmegaSum;
}

} // namespace

bool is_compact(const GroupExpr& g) { return all_atoms(g, atom_compact); }
bool is_discrete(const GroupExpr& g) { return all_atoms(g, atom_discrete); }
bool is_countable(const GroupExpr& g) { return all_atoms(g, atom_countable); }
bool is_connected(const GroupExpr& g) { return all_atoms(g, atom_connected); }
bool is_totally_disconnected(const GroupExpr& g) { return all_atoms(g, atom_td); }
bool is_topological_torsion(const GroupExpr& g) { return all_atoms(g, atom_tt); }
bool is_divisible(const GroupExpr& g) { return all_atoms(g, atom_divisible); }

bool is_topological_p_group(const GroupExpr& g, long long p) {
    return all_atoms(g, [p](const Atom& a) { return atom_tt(a) && a.p == p; });
}

PropertyVector properties(const GroupExpr& g) {
    PropertyVector v;
    v.compact = is_compact(g);
    v.discrete = is_discrete(g);
    v.countable = is_countable(g);
    v.connected = is_connected(g);
    v.totally_disconnected = is_totally_disconnected(g);
    v.topological_torsion = is_topological_torsion(g);
    v.divisible = is_divisible(g);
    if (dual_representable(g))
        v.codivisible = is_codivisible(g);
    v.compactly_generated = all_atoms(g, [](const Atom& a) {
        return atom_compact(a) || a.tag == AtomTag::Int || a.tag == AtomTag::Real;
    });
    v.lie = all_atoms(g, atom_lie);
    v.finite_ranks = all_atoms(g, [](const Atom& a) { return !atom_extended(a); });
    v.type_S1 = v.compact && v.connected;
    v.type_A = all_atoms(g, [](const Atom& a) { return a.tag == AtomTag::Real || atom_tt(a); });
    v.type_Z = all_atoms(g, [](const Atom& a) {
        return a.tag == AtomTag::Int || a.tag == AtomTag::Rat;
    });
    return v;
}

TypeDecomposition decompose(const GroupExpr& g) {
    std::vector<Atom> s1, r, t, z;
    for (const Atom& a : g.atoms()) {
        switch (a.tag) {
        case AtomTag::Circle:
        case AtomTag::Solenoid:
        case AtomTag::OmegaTorus:
            s1.push_back(a); break;
        case AtomTag::Real:
            r.push_back(a); break;
        case AtomTag::Int:
        case AtomTag::Rat:
            z.push_back(a); break;
        default:
            t.push_back(a); break; // topological torsion atoms
        }
    }
    return {GroupExpr(std::move(s1)), GroupExpr(std::move(r)), GroupExpr(std::move(t)),
            GroupExpr(std::move(z))};
}

GroupExpr p_component(const GroupExpr& g, long long p) {
    std::vector<Atom> out;
    for (const Atom& a : g.atoms())
        if (atom_tt(a) && a.p == p) out.push_back(a);
    return GroupExpr(std::move(out));
}

CategoryTag CategoryTag::make(Base b, long long p, bool heart) {
    bool needs_prime = (b == Base::LCPAb_p || b == Base::FLCPAb_p);
    if (needs_prime && !is_prime(p))
        throw unknown_category("category requires a prime parameter");
    if (!needs_prime && p != 0)
        throw unknown_category("category carries no prime parameter");
    return {b, p, heart};
}

std::string to_string(const CategoryTag& c) {
    std::string s;
    switch (c.base) {
    case CategoryTag::Base::LCPAb: s = "LCPAb"; break;
    case CategoryTag::Base::LCPAb_cg: s = "LCPAb_cg"; break;
    case CategoryTag::Base::LieAb: s = "LieAb"; break;
    case CategoryTag::Base::TDLCPAb: s = "TDLCPAb"; break;
    case CategoryTag::Base::TorLCPAb: s = "TorLCPAb"; break;
    case CategoryTag::Base::LCPAb_p: s = "LCPAb(" + std::to_string(c.p) + ")"; break;
    case CategoryTag::Base::FLCPAb: s = "FLCPAb"; break;
    case CategoryTag::Base::FLCPAb_p: s = "FLCPAb(" + std::to_string(c.p) + ")"; break;
    case CategoryTag::Base::TorFLCPAb: s = "TorFLCPAb"; break;
    case CategoryTag::Base::LCPAb_A: s = "LCPAb_A"; break;
    }
    if (c.heart) s = "LH(" + s + ")";
    return s;
}

bool member(const GroupExpr& g, const CategoryTag& cat) {
    if (cat.heart)
        throw not_supported("member expects a base category tag, got " + to_string(cat));
    PropertyVector v = properties(g);
    switch (cat.base) {
    case CategoryTag::Base::LCPAb: return true;
    case CategoryTag::Base::LCPAb_cg: return v.compactly_generated;
    case CategoryTag::Base::LieAb: return v.lie;
    case CategoryTag::Base::TDLCPAb: return v.totally_disconnected;
    case CategoryTag::Base::TorLCPAb: return v.topological_torsion;
    case CategoryTag::Base::LCPAb_p: return is_topological_p_group(g, cat.p);
    case CategoryTag::Base::FLCPAb: return v.finite_ranks;
    case CategoryTag::Base::FLCPAb_p:
        return v.finite_ranks && is_topological_p_group(g, cat.p);
    case CategoryTag::Base::TorFLCPAb: return v.finite_ranks && v.topological_torsion;
    case CategoryTag::Base::LCPAb_A: return v.type_A;
    }
    return false;
}

namespace {

// The seven left hearts with no nonzero injective objects.
bool heart_has_no_injectives(const CategoryTag& cat) {
    switch (cat.base) {
    case CategoryTag::Base::LCPAb:
    case CategoryTag::Base::LCPAb_cg:
    case CategoryTag::Base::FLCPAb:
    case CategoryTag::Base::LieAb:
    case CategoryTag::Base::TDLCPAb:
    case CategoryTag::Base::TorLCPAb:
    case CategoryTag::Base::LCPAb_p:
        return true;
    default:
        return false;
    }
}

void require_member(const GroupExpr& g, const CategoryTag& cat) {
    if (!member(g, cat.base_tag()))
        throw not_a_member(to_string(g) + " is not an object of " + to_string(cat.base_tag()));
}

Verdict classify_injective_expr(const GroupExpr& g, const CategoryTag& cat) {
    require_member(g, cat);
    if (cat.heart) {
        if (heart_has_no_injectives(cat)) {
            if (g.is_zero()) return {true, "the zero object is the only injective in " + to_string(cat)};
            return {false, "the only injective object of " + to_string(cat) + " is 0"};
        }
        // the remaining supported hearts coincide with their base categories
        if (cat.base != CategoryTag::Base::FLCPAb_p && cat.base != CategoryTag::Base::TorFLCPAb)
            throw not_supported("no injectivity rule for " + to_string(cat));
    }
    PropertyVector v = properties(g);
    switch (cat.base) {
    case CategoryTag::Base::LCPAb:
    case CategoryTag::Base::LCPAb_cg:
    case CategoryTag::Base::LieAb:
    case CategoryTag::Base::FLCPAb: {
        bool vt = all_atoms(g, [](const Atom& a) {
            return a.tag == AtomTag::Real || a.tag == AtomTag::Circle ||
                   a.tag == AtomTag::OmegaTorus;
        });
        return {vt, vt ? "of the form V+T (vector group plus torus)"
                       : "not of the form V+T (vector group plus torus)"};
    }
    case CategoryTag::Base::TDLCPAb:
    case CategoryTag::Base::TorLCPAb:
    case CategoryTag::Base::LCPAb_p: {
        bool ok = v.countable && v.divisible;
        return {ok, ok ? "countable and divisible" : "not both countable and divisible"};
    }
    case CategoryTag::Base::FLCPAb_p:
    case CategoryTag::Base::TorFLCPAb:
        return {v.divisible, v.divisible ? "divisible" : "not divisible"};
    case CategoryTag::Base::LCPAb_A: {
        TypeDecomposition d = decompose(g);
        bool ok = is_countable(d.t_part) && is_divisible(d.t_part);
        return {ok, ok ? "vector part plus countable divisible torsion part"
                       : "torsion part not both countable and divisible"};
    }
    }
    throw not_supported("no injectivity rule for " + to_string(cat));
}

Verdict classify_projective_expr(const GroupExpr& g, const CategoryTag& cat) {
    require_member(g, cat);
    auto subset = [&](auto pred) { return all_atoms(g, pred); };
    switch (cat.base) {
    case CategoryTag::Base::LCPAb:
    case CategoryTag::Base::LCPAb_cg:
    case CategoryTag::Base::LieAb: {
        bool ok = subset([](const Atom& a) {
            return a.tag == AtomTag::Real || a.tag == AtomTag::Int;
        });
        return {ok, ok ? "of the form V+F (vector group plus countable free)"
                       : "not of the form V+F (vector group plus countable free)"};
    }
    case CategoryTag::Base::TDLCPAb: {
        if (!cat.heart) break;
        bool ok = subset([](const Atom& a) { return a.tag == AtomTag::Int; });
        return {ok, ok ? "countable free abelian" : "not countable free abelian"};
    }
    case CategoryTag::Base::TorLCPAb: {
        if (!cat.heart) break;
        bool ok = subset([](const Atom& a) { return a.tag == AtomTag::PadicInt; });
        return {ok, ok ? "codivisible compact topological torsion"
                       : "not a codivisible compact topological torsion group"};
    }
    case CategoryTag::Base::LCPAb_p: {
        if (!cat.heart) break;
        bool ok = subset([&](const Atom& a) {
            return a.tag == AtomTag::PadicInt && a.p == cat.p;
        });
        return {ok, ok ? "codivisible compact topological p-group"
                       : "not a codivisible compact topological p-group"};
    }
    case CategoryTag::Base::FLCPAb_p: {
        bool ok = subset([&](const Atom& a) {
            return (a.tag == AtomTag::PadicInt || a.tag == AtomTag::PadicRat) && a.p == cat.p;
        });
        return {ok, ok ? "codivisible finite p-rank topological p-group"
                       : "not a codivisible finite p-rank topological p-group"};
    }
    case CategoryTag::Base::TorFLCPAb: {
        bool ok = subset([](const Atom& a) {
            return a.tag == AtomTag::PadicInt || a.tag == AtomTag::PadicRat;
        });
        return {ok, ok ? "codivisible finite ranks topological torsion"
                       : "not a codivisible finite ranks topological torsion group"};
    }
    default: break;
    }
    throw not_supported("no projectivity rule for " + to_string(cat));
}

// Shared cover handling: the catalog covers that do not split are genuine
// quotients by a non-closed subgroup, hence never isomorphic to an object of
// the base category.
Verdict classify_cover(const CoverExpr& c, const CategoryTag& cat, bool injective) {
    if (!cat.heart)
        throw not_a_member("a group with a Polish cover is an object of a left heart, "
                           "not of the base category " + to_string(cat));
    if (!member(c.ambient, cat.base_tag()))
        throw not_a_member("ambient group " + to_string(c.ambient) +
                           " is not an object of " + to_string(cat.base_tag()));
    if (injective) {
        if (heart_has_no_injectives(cat))
            return {false, "the only injective object of " + to_string(cat) + " is 0"};
        throw not_supported("no injectivity rule for covers in " + to_string(cat));
    }
    return {false, "not isomorphic to an object of the base category"};
}

} // namespace

Verdict classify_injective(const Operand& obj, const CategoryTag& cat) {
    Operand o = obj.normalized();
    if (o.is_expr()) return classify_injective_expr(o.expr(), cat);
    return classify_cover(o.cover(), cat, /*injective=*/true);
}

Verdict classify_projective(const Operand& obj, const CategoryTag& cat) {
    Operand o = obj.normalized();
    if (o.is_expr()) return classify_projective_expr(o.expr(), cat);
    return classify_cover(o.cover(), cat, /*injective=*/false);
}

Resolution resolve(const GroupExpr& g) {
    std::vector<Atom> d0, d1;
    int coker_count = 0;
    for (const Atom& a : g.atoms()) {
        if (atom_in_D(a)) {
            d0.push_back(a);
        } else if (a.tag == AtomTag::Int) {
            d0.push_back(atom_real());
            d1.push_back(atom_circle());
        } else if (a.tag == AtomTag::Cyclic) {
            d0.push_back(atom_prufer(a.p));
            d1.push_back(atom_prufer(a.p));
        } else if (a.tag == AtomTag::PadicInt) {
            d0.push_back(atom_omega_torus());
            ++coker_count;
        } else {
            throw resolution_unsupported("no essentially injective resolution in the catalog for " +
                                         atom_to_string(a));
        }
    }
    Resolution r;
    r.target = g;
    r.d0 = GroupExpr(std::move(d0));
    if (coker_count == 0) {
        r.d1 = Operand(GroupExpr(std::move(d1)));
    } else {
        GroupExpr ambient = GroupExpr(std::move(d1));
        for (int i = 0; i < coker_count; ++i)
            ambient = direct_sum(ambient, GroupExpr::single(atom_omega_torus()));
        r.d1 = Operand(CoverExpr::tagged_coker(
            std::move(ambient), "quotient of the omega-torus by the embedded p-adic integers"));
    }
    return r;
}

Operand vector_quotient(int n, int closed_rank, int dense_excess) {
    if (n < 0 || closed_rank < 0 || dense_excess < 0)
        throw rank_overflow("ranks must be nonnegative");
    if (closed_rank > n)
        throw rank_overflow("closed rank " + std::to_string(closed_rank) +
                            " exceeds dimension " + std::to_string(n));
    if (dense_excess > 0 && closed_rank == 0)
        throw rank_overflow("a dense free kernel needs a nontrivial torus part");
    std::vector<Atom> atoms;
    for (int i = 0; i < n - closed_rank; ++i) atoms.push_back(atom_real());
    for (int i = 0; i < closed_rank; ++i) atoms.push_back(atom_circle());
    GroupExpr q(std::move(atoms));
    if (dense_excess == 0) return Operand(std::move(q));
    return Operand(CoverExpr::dense_free(std::move(q), dense_excess));
}

} // namespace lca
