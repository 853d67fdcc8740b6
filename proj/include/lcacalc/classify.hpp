#pragma once

#include <optional>
#include <string>

#include "lcacalc/cover.hpp"
#include "lcacalc/expr.hpp"

namespace lca {

struct PropertyVector {
    bool compact = false;
    bool discrete = false;
    bool countable = false;
    bool connected = false;
    bool totally_disconnected = false;
    bool topological_torsion = false;
    bool divisible = false;
    // nullopt when the dual is not representable (OmegaTorus present)
    std::optional<bool> codivisible;
    bool compactly_generated = false;
    bool lie = false;
    bool finite_ranks = false;
    bool type_S1 = false; // compact and connected
    bool type_A = false;  // R^n x topological torsion
    bool type_Z = false;  // countable torsion-free discrete
};

struct TypeDecomposition {
    GroupExpr s1_part; // compact connected atoms
    GroupExpr r_part;  // vector part
    GroupExpr t_part;  // topological torsion atoms
    GroupExpr z_part;  // countable torsion-free discrete atoms
};

struct CategoryTag {
    enum class Base {
        LCPAb,     // all locally compact Polish abelian groups
        LCPAb_cg,  // compactly generated
        LieAb,     // abelian Lie groups
        TDLCPAb,   // totally disconnected
        TorLCPAb,  // topological torsion
        LCPAb_p,   // topological p-groups (carries prime)
        FLCPAb,    // finite ranks
        FLCPAb_p,  // finite-rank topological p-groups (carries prime)
        TorFLCPAb, // finite-rank topological torsion
        LCPAb_A,   // type A: vector x topological torsion
    };
    Base base;
    long long p = 0;   // for LCPAb_p / FLCPAb_p
    bool heart = false; // wrapped in LH(.)

    static CategoryTag make(Base b, long long p = 0, bool heart = false);
    CategoryTag with_heart() const { return {base, p, true}; }
    CategoryTag base_tag() const { return {base, p, false}; }

    friend bool operator==(const CategoryTag&, const CategoryTag&) = default;
};

std::string to_string(const CategoryTag& c);

struct Resolution {
    GroupExpr target;
    GroupExpr d0;
    Operand d1; // GroupExpr, or a TaggedCoker cover for PadicInt targets
};

struct Verdict {
    bool value;
    std::string reason;
};

// atom-level predicates
bool atom_compact(const Atom& a);
bool atom_discrete(const Atom& a);
bool atom_countable(const Atom& a);
bool atom_connected(const Atom& a);
bool atom_td(const Atom& a);
bool atom_tt(const Atom& a); // topological torsion
bool atom_divisible(const Atom& a);
bool atom_in_D(const Atom& a); // essentially injective class D

PropertyVector properties(const GroupExpr& g);

bool is_compact(const GroupExpr& g);
bool is_discrete(const GroupExpr& g);
bool is_countable(const GroupExpr& g);
bool is_connected(const GroupExpr& g);
bool is_totally_disconnected(const GroupExpr& g);
bool is_topological_torsion(const GroupExpr& g);
bool is_topological_p_group(const GroupExpr& g, long long p);
bool is_divisible(const GroupExpr& g);

TypeDecomposition decompose(const GroupExpr& g);
GroupExpr p_component(const GroupExpr& g, long long p);

bool member(const GroupExpr& g, const CategoryTag& cat); // cat must be a base tag

Verdict classify_injective(const Operand& obj, const CategoryTag& cat);
Verdict classify_projective(const Operand& obj, const CategoryTag& cat);

Resolution resolve(const GroupExpr& g);

Operand vector_quotient(int n, int closed_rank, int dense_excess);

} // namespace lca
