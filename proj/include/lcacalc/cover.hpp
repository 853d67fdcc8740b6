#pragma once

#include <string>
#include <variant>

#include "lcacalc/expr.hpp"

namespace lca {

// A "group with a Polish cover" descriptor from the small supported catalog.
struct CoverExpr {
    enum class Kind { Split, DenseFree, Xi, TaggedCoker };

    Kind kind;
    GroupExpr ambient;   // Split: the result; DenseFree/TaggedCoker: the cover
    int kernel_rank = 0; // DenseFree only
    long long p = 0;     // Xi only
    std::string note;    // TaggedCoker only

    static CoverExpr split(GroupExpr g) { return {Kind::Split, std::move(g), 0, 0, ""}; }
    static CoverExpr dense_free(GroupExpr ambient, int kernel_rank) {
        return {Kind::DenseFree, std::move(ambient), kernel_rank, 0, ""};
    }
    static CoverExpr xi(long long p) {
        if (!is_prime(p)) throw invalid_atom("Xi requires a prime");
        GroupExpr amb = GroupExpr::single(atom_omega_prod(p));
        return {Kind::Xi, std::move(amb), 0, p, ""};
    }
    static CoverExpr tagged_coker(GroupExpr ambient, std::string note) {
        return {Kind::TaggedCoker, std::move(ambient), 0, 0, std::move(note)};
    }

    friend bool operator==(const CoverExpr&, const CoverExpr&) = default;
};

// Universal operand: a plain expression or a catalog cover.
struct Operand {
    std::variant<GroupExpr, CoverExpr> v;

    Operand() : v(GroupExpr::zero()) {}
    Operand(GroupExpr g) : v(std::move(g)) {}
    Operand(CoverExpr c) : v(std::move(c)) {}

    bool is_expr() const { return std::holds_alternative<GroupExpr>(v); }
    bool is_cover() const { return std::holds_alternative<CoverExpr>(v); }
    const GroupExpr& expr() const { return std::get<GroupExpr>(v); }
    const CoverExpr& cover() const { return std::get<CoverExpr>(v); }

    // Collapses Split covers to their underlying expression.
    Operand normalized() const {
        if (is_cover() && cover().kind == CoverExpr::Kind::Split)
            return Operand(cover().ambient);
        return *this;
    }
    bool is_zero() const { return is_expr() && expr().is_zero(); }

    friend bool operator==(const Operand&, const Operand&) = default;
};

std::string to_string(const CoverExpr& c);
std::string to_string(const Operand& o);

} // namespace lca
