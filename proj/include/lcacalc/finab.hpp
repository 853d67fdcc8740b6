#pragma once

#include <string>
#include <vector>

#include "lcacalc/expr.hpp"

namespace lca {

// Finite abelian group presented by invariant factors n1 | n2 | ... | nr.
struct FinAb {
    std::vector<long long> factors; // each >= 2, divisibility chain

    // canonicalizes an arbitrary multiset of cyclic orders (1s dropped)
    static FinAb from_orders(std::vector<long long> orders);
    static FinAb from_expr(const GroupExpr& g); // Cyclic atoms only
    static FinAb trivial_group() { return {}; }

    GroupExpr to_expr() const;
    long long order() const;
    bool trivial() const { return factors.empty(); }

    friend bool operator==(const FinAb&, const FinAb&) = default;
};

std::string to_string(const FinAb& g);

// Normalized symmetric 2-cocycle on g with values in a, as a table over the
// lexicographic element enumerations: table[x * |g| + y] = element index in a.
struct Cocycle2 {
    FinAb g, a;
    std::vector<int> table;
};

struct ExtensionTable {
    FinAb g, a;
    FinAb extension; // invariant factors of the twisted product A x G
};

struct CocycleReport {
    FinAb z2;       // group of normalized symmetric 2-cocycles
    FinAb b2;       // subgroup of coboundaries
    FinAb quotient; // z2 / b2
};

struct CrosscheckReport {
    bool agree = false;
    long long class_count = -1; // exhaustive cocycle-class count; -1 when skipped
    FinAb formula_value;
    FinAb cocycle_value;
    std::string detail;
};

// Ext(+Z(n_i), A) = + A/n_i A by the invariant-factor formula.
FinAb ext_finite(const FinAb& g, const FinAb& a);

// Linear-algebra computation of Z^2, B^2 and their quotient. SizeBound when
// |g| > 64 or |a| > 64.
CocycleReport cocycle_group(const FinAb& g, const FinAb& a);

// Validates the three cocycle identities, then builds the twisted extension
// with operation (a,g)+(a',g') = (a+a'+c(g,g'), g+g'). NotACocycle otherwise.
ExtensionTable build_extension(const FinAb& g, const FinAb& a, const Cocycle2& c);

// ext_finite vs cocycle_group; for |g|*|a| <= 16 additionally enumerates all
// cocycles, buckets them modulo coboundaries, and compares the class count.
CrosscheckReport crosscheck(const FinAb& g, const FinAb& a);

// Element arithmetic for a FinAb, lexicographic over invariant-factor coords.
class FinAbElems {
public:
    explicit FinAbElems(const FinAb& g);
    int n() const { return n_; }
    int rank() const { return static_cast<int>(radix_.size()); }
    int add(int i, int j) const;
    int neg(int i) const;
    int mul(long long k, int i) const; // k-fold sum
    std::vector<long long> coords(int i) const;
    int index(const std::vector<long long>& coords) const;
    int generator(int t) const; // index of the unit vector e_t

private:
    std::vector<long long> radix_;
    int n_;
};

// Helper for tests: the zero cocycle, and a cocycle from an explicit table of
// coordinate values.
Cocycle2 zero_cocycle(const FinAb& g, const FinAb& a);

} // namespace lca
