#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcacalc/cover.hpp"
#include "lcacalc/expr.hpp"

namespace lca {

enum class Functor { Hom, Ext };

inline std::string to_string(Functor f) { return f == Functor::Hom ? "hom" : "ext"; }

// Operand pattern for fact lines. A pattern is an expression over atoms whose
// prime slots may hold the symbolic prime 'p' (bound consistently across one
// fact line), or the cover Xi(p)/Xi(q) for a concrete or symbolic prime.
struct PatternAtom {
    AtomTag tag;
    bool sym_prime = false; // prime slot holds the symbolic 'p'
    long long p = 0;        // concrete prime when !sym_prime
    int k = 0;              // Cyclic exponent
};

struct OperandPattern {
    bool is_xi = false;
    bool xi_sym = false;
    long long xi_p = 0;
    std::vector<PatternAtom> atoms; // used when !is_xi; empty means 0

    bool has_symbol() const;
    // Attempts to match `op`, extending `bound_p` (0 = unbound).
    bool match(const Operand& op, long long& bound_p) const;
    Operand instantiate(long long bound_p) const;
};

struct Fact {
    Functor f;
    OperandPattern lhs, rhs, value;
    std::string provenance; // PAPER | DERIVED | TRIVIAL
    std::string citation;   // stable identifier, e.g. EXT-PRUFER-1
    int line = 0;
};

class FactBase {
public:
    struct Match {
        Operand value;
        const Fact* fact;
    };

    // Throws AuditError on any malformed line (bad field count, bad pattern,
    // unknown functor/provenance, symbolic prime in value but not in operands).
    static FactBase parse_text(const std::string& text, const std::string& origin);
    static FactBase load_file(const std::string& path);
    static FactBase builtin();
    static const char* builtin_text();

    std::optional<Match> lookup(Functor f, const Operand& a, const Operand& b) const;
    const std::vector<Fact>& facts() const { return facts_; }
    bool has_citation(const std::string& c) const;

private:
    std::vector<Fact> facts_;
};

} // namespace lca
