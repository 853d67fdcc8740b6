#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lcacalc/cover.hpp"
#include "lcacalc/expr.hpp"
#include "lcacalc/facts.hpp"

namespace lca {

struct HomExtValue {
    enum class Kind { Expr, Cover, Unresolved };
    Kind kind = Kind::Expr;
    GroupExpr expr;
    std::optional<CoverExpr> cover;
    std::string reason;                 // Unresolved only
    std::vector<std::string> trace;     // rule identifiers, application order
    std::vector<std::string> citations; // fact/rule citation identifiers

    static HomExtValue zero() { return {}; }
    static HomExtValue of(GroupExpr g) {
        HomExtValue v;
        v.expr = std::move(g);
        return v;
    }
    static HomExtValue of(CoverExpr c) {
        if (c.kind == CoverExpr::Kind::Split) return of(c.ambient);
        HomExtValue v;
        v.kind = Kind::Cover;
        v.cover = std::move(c);
        return v;
    }
    static HomExtValue of(const Operand& o) {
        return o.is_expr() ? of(o.expr()) : of(o.cover());
    }
    static HomExtValue unresolved(std::string reason) {
        HomExtValue v;
        v.kind = Kind::Unresolved;
        v.reason = std::move(reason);
        return v;
    }

    bool resolved() const { return kind != Kind::Unresolved; }
    bool is_zero() const { return kind == Kind::Expr && expr.is_zero(); }
    Operand operand() const; // resolved values only
};

// isomorphism comparison of resolved values (Unresolved compares false)
bool same_value(const HomExtValue& a, const HomExtValue& b);

std::string to_string(const HomExtValue& v);

struct ShortExactSeq {
    Operand a, b, c; // 0 -> a -> b -> c -> 0
    std::string label;
};

enum class Variance { FirstArgument, SecondArgument };

struct Slot {
    Functor f;
    Operand lhs, rhs;
    std::optional<HomExtValue> value; // nullopt = Unknown
};

struct SixTermSeq {
    std::array<Slot, 6> slots;
    std::string label;
};

struct DeriveStep {
    std::string rule;
    std::string detail;
};

struct Derivation {
    Functor f;
    Operand a, b;
    HomExtValue result;
    std::vector<DeriveStep> steps;
    std::vector<std::string> citations;
};

enum class Countability { Yes, No, Unknown };

struct CountabilityResult {
    Countability verdict;
    std::string citation;
};

std::string to_string(Countability c);

class Engine {
public:
    explicit Engine(FactBase facts = FactBase::builtin(), int derive_depth = 3);

    HomExtValue hom(const Operand& a, const Operand& b) const;
    HomExtValue ext(const Operand& a, const Operand& b) const;
    CountabilityResult ext_countable(const Operand& a, const Operand& b) const;

    SixTermSeq emit_les(const ShortExactSeq& s, const Operand& x, Variance var) const;
    // Fixpoint assignment of Unknown slots from zero-flanked exactness.
    // Throws InconsistentSequence when a forced value contradicts a filled slot.
    void solve_les(SixTermSeq& s) const;

    // Bounded search over the SES catalog. When mask_direct_fact is set, any
    // fact line (or seeded rule) matching the goal pair exactly is ignored
    // throughout the search, forcing a from-scratch derivation.
    std::optional<Derivation> derive(Functor f, const Operand& a, const Operand& b,
                                     bool mask_direct_fact = false) const;

    // Evaluates every applicable rule independently on an instantiated atom
    // catalog and throws AuditError on any disagreement.
    void audit() const;

    static const std::vector<ShortExactSeq>& ses_catalog();
    const FactBase& fact_base() const { return facts_; }
    int depth() const { return derive_depth_; }

    // citation text for built-in rules (id -> description); used by the CLI
    static std::string rule_citation(const std::string& rule_id);

private:
    struct Ctx;
    struct GoalKey;

    HomExtValue eval(Functor f, const Operand& a, const Operand& b, Ctx& ctx) const;
    HomExtValue eval_pair(Functor f, const Atom& x, const Atom& y, Ctx& ctx) const;
    HomExtValue hom_pair(const Atom& x, const Atom& y, Ctx& ctx) const;
    HomExtValue ext_pair(const Atom& x, const Atom& y, Ctx& ctx) const;
    SixTermSeq emit_les_ctx(const ShortExactSeq& s, const Operand& x, Variance var,
                            Ctx& ctx) const;
    std::optional<Derivation> derive_ctx(Functor f, const Operand& a, const Operand& b,
                                         Ctx& ctx) const;

    FactBase facts_;
    int derive_depth_;
};

} // namespace lca
