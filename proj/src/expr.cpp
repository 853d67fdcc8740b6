#include "lcacalc/expr.hpp"

#include <algorithm>
#include <map>

namespace lca {

bool tag_has_prime(AtomTag t) {
    switch (t) {
    case AtomTag::PadicInt:
    case AtomTag::PadicRat:
    case AtomTag::OmegaProd:
    case AtomTag::Cyclic:
    case AtomTag::Prufer:
    case AtomTag::OmegaSum:
        return true;
    default:
        return false;
    }
}

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Atom make_atom(AtomTag tag, long long p, int k) {
    Atom a{tag, 0, 0};
    if (tag_has_prime(tag)) {
        if (!is_prime(p))
            throw invalid_atom("prime parameter required, got " + std::to_string(p));
        a.p = p;
    } else if (p != 0) {
        throw invalid_atom("atom tag carries no prime parameter");
    }
    if (tag == AtomTag::Cyclic) {
        if (k < 1)
            throw invalid_atom("cyclic exponent must be >= 1, got " + std::to_string(k));
        a.k = k;
    } else if (k != 0) {
        throw invalid_atom("atom tag carries no exponent");
    }
    return a;
}

GroupExpr::GroupExpr(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    for (const Atom& a : atoms_)
        make_atom(a.tag, a.p, a.k); // re-validate
    std::sort(atoms_.begin(), atoms_.end());
}

GroupExpr normalize(const std::vector<RawAtom>& raw) {
    std::vector<Atom> out;
    for (const RawAtom& r : raw) {
        if (r.tag == AtomTag::Cyclic && r.cyclic_order > 0) {
            long long n = r.cyclic_order;
            if (n == 1) continue; // Z(1) = 0
            // CRT split into prime-power factors
            for (long long q = 2; q * q <= n; ++q) {
                if (n % q != 0) continue;
                int v = 0;
                while (n % q == 0) { n /= q; ++v; }
                out.push_back(make_atom(AtomTag::Cyclic, q, v));
            }
            if (n > 1) out.push_back(make_atom(AtomTag::Cyclic, n, 1));
        } else {
            out.push_back(make_atom(r.tag, r.p, r.k));
        }
    }
    return GroupExpr(std::move(out));
}

GroupExpr direct_sum(const GroupExpr& a, const GroupExpr& b) {
    std::vector<Atom> merged;
    merged.reserve(a.size() + b.size());
    std::merge(a.atoms().begin(), a.atoms().end(), b.atoms().begin(), b.atoms().end(),
               std::back_inserter(merged));
    GroupExpr out;
    // already sorted, skip re-validation through the vector constructor
    out = GroupExpr(std::move(merged));
    return out;
}

bool iso_equal(const GroupExpr& a, const GroupExpr& b) { return a == b; }

std::string atom_to_string(const Atom& a) {
    switch (a.tag) {
    case AtomTag::Real: return "R";
    case AtomTag::Circle: return "T";
    case AtomTag::OmegaTorus: return "T^w";
    case AtomTag::Solenoid: return "Sol";
    case AtomTag::Int: return "Z";
    case AtomTag::Rat: return "Q";
    case AtomTag::PadicInt: return "Zp(" + std::to_string(a.p) + ")";
    case AtomTag::PadicRat: return "Qp(" + std::to_string(a.p) + ")";
    case AtomTag::OmegaProd: return "PC(" + std::to_string(a.p) + ")";
    case AtomTag::Cyclic: {
        long long n = 1;
        for (int i = 0; i < a.k; ++i) n *= a.p;
        return "C(" + std::to_string(n) + ")";
    }
    case AtomTag::Prufer: return "Pr(" + std::to_string(a.p) + ")";
    case AtomTag::OmegaSum: return "SC(" + std::to_string(a.p) + ")";
    }
    return "?";
}

std::string to_string(const GroupExpr& g) {
    if (g.is_zero()) return "0";
    std::string out;
    const auto& v = g.atoms();
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        if (!out.empty()) out += "+";
        out += atom_to_string(v[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

} // namespace lca
