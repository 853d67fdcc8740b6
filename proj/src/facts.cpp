#include "lcacalc/facts.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace lca {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \r\n");
    return s.substr(a, b - a + 1);
}

struct PatternParseError {
    std::string msg;
};

// prime slot: a concrete prime or the symbol 'p'
void parse_prime_slot(const std::string& tok, PatternAtom& a) {
    if (tok == "p") {
        a.sym_prime = true;
        return;
    }
    long long v = 0;
    for (char c : tok) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw PatternParseError{"bad prime '" + tok + "'"};
        v = v * 10 + (c - '0');
    }
    if (!is_prime(v)) throw PatternParseError{"'" + tok + "' is not prime"};
    a.p = v;
}

PatternAtom parse_pattern_atom(const std::string& tok) {
    PatternAtom a{};
    auto with_arg = [&](AtomTag tag, const std::string& prefix) {
        a.tag = tag;
        if (tok.back() != ')') throw PatternParseError{"missing ')' in '" + tok + "'"};
        parse_prime_slot(tok.substr(prefix.size(), tok.size() - prefix.size() - 1), a);
    };
    if (tok == "Z") a.tag = AtomTag::Int;
    else if (tok == "Q") a.tag = AtomTag::Rat;
    else if (tok == "R") a.tag = AtomTag::Real;
    else if (tok == "T") a.tag = AtomTag::Circle;
    else if (tok == "T^w") a.tag = AtomTag::OmegaTorus;
    else if (tok == "Sol") a.tag = AtomTag::Solenoid;
    else if (tok.rfind("Zp(", 0) == 0) with_arg(AtomTag::PadicInt, "Zp(");
    else if (tok.rfind("Qp(", 0) == 0) with_arg(AtomTag::PadicRat, "Qp(");
    else if (tok.rfind("Pr(", 0) == 0) with_arg(AtomTag::Prufer, "Pr(");
    else if (tok.rfind("PC(", 0) == 0) with_arg(AtomTag::OmegaProd, "PC(");
    else if (tok.rfind("SC(", 0) == 0) with_arg(AtomTag::OmegaSum, "SC(");
    else if (tok.rfind("C(", 0) == 0) {
        a.tag = AtomTag::Cyclic;
        if (tok.back() != ')') throw PatternParseError{"missing ')' in '" + tok + "'"};
        std::string arg = tok.substr(2, tok.size() - 3);
        if (arg == "p") {
            a.sym_prime = true;
            a.k = 1;
        } else {
            long long n = 0;
            for (char c : arg) {
                if (!std::isdigit(static_cast<unsigned char>(c)))
                    throw PatternParseError{"bad cyclic order '" + arg + "'"};
                n = n * 10 + (c - '0');
            }
            if (n < 2) throw PatternParseError{"cyclic order must be >= 2"};
            long long q = n;
            long long p = 0;
            for (long long d = 2; d * d <= q; ++d)
                if (q % d == 0) { p = d; break; }
            if (p == 0) p = q;
            int k = 0;
            while (q % p == 0) { q /= p; ++k; }
            if (q != 1) throw PatternParseError{"cyclic order in a fact must be a prime power"};
            a.p = p;
            a.k = k;
        }
    } else {
        throw PatternParseError{"unrecognized atom '" + tok + "'"};
    }
    return a;
}

OperandPattern parse_pattern(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty()) throw PatternParseError{"empty operand field"};
    OperandPattern pat;
    if (s == "0") return pat;
    if (s.rfind("Xi(", 0) == 0) {
        if (s.back() != ')') throw PatternParseError{"missing ')' in '" + s + "'"};
        pat.is_xi = true;
        std::string arg = s.substr(3, s.size() - 4);
        if (arg == "p") {
            pat.xi_sym = true;
        } else {
            PatternAtom tmp{};
            parse_prime_slot(arg, tmp);
            pat.xi_p = tmp.p;
        }
        return pat;
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, '+')) pat.atoms.push_back(parse_pattern_atom(trim(tok)));
    return pat;
}

Atom instantiate_atom(const PatternAtom& a, long long bound_p) {
    long long p = a.sym_prime ? bound_p : a.p;
    return make_atom(a.tag, tag_has_prime(a.tag) ? p : 0, a.tag == AtomTag::Cyclic ? a.k : 0);
}

} // namespace

bool OperandPattern::has_symbol() const {
    if (is_xi) return xi_sym;
    return std::any_of(atoms.begin(), atoms.end(),
                       [](const PatternAtom& a) { return a.sym_prime; });
}

Operand OperandPattern::instantiate(long long bound_p) const {
    if (is_xi) return Operand(CoverExpr::xi(xi_sym ? bound_p : xi_p));
    std::vector<Atom> out;
    out.reserve(atoms.size());
    for (const PatternAtom& a : atoms) out.push_back(instantiate_atom(a, bound_p));
    return Operand(GroupExpr(std::move(out)));
}

bool OperandPattern::match(const Operand& op, long long& bound_p) const {
    Operand o = op.normalized();
    if (!has_symbol() || bound_p != 0) {
        long long p = bound_p != 0 ? bound_p : 2; // dummy when no symbol
        if (has_symbol() && bound_p == 0) return false;
        return instantiate(p) == o;
    }
    // one symbolic prime, unbound: try the primes occurring in the operand
    std::set<long long> candidates;
    if (o.is_cover()) {
        if (o.cover().kind == CoverExpr::Kind::Xi) candidates.insert(o.cover().p);
    } else {
        for (const Atom& a : o.expr().atoms())
            if (a.p != 0) candidates.insert(a.p);
    }
    for (long long p : candidates) {
        if (instantiate(p) == o) {
            bound_p = p;
            return true;
        }
    }
    return false;
}

FactBase FactBase::parse_text(const std::string& text, const std::string& origin) {
    FactBase fb;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string field;
        while (std::getline(ls, field, '\t')) fields.push_back(trim(field));
        auto fail = [&](const std::string& msg) {
            throw audit_error("fact base " + origin + " line " + std::to_string(lineno) + ": " + msg);
        };
        if (fields.size() != 6) fail("expected 6 tab-separated fields, got " + std::to_string(fields.size()));
        Fact f;
        f.line = lineno;
        if (fields[0] == "HOM") f.f = Functor::Hom;
        else if (fields[0] == "EXT") f.f = Functor::Ext;
        else fail("unknown functor '" + fields[0] + "'");
        try {
            f.lhs = parse_pattern(fields[1]);
            f.rhs = parse_pattern(fields[2]);
            f.value = parse_pattern(fields[3]);
        } catch (const PatternParseError& e) {
            fail(e.msg);
        }
        f.provenance = fields[4];
        if (f.provenance != "PAPER" && f.provenance != "DERIVED" && f.provenance != "TRIVIAL")
            fail("unknown provenance '" + f.provenance + "'");
        f.citation = fields[5];
        if (f.citation.empty()) fail("empty citation");
        if (f.value.has_symbol() && !f.lhs.has_symbol() && !f.rhs.has_symbol())
            fail("symbolic prime in value but not in operands");
        fb.facts_.push_back(std::move(f));
    }
    return fb;
}

FactBase FactBase::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw audit_error("cannot open fact base file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

std::optional<FactBase::Match> FactBase::lookup(Functor f, const Operand& a,
                                                const Operand& b) const {
    for (const Fact& fact : facts_) {
        if (fact.f != f) continue;
        long long bound = 0;
        if (!fact.lhs.match(a, bound)) continue;
        if (!fact.rhs.match(b, bound)) continue;
        if (fact.value.has_symbol() && bound == 0) continue;
        return Match{fact.value.instantiate(bound == 0 ? 2 : bound), &fact};
    }
    return std::nullopt;
}

bool FactBase::has_citation(const std::string& c) const {
    return std::any_of(facts_.begin(), facts_.end(),
                       [&](const Fact& f) { return f.citation == c; });
}

const char* FactBase::builtin_text() {
    // FUNCTOR, LHS, RHS, VALUE, PROVENANCE, CITATION (tab-separated)
    return
        "HOM\tZp(p)\tZp(p)\tZp(p)\tPAPER\tHOM-PADIC-1\n"
        "HOM\tPr(p)\tPr(p)\tZp(p)\tPAPER\tHOM-PRUFER-1\n"
        "HOM\tQp(p)\tZp(p)\t0\tPAPER\tHOM-PADIC-2\n"
        "HOM\tPr(p)\tQp(p)\t0\tPAPER\tHOM-PRUFER-2\n"
        "HOM\tQ\tQ\tQ\tPAPER\tHOM-RAT-1\n"
        "HOM\tPC(p)\tT\tSC(p)\tPAPER\tXI-P-HOM-1\n"
        "HOM\tSC(p)\tT\tPC(p)\tPAPER\tXI-P-HOM-2\n"
        "EXT\tPr(p)\tZp(p)\tZp(p)\tPAPER\tEXT-PRUFER-1\n"
        "EXT\tPr(p)\tZ\tZp(p)\tPAPER\tEXT-PRUFER-2\n"
        "EXT\tQp(p)\tQp(p)\t0\tPAPER\tEXT-PRUFER-3\n"
        "EXT\tQp(p)\tZp(p)\t0\tPAPER\tEXT-PRUFER-4\n"
        "EXT\tPr(p)\tQp(p)\t0\tPAPER\tEXT-PRUFER-5\n"
        "EXT\tSol\tQ\tQ\tPAPER\tEXT-S1Z-1\n"
        "EXT\tT\tZ\tZ\tPAPER\tEXT-TORUS-LAMBDA-1\n"
        "EXT\tT\tQ\tQ\tPAPER\tEXT-TORUS-LAMBDA-2\n"
        "EXT\tXi(p)\tT\tXi(p)\tPAPER\tXI-P-1\n"
        "EXT\tXi(p)\tPr(p)\tXi(p)\tPAPER\tXI-P-2\n";
}

FactBase FactBase::builtin() { return parse_text(builtin_text(), "<builtin>"); }

} // namespace lca
