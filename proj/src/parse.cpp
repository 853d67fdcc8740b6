#include "lcacalc/parse.hpp"

#include <cctype>

namespace lca {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    bool eat(const std::string& word) {
        if (s.compare(i, word.size(), word) == 0) { i += word.size(); return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error(msg + " at position " + std::to_string(i) + " in \"" + s + "\"");
    }
    long long number() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected a number");
        long long n = 0;
        for (std::size_t j = start; j < i; ++j) {
            n = n * 10 + (s[j] - '0');
            if (n > 1'000'000'000) fail("number too large");
        }
        return n;
    }
    long long paren_number() {
        skip_ws();
        if (!eat('(')) fail("expected '('");
        long long n = number();
        skip_ws();
        if (!eat(')')) fail("expected ')'");
        return n;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
};

long long prime_arg(Cursor& c) {
    long long p = c.paren_number();
    if (!is_prime(p)) throw invalid_atom(std::to_string(p) + " is not prime");
    return p;
}

// Parses one atom term into raw descriptors (C(n) may be composite).
RawAtom parse_atom(Cursor& c) {
    c.skip_ws();
    if (c.eat("T^w")) return {AtomTag::OmegaTorus};
    if (c.eat("Sol")) return {AtomTag::Solenoid};
    if (c.eat("Zp(")) { --c.i; return {AtomTag::PadicInt, prime_arg(c)}; }
    if (c.eat("Qp(")) { --c.i; return {AtomTag::PadicRat, prime_arg(c)}; }
    if (c.eat("Pr(")) { --c.i; return {AtomTag::Prufer, prime_arg(c)}; }
    if (c.eat("PC(")) { --c.i; return {AtomTag::OmegaProd, prime_arg(c)}; }
    if (c.eat("SC(")) { --c.i; return {AtomTag::OmegaSum, prime_arg(c)}; }
    if (c.eat("C(")) {
        --c.i;
        long long n = c.paren_number();
        if (n < 1) c.fail("cyclic order must be >= 1");
        RawAtom r{AtomTag::Cyclic};
        r.cyclic_order = n;
        return r;
    }
    if (c.eat('Z')) return {AtomTag::Int};
    if (c.eat('Q')) return {AtomTag::Rat};
    if (c.eat('R')) return {AtomTag::Real};
    if (c.eat('T')) return {AtomTag::Circle};
    throw unknown_atom("unrecognized atom at position " + std::to_string(c.i) + " in \"" + c.s +
                       "\"");
}

std::vector<RawAtom> parse_terms(Cursor& c) {
    std::vector<RawAtom> raw;
    c.skip_ws();
    if (c.eat('0')) {
        if (!c.done()) c.fail("unexpected input after '0'");
        return raw;
    }
    while (true) {
        RawAtom a = parse_atom(c);
        long long reps = 1;
        c.skip_ws();
        // 'T^w' consumes its own caret; a further '^n' multiplies the atom
        if (c.eat('^')) {
            reps = c.number();
            if (reps < 0 || reps > 64) c.fail("exponent out of range [0, 64]");
        }
        for (long long r = 0; r < reps; ++r) raw.push_back(a);
        c.skip_ws();
        if (!c.eat('+')) break;
    }
    if (!c.done()) c.fail("unexpected trailing input");
    return raw;
}

} // namespace

GroupExpr parse_expr(const std::string& text) {
    Cursor c{text};
    return normalize(parse_terms(c));
}

Operand parse_operand(const std::string& text) {
    Cursor c{text};
    c.skip_ws();
    if (c.eat("Xi(")) {
        --c.i;
        long long p = prime_arg(c);
        if (!c.done()) c.fail("Xi(p) cannot appear inside a direct sum");
        return Operand(CoverExpr::xi(p));
    }
    return Operand(normalize(parse_terms(c)));
}

CategoryTag parse_category(const std::string& text) {
    Cursor c{text};
    c.skip_ws();
    bool heart = false;
    if (c.eat("LH(")) heart = true;

    using Base = CategoryTag::Base;
    Base base;
    long long p = 0;
    c.skip_ws();
    // longest-match order matters for shared prefixes
    if (c.eat("LCPAb_cg")) base = Base::LCPAb_cg;
    else if (c.eat("LCPAb_A")) base = Base::LCPAb_A;
    else if (c.eat("LCPAb(")) { --c.i; base = Base::LCPAb_p; p = prime_arg(c); }
    else if (c.eat("LCPAb")) base = Base::LCPAb;
    else if (c.eat("LieAb")) base = Base::LieAb;
    else if (c.eat("TDLCPAb")) base = Base::TDLCPAb;
    else if (c.eat("TorLCPAb")) base = Base::TorLCPAb;
    else if (c.eat("FLCPAb(")) { --c.i; base = Base::FLCPAb_p; p = prime_arg(c); }
    else if (c.eat("FLCPAb")) base = Base::FLCPAb;
    else if (c.eat("TorFLCPAb")) base = Base::TorFLCPAb;
    else throw unknown_category("unrecognized category in \"" + text + "\"");

    if (heart) {
        c.skip_ws();
        if (!c.eat(')')) throw unknown_category("missing ')' after LH( in \"" + text + "\"");
    }
    if (!c.done()) throw unknown_category("unexpected trailing input in \"" + text + "\"");
    return CategoryTag::make(base, p, heart);
}

std::string render(const GroupExpr& g) { return to_string(g); }
std::string render(const Operand& o) { return to_string(o); }

} // namespace lca
