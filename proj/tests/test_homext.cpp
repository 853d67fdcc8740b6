#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcacalc/errors.hpp"
#include "lcacalc/homext.hpp"
#include "lcacalc/parse.hpp"

using namespace lca;

namespace {

const Engine& engine() {
    static Engine e;
    return e;
}

HomExtValue ext(const std::string& a, const std::string& b) {
    return engine().ext(parse_operand(a), parse_operand(b));
}

HomExtValue hom(const std::string& a, const std::string& b) {
    return engine().hom(parse_operand(a), parse_operand(b));
}

bool value_is(const HomExtValue& v, const std::string& expected) {
    return same_value(v, HomExtValue::of(parse_operand(expected)));
}

std::vector<Atom> core_pool() {
    std::vector<Atom> pool = {atom_real(), atom_circle(), atom_solenoid(),
                              atom_int(), atom_rat()};
    for (long long p : {2, 3, 5}) {
        pool.push_back(atom_prufer(p));
        pool.push_back(atom_zp(p));
        pool.push_back(atom_qp(p));
        for (int k = 1; k <= 3; ++k) pool.push_back(atom_cyclic(p, k));
    }
    return pool;
}

} // namespace

TEST_CASE("hom vanishing and transposition rules") {
    CHECK(hom("T", "Z").is_zero());       // compact into free
    CHECK(hom("R", "Zp(2)").is_zero());   // connected into totally disconnected
    CHECK(value_is(hom("Z", "Q"), "Q"));
    CHECK(value_is(hom("Zp(3)", "Zp(3)"), "Zp(3)"));
    CHECK(value_is(hom("Pr(2)", "T"), "Zp(2)")); // hom into T is the dual
    CHECK(value_is(hom("Zp(2)", "T"), "Pr(2)"));
    CHECK(hom("Pr(2)", "Pr(3)").is_zero());      // distinct primes
}

TEST_CASE("ext vanishing rules") {
    CHECK(ext("R", "Zp(2)").is_zero());   // projective first argument
    CHECK(ext("Z", "Sol").is_zero());
    CHECK(ext("C(4)", "T").is_zero());    // injective second argument
    CHECK(ext("Pr(2)", "R").is_zero());
    CHECK(ext("Qp(2)", "Qp(2)").is_zero());
    CHECK(ext("C(8)", "C(9)").is_zero()); // distinct primes
}

TEST_CASE("ext on cyclic atoms matches the finite formula") {
    CHECK(value_is(ext("C(4)", "C(8)"), "C(4)"));
    CHECK(value_is(ext("C(8)", "C(4)"), "C(4)"));
    CHECK(value_is(ext("C(9)", "Z"), "C(9)"));
    CHECK(value_is(ext("C(4)", "Zp(2)"), "C(4)"));
    CHECK(ext("C(4)", "Q").is_zero());
    CHECK(ext("C(4)", "Pr(2)").is_zero());
}

TEST_CASE("biadditivity") {
    CHECK(value_is(ext("T", "Z+C(4)"), "Z+C(4)"));
    CHECK(value_is(ext("Pr(2)+Pr(3)", "Z"), "Zp(2)+Zp(3)"));
    CHECK(value_is(hom("Z^2", "Q+Zp(2)"), "Q^2+Zp(2)^2"));
    CHECK(ext("0", "Sol").is_zero());
    CHECK(ext("T^w", "0").is_zero());
    // one unresolved summand poisons the sum
    HomExtValue v = ext("T", "Sol+Z");
    CHECK_FALSE(v.resolved());
    CHECK_FALSE(v.trace.empty());
}

TEST_CASE("cover values pass through untouched by structural rules") {
    HomExtValue v = ext("Xi(2)", "T");
    REQUIRE(v.kind == HomExtValue::Kind::Cover);
    CHECK(v.cover->kind == CoverExpr::Kind::Xi);
    CHECK(v.cover->p == 2);
    CHECK_FALSE(ext("Xi(2)", "Z").resolved()); // no fact line, no rule applies
}

TEST_CASE("countability reasoner") {
    CHECK(engine().ext_countable(parse_operand("Sol"), parse_operand("Q")).verdict ==
          Countability::Yes);
    CHECK(engine().ext_countable(parse_operand("SC(2)"), parse_operand("C(2)")).verdict ==
          Countability::No);
    CHECK(engine().ext_countable(parse_operand("T^w"), parse_operand("Z")).verdict ==
          Countability::Unknown);
    CHECK_FALSE(engine()
                    .ext_countable(parse_operand("SC(2)"), parse_operand("C(2)"))
                    .citation.empty());
}

TEST_CASE("six-term sequences from the catalog solve consistently") {
    for (const ShortExactSeq& s : Engine::ses_catalog()) {
        CAPTURE(s.label);
        for (Variance var : {Variance::FirstArgument, Variance::SecondArgument}) {
            SixTermSeq seq = engine().emit_les(s, parse_operand("Z"), var);
            CHECK_NOTHROW(engine().solve_les(seq));
        }
    }
}

TEST_CASE("solve_les fills zero-flanked slots") {
    SixTermSeq s;
    s.label = "manual";
    Operand z(parse_expr("Z"));
    auto zero = HomExtValue::zero();
    auto val = HomExtValue::of(parse_expr("Q"));
    s.slots = {Slot{Functor::Hom, z, z, zero},        Slot{Functor::Hom, z, z, val},
               Slot{Functor::Hom, z, z, std::nullopt}, Slot{Functor::Ext, z, z, zero},
               Slot{Functor::Ext, z, z, zero},        Slot{Functor::Ext, z, z, zero}};
    engine().solve_les(s);
    REQUIRE(s.slots[2].value.has_value());
    CHECK(same_value(*s.slots[2].value, val));
}

TEST_CASE("solve_les detects contradictions") {
    SixTermSeq s;
    s.label = "contradiction";
    Operand z(parse_expr("Z"));
    auto zero = HomExtValue::zero();
    auto val = HomExtValue::of(parse_expr("Q"));
    // a nonzero term squeezed between zeros is impossible in an exact sequence
    s.slots = {Slot{Functor::Hom, z, z, zero}, Slot{Functor::Hom, z, z, val},
               Slot{Functor::Hom, z, z, zero}, Slot{Functor::Ext, z, z, zero},
               Slot{Functor::Ext, z, z, zero}, Slot{Functor::Ext, z, z, zero}};
    try {
        engine().solve_les(s);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == "InconsistentSequence");
    }
}

TEST_CASE("derivations reproduce and never contradict the direct evaluation") {
    const Engine& e = engine();
    std::vector<Atom> pool = core_pool();
    for (Functor f : {Functor::Hom, Functor::Ext})
        for (const Atom& x : pool)
            for (const Atom& y : pool) {
                Operand a(GroupExpr::single(x)), b(GroupExpr::single(y));
                HomExtValue direct = f == Functor::Hom ? e.hom(a, b) : e.ext(a, b);
                auto d = e.derive(f, a, b, /*mask_direct_fact=*/true);
                if (!d) continue;
                CAPTURE(to_string(f) + "(" + atom_to_string(x) + "," + atom_to_string(y) + ")");
                CHECK(d->result.resolved());
                if (direct.resolved()) CHECK(same_value(d->result, direct));
                CHECK_FALSE(d->steps.empty());
            }
}

TEST_CASE("custom fact tables extend the engine") {
    std::string text = std::string(FactBase::builtin_text()) +
                       "EXT\tSol\tZ\tQ\tDERIVED\tEXT-SOL-Z-LOCAL\n";
    Engine e(FactBase::parse_text(text, "<test>"));
    CHECK(value_is(e.ext(parse_operand("Sol"), parse_operand("Z")), "Q"));
    CHECK_NOTHROW(e.audit());

    CHECK_THROWS_AS(FactBase::parse_text("EXT\tSol\tZ\n", "<test>"), Error);
    CHECK_THROWS_AS(FactBase::parse_text("EXT\tSol\tZ\tQ\tGUESS\tX-1\n", "<test>"), Error);
    // a symbolic prime in the value must be bound by the operands
    CHECK_THROWS_AS(FactBase::parse_text("EXT\tSol\tZ\tZp(p)\tPAPER\tX-2\n", "<test>"),
                    Error);
}
