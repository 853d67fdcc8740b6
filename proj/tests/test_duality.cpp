#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcacalc/duality.hpp"
#include "lcacalc/errors.hpp"
#include "lcacalc/parse.hpp"

using namespace lca;

TEST_CASE("atom dual table") {
    CHECK(dual(atom_int()) == atom_circle());
    CHECK(dual(atom_circle()) == atom_int());
    CHECK(dual(atom_real()) == atom_real());
    CHECK(dual(atom_rat()) == atom_solenoid());
    CHECK(dual(atom_solenoid()) == atom_rat());
    CHECK(dual(atom_cyclic(7, 2)) == atom_cyclic(7, 2));
    CHECK(dual(atom_prufer(3)) == atom_zp(3));
    CHECK(dual(atom_zp(3)) == atom_prufer(3));
    CHECK(dual(atom_qp(5)) == atom_qp(5));
    CHECK(dual(atom_omega_prod(2)) == atom_omega_sum(2));
    CHECK(dual(atom_omega_sum(2)) == atom_omega_prod(2));
}

TEST_CASE("the infinite torus has no dual in the catalog") {
    CHECK_FALSE(dual_representable(atom_omega_torus()));
    CHECK(dual_representable(atom_real()));
    CHECK_FALSE(dual_representable(parse_expr("R+T^w")));
    CHECK_THROWS_AS(dual(parse_expr("T^w")), Error);
    try {
        dual(GroupExpr::single(atom_omega_torus()));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == "DualUnsupported");
    }
}

TEST_CASE("duality is an additive involution") {
    GroupExpr g = parse_expr("Z^2+Q+C(8)+Zp(3)");
    GroupExpr h = parse_expr("R+Sol+Pr(2)+SC(5)");
    CHECK(dual(dual(g)) == g);
    CHECK(dual(dual(h)) == h);
    CHECK(dual(direct_sum(g, h)) == direct_sum(dual(g), dual(h)));
    CHECK(dual(GroupExpr::zero()).is_zero());
    CHECK(dual(g) == parse_expr("T^2+Sol+C(8)+Pr(3)"));
}

TEST_CASE("codivisibility reads off the dual") {
    CHECK(is_codivisible(parse_expr("Zp(2)")));     // dual Pr(2) is divisible
    CHECK(is_codivisible(parse_expr("R+Qp(3)")));
    CHECK_FALSE(is_codivisible(parse_expr("T")));   // dual Z is not divisible
    CHECK_FALSE(is_codivisible(parse_expr("C(4)")));
    CHECK_THROWS_AS(is_codivisible(parse_expr("T^w")), Error);
}
