#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcacalc/classify.hpp"
#include "lcacalc/errors.hpp"
#include "lcacalc/parse.hpp"

using namespace lca;

namespace {
CategoryTag cat(const std::string& s) { return parse_category(s); }
} // namespace

TEST_CASE("property vectors of the basic atoms") {
    PropertyVector r = properties(parse_expr("R"));
    CHECK(r.connected);
    CHECK(r.divisible);
    CHECK(r.lie);
    CHECK_FALSE(r.compact);
    CHECK_FALSE(r.countable);

    PropertyVector zp = properties(parse_expr("Zp(2)"));
    CHECK(zp.compact);
    CHECK(zp.totally_disconnected);
    CHECK(zp.topological_torsion);
    CHECK_FALSE(zp.countable);
    CHECK_FALSE(zp.divisible);
    CHECK(zp.codivisible.has_value());
    CHECK(*zp.codivisible);

    PropertyVector pr = properties(parse_expr("Pr(3)"));
    CHECK(pr.discrete);
    CHECK(pr.countable);
    CHECK(pr.divisible);
    CHECK(pr.topological_torsion);

    PropertyVector tw = properties(parse_expr("T^w"));
    CHECK(tw.compact);
    CHECK(tw.connected);
    CHECK_FALSE(tw.lie);
    CHECK_FALSE(tw.codivisible.has_value()); // dual not representable
}

TEST_CASE("type decomposition splits the four parts") {
    TypeDecomposition d = decompose(parse_expr("R+T+Z+Zp(2)+C(9)+Sol"));
    CHECK(d.r_part == parse_expr("R"));
    CHECK(d.s1_part == parse_expr("T+Sol"));
    CHECK(d.t_part == parse_expr("Zp(2)+C(9)"));
    CHECK(d.z_part == parse_expr("Z"));
}

TEST_CASE("membership in the ten base categories") {
    CHECK(member(parse_expr("R+T^w"), cat("LCPAb")));
    CHECK(member(parse_expr("R+T+Z"), cat("LCPAb_cg")));
    CHECK_FALSE(member(parse_expr("Q"), cat("LCPAb_cg")));
    CHECK(member(parse_expr("R^2+C(4)"), cat("LieAb")));
    CHECK_FALSE(member(parse_expr("Zp(2)"), cat("LieAb")));
    CHECK(member(parse_expr("Zp(2)+Q"), cat("TDLCPAb")));
    CHECK_FALSE(member(parse_expr("R"), cat("TDLCPAb")));
    CHECK(member(parse_expr("Zp(2)+Pr(3)"), cat("TorLCPAb")));
    CHECK_FALSE(member(parse_expr("Z"), cat("TorLCPAb")));
    CHECK(member(parse_expr("Qp(2)+C(8)"), cat("LCPAb(2)")));
    CHECK_FALSE(member(parse_expr("C(3)"), cat("LCPAb(2)")));
    CHECK(member(parse_expr("Sol+Qp(3)"), cat("FLCPAb")));
    CHECK_FALSE(member(parse_expr("SC(2)"), cat("FLCPAb")));
    CHECK(member(parse_expr("Zp(5)"), cat("FLCPAb(5)")));
    CHECK(member(parse_expr("Zp(2)+Qp(3)"), cat("TorFLCPAb")));
    CHECK(member(parse_expr("R+Pr(2)"), cat("LCPAb_A")));
    CHECK_FALSE(member(parse_expr("R+Z"), cat("LCPAb_A")));
    CHECK_THROWS_AS(member(parse_expr("Z"), cat("LH(LCPAb)")), Error);
}

TEST_CASE("injectivity verdicts carry reasons and respect membership") {
    Verdict v = classify_injective(parse_operand("R+T"), cat("LCPAb"));
    CHECK(v.value);
    CHECK_FALSE(v.reason.empty());

    CHECK_FALSE(classify_injective(parse_operand("Q"), cat("LCPAb")).value);
    CHECK(classify_injective(parse_operand("Pr(2)"), cat("TorLCPAb")).value);
    CHECK_FALSE(classify_injective(parse_operand("Zp(2)"), cat("TDLCPAb")).value);

    // hearts without nonzero injectives
    CHECK(classify_injective(parse_operand("0"), cat("LH(LCPAb)")).value);
    CHECK_FALSE(classify_injective(parse_operand("T"), cat("LH(LCPAb)")).value);
    CHECK_FALSE(classify_injective(parse_operand("Xi(2)"), cat("LH(TDLCPAb)")).value);

    try {
        classify_injective(parse_operand("R"), cat("TorLCPAb")); // not a member
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == "NotAMember");
    }
    // a cover is an object of a heart, never of a base category
    CHECK_THROWS_AS(classify_injective(parse_operand("Xi(2)"), cat("TDLCPAb")), Error);
}

TEST_CASE("projectivity verdicts") {
    CHECK(classify_projective(parse_operand("R+Z^3"), cat("LH(LCPAb)")).value);
    CHECK_FALSE(classify_projective(parse_operand("T"), cat("LH(LCPAb)")).value);
    CHECK(classify_projective(parse_operand("Z"), cat("LH(TDLCPAb)")).value);
    CHECK(classify_projective(parse_operand("Zp(2)"), cat("LH(TorLCPAb)")).value);
    CHECK(classify_projective(parse_operand("Zp(3)+Qp(3)"), cat("FLCPAb(3)")).value);
    CHECK_FALSE(classify_projective(parse_operand("Xi(2)"), cat("LH(LCPAb(2))")).value);
    // no projectivity rule for the plain base category TDLCPAb
    CHECK_THROWS_AS(classify_projective(parse_operand("Z"), cat("TDLCPAb")), Error);
}

TEST_CASE("essentially injective resolutions have length one") {
    Resolution r = resolve(parse_expr("Z"));
    CHECK(r.d0 == parse_expr("R"));
    CHECK(r.d1 == Operand(parse_expr("T")));

    r = resolve(parse_expr("C(9)"));
    CHECK(r.d0 == parse_expr("Pr(3)"));
    CHECK(r.d1 == Operand(parse_expr("Pr(3)")));

    r = resolve(parse_expr("Q"));
    CHECK(r.d0 == parse_expr("Q"));
    CHECK(r.d1 == Operand(GroupExpr::zero()));

    r = resolve(parse_expr("Zp(2)"));
    CHECK(r.d0 == parse_expr("T^w"));
    REQUIRE(r.d1.is_cover());
    CHECK(r.d1.cover().kind == CoverExpr::Kind::TaggedCoker);

    CHECK_THROWS_AS(resolve(parse_expr("Sol")), Error);
    CHECK_THROWS_AS(resolve(parse_expr("Qp(2)")), Error);
}

TEST_CASE("vector group quotients") {
    CHECK(vector_quotient(3, 0, 0) == Operand(parse_expr("R^3")));
    CHECK(vector_quotient(3, 2, 0) == Operand(parse_expr("R+T^2")));
    Operand dense = vector_quotient(2, 2, 1);
    REQUIRE(dense.is_cover());
    CHECK(dense.cover().kind == CoverExpr::Kind::DenseFree);
    CHECK(dense.cover().kernel_rank == 1);
    CHECK_THROWS_AS(vector_quotient(1, 2, 0), Error);
    CHECK_THROWS_AS(vector_quotient(2, 0, 1), Error); // dense kernel needs a torus
}
