#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lcacalc/errors.hpp"
#include "lcacalc/expr.hpp"
#include "lcacalc/parse.hpp"

using namespace lca;

TEST_CASE("atoms validate their parameters") {
    CHECK_NOTHROW(atom_cyclic(2, 3));
    CHECK_NOTHROW(atom_prufer(97));
    CHECK_THROWS_AS(atom_cyclic(4, 1), Error);  // 4 is not prime
    CHECK_THROWS_AS(atom_cyclic(2, 0), Error);  // exponent must be positive
    CHECK_THROWS_AS(atom_zp(1), Error);
    CHECK_THROWS_AS(make_atom(AtomTag::Int, 2), Error); // Z carries no prime
}

TEST_CASE("expressions normalize to a sorted multiset") {
    GroupExpr g({atom_int(), atom_real(), atom_cyclic(3, 1), atom_circle(), atom_real()});
    std::vector<AtomTag> tags;
    for (const Atom& a : g.atoms()) tags.push_back(a.tag);
    CHECK(tags == std::vector<AtomTag>{AtomTag::Real, AtomTag::Real, AtomTag::Circle,
                                       AtomTag::Int, AtomTag::Cyclic});
    CHECK(iso_equal(g, GroupExpr({atom_cyclic(3, 1), atom_real(), atom_real(),
                                  atom_circle(), atom_int()})));
}

TEST_CASE("composite cyclic orders split by the Chinese remainder theorem") {
    RawAtom raw{AtomTag::Cyclic, 0, 0, 12};
    GroupExpr g = normalize({raw});
    CHECK(g == GroupExpr({atom_cyclic(2, 2), atom_cyclic(3, 1)}));

    RawAtom unit{AtomTag::Cyclic, 0, 0, 1}; // Z(1) is the zero group
    CHECK(normalize({unit}).is_zero());

    CHECK(parse_expr("C(360)") ==
          GroupExpr({atom_cyclic(2, 3), atom_cyclic(3, 2), atom_cyclic(5, 1)}));
}

TEST_CASE("direct sum is commutative and has 0 as unit") {
    GroupExpr a = parse_expr("R+Z");
    GroupExpr b = parse_expr("T+C(9)");
    CHECK(direct_sum(a, b) == direct_sum(b, a));
    CHECK(direct_sum(a, GroupExpr::zero()) == a);
    CHECK(direct_sum(a, b).size() == 4);
}

TEST_CASE("parser grammar") {
    CHECK(parse_expr("0").is_zero());
    CHECK(parse_expr("R^2+T") == GroupExpr({atom_real(), atom_real(), atom_circle()}));
    CHECK(parse_expr("T^w") == GroupExpr::single(atom_omega_torus()));
    CHECK(parse_expr("Zp(2)+Qp(3)+Pr(5)") ==
          GroupExpr({atom_zp(2), atom_qp(3), atom_prufer(5)}));
    CHECK(parse_operand("Xi(2)").is_cover());

    CHECK_THROWS_AS(parse_expr(""), Error);
    CHECK_THROWS_AS(parse_expr("R+"), Error);
    CHECK_THROWS_AS(parse_expr("Foo"), Error);
    CHECK_THROWS_AS(parse_expr("Zp(6)"), Error);
    CHECK_THROWS_AS(parse_expr("C(0)"), Error);
    CHECK_THROWS_AS(parse_operand("Xi(4)"), Error);
}

TEST_CASE("parse is a left inverse of render on random expressions") {
    std::vector<Atom> pool = {atom_real(),     atom_circle(), atom_omega_torus(),
                              atom_solenoid(), atom_int(),    atom_rat()};
    for (long long p : {2, 3, 5, 7}) {
        pool.push_back(atom_prufer(p));
        pool.push_back(atom_zp(p));
        pool.push_back(atom_qp(p));
        pool.push_back(atom_omega_prod(p));
        pool.push_back(atom_omega_sum(p));
        for (int k = 1; k <= 4; ++k) pool.push_back(atom_cyclic(p, k));
    }
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> size_dist(0, 6);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < 2000; ++i) {
        std::vector<Atom> atoms;
        int n = size_dist(rng);
        for (int j = 0; j < n; ++j) atoms.push_back(pool[pick(rng)]);
        GroupExpr g(std::move(atoms));
        CHECK(parse_expr(render(g)) == g);
    }
    CHECK(parse_operand(render(Operand(CoverExpr::xi(3)))) == Operand(CoverExpr::xi(3)));
}
