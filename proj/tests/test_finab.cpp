#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcacalc/errors.hpp"
#include "lcacalc/finab.hpp"
#include "lcacalc/parse.hpp"

using namespace lca;

TEST_CASE("invariant factor canonicalization") {
    CHECK(FinAb::from_orders({2, 3}) == FinAb::from_orders({6}));
    CHECK(FinAb::from_orders({4, 6}).factors == std::vector<long long>{2, 12});
    CHECK(FinAb::from_orders({2, 2, 4}).factors == std::vector<long long>{2, 2, 4});
    CHECK(FinAb::from_orders({1, 1}).trivial());
    CHECK(FinAb::from_orders({12, 18}).order() == 216);
    CHECK(FinAb::from_expr(parse_expr("C(4)+C(2)+C(3)")).factors ==
          std::vector<long long>{2, 12});
    CHECK(FinAb::from_orders({6}).to_expr() == parse_expr("C(2)+C(3)"));
    CHECK_THROWS_AS(FinAb::from_expr(parse_expr("Z+C(2)")), Error);
}

TEST_CASE("the invariant-factor formula for Ext") {
    CHECK(ext_finite(FinAb::from_orders({4}), FinAb::from_orders({6})) ==
          FinAb::from_orders({2}));
    CHECK(ext_finite(FinAb::from_orders({2, 4}), FinAb::from_orders({8})) ==
          FinAb::from_orders({2, 4}));
    CHECK(ext_finite(FinAb::from_orders({5}), FinAb::from_orders({4})).trivial());
    CHECK(ext_finite(FinAb::trivial_group(), FinAb::from_orders({9})).trivial());
    CHECK(ext_finite(FinAb::from_orders({6, 12}), FinAb::trivial_group()).trivial());
}

TEST_CASE("cocycle group quotients on small cases") {
    CocycleReport r = cocycle_group(FinAb::from_orders({4}), FinAb::from_orders({2}));
    CHECK(r.quotient == FinAb::from_orders({2}));
    r = cocycle_group(FinAb::from_orders({2, 2}), FinAb::from_orders({2}));
    CHECK(r.quotient == FinAb::from_orders({2, 2}));
    r = cocycle_group(FinAb::from_orders({9}), FinAb::from_orders({27}));
    CHECK(r.quotient == FinAb::from_orders({9}));
}

TEST_CASE("cocycle quotient equals the formula on mixed orders") {
    std::vector<FinAb> groups = {
        FinAb::from_orders({2}),     FinAb::from_orders({4}),
        FinAb::from_orders({2, 2}),  FinAb::from_orders({6}),
        FinAb::from_orders({8}),     FinAb::from_orders({2, 4}),
        FinAb::from_orders({9}),     FinAb::from_orders({3, 3}),
        FinAb::from_orders({12}),    FinAb::trivial_group(),
    };
    for (const FinAb& g : groups)
        for (const FinAb& a : groups) {
            CAPTURE(to_string(g));
            CAPTURE(to_string(a));
            CHECK(cocycle_group(g, a).quotient == ext_finite(g, a));
        }
}

TEST_CASE("exhaustive crosscheck on tiny pairs") {
    CrosscheckReport cc = crosscheck(FinAb::from_orders({4}), FinAb::from_orders({4}));
    CHECK(cc.agree);
    CHECK(cc.class_count == 4);
    cc = crosscheck(FinAb::from_orders({2, 2}), FinAb::from_orders({2}));
    CHECK(cc.agree);
    CHECK(cc.class_count == 4);
    cc = crosscheck(FinAb::from_orders({3}), FinAb::from_orders({5}));
    CHECK(cc.agree);
    CHECK(cc.class_count == 1);
}

TEST_CASE("building extensions from explicit cocycles") {
    FinAb g = FinAb::from_orders({2}), a = FinAb::from_orders({2});
    CHECK(build_extension(g, a, zero_cocycle(g, a)).extension ==
          FinAb::from_orders({2, 2}));

    Cocycle2 carry = zero_cocycle(g, a);
    carry.table[1 * 2 + 1] = 1; // c(1,1) = 1: the carry of 1+1 in Z/4
    CHECK(build_extension(g, a, carry).extension == FinAb::from_orders({4}));

    Cocycle2 bad = zero_cocycle(g, a);
    bad.table[0 * 2 + 1] = 1; // violates normalization c(0, y) = 0
    CHECK_THROWS_AS(build_extension(g, a, bad), Error);
}

TEST_CASE("size bound guards the oracle") {
    try {
        cocycle_group(FinAb::from_orders({128}), FinAb::from_orders({2}));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == "SizeBound");
    }
}

TEST_CASE("element arithmetic in mixed radix") {
    FinAb g = FinAb::from_orders({2, 4});
    FinAbElems E(g);
    CHECK(E.n() == 8);
    CHECK(E.rank() == 2);
    int x = E.index({1, 3});
    CHECK(E.coords(x) == std::vector<long long>{1, 3});
    CHECK(E.add(x, E.generator(1)) == E.index({1, 0}));
    CHECK(E.neg(E.index({1, 1})) == E.index({1, 3}));
    CHECK(E.mul(5, E.index({1, 2})) == E.index({1, 2}));
    CHECK(E.add(x, E.neg(x)) == 0);
}
