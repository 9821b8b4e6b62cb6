#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fillvol/chain.hpp"
#include "test_support.hpp"

using namespace fillvol;
using namespace fillvol::testing;

TEST_CASE("canonicalize folds permutation parity into the coefficient") {
    const RationalPoint v0 = pt({0, 0});
    const RationalPoint v1 = pt({1, 0});
    const RationalPoint v2 = pt({1, 1});

    SUBCASE("transposition flips the sign") {
        auto [s, m] = canonicalize(simplex({v1, v0}), 1, Ring::Z);
        CHECK(m == -1);
        CHECK(s.vertices[0] == v0);
        CHECK(s.vertices[1] == v1);
    }
    SUBCASE("identity permutation keeps it") {
        auto [s, m] = canonicalize(simplex({v0, v1}), 1, Ring::Z);
        CHECK(m == 1);
        CHECK(s.vertices[0] == v0);
    }
    SUBCASE("3-cycle is even") {
        auto [s, m] = canonicalize(simplex({v2, v0, v1}), 1, Ring::Z);
        CHECK(m == 1);
        CHECK(s.vertices[0] == v0);
        CHECK(s.vertices[2] == v2);
    }
    SUBCASE("Z2 ignores parity") {
        auto [s, m] = canonicalize(simplex({v1, v0}), 1, Ring::Z2);
        (void)s;
        CHECK(m == 1);
    }
    SUBCASE("idempotent") {
        auto first = canonicalize(simplex({v2, v0, v1}), 1, Ring::Z);
        auto second = canonicalize(first.first, first.second, Ring::Z);
        CHECK(second.second == first.second);
        CHECK(compareSimplices(second.first, first.first) == 0);
    }
}

TEST_CASE("chain arithmetic") {
    std::mt19937_64 rng(7);
    const Chain a = randomChain(2, 3, Ring::Z, 6, rng);

    SUBCASE("a + (-a) is empty") { CHECK(add(a, negate(a)).empty()); }
    SUBCASE("a + 0 = a") { CHECK(add(a, Chain(2, 3, Ring::Z)) == a); }
    SUBCASE("doubling in Z2 cancels") {
        std::mt19937_64 rng2(8);
        const Chain b = randomChain(2, 3, Ring::Z2, 5, rng2);
        CHECK(add(b, b).empty());
        CHECK(negate(b) == b);
    }
    SUBCASE("associative and commutative") {
        std::mt19937_64 rng2(9);
        const Chain b = randomChain(2, 3, Ring::Z, 5, rng2);
        const Chain c = randomChain(2, 3, Ring::Z, 4, rng2);
        CHECK(add(a, b) == add(b, a));
        CHECK(add(add(a, b), c) == add(a, add(b, c)));
    }
    SUBCASE("ring/dimension mismatch rejected") {
        CHECK_THROWS_AS(add(a, Chain(2, 3, Ring::Z2)), std::invalid_argument);
        CHECK_THROWS_AS(add(a, Chain(1, 3, Ring::Z)), std::invalid_argument);
        CHECK_THROWS_AS(add(a, Chain(2, 4, Ring::Z)), std::invalid_argument);
    }
}

TEST_CASE("orientation: swapping two vertices and negating gives an equal chain") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<RationalPoint> verts;
        for (int v = 0; v < 3; ++v) verts.push_back(randomPoint(4, rng));
        if (verts[0] == verts[1]) continue;
        Chain x(2, 4, Ring::Z);
        x.addTerm(simplex({verts[0], verts[1], verts[2]}), 3);
        Chain y(2, 4, Ring::Z);
        y.addTerm(simplex({verts[1], verts[0], verts[2]}), -3);
        CHECK(x == y);
    }
}

TEST_CASE("boundary of a triangle is the alternating sum of edges") {
    const RationalPoint v0 = pt({0, 0});
    const RationalPoint v1 = pt({2, 0});
    const RationalPoint v2 = pt({0, 2});
    Chain t(2, 2, Ring::Z);
    t.addTerm(simplex({v0, v1, v2}), 1);
    Chain expected(1, 2, Ring::Z);
    expected.addTerm(simplex({v1, v2}), 1);
    expected.addTerm(simplex({v0, v2}), -1);
    expected.addTerm(simplex({v0, v1}), 1);
    CHECK(boundary(t) == expected);
}

TEST_CASE("unit square loop: eight endpoint terms cancel pairwise") {
    const RationalPoint a = pt({0, 0});
    const RationalPoint b = pt({1, 0});
    const RationalPoint c = pt({1, 1});
    const RationalPoint d = pt({0, 1});
    Chain loop(1, 2, Ring::Z);
    loop.addTerm(simplex({a, b}), 1);
    loop.addTerm(simplex({b, c}), 1);
    loop.addTerm(simplex({c, d}), 1);
    loop.addTerm(simplex({d, a}), 1);

    // independent oracle: accumulate the eight endpoint contributions by hand
    Chain endpoints(0, 2, Ring::Z);
    for (const auto& [head, tail] :
         std::vector<std::pair<RationalPoint, RationalPoint>>{{b, a}, {c, b}, {d, c}, {a, d}}) {
        endpoints.addTerm(simplex({head}), 1);
        endpoints.addTerm(simplex({tail}), -1);
    }
    CHECK(endpoints.empty());
    CHECK(boundary(loop) == endpoints);
    CHECK(isCycle(loop));
}

TEST_CASE("isCycle edge cases") {
    Chain seg(1, 2, Ring::Z);
    seg.addTerm(simplex({pt({0, 0}), pt({1, 0})}), 1);
    CHECK_FALSE(isCycle(seg));
    CHECK(isCycle(Chain(1, 2, Ring::Z)));
    CHECK(isCycle(Chain(0, 2, Ring::Z)));

    Chain points(0, 2, Ring::Z);
    points.addTerm(simplex({pt({0, 0})}), 1);
    CHECK_THROWS_AS(boundary(points), std::invalid_argument);
}

TEST_CASE("boundary of boundary vanishes on random chains, both rings") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const int dim = 2 + static_cast<int>(rng() % 2);
        const int ambient = dim + 1 + static_cast<int>(rng() % 2);
        const Ring ring = (rng() & 1) ? Ring::Z : Ring::Z2;
        const Chain c = randomChain(dim, ambient, ring, 6, rng);
        CHECK(boundary(boundary(c)).empty());
    }
}

TEST_CASE("boundary of boundary vanishes with repeated-vertex simplices") {
    const RationalPoint a = pt({0, 0, 0});
    const RationalPoint b = pt({1, 0, 0});
    const RationalPoint c = pt({0, 1, 0});
    Chain degenerate(3, 3, Ring::Z);
    degenerate.addTerm(simplex({a, a, b, c}), 2);
    degenerate.addTerm(simplex({a, b, b, c}), -1);
    CHECK(boundary(boundary(degenerate)).empty());
}

TEST_CASE("support lists the stored simplices") {
    std::mt19937_64 rng(5);
    const Chain c = randomChain(2, 3, Ring::Z, 4, rng);
    CHECK(c.support().size() == c.size());
}
