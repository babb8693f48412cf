#include <doctest.h>

#include <limits>
#include <random>

#include "gkm/errors.hpp"
#include "gkm/lattice.hpp"
#include "support.hpp"

using namespace gkm;

TEST_SUITE("lattice") {

TEST_CASE("canonicalize normalizes the sign") {
    CHECK(canonicalize({-1, 2}).rep() == IntVec{1, -2});
    CHECK(canonicalize({0, -3}).rep() == IntVec{0, 3});
    CHECK(canonicalize({2, 5}).rep() == IntVec{2, 5});
    CHECK_THROWS_AS(canonicalize({0, 0}), ZeroWeight);
}

TEST_CASE("canonicalize is idempotent and sign invariant") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dist(-9, 9);
    for (int trial = 0; trial < 5000; ++trial) {
        const IntVec v{dist(rng), dist(rng), dist(rng)};
        if (v.is_zero()) continue;
        const Weight w = canonicalize(v);
        CHECK(canonicalize(w.rep()) == w);
        CHECK(canonicalize(-v) == w);
        CHECK((w.rep() == v || w.rep() == -v));
    }
}

TEST_CASE("independent") {
    CHECK(independent(IntVec{1, 0}, IntVec{0, 1}));
    CHECK_FALSE(independent(IntVec{2, 4}, IntVec{1, 2}));
    CHECK(independent(IntVec{1, 1}, IntVec{1, -1}));
    CHECK_FALSE(independent(IntVec{0, 0, 0}, IntVec{1, 2, 3}));
    CHECK(independent(canonicalize({-1, 1}), canonicalize({1, 1})));
    CHECK_THROWS_AS(independent(IntVec{1, 0}, IntVec{1, 0, 0}), DimensionMismatch);
}

TEST_CASE("independent agrees with 2x2 minors") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> dist(-4, 4);
    for (int trial = 0; trial < 3000; ++trial) {
        const IntVec u{dist(rng), dist(rng), dist(rng)};
        const IntVec v{dist(rng), dist(rng), dist(rng)};
        CHECK(independent(u, v) == (oracle::rank_by_minors({u, v}) == 2));
    }
}

TEST_CASE("congruence_witness examples") {
    CHECK(congruence_witness({2, 1}, {2, 1}, {1, 0}) == CongruenceWitness{1, 0});
    CHECK(congruence_witness({-1, 1}, {1, 1}, {1, 0}) == CongruenceWitness{1, -2});
    CHECK(congruence_witness({1, 1}, {0, 1}, {1, 0}) == CongruenceWitness{1, 1});
    CHECK(congruence_witness({-3, 1}, {3, 1}, {0, 1}) == CongruenceWitness{-1, 2});
    CHECK_FALSE(congruence_witness({1, 2}, {1, 1}, {1, 0}).has_value());
    CHECK_THROWS_AS(congruence_witness({1, 2}, {1, 1}, {1, 0, 0}), DimensionMismatch);
}

TEST_CASE("congruence_witness (-1,1),(1,1) mod (1,0) has a single witness") {
    const auto all = oracle::all_witnesses({-1, 1}, {1, 1}, {1, 0}, 20);
    REQUIRE(all.size() == 1);
    CHECK(all[0] == std::pair<int, std::int64_t>{1, -2});
}

TEST_CASE("congruence_witness prefers eps = +1 when both signs work") {
    // source parallel to modulus
    CHECK(congruence_witness({3, 0}, {1, 0}, {1, 0}) == CongruenceWitness{1, 2});
}

TEST_CASE("witness uniqueness for independent source and modulus") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> dist(-5, 5);
    std::uniform_int_distribution<int> coin(0, 1);
    int checked = 0;
    while (checked < 2000) {
        const IntVec s{dist(rng), dist(rng)};
        const IntVec m{dist(rng), dist(rng)};
        if (m.is_zero() || !independent(s, m)) continue;
        const int eps = coin(rng) ? 1 : -1;
        const std::int64_t c = dist(rng);
        const IntVec t = s.scaled(eps) + m.scaled(c);
        const auto all = oracle::all_witnesses(t, s, m, oracle::witness_bound(t, s, m));
        REQUIRE(all.size() == 1);
        const auto w = congruence_witness(t, s, m);
        REQUIRE(w.has_value());
        CHECK(w->epsilon == all[0].first);
        CHECK(w->c == all[0].second);
        ++checked;
    }
}

TEST_CASE("congruence_witness finds a witness whenever one exists") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> dist(-3, 3);
    for (int trial = 0; trial < 4000; ++trial) {
        const IntVec t{dist(rng), dist(rng)};
        const IntVec s{dist(rng), dist(rng)};
        const IntVec m{dist(rng), dist(rng)};
        if (m.is_zero()) continue;
        const auto all = oracle::all_witnesses(t, s, m, oracle::witness_bound(t, s, m));
        const auto w = congruence_witness(t, s, m);
        CHECK(w.has_value() == !all.empty());
        if (w) CHECK(t == s.scaled(w->epsilon) + m.scaled(w->c));
    }
}

TEST_CASE("rank examples") {
    CHECK(rank({IntVec{1, 0, 0, 0}, IntVec{0, 1, 0, 0}}) == 2);
    CHECK(rank({IntVec{1, 0}, IntVec{0, 1}, IntVec{1, 1}}) == 2);
    // the last two rows share the tail (1,2), so the 4x4 determinant vanishes
    const std::vector<IntVec> tail_clash{{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 1, 2}, {2, 3, 1, 2}};
    CHECK(oracle::rank_by_minors(tail_clash) == 3);
    CHECK(rank(tail_clash) == 3);
    CHECK(rank({IntVec{1, 0, 0, 0}, IntVec{0, 1, 0, 0}, IntVec{1, 1, 1, 0}, IntVec{2, 3, 0, 1}}) == 4);
    CHECK(rank({IntVec{0, 0}, IntVec{0, 0}}) == 0);
    CHECK_THROWS_AS(rank({IntVec{1, 0}, IntVec{1, 0, 0}}), DimensionMismatch);
}

TEST_CASE("rank agrees with the determinant oracle") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> dist(-5, 5);
    std::uniform_int_distribution<int> count(1, 4);
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<IntVec> rows;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) {
            // bias toward dependent rows
            if (i > 0 && dist(rng) > 2) rows.push_back(rows[0].scaled(dist(rng)) + rows[i - 1]);
            else rows.push_back(IntVec{dist(rng), dist(rng), dist(rng), dist(rng)});
        }
        REQUIRE(rank(rows) == oracle::rank_by_minors(rows));
    }
}

TEST_CASE("square_linear") {
    CHECK(square_linear(1, 0) == QuadForm{1, 0, 0});
    CHECK(square_linear(2, 3) == QuadForm{4, 12, 9});
    CHECK(square_linear(-1, 1) == QuadForm{1, -2, 1});
    CHECK(square_linear(2, 3).str() == "4x^2 + 12xy + 9y^2");
    CHECK(square_linear(-1, 1).str() == "x^2 - 2xy + y^2");
}

TEST_CASE("QuadForm arithmetic") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> dist(-20, 20);
    for (int trial = 0; trial < 2000; ++trial) {
        const QuadForm p{dist(rng), dist(rng), dist(rng)};
        const QuadForm q{dist(rng), dist(rng), dist(rng)};
        const QuadForm r{dist(rng), dist(rng), dist(rng)};
        CHECK(p + q == q + p);
        CHECK((p + q) + r == p + (q + r));
        CHECK(p - p == QuadForm{});
        const int a = dist(rng), b = dist(rng), x = dist(rng), y = dist(rng);
        CHECK(square_linear(a, b).eval(x, y) == (a * x + b * y) * (a * x + b * y));
    }
}

TEST_CASE("checked arithmetic throws instead of wrapping") {
    constexpr auto big = std::numeric_limits<std::int64_t>::max();
    CHECK_THROWS_AS(checked::mul(big, 2), Overflow);
    CHECK_THROWS_AS(checked::add(big, 1), Overflow);
    CHECK_THROWS_AS(checked::neg(std::numeric_limits<std::int64_t>::min()), Overflow);
    CHECK_THROWS_AS(square_linear(big, 1), Overflow);
    CHECK_THROWS_AS((IntVec{big, 0} + IntVec{1, 0}), Overflow);
    CHECK(checked::mul(-3, 7) == -21);
}

}
