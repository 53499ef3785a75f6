#include <doctest.h>

#include <random>

#include "permoment/aggregate.hpp"
#include "permoment/closedform.hpp"

using namespace permoment;

TEST_CASE("block structure") {
    auto bs = block_structure(parse_pattern("[135]2[46]"));
    CHECK(bs.block_sizes == std::vector<int>{3, 1, 2});
    CHECK(bs.block_count() == 3);
    CHECK(bs.max_block() == 3);
    CHECK(block_structure(parse_pattern("132")).block_sizes ==
          std::vector<int>{1, 1, 1});
    CHECK_THROWS_AS(block_structure(parse_pattern("[21];D=1")), DomainError);
}

TEST_CASE("expected count") {
    CHECK(expected_count(parse_pattern("21"), 3) == make_rational(3, 2));
    CHECK(expected_count(parse_pattern("[21];D=1"), 3) == make_rational(2, 3));
    for (int n = 2; n <= 9; ++n) {
        CHECK(expected_count(parse_pattern("[21]"), n) == make_rational(n - 1, 2));
    }
    CHECK(expected_count(parse_pattern("1234"), 3) == Rational(0));
}

TEST_CASE("expected count times n! equals the fast aggregate") {
    std::vector<Pattern> pats;
    for (const char* t : {"1", "21", "132", "1234", "2[31]4", "3[12];D=2",
                          "[4321];D=1,3", "[12]34"}) {
        pats.push_back(parse_pattern(t));
    }
    for (const auto& pat : pats) {
        for (long n = 1; n <= 10; ++n) {
            CHECK(expected_count(pat, n) * Rational(factorial(n)) ==
                  aggregate_fast(count_statistic(pat), n).value);
        }
    }
}

TEST_CASE("euler moments") {
    CHECK(euler_moment(1, 3) == Rational(1));
    CHECK(euler_moment(2, 3) == make_rational(4, 3));
    CHECK(euler_moment(2, 1) == Rational(0));
    auto des = preset_statistic("descents");
    for (int r = 1; r <= 3; ++r) {
        for (int n = 1; n <= 7; ++n) {
            CHECK(euler_moment(r, n) ==
                  aggregate_brute(des, n, r).value / Rational(factorial(n)));
        }
    }
    // higher orders drive the composition sums through many-part splits
    for (int r = 4; r <= 5; ++r) {
        for (int n = 4; n <= 6; ++n) {
            CHECK(euler_moment(r, n) ==
                  aggregate_brute(des, n, r).value / Rational(factorial(n)));
        }
    }
}

TEST_CASE("adjacency moments") {
    CHECK(adjacency_moment(1, 3) == make_rational(2, 3));
    CHECK(adjacency_moment(2, 3) == Rational(1));
    CHECK(adjacency_moment(1, 1) == Rational(0));
    auto adj = preset_statistic("adjacency");
    for (int r = 1; r <= 3; ++r) {
        for (int n = 1; n <= 7; ++n) {
            CHECK(adjacency_moment(r, n) ==
                  aggregate_brute(adj, n, r).value / Rational(factorial(n)));
        }
    }
    // closed evaluation stays exact at large n
    CHECK(adjacency_moment(1, 10000) == make_rational(9999, 10000));
}

TEST_CASE("linearity closed forms") {
    // the worked value: pattern (21,{1}), Q1 = 3 y1 + y2, n = 3
    Pattern p21v = parse_pattern("[21]");
    std::vector<Rational> a{Rational(0), Rational(3), Rational(1)};
    std::vector<Rational> one{Rational(1), Rational(0), Rational(0)};
    CHECK(linearity_aggregate(1, p21v, a, one, 3) == Rational(40));

    // constant valuation reduces to the expected-count identity
    for (const char* text : {"[21]", "2[31]4", "132"}) {
        Pattern pat = parse_pattern(text);
        std::vector<Rational> ca(pat.length() + 1, Rational(0));
        std::vector<Rational> cb(pat.length() + 1, Rational(0));
        ca[0] = Rational(1);
        cb[0] = Rational(1);
        for (long n = 1; n <= 7; ++n) {
            CHECK(linearity_aggregate(1, pat, ca, cb, n) ==
                  expected_count(pat, n) * Rational(factorial(n)));
        }
    }

    // preconditions
    CHECK_THROWS_AS(linearity_aggregate(1, parse_pattern("[21];D=1"), a, one, 3),
                    DomainError);
    CHECK_THROWS_AS(linearity_aggregate(3, p21v, a, one, 3), DomainError);
    CHECK_THROWS_AS(linearity_aggregate(0, p21v, a, one, 3), DomainError);
    std::vector<Rational> b{Rational(1), Rational(1), Rational(0)};
    CHECK_THROWS_AS(linearity_aggregate(1, p21v, a, b, 3), DomainError);
}

TEST_CASE("linearity matches brute force on random admissible instances") {
    std::mt19937 rng(303);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> klen(1, 3);
    int checked = 0;
    while (checked < 30) {
        int formula_case = 1 + (int)(rng() % 3);
        int k = klen(rng);
        auto perm = unrank_permutation(
            k, std::uniform_int_distribution<std::uint64_t>(0, factorial_u64(k) - 1)(rng));
        std::vector<int> c;
        if (formula_case == 1) {
            for (int i = 1; i < k; ++i) {
                if (rng() % 2) {
                    c.push_back(i);
                }
            }
        }
        Pattern pat(Permutation(perm.one_line()), c, {});
        std::vector<Rational> a(k + 1, Rational(0)), b(k + 1, Rational(0));
        a[0] = Rational(1);
        b[0] = Rational(1);
        if (formula_case != 2) {
            for (int i = 0; i <= k; ++i) {
                a[i] = Rational(coef(rng));
            }
        }
        if (formula_case != 1) {
            for (int i = 0; i <= k; ++i) {
                b[i] = Rational(coef(rng));
            }
        }
        // assemble the same statistic explicitly and sum exhaustively
        ValuationPoly q1 = ValuationPoly::constant(k, a[0]);
        ValuationPoly q2 = ValuationPoly::constant(k, b[0]);
        for (int i = 1; i <= k; ++i) {
            q1 = q1 + ValuationPoly::variable(k, i).scaled(a[i]);
            q2 = q2 + ValuationPoly::variable(k, i).scaled(b[i]);
        }
        auto stat = Statistic::simple({pat, q1, q2});
        for (int n = 1; n <= 6; ++n) {
            CHECK(linearity_aggregate(formula_case, pat, a, b, n) ==
                  aggregate_brute(stat, n, 1).value);
        }
        ++checked;
    }
}
