#include <doctest.h>

#include <random>
#include <set>

#include "permoment/perm.hpp"

using namespace permoment;

TEST_CASE("reduce") {
    CHECK(reduce({5, 2, 3}) == Permutation({3, 1, 2}));
    CHECK(reduce({1, 2, 3}) == Permutation({1, 2, 3}));
    CHECK(reduce({7}) == Permutation({1}));
    CHECK_THROWS_AS(reduce({2, 2}), DomainError);
}

TEST_CASE("reduce is idempotent and order-preserving") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> len(1, 12);
    std::uniform_int_distribution<int> val(-500, 500);
    for (int trial = 0; trial < 200; ++trial) {
        int n = len(rng);
        std::set<int> seen;
        std::vector<int> q;
        while ((int)q.size() < n) {
            int v = val(rng);
            if (seen.insert(v).second) {
                q.push_back(v);
            }
        }
        Permutation r = reduce(q);
        CHECK(reduce(r.one_line()) == r);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                CHECK((q[i] < q[j]) == (r.one_line()[i] < r.one_line()[j]));
            }
        }
    }
}

TEST_CASE("inverse") {
    Permutation p({3, 1, 2});
    auto inv = p.inverse();
    CHECK(inv.position_of(1) == 2);
    CHECK(inv.position_of(2) == 3);
    CHECK(inv.position_of(3) == 1);
    CHECK(Permutation::identity(4).inverse().positions() ==
          std::vector<int>{1, 2, 3, 4});
    Permutation swap21({2, 1});
    CHECK(swap21.inverse().positions() == std::vector<int>{2, 1});
}

TEST_CASE("permutation text form") {
    CHECK(Permutation({3, 1, 5, 2, 4}).to_text() == "31524");
    CHECK(Permutation::from_text("31524") == Permutation({3, 1, 5, 2, 4}));
    Permutation big({10, 3, 1, 2, 4, 5, 6, 7, 8, 9});
    CHECK(big.to_text() == "10,3,1,2,4,5,6,7,8,9");
    CHECK(Permutation::from_text(big.to_text()) == big);
    CHECK_THROWS_AS(Permutation::from_text("120"), ParseError);
    CHECK_THROWS_AS(Permutation::from_text("11"), ParseError);
}

TEST_CASE("rank and unrank are lexicographic inverses") {
    CHECK(unrank_permutation(3, 0) == Permutation({1, 2, 3}));
    CHECK(unrank_permutation(3, 5) == Permutation({3, 2, 1}));
    for (std::uint64_t i = 0; i < factorial_u64(4); ++i) {
        auto p = unrank_permutation(4, i);
        CHECK(rank_permutation(p) == i);
    }
    CHECK_THROWS_AS(unrank_permutation(3, 6), DomainError);
}

TEST_CASE("enumeration covers S_n in order") {
    std::vector<Permutation> all;
    enumerate_sn(3, [&](const Permutation& p) { all.push_back(p); });
    REQUIRE(all.size() == 6);
    CHECK(all.front() == Permutation({1, 2, 3}));
    CHECK(all.back() == Permutation({3, 2, 1}));
    for (size_t i = 1; i < all.size(); ++i) {
        CHECK(all[i - 1] < all[i]);
    }
}

TEST_CASE("S_0 has the empty permutation") {
    int visits = 0;
    enumerate_sn(0, [&](const Permutation& p) {
        ++visits;
        CHECK(p.size() == 0);
    });
    CHECK(visits == 1);
}

TEST_CASE("chunked enumeration partitions S_n") {
    for (int n = 1; n <= 6; ++n) {
        std::uint64_t total = factorial_u64(n);
        for (int chunks : {1, 2, 3, 7}) {
            std::set<std::vector<int>> seen;
            std::uint64_t count = 0;
            for (int c = 0; c < chunks; ++c) {
                std::uint64_t b = total * (std::uint64_t)c / chunks;
                std::uint64_t e = total * (std::uint64_t)(c + 1) / chunks;
                enumerate_sn(n, b, e, [&](const Permutation& p) {
                    ++count;
                    seen.insert(p.one_line());
                });
            }
            CHECK(count == total);
            CHECK(seen.size() == total);
        }
    }
}

TEST_CASE("chunks of size six cover S_4") {
    std::uint64_t covered = 0;
    for (int c = 0; c < 4; ++c) {
        enumerate_sn(4, 6 * c, 6 * (c + 1), [&](const Permutation&) { ++covered; });
    }
    CHECK(covered == 24);
}

TEST_CASE("enumeration cap") {
    CHECK_THROWS_AS(enumerate_sn(12, [](const Permutation&) {}), CapExceededError);
    CHECK_THROWS_AS(enumerate_sn(4, [](const Permutation&) {}, 3), CapExceededError);
}
