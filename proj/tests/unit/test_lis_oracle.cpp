#include "doctest.h"
#include "dlis/lis_oracle.hpp"
#include "dlis/static_lis.hpp"
#include "gen.hpp"

using namespace dlis;

namespace {
void check_oracle(const std::vector<i64>& a, const std::vector<int>& p, const std::vector<int>& q) {
    i64 big = default_sentinel(a.size());
    PairOracle o(a, p, q, big);
    REQUIRE(o.rows() == p.size());
    REQUIRE(o.cols() == q.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) {
            auto truth = lis_from_to_brute(a, p[i], q[j]);
            if (truth) CHECK(o.entry(i, j) == *truth);
            else CHECK(o.entry(i, j) <= -big);
            if (i + 1 < p.size() && j + 1 < q.size())
                CHECK(o.entry(i, j) + o.entry(i + 1, j + 1) >= o.entry(i + 1, j) + o.entry(i, j + 1));
        }
}
}  // namespace

TEST_CASE("pair oracle small cases") {
    std::vector<i64> dec{5, 4, 3, 2, 1};
    PairOracle all(dec, {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, default_sentinel(5));
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(all.entry(i, j) <= -default_sentinel(5));

    PairOracle small({2, 1, 3}, {0, 1}, {2}, default_sentinel(3));
    CHECK(small.entry(0, 0) == 2);
    CHECK(small.entry(1, 0) == 2);

    std::vector<i64> sample{1, 5, 2, 4, 6, 7, 9, 10, 8};
    PairOracle one(sample, {1}, {7}, default_sentinel(9));
    CHECK(one.entry(0, 0) == *lis_from_to_brute(sample, 1, 7));
    check_oracle(sample, {1, 2}, {7, 8});

    CHECK_THROWS_AS(PairOracle(sample, {0, 1}, {7}, default_sentinel(9)), Error);
    CHECK_THROWS_AS(one.entry(1, 0), Error);
}

TEST_CASE("pair oracle matches brute force with repeated values") {
    Rng rng(31);
    for (int t = 0; t < 150; ++t) {
        std::size_t n = rng.below(50);
        std::vector<i64> a(n);
        for (auto& x : a) x = rng.range(0, static_cast<i64>(n / 2 + 1));
        // non-increasing subsequences; the generator takes strict steps, which is a special case
        auto p = testutil::random_decreasing(rng, a, t % 2 == 0);
        auto q = testutil::random_decreasing(rng, a, t % 3 == 0);
        check_oracle(a, p, q);
    }
}

TEST_CASE("pair oracle anti-Monge on permutations") {
    Rng rng(32);
    for (int t = 0; t < 60; ++t) {
        auto a = testutil::random_perm(rng, rng.below(61), 3);
        check_oracle(a, testutil::random_decreasing(rng, a, true), testutil::random_decreasing(rng, a, true));
    }
}

TEST_CASE("semi-local substring LIS") {
    SemiLocal s({7, 2, 4, 1, 9, 6, 3, 5, 8});
    CHECK(s.query(0, 8) == 4);
    for (std::size_t i = 0; i < 9; ++i) CHECK(s.query(i, i) == 1);
    CHECK_THROWS_AS(s.query(3, 2), Error);

    Rng rng(33);
    for (int t = 0; t < 10; ++t) {
        auto a = testutil::random_perm(rng, 1 + rng.below(60));
        SemiLocal o(a);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i; j < a.size(); ++j)
                CHECK(o.query(i, j) == patience_lis(std::vector<i64>(a.begin() + i, a.begin() + j + 1)));
    }
}

TEST_CASE("boundary matrix") {
    // one boundary element below-left of one basket element
    std::vector<i64> vals{1, 2};
    auto m = boundary_matrix(vals, {0}, {1}, default_sentinel(2));
    CHECK(m.entry(0, 0) == 2);
    auto none = boundary_matrix({5, 2}, {0}, {1}, default_sentinel(2));
    CHECK(none.entry(0, 0) <= -default_sentinel(2));

    Rng rng(34);
    for (int t = 0; t < 80; ++t) {
        auto v = testutil::random_perm(rng, 2 + rng.below(40));
        auto prev = testutil::random_decreasing(rng, v, false);
        auto cur = testutil::random_decreasing(rng, v, false);
        auto o = boundary_matrix(v, prev, cur, default_sentinel(v.size()));
        for (std::size_t i = 0; i < prev.size(); ++i)
            for (std::size_t j = 0; j < cur.size(); ++j) {
                auto truth = lis_from_to_brute(v, prev[i], cur[j]);
                if (truth) CHECK(o.entry(i, j) == *truth);
                else CHECK(o.entry(i, j) <= -default_sentinel(v.size()));
            }
    }
}
