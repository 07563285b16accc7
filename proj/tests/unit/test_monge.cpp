#include "doctest.h"
#include "dlis/monge.hpp"
#include "gen.hpp"

using namespace dlis;

namespace {
DenseMatrix mat(std::vector<std::vector<i64>> rows) {
    DenseMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    return m;
}
}  // namespace

TEST_CASE("distribution and density") {
    auto id2 = to_dense(Perm::identity(2));
    CHECK(distribution(id2) == mat({{0, 1, 2}, {0, 0, 1}, {0, 0, 0}}));
    CHECK(distribution(DenseMatrix(2, 3)) == DenseMatrix(3, 4));
    CHECK(density(distribution(id2)) == id2);

    auto d = density(mat({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
    for (auto& x : d.a) {
        CHECK(x % 2 == 0);
        x /= 2;
    }
    CHECK(d == id2);
    CHECK(density(DenseMatrix(3, 3, 7)) == DenseMatrix(2, 2));
    CHECK(density(DenseMatrix()).a.empty());

    Rng rng(4);
    for (int t = 0; t < 50; ++t) {
        DenseMatrix a(1 + rng.below(5), 1 + rng.below(5));
        for (auto& x : a.a) x = rng.range(-9, 9);
        CHECK(density(distribution(a)) == a);
    }
}

TEST_CASE("minplus_dense") {
    CHECK(minplus_dense(mat({{5}}), mat({{7}})) == mat({{12}}));
    auto a = mat({{3, 1, 4}, {1, 5, 9}});
    CHECK(minplus_dense(a, DenseMatrix(3, 3)) == mat({{1, 1, 1}, {1, 1, 1}}));
    CHECK_THROWS_AS(minplus_dense(a, DenseMatrix(2, 2)), Error);

    Rng rng(8);
    for (int t = 0; t < 30; ++t) {
        DenseMatrix x(3, 3), y(3, 3);
        for (auto& v : x.a) v = rng.range(-20, 20);
        for (auto& v : y.a) v = rng.range(-20, 20);
        auto z = minplus_dense(x, y);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                i64 best = x(i, 0) + y(0, j);
                for (int k = 1; k < 3; ++k) best = std::min(best, x(i, k) + y(k, j));
                CHECK(z(i, j) == best);
            }
    }
}

TEST_CASE("permutation helpers") {
    CHECK(is_permutation({2, 0, 1}));
    CHECK_FALSE(is_permutation({0, 0}));
    CHECK_FALSE(is_permutation({0, 2}));
    Perm p{{2, 0, 1}};
    CHECK(from_dense(to_dense(p)) == p);
    CHECK_THROWS_AS(from_dense(DenseMatrix(2, 2)), Error);
}

TEST_CASE("seaweed product agrees with the dense pipeline") {
    CHECK(seaweed_product(Perm::identity(5), Perm::identity(5)) == Perm::identity(5));
    Perm rev{{1, 0}};
    CHECK(seaweed_product(rev, rev) == seaweed_product_dense(rev, rev));
    CHECK_THROWS_AS(seaweed_product(Perm::identity(2), Perm::identity(3)), Error);

    Rng rng(11);
    for (int n = 0; n <= 40; ++n)
        for (int t = 0; t < 10; ++t) {
            auto a = testutil::random_sigma(rng, n), b = testutil::random_sigma(rng, n);
            auto c = seaweed_product(a, b);
            CHECK(is_permutation(c.sigma));
            CHECK(c == seaweed_product_dense(a, b));
        }
    for (int t = 0; t < 5; ++t) {
        auto a = testutil::random_sigma(rng, 128), b = testutil::random_sigma(rng, 128);
        CHECK(seaweed_product(a, b) == seaweed_product_dense(a, b));
    }
}

TEST_CASE("seaweed product is associative with identity as unit") {
    Rng rng(12);
    for (int t = 0; t < 20; ++t) {
        int n = 1 + static_cast<int>(rng.below(64));
        auto a = testutil::random_sigma(rng, n), b = testutil::random_sigma(rng, n), c = testutil::random_sigma(rng, n);
        CHECK(seaweed_product(seaweed_product(a, b), c) == seaweed_product(a, seaweed_product(b, c)));
        CHECK(seaweed_product(a, Perm::identity(n)) == a);
        CHECK(seaweed_product(Perm::identity(n), a) == a);
    }
}

TEST_CASE("sigma oracle counts dominated ones") {
    SigmaOracle id(Perm::identity(2));
    CHECK(id.query(0, 2) == 2);
    Rng rng(13);
    for (int n : {0, 1, 2, 7, 64, 65, 200}) {
        auto p = testutil::random_sigma(rng, n);
        SigmaOracle o(p);
        auto d = distribution(to_dense(p));
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) CHECK(o.query(i, j) == d(i, j));
        CHECK_THROWS_AS(o.query(n + 1, 0), Error);
    }
}

TEST_CASE("smawk_maxplus") {
    ImplicitAntiMonge constant{4, 6, [](std::size_t, std::size_t) { return i64(3); }};
    auto out = smawk_maxplus(constant, {1, 8, -2, 5});
    CHECK(out == std::vector<i64>(6, 11));

    ImplicitAntiMonge row{1, 5, [](std::size_t, std::size_t k) { return static_cast<i64>(k * k); }};
    CHECK(smawk_maxplus(row, {10}) == std::vector<i64>{10, 11, 14, 19, 26});
    CHECK_THROWS_AS(smawk_maxplus(row, {1, 2}), Error);

    Rng rng(14);
    for (int t = 0; t < 40; ++t) {
        std::size_t r = 1 + rng.below(200), c = 1 + rng.below(200);
        // prefix sums of a non-negative density, plus row and column offsets
        DenseMatrix anti(r, c);
        std::vector<i64> row_off(r), col_off(c);
        for (auto& x : row_off) x = rng.range(-30, 30);
        for (auto& x : col_off) x = rng.range(-30, 30);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                i64 x = static_cast<i64>(rng.below(4));
                if (i > 0) x += anti(i - 1, j);
                if (j > 0) x += anti(i, j - 1);
                if (i > 0 && j > 0) x -= anti(i - 1, j - 1);
                anti(i, j) = x;
            }
        ImplicitAntiMonge m{r, c, [&](std::size_t i, std::size_t j) { return anti(i, j) + row_off[i] + col_off[j]; }};
        std::vector<i64> v(r);
        for (auto& x : v) x = rng.range(-50, 50);
        u64 probes = 0;
        CHECK(smawk_maxplus(m, v, &probes) == maxplus_brute(m, v));
        CHECK(probes <= 8 * (r + c) + 16);
    }
}
