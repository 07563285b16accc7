#include "doctest.h"
#include "dlis/sag.hpp"
#include "gen.hpp"

using namespace dlis;

TEST_CASE("extend_antichain") {
    CHECK(extend_antichain({}, 1, 1) == CutPath{{0, 1}, {0, 0}, {1, 0}});
    auto p = extend_antichain({{1, 1}}, 2, 2);
    CHECK(is_cut_path(p, 2, 2));
    CHECK(std::find(p.begin(), p.end(), GridPoint{1, 1}) != p.end());
    CHECK(extend_antichain(p, 2, 2) == p);
    CHECK_THROWS_AS(extend_antichain({{0, 0}, {1, 1}}, 2, 2), Error);

    Rng rng(21);
    for (int t = 0; t < 200; ++t) {
        int n = static_cast<int>(rng.below(8)), m = static_cast<int>(rng.below(8));
        auto path = testutil::random_path(rng, n, m);
        CHECK(extend_antichain(path, n, m) == path);
        std::vector<GridPoint> sub;
        for (auto& q : path)
            if (rng.below(3) == 0) sub.push_back(q);
        std::vector<GridPoint> chain;  // drop comparable neighbours to keep an antichain
        for (auto& q : sub)
            if (chain.empty() || !dominated_eq(q, chain.back()) && !dominated_eq(chain.back(), q)) chain.push_back(q);
        auto e = extend_antichain(chain, n, m);
        CHECK(is_cut_path(e, n, m));
        for (auto& q : chain) CHECK(std::find(e.begin(), e.end(), q) != e.end());
    }
}

TEST_CASE("seaweed base cases") {
    SliceSpec empty{0, 0, {{0, 0}}, {{0, 0}}, {}};
    CHECK(build_seaweed(empty).sigma.empty());
    DistOracle o0(empty);
    CHECK(o0.dist(0, 0) == 0);

    SliceSpec one{1, 1, lower_boundary(1, 1), upper_boundary(1, 1), {{0, 0}}};
    CHECK(build_seaweed(one) == Perm::identity(2));
    DistOracle o1(one);
    DenseMatrix expect(3, 3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            expect(a, b) = std::abs(a - b);
            CHECK(o1.dist(a, b) == std::abs(a - b));
        }
    CHECK(distance_matrix_brute(one) == expect);
}

TEST_CASE("closed-form distances") {
    CHECK(dist_bruteforce_full(1, 1, {{0, 0}}, {0, 0}, {1, 1}) == 0);
    Rng rng(22);
    for (int t = 0; t < 100; ++t) {
        int n = 1 + static_cast<int>(rng.below(8)), m = 1 + static_cast<int>(rng.below(8));
        std::vector<GridPoint> seeds;
        for (int k = 0; k < 6; ++k) seeds.push_back({static_cast<int>(rng.below(n)), static_cast<int>(rng.below(m))});
        GridPoint p{static_cast<int>(rng.below(n + 1)), static_cast<int>(rng.below(m + 1))};
        GridPoint q{static_cast<int>(rng.range(p.x, n)), static_cast<int>(rng.range(0, p.y))};
        CHECK(dist_bruteforce_full(n, m, seeds, p, q) == (q.x - p.x) + (p.y - q.y));
        GridPoint r{static_cast<int>(rng.range(p.x, n)), static_cast<int>(rng.range(p.y, m))};
        CHECK(dist_bruteforce_full(n, m, {}, p, r) == (r.x - p.x) + (r.y - p.y));
    }
}

TEST_CASE("seaweed distances match 0/1 shortest paths and are Monge") {
    Rng rng(23);
    for (int t = 0; t < 300; ++t) {
        auto spec = testutil::random_slice(rng, 10, 16);
        auto perm = build_seaweed(spec);
        CHECK(is_permutation(perm.sigma));
        DistOracle o(spec);
        auto brute = distance_matrix_brute(spec);
        int k = spec.n + spec.m + 1;
        DenseMatrix d(k, k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) d(a, b) = o.dist(a, b);
        CHECK(d == brute);
        for (int a = 0; a + 1 < k; ++a)
            for (int b = 0; b + 1 < k; ++b) CHECK(d(a, b) + d(a + 1, b + 1) <= d(a + 1, b) + d(a, b + 1));
        for (int b = 0; b < k; ++b) CHECK(d(0, b) == b);
        for (int a = 0; a < k; ++a) CHECK(d(a, 0) == a);
    }
}

TEST_CASE("slice distances agree with the full grid") {
    Rng rng(24);
    for (int t = 0; t < 100; ++t) {
        auto spec = testutil::random_slice(rng, 8, 10);
        int k = spec.n + spec.m + 1;
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                GridPoint p = spec.lo[a], q = spec.hi[b];
                if (p.x <= q.x && p.y <= q.y)
                    CHECK(dist_bruteforce(spec, p, q) == dist_bruteforce_full(spec.n, spec.m, spec.seeds, p, q));
            }
    }
}

TEST_CASE("contraction round trip") {
    Rng rng(25);
    for (int t = 0; t < 200; ++t) {
        auto spec = testutil::random_slice(rng, 10, 8);
        std::vector<char> in_x(spec.n, 0), in_y(spec.m, 0);
        for (auto& s : spec.seeds) in_x[s.x] = in_y[s.y] = 1;
        for (auto& c : in_x) c |= rng.below(4) == 0;
        for (auto& c : in_y) c |= rng.below(4) == 0;
        auto inner = build_seaweed(contract_spec(spec, in_x, in_y));
        CHECK(expand_contracted(spec.lo, spec.hi, spec.n, spec.m, in_x, in_y, inner) == build_seaweed(spec));
    }
    SliceSpec spec{3, 2, lower_boundary(3, 2), upper_boundary(3, 2), {}};
    std::vector<char> all_x(3, 1), all_y(2, 1);
    auto p = build_seaweed(spec);
    CHECK(expand_contracted(spec.lo, spec.hi, 3, 2, all_x, all_y, p) == p);
}

TEST_CASE("build_seaweed rejects crossing cut-paths") {
    SliceSpec bad{2, 2, upper_boundary(2, 2), lower_boundary(2, 2), {}};
    CHECK_THROWS_AS(build_seaweed(bad), Error);
}
