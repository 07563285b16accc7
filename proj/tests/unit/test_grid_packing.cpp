#include "doctest.h"
#include "dlis/dyn_approx.hpp"
#include "dlis/grid_packing.hpp"
#include "dlis/static_lis.hpp"
#include "gen.hpp"

using namespace dlis;

namespace {
bool precedes_by_cells(const Segment& a, const Segment& b) {
    for (Cell x : a.cells())
        for (Cell y : b.cells())
            if (!(x.row > y.row && x.col > y.col)) return false;
    return true;
}

// Brute force: best weight over pairwise non-conflicting subsets of all multisegments.
i64 clique_brute(const Table& t, const std::vector<Multisegment>& ms) {
    i64 best = 0;
    std::vector<std::size_t> chosen;
    auto rec = [&](auto&& self, std::size_t from, i64 score) -> void {
        best = std::max(best, score);
        for (std::size_t j = from; j < ms.size(); ++j) {
            bool ok = true;
            for (std::size_t c : chosen) ok = ok && !conflicting(ms[c], ms[j]);
            if (!ok) continue;
            chosen.push_back(j);
            self(self, j + 1, score + multisegment_score(t, ms[j]));
            chosen.pop_back();
        }
    };
    rec(rec, 0, 0);
    return best;
}

std::vector<Point> perm_points(Rng& rng, std::size_t n) {
    auto v = testutil::random_perm(rng, n, 2);
    std::vector<Point> pts;
    for (std::size_t k = 0; k < n; ++k) pts.push_back({static_cast<i64>(2 * k), v[k]});
    return pts;
}

Rect random_rect(Rng& rng, i64 xs, i64 ys) {
    i64 a = rng.range(-1, xs), b = rng.range(-1, xs), c = rng.range(-1, ys), d = rng.range(-1, ys);
    return {std::min(a, b), std::max(a, b) + 1, std::min(c, d), std::max(c, d) + 1};
}
}  // namespace

TEST_CASE("table scores") {
    CHECK(table_score(Table::zeros(5)) == 0);
    Table one = Table::zeros(1);
    one.at(0, 0) = 7;
    CHECK(table_score(one) == 7);
    CHECK(best_nonconflicting(one, 1) == 7);

    auto st = staircase_table(8);
    CHECK(table_score(st) == 15);
    CHECK(best_nonconflicting(st, 1) == 10);
    CHECK(best_nonconflicting(st, 20) == 15);
    CHECK_THROWS_AS(best_nonconflicting(Table::zeros(65), 2), Error);
}

TEST_CASE("conflict relation matches cell dominance") {
    auto ms = all_multisegments(3, 2);
    for (const auto& a : ms) {
        CHECK(a.chained());
        for (const auto& b : ms) {
            bool brute = false;
            for (const auto& x : a.segs)
                for (const auto& y : b.segs) {
                    CHECK(precedes(x, y) == precedes_by_cells(x, y));
                    brute = brute || (!precedes_by_cells(x, y) && !precedes_by_cells(y, x));
                }
            CHECK(conflicting(a, b) == brute);
        }
    }
}

TEST_CASE("chain optimum equals brute-force clique search") {
    Rng rng(51);
    for (int delta = 1; delta <= 3; ++delta) {
        auto ms = all_multisegments(3, delta);
        for (int t = 0; t < 60; ++t) {
            Table tab = Table::zeros(3);
            for (auto& c : tab.cells) c = static_cast<i64>(rng.below(5));
            CHECK(best_nonconflicting(tab, delta) == clique_brute(tab, ms));
        }
    }
}

TEST_CASE("multisegment packing keeps a (delta-1)/delta share on path tables") {
    // every subset of cells of every monotone path in a 4 x 4 table
    const int m = 4;
    int tables = 0;
    for (int mask = 0; mask < (1 << (2 * m - 2)); ++mask) {
        if (__builtin_popcount(mask) != m - 1) continue;
        std::vector<Cell> path{{0, 0}};
        for (int k = 0; k < 2 * m - 2; ++k) {
            Cell c = path.back();
            path.push_back(mask >> k & 1 ? Cell{c.row + 1, c.col} : Cell{c.row, c.col + 1});
        }
        for (int sub = 0; sub < (1 << path.size()); ++sub) {
            Table t = Table::zeros(m);
            for (std::size_t k = 0; k < path.size(); ++k)
                if (sub >> k & 1) t.at(path[k].row, path[k].col) = 1;
            for (int delta = 1; delta <= 3; ++delta)
                CHECK(best_nonconflicting(t, delta) * delta >= (delta - 1) * table_score(t));
            ++tables;
        }
    }
    CHECK(tables == 20 * 128);
}

TEST_CASE("ladder covers every value within its ratio") {
    for (double eps : {0.01, 0.1, 0.5}) {
        ValueLadder ladder(eps, 5000);
        const auto& lv = ladder.levels();
        CHECK(lv.front() == 1);
        CHECK(lv.back() >= 5000);
        for (std::size_t k = 1; k < lv.size(); ++k) CHECK(lv[k] > lv[k - 1]);
        CHECK(ladder.floor(0) == 0);
        for (i64 x = 1; x <= 5000; ++x) {
            i64 f = ladder.floor(x);
            CHECK(f <= x);
            CHECK(static_cast<double>(f) * (1 + eps) >= static_cast<double>(x));
        }
    }
}

TEST_CASE("level configuration") {
    QueryLisParams p;
    p.eps = 0.2;
    p.kappa = 0.5;
    auto cfg = resolve_level(p);
    CHECK(cfg.depth == 8);
    CHECK(cfg.eps_level == doctest::Approx(0.2 / 16));
    CHECK(cfg.delta == 80);
    p.max_delta = 4;
    CHECK(resolve_level(p).delta == 4);
    // preprocessing exponent starts at 5; each level picks r = q / (q + 3), then q becomes r + q (1 - r)
    double q = 5;
    for (int k = 1; k <= 6; ++k) {
        double r = q / (q + 3);
        CHECK(side_exponent(k) == doctest::Approx(r));
        q = r + q * (1 - r);
    }
    CHECK(side_exponent(1) == doctest::Approx(0.625));
    p.eps = 1.5;
    CHECK_THROWS_AS(resolve_level(p), Error);
}

TEST_CASE("small point sets are answered exactly") {
    std::vector<i64> a{7, 2, 4, 1, 9, 6, 3, 5, 8};
    std::vector<Point> pts;
    for (std::size_t k = 0; k < a.size(); ++k) pts.push_back({static_cast<i64>(k), a[k]});
    QueryLisIndex idx(pts, QueryLisParams{});
    CHECK(idx.is_leaf());
    CHECK(idx.query({-1, 10, 0, 10}) == 4);
    CHECK(idx.query({3, 3, 0, 10}) == 0);
    CHECK(QueryLisIndex({}, QueryLisParams{}).query({0, 5, 0, 5}) == 0);
}

TEST_CASE("grid index stays within its guarantee and never overestimates") {
    Rng rng(52);
    for (int depth : {1, 2}) {
        QueryLisParams p;
        p.eps = 0.2;
        p.depth = depth;
        p.leaf = 32;
        auto pts = perm_points(rng, 600);
        QueryLisIndex idx(pts, p);
        REQUIRE_FALSE(idx.is_leaf());
        int m = idx.side();
        double lam = (1 - idx.eps_level()) * (idx.delta() - 1.0) / idx.delta();
        for (int r0 = 0; r0 < m; ++r0)
            for (int c0 = 0; c0 < m; ++c0)
                for (int r1 = r0; r1 < m; ++r1)
                    for (int c1 = c0; c1 < m; ++c1) {
                        Rect box{idx.col_edges()[c0], idx.col_edges()[c1 + 1], idx.row_edges()[r0], idx.row_edges()[r1 + 1]};
                        i64 truth = lis_rect_brute(pts, box), got = idx.table({r0, c0}, {r1, c1});
                        CHECK(got <= truth);
                        CHECK(static_cast<double>(got) >= lam * static_cast<double>(truth) - 1e-9);
                        if (c1 > c0) CHECK(got >= idx.table({r0, c0}, {r1, c1 - 1}));
                        if (r1 > r0) CHECK(got >= idx.table({r0, c0}, {r1 - 1, c1}));
                    }
        for (int q = 0; q < 100; ++q) {
            Rect r = random_rect(rng, 1200, 1200);
            i64 truth = lis_rect_brute(pts, r), got = idx.query(r);
            CHECK(got <= truth);
            CHECK(static_cast<double>(got) >= (1 - p.eps) * static_cast<double>(truth) - 1e-9);
        }
    }
}

TEST_CASE("all points in one row strip") {
    std::vector<Point> pts;
    for (int k = 0; k < 300; ++k) pts.push_back({k, (k * 37) % 300});
    QueryLisParams p;
    p.depth = 1;
    p.leaf = 16;
    p.side = 4;
    QueryLisIndex idx(pts, p);
    // a single-row query is handed to the exact row child
    for (int r = 0; r < idx.side(); ++r) {
        Rect box{-1, 301, idx.row_edges()[r], idx.row_edges()[r + 1]};
        CHECK(idx.query(box) == lis_rect_brute(pts, box));
    }
}

TEST_CASE("static index updates touch two children") {
    Rng rng(53);
    auto pts = perm_points(rng, 500);
    QueryLisParams p;
    p.depth = 1;
    p.leaf = 16;
    QueryLisIndex idx(pts, p);
    idx.insert({301, 777});
    pts.push_back({301, 777});
    CHECK(idx.last_rebuilt_children() == 2);
    idx.erase(pts[10]);
    CHECK(idx.last_rebuilt_children() == 2);
    pts.erase(pts.begin() + 10);
    CHECK(idx.size() == pts.size());
    Rect all{-10, 2000, -10, 2000};
    i64 truth = lis_rect_brute(pts, all);
    CHECK(idx.query(all) <= truth);
    CHECK(static_cast<double>(idx.query(all)) >= (1 - p.eps) * static_cast<double>(truth));
}

TEST_CASE("dynamic index without edits agrees with a static build") {
    Rng rng(54);
    auto init = testutil::random_perm(rng, 400, 3);
    auto p = dyn_default_params();
    DynApproxIndex dyn(init, p);
    auto* blk = dynamic_cast<const DynApproxBlock*>(dyn.scheduler().active());
    REQUIRE(blk != nullptr);
    const auto& idx = blk->index();

    i64 gap = (i64(1) << 60) / static_cast<i64>(init.size() + 1);
    std::vector<Point> pts;
    for (std::size_t k = 0; k < init.size(); ++k) pts.push_back({static_cast<i64>(k + 1) * gap, init[k]});
    QueryLisParams q = p;
    q.side = idx.side();
    QueryLisIndex fresh(pts, resolve_level(q), std::make_shared<ValueLadder>(idx.ladder()));
    for (int t = 0; t < 60; ++t) {
        std::size_t a = 1 + rng.below(init.size()), b = 1 + rng.below(init.size());
        if (a > b) std::swap(a, b);
        i64 y0 = rng.range(0, 1200), y1 = rng.range(y0, 1200);
        CHECK(dyn.query(a, b, y0, y1) == fresh.query({pts[a - 1].x, pts[b - 1].x + 1, y0, y1}));
    }
    CHECK(dyn.lis() == fresh.query({0, i64(1) << 60, -1, 2000}));
}

TEST_CASE("dynamic index under edits") {
    Rng rng(55);
    for (int t = 0; t < 3; ++t) {
        auto init = testutil::random_perm(rng, 150 + rng.below(200), 3);
        std::vector<i64> ref = init;
        std::set<i64> used(init.begin(), init.end());
        DynApproxIndex dyn(init, dyn_default_params());
        for (std::size_t k = 0; k < ref.size(); ++k) {
            auto op = testutil::random_edit(rng, ref, used, 100000);
            apply_to_vector(ref, op);
            i64 got = dyn.step(op);
            i64 truth = patience_lis(ref);
            CHECK(got <= truth);
            CHECK(static_cast<double>(got) >= 0.75 * static_cast<double>(truth) - 1e-9);
            if (auto* blk = dynamic_cast<const DynApproxBlock*>(dyn.scheduler().active()); blk && !dyn.scheduler().last().swapped)
                CHECK(blk->index().last_rebuilt_children() == 2);
        }
        CHECK(dyn.scheduler().sequence().values() == ref);
    }
}
