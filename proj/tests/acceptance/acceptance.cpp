// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any fails.
// Optional arguments select criteria by number.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "dlis/ccp.hpp"
#include "dlis/dyn_approx.hpp"
#include "dlis/exact_dynamic.hpp"
#include "dlis/grid_packing.hpp"
#include "dlis/lis_oracle.hpp"
#include "dlis/monge.hpp"
#include "dlis/sag.hpp"
#include "dlis/scheduler.hpp"
#include "dlis/static_lis.hpp"
#include "gen.hpp"

using namespace dlis;
using testutil::random_edit;
using testutil::random_perm;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome exact_dynamic_correctness() {
    Rng rng(1001);
    u64 checks = 0, mismatches = 0;
    for (int t = 0; t < 200; ++t) {
        std::size_t n = rng.below(513);
        auto ref = random_perm(rng, n, 3);
        std::set<i64> used(ref.begin(), ref.end());
        ExactParams p;
        p.seed = 7000 + t;
        BlockScheduler sched(exact_factory(p), ref);
        mismatches += sched.answer() != patience_lis(ref);
        for (std::size_t k = 0; k < 10 * n; ++k) {
            auto op = random_edit(rng, ref, used, static_cast<i64>(30 * n + 30));
            apply_to_vector(ref, op);
            mismatches += sched.step(op) != patience_lis(ref);
            ++checks;
        }
    }
    return {mismatches == 0, fmt("%llu checks, %llu mismatches", (unsigned long long)checks, (unsigned long long)mismatches)};
}

Perm dense_pipeline(const Perm& a, const Perm& b) {
    return from_dense(density(minplus_dense(distribution(to_dense(a)), distribution(to_dense(b)))));
}

Outcome seaweed_algebra() {
    Rng rng(1002);
    int bad = 0, pairs = 0;
    for (int n = 2; n <= 128; n *= 2)
        for (int t = 0; t < 100; ++t, ++pairs) {
            auto a = testutil::random_sigma(rng, n), b = testutil::random_sigma(rng, n);
            bad += !(seaweed_product(a, b) == dense_pipeline(a, b));
        }
    int assoc_bad = 0;
    for (int t = 0; t < 50; ++t) {
        auto a = testutil::random_sigma(rng, 64), b = testutil::random_sigma(rng, 64), c = testutil::random_sigma(rng, 64);
        assoc_bad += !(seaweed_product(seaweed_product(a, b), c) == seaweed_product(a, seaweed_product(b, c)));
    }
    return {bad == 0 && assoc_bad == 0, fmt("%d pairs, %d product mismatches, %d associativity failures", pairs, bad, assoc_bad)};
}

Outcome sag_oracle() {
    Rng rng(1003);
    int dist_bad = 0, monge_bad = 0, perm_bad = 0;
    for (int t = 0; t < 200; ++t) {
        auto spec = testutil::random_slice(rng, 12, 20);
        DistOracle o(spec);
        auto brute = distance_matrix_brute(spec);
        int k = spec.n + spec.m + 1;
        DenseMatrix d(k, k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) d(a, b) = o.dist(a, b);
        dist_bad += !(d == brute);
        bool monge = true;
        for (int a = 0; a + 1 < k; ++a)
            for (int b = 0; b + 1 < k; ++b) monge = monge && d(a, b) + d(a + 1, b + 1) <= d(a + 1, b) + d(a, b + 1);
        monge_bad += !monge;
        auto box = density(d);
        bool perm = true;
        for (auto& x : box.a) {
            perm = perm && x % 2 == 0;
            x /= 2;
        }
        if (perm) {
            try {
                from_dense(box);
            } catch (const Error&) {
                perm = false;
            }
        }
        perm_bad += !perm;
    }
    return {dist_bad + monge_bad + perm_bad == 0,
            fmt("200 slices: %d distance, %d Monge, %d permutation failures", dist_bad, monge_bad, perm_bad)};
}

Outcome pair_oracle() {
    Rng rng(1004);
    u64 entries = 0, bad = 0, minors = 0, minor_bad = 0;
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 1 + rng.below(200);
        std::vector<i64> a;
        if (t % 2 == 0) {
            a = random_perm(rng, n);
        } else {
            a.resize(n);
            for (auto& x : a) x = static_cast<i64>(rng.below(n / 2 + 1));
        }
        auto p = testutil::random_decreasing(rng, a, true), q = testutil::random_decreasing(rng, a, true);
        i64 big = default_sentinel(n);
        PairOracle o(a, p, q, big);
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j) {
                auto truth = lis_from_to_brute(a, p[i], q[j]);
                i64 e = o.entry(i, j);
                bad += truth ? e != *truth : e > -big;
                ++entries;
                if (i + 1 < p.size() && j + 1 < q.size()) {
                    ++minors;
                    minor_bad += e + o.entry(i + 1, j + 1) < o.entry(i + 1, j) + o.entry(i, j + 1);
                }
            }
    }
    u64 sub = 0, sub_bad = 0;
    for (int t = 0; t < 5; ++t) {
        auto a = random_perm(rng, 100);
        SemiLocal s(a);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i; j < a.size(); ++j, ++sub)
                sub_bad += s.query(i, j) != patience_lis(std::vector<i64>(a.begin() + i, a.begin() + j + 1));
    }
    return {bad + minor_bad + sub_bad == 0,
            fmt("%llu entries (%llu bad), %llu minors (%llu bad), %llu substrings (%llu bad)", (unsigned long long)entries,
                (unsigned long long)bad, (unsigned long long)minors, (unsigned long long)minor_bad, (unsigned long long)sub,
                (unsigned long long)sub_bad)};
}

Outcome ccp_traces() {
    Rng rng(1005);
    u64 checks = 0, bad = 0, audited = 0, audit_fail = 0;
    for (int t = 0; t < 500; ++t) {
        std::size_t n = rng.below(4097);
        auto ref = random_perm(rng, n, 5);
        std::set<i64> used(ref.begin(), ref.end());
        CcpEngine e(ref);
        e.set_audit(true);
        std::size_t ops = 100 + rng.below(100);
        for (std::size_t k = 0; k < ops; ++k) {
            auto op = random_edit(rng, ref, used, static_cast<i64>(10 * n + 100));
            apply_to_vector(ref, op);
            try {
                e.apply(op);
            } catch (const Error&) {
                ++audit_fail;
                break;
            }
            bad += e.lis() != patience_lis(ref);
            ++checks;
        }
        audited += e.audited_ops();
    }
    return {bad == 0 && audit_fail == 0 && audited == checks,
            fmt("%llu checks, %llu mismatches, %llu audited ops, %llu audit failures", (unsigned long long)checks,
                (unsigned long long)bad, (unsigned long long)audited, (unsigned long long)audit_fail)};
}

Outcome packing_share() {
    u64 tables = 0, bad = 0;
    auto check = [&](const Table& t) {
        i64 score = table_score(t);
        for (int delta = 1; delta <= 3; ++delta) bad += best_nonconflicting(t, delta) * delta < (delta - 1) * score;
        ++tables;
    };
    // every 0/1 table supported on one monotone path, m = 4
    const int m = 4;
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
            check(t);
        }
    }
    Rng rng(1006);
    for (int t = 0; t < 500; ++t) {
        Table tab = Table::zeros(1 + static_cast<int>(rng.below(6)));
        for (auto& c : tab.cells) c = static_cast<i64>(rng.below(4)) * static_cast<i64>(rng.below(4));
        check(tab);
    }
    auto st = staircase_table(8);
    i64 s = table_score(st), one = best_nonconflicting(st, 1);
    return {bad == 0 && s == 15 && one == 10,
            fmt("%llu tables, %llu violations; staircase score %lld, single-segment optimum %lld", (unsigned long long)tables,
                (unsigned long long)bad, (long long)s, (long long)one)};
}

Outcome query_lis() {
    Rng rng(1007);
    const double eps = 0.2;
    const std::size_t n = 2000;
    auto v = random_perm(rng, n, 2);
    std::vector<Point> pts;
    for (std::size_t k = 0; k < n; ++k) pts.push_back({static_cast<i64>(2 * k), v[k]});
    QueryLisParams p;
    p.eps = eps;
    p.depth = 1;
    QueryLisIndex idx(pts, p);
    int out = 0;
    double worst = 1;
    for (int q = 0; q < 200; ++q) {
        i64 a = rng.range(-1, 2 * n), b = rng.range(-1, 2 * n), c = rng.range(-1, 2 * n), d = rng.range(-1, 2 * n);
        Rect r{std::min(a, b), std::max(a, b) + 1, std::min(c, d), std::max(c, d) + 1};
        if (q == 0) r = {-1, static_cast<i64>(2 * n), -1, static_cast<i64>(2 * n)};
        i64 truth = lis_rect_brute(pts, r), got = idx.query(r);
        out += got > truth || static_cast<double>(got) < (1 - eps) * static_cast<double>(truth);
        if (truth > 0) worst = std::min(worst, static_cast<double>(got) / static_cast<double>(truth));
    }
    const double deps = 0.25;
    int dyn_out = 0;
    u64 dyn_checks = 0;
    double dyn_worst = 1;
    for (int t = 0; t < 8; ++t) {
        auto ref = random_perm(rng, 1 + rng.below(1000), 3);
        std::set<i64> used(ref.begin(), ref.end());
        DynApproxIndex dyn(ref, dyn_default_params(deps));
        std::size_t ops = 2 * ref.size();
        for (std::size_t k = 0; k < ops; ++k) {
            auto op = random_edit(rng, ref, used, 1 << 22);
            apply_to_vector(ref, op);
            i64 got = dyn.step(op), truth = patience_lis(ref);
            dyn_out += got > truth || static_cast<double>(got) < (1 - deps) * static_cast<double>(truth);
            if (truth > 0) dyn_worst = std::min(dyn_worst, static_cast<double>(got) / static_cast<double>(truth));
            ++dyn_checks;
        }
    }
    return {out == 0 && dyn_out == 0,
            fmt("static: 200 rects, %d outside band, worst ratio %.3f; dynamic: %llu checks, %d outside band, worst ratio %.3f",
                out, worst, (unsigned long long)dyn_checks, dyn_out, dyn_worst)};
}

double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) mx += xs[k], my += ys[k];
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(ys.size());
    double sxy = 0, sxx = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxy += (xs[k] - mx) * (ys[k] - my);
        sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    return sxy / sxx;
}

Outcome exact_scaling() {
    const int ops = 2000;
    std::vector<double> xs, ys;
    std::string detail;
    for (int e = 12; e <= 16; ++e) {
        std::size_t n = std::size_t(1) << e;
        Rng rng(2000 + e);
        auto init = random_perm(rng, n, 2);
        ExactParams p;
        p.seed = e;
        BlockScheduler sched(exact_factory(p), init);
        std::size_t len = n;
        i64 fresh = 1;
        auto t0 = std::chrono::steady_clock::now();
        for (int k = 0; k < ops; ++k) {
            if (k % 2 == 0) {
                sched.step(EditOp::ins(1 + rng.below(len + 1), (rng.below(2) ? 1 : -1) * (2 * static_cast<i64>(n) + fresh)));
                fresh += 2;
                ++len;
            } else {
                sched.step(EditOp::del(1 + rng.below(len)));
                --len;
            }
        }
        double ns = std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - t0).count() / ops;
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(ns));
        detail += fmt("n=2^%d %.0fns ", e, ns);
    }
    double s = slope(xs, ys);
    return {s < 0.95, detail + fmt("slope %.3f", s)};
}

Outcome scheduler_bound() {
    const double C = 32;
    std::string detail;
    bool pass = true;
    struct Case {
        BlockFactory fac;
        std::size_t n, ops;
    };
    std::vector<Case> cases;
    cases.push_back({recompute_factory(), 3000, 6000});
    cases.push_back({exact_factory({}), 4096, 6000});
    cases.push_back({approx_factory(dyn_default_params()), 800, 1600});
    Rng rng(1009);
    for (auto& c : cases) {
        auto ref = random_perm(rng, c.n, 3);
        std::set<i64> used(ref.begin(), ref.end());
        BlockScheduler sched(c.fac, ref);
        double worst = 0;
        for (std::size_t k = 0; k < c.ops; ++k) {
            auto op = random_edit(rng, ref, used, 1 << 24);
            apply_to_vector(ref, op);
            sched.step(op);
            double ratio = static_cast<double>(sched.last().work) / sched.step_bound(sched.last().n);
            worst = std::max(worst, ratio);
        }
        pass = pass && worst <= C;
        detail += fmt("%s max %.3f (%llu swaps) ", c.fac.name.c_str(), worst, (unsigned long long)sched.swaps());
    }
    return {pass, detail + fmt("against C = %.0f", C)};
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> all{
        {1, "exact dynamic LIS equals patience", 300, exact_dynamic_correctness},
        {2, "seaweed algebra", 60, seaweed_algebra},
        {3, "slice alignment distance oracle", 120, sag_oracle},
        {4, "LIS pair oracle and substring LIS", 180, pair_oracle},
        {5, "level-forest dynamic LIS", 180, ccp_traces},
        {6, "multisegment packing", 120, packing_share},
        {7, "rectangle LIS approximation", 300, query_lis},
        {8, "exact engine update scaling", 600, exact_scaling},
        {9, "block scheduler work bound", 600, scheduler_bound},
    };
    std::set<int> only;
    for (int k = 1; k < argc; ++k) only.insert(std::atoi(argv[k]));
    int failed = 0;
    for (auto& c : all) {
        if (!only.empty() && !only.count(c.id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = o.pass && secs < c.limit_s;
        failed += !pass;
        std::printf("criterion %d [%s] %s: %s (%.1fs, limit %.0fs)\n", c.id, c.name, pass ? "PASS" : "FAIL", o.detail.c_str(),
                    secs, c.limit_s);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
