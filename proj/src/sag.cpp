#include "dlis/sag.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace dlis {

namespace {

inline int diag(const GridPoint& p, int m) { return p.x - p.y + m; }

// on a single diagonal the points form a chain ordered by x
GridPoint median3(const GridPoint& a, const GridPoint& b, const GridPoint& c) {
    int xs[3] = {a.x, b.x, c.x};
    std::sort(xs, xs + 3);
    if (a.x == xs[1]) return a;
    if (b.x == xs[1]) return b;
    return c;
}

bool in_half_open(const CutPath& lo, const CutPath& hi, const GridPoint& p, int m) {
    int d = diag(p, m);
    return dominated_eq(lo[d], p) && dominated(p, hi[d]);
}

// xi[x] for x in [0, n) and yi[y] for y in [0, m)
void step_indices(const CutPath& pi, int n, int m, std::vector<int>& xi, std::vector<int>& yi) {
    xi.assign(n, -1);
    yi.assign(m, -1);
    for (int d = 0; d < n + m; ++d) {
        if (pi[d + 1].x > pi[d].x)
            xi[pi[d].x] = d;
        else
            yi[pi[d + 1].y] = d;
    }
}

std::vector<int> sorted_steps(const std::vector<int>& xi, const std::vector<int>& yi, const std::vector<char>& in_x,
                              const std::vector<char>& in_y) {
    std::vector<int> r;
    for (std::size_t x = 0; x < xi.size(); ++x)
        if (in_x[x]) r.push_back(xi[x]);
    for (std::size_t y = 0; y < yi.size(); ++y)
        if (in_y[y]) r.push_back(yi[y]);
    std::sort(r.begin(), r.end());
    return r;
}

CutPath contract_path(const CutPath& pi, const std::vector<int>& rkx, const std::vector<int>& rky) {
    CutPath out;
    out.reserve(pi.size());
    for (const auto& p : pi) {
        GridPoint q{rkx[p.x], rky[p.y]};
        if (out.empty() || !(out.back() == q)) out.push_back(q);
    }
    return out;
}

std::vector<int> prefix_ranks(const std::vector<char>& in) {
    std::vector<int> rk(in.size() + 1, 0);
    for (std::size_t i = 0; i < in.size(); ++i) rk[i + 1] = rk[i] + (in[i] ? 1 : 0);
    return rk;
}

// seeds sorted lexicographically
std::vector<int> build_rec(int n, int m, const CutPath& lo, const CutPath& hi, std::vector<GridPoint> seeds) {
    seeds.erase(std::remove_if(seeds.begin(), seeds.end(),
                               [&](const GridPoint& p) { return !in_half_open(lo, hi, p, m); }),
                seeds.end());

    std::vector<char> in_x(n, 0), in_y(m, 0);
    int cx = 0, cy = 0;
    for (const auto& p : seeds) {
        if (!in_x[p.x]) in_x[p.x] = 1, ++cx;
        if (!in_y[p.y]) in_y[p.y] = 1, ++cy;
    }

    if (cx < n || cy < m) {
        auto rkx = prefix_ranks(in_x), rky = prefix_ranks(in_y);
        CutPath clo = contract_path(lo, rkx, rky), chi = contract_path(hi, rkx, rky);
        std::vector<GridPoint> cs;
        cs.reserve(seeds.size());
        for (const auto& p : seeds) cs.push_back({rkx[p.x], rky[p.y]});
        Perm inner{build_rec(cx, cy, clo, chi, std::move(cs))};
        return expand_contracted(lo, hi, n, m, in_x, in_y, inner).sigma;
    }

    if (seeds.empty()) return {};
    if (seeds.size() == 1) return {0, 1};

    std::size_t left = (seeds.size() + 1) / 2;
    const GridPoint split = seeds[left];
    const int sx = split.x, sy = split.y;
    CutPath mid(n + m + 1);
    for (int d = 0; d <= n + m; ++d) {
        GridPoint cut;
        if (d <= sx)
            cut = {d, m};
        else if (d <= sx - sy + m)
            cut = {sx, sx + m - d};
        else if (d <= sx + 1 + m)
            cut = {sx + 1, sx + 1 + m - d};
        else
            cut = {d - m, 0};
        mid[d] = median3(lo[d], cut, hi[d]);
    }
    std::vector<GridPoint> sl(seeds.begin(), seeds.begin() + left), sr(seeds.begin() + left, seeds.end());
    Perm pl{build_rec(n, m, lo, mid, std::move(sl))};
    Perm pr{build_rec(n, m, mid, hi, std::move(sr))};
    return seaweed_product(pl, pr).sigma;
}

}  // namespace

bool is_cut_path(const CutPath& p, int n, int m) {
    if (n < 0 || m < 0 || p.size() != static_cast<std::size_t>(n + m + 1)) return false;
    for (int d = 0; d <= n + m; ++d) {
        const auto& q = p[d];
        if (q.x < 0 || q.x > n || q.y < 0 || q.y > m || diag(q, m) != d) return false;
        if (d > 0 && (q.x < p[d - 1].x || q.y > p[d - 1].y)) return false;
    }
    return true;
}

CutPath extend_antichain(const std::vector<GridPoint>& chain, int n, int m) {
    require(n >= 0 && m >= 0, ErrorCode::range, "negative grid size");
    std::vector<GridPoint> pts;
    pts.reserve(chain.size() + 2);
    if (chain.empty() || !(chain.front() == GridPoint{0, m})) pts.push_back({0, m});
    for (const auto& p : chain) {
        require(p.x >= 0 && p.x <= n && p.y >= 0 && p.y <= m, ErrorCode::range, "antichain point outside grid");
        pts.push_back(p);
    }
    if (!(pts.back() == GridPoint{n, 0})) pts.push_back({n, 0});
    for (std::size_t i = 1; i < pts.size(); ++i)
        require(pts[i].x >= pts[i - 1].x && pts[i].y <= pts[i - 1].y, ErrorCode::invariant, "not an antichain");

    CutPath out(n + m + 1);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const auto& a = pts[i - 1];
        const auto& b = pts[i];
        for (int d = a.x - a.y + m; d <= a.x - b.y + m; ++d) out[d] = {a.x, a.x + m - d};
        for (int d = a.x - b.y + m; d <= b.x - b.y + m; ++d) out[d] = {b.y + d - m, b.y};
    }
    return out;
}

CutPath lower_boundary(int n, int m) { return extend_antichain({{0, 0}}, n, m); }
CutPath upper_boundary(int n, int m) { return extend_antichain({{n, m}}, n, m); }

SliceSpec contract_spec(const SliceSpec& spec, const std::vector<char>& in_x, const std::vector<char>& in_y) {
    auto rkx = prefix_ranks(in_x), rky = prefix_ranks(in_y);
    SliceSpec out;
    out.n = rkx.back();
    out.m = rky.back();
    out.lo = contract_path(spec.lo, rkx, rky);
    out.hi = contract_path(spec.hi, rkx, rky);
    for (const auto& p : spec.seeds) {
        require(in_x[p.x] && in_y[p.y], ErrorCode::invariant, "seed in a removed row or column");
        out.seeds.push_back({rkx[p.x], rky[p.y]});
    }
    return out;
}

Perm expand_contracted(const CutPath& lo, const CutPath& hi, int n, int m, const std::vector<char>& in_x,
                       const std::vector<char>& in_y, const Perm& inner) {
    std::vector<int> xi_lo, yi_lo, xi_hi, yi_hi;
    step_indices(lo, n, m, xi_lo, yi_lo);
    step_indices(hi, n, m, xi_hi, yi_hi);
    auto r_lo = sorted_steps(xi_lo, yi_lo, in_x, in_y);
    auto r_hi = sorted_steps(xi_hi, yi_hi, in_x, in_y);
    require(inner.n() == static_cast<int>(r_lo.size()), ErrorCode::dimension, "contracted seaweed size mismatch");

    std::vector<int> sigma(n + m, -1);
    for (int x = 0; x < n; ++x)
        if (!in_x[x]) sigma[xi_lo[x]] = xi_hi[x];
    for (int y = 0; y < m; ++y)
        if (!in_y[y]) sigma[yi_lo[y]] = yi_hi[y];
    for (int a = 0; a < inner.n(); ++a) sigma[r_lo[a]] = r_hi[inner.sigma[a]];
    return Perm{std::move(sigma)};
}

Perm build_seaweed(const SliceSpec& spec) {
    const int n = spec.n, m = spec.m;
    require(is_cut_path(spec.lo, n, m) && is_cut_path(spec.hi, n, m), ErrorCode::invariant, "malformed cut-path");
    for (int d = 0; d <= n + m; ++d)
        require(dominated_eq(spec.lo[d], spec.hi[d]), ErrorCode::invariant, "cut-paths out of order");
    std::vector<GridPoint> seeds = spec.seeds;
    for (const auto& p : seeds)
        require(p.x >= 0 && p.x < n && p.y >= 0 && p.y < m, ErrorCode::range, "seed outside grid");
    std::sort(seeds.begin(), seeds.end(), [](const GridPoint& a, const GridPoint& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    return Perm{build_rec(n, m, spec.lo, spec.hi, std::move(seeds))};
}

DistOracle::DistOracle(const SliceSpec& spec) : DistOracle(spec.n, spec.m, build_seaweed(spec)) {}

DistOracle::DistOracle(int n, int m, Perm seaweed) : n_(n), m_(m), perm_(std::move(seaweed)), sigma_(perm_) {
    require(perm_.n() == n + m, ErrorCode::dimension, "seaweed size mismatch");
}

i64 DistOracle::dist(int a, int b) const {
    require(a >= 0 && b >= 0 && a <= n_ + m_ && b <= n_ + m_, ErrorCode::range, "distance index out of range");
    return 2 * static_cast<i64>(sigma_.query(a, b)) + a - b;
}

std::vector<int> slice_bfs(const SliceSpec& spec, GridPoint from) {
    const int n = spec.n, m = spec.m;
    const int w = m + 1;
    auto id = [&](int x, int y) { return x * w + y; };
    auto inside = [&](int x, int y) {
        if (x < 0 || x > n || y < 0 || y > m) return false;
        GridPoint p{x, y};
        int d = diag(p, m);
        return dominated_eq(spec.lo[d], p) && dominated_eq(p, spec.hi[d]);
    };
    std::vector<char> seed((n + 1) * w, 0);
    for (const auto& p : spec.seeds) seed[id(p.x, p.y)] = 1;

    const int inf = std::numeric_limits<int>::max();
    std::vector<int> dist((n + 1) * w, inf);
    if (!inside(from.x, from.y)) return std::vector<int>((n + 1) * w, -1);
    std::deque<GridPoint> dq;
    dist[id(from.x, from.y)] = 0;
    dq.push_back(from);
    while (!dq.empty()) {
        GridPoint p = dq.front();
        dq.pop_front();
        int dp = dist[id(p.x, p.y)];
        auto relax = [&](int x, int y, int wgt) {
            if (!inside(x, y)) return;
            int& t = dist[id(x, y)];
            if (dp + wgt < t) {
                t = dp + wgt;
                if (wgt == 0)
                    dq.push_front({x, y});
                else
                    dq.push_back({x, y});
            }
        };
        relax(p.x + 1, p.y, 1);
        relax(p.x - 1, p.y, 1);
        relax(p.x, p.y + 1, 1);
        relax(p.x, p.y - 1, 1);
        if (p.x < n && p.y < m && seed[id(p.x, p.y)]) relax(p.x + 1, p.y + 1, 0);
        if (p.x > 0 && p.y > 0 && seed[id(p.x - 1, p.y - 1)]) relax(p.x - 1, p.y - 1, 0);
    }
    for (auto& d : dist)
        if (d == inf) d = -1;
    return dist;
}

int dist_bruteforce(const SliceSpec& spec, GridPoint p, GridPoint q) {
    auto d = slice_bfs(spec, p);
    require(q.x >= 0 && q.x <= spec.n && q.y >= 0 && q.y <= spec.m, ErrorCode::range, "point outside grid");
    return d[q.x * (spec.m + 1) + q.y];
}

int dist_bruteforce_full(int n, int m, const std::vector<GridPoint>& seeds, GridPoint p, GridPoint q) {
    SliceSpec s{n, m, lower_boundary(n, m), upper_boundary(n, m), seeds};
    return dist_bruteforce(s, p, q);
}

DenseMatrix distance_matrix_brute(const SliceSpec& spec) {
    const int k = spec.n + spec.m + 1;
    DenseMatrix out(k, k);
    for (int a = 0; a < k; ++a) {
        auto d = slice_bfs(spec, spec.lo[a]);
        for (int b = 0; b < k; ++b) out(a, b) = d[spec.hi[b].x * (spec.m + 1) + spec.hi[b].y];
    }
    return out;
}

}  // namespace dlis
