#include "dlis/grid_packing.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace dlis {

// ---- table combinatorics ----

Table Table::zeros(int m) {
    Table t;
    t.m = m;
    t.cells.assign(static_cast<std::size_t>(m) * m, 0);
    return t;
}

std::vector<Cell> Segment::cells() const {
    std::vector<Cell> out;
    for (int k = lo; k <= hi; ++k) out.push_back(horizontal ? Cell{line, k} : Cell{k, line});
    return out;
}

bool Multisegment::chained() const {
    for (std::size_t k = 0; k + 1 < segs.size(); ++k)
        if (!(segs[k].last() == segs[k + 1].first())) return false;
    return true;
}

std::vector<Cell> Multisegment::cells() const {
    std::vector<Cell> out;
    for (const auto& s : segs)
        for (Cell c : s.cells())
            if (out.empty() || !(out.back() == c)) out.push_back(c);
    return out;
}

bool precedes(const Segment& a, const Segment& b) {
    int a_row_lo = a.horizontal ? a.line : a.lo;
    int a_col_lo = a.horizontal ? a.lo : a.line;
    int b_row_hi = b.horizontal ? b.line : b.hi;
    int b_col_hi = b.horizontal ? b.hi : b.line;
    return a_row_lo > b_row_hi && a_col_lo > b_col_hi;
}

bool conflicting(const Segment& a, const Segment& b) { return !precedes(a, b) && !precedes(b, a); }

bool conflicting(const Multisegment& a, const Multisegment& b) {
    for (const auto& x : a.segs)
        for (const auto& y : b.segs)
            if (conflicting(x, y)) return true;
    return false;
}

i64 multisegment_score(const Table& t, const Multisegment& s) {
    i64 sum = 0;
    for (Cell c : s.cells()) sum += t.at(c.row, c.col);
    return sum;
}

i64 table_score(const Table& t) {
    int m = t.m;
    if (m == 0) return 0;
    std::vector<i64> dp(static_cast<std::size_t>(m) * m, 0);
    auto at = [&](int r, int c) -> i64& { return dp[static_cast<std::size_t>(r) * m + c]; };
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            i64 prev = 0;
            if (r > 0) prev = std::max(prev, at(r - 1, c));
            if (c > 0) prev = std::max(prev, at(r, c - 1));
            at(r, c) = prev + t.at(r, c);
        }
    return at(m - 1, m - 1);
}

// Pairwise non-conflicting multisegments are exactly the chains ordered by strict precedence of
// their bounding boxes (first cell to last cell), so the optimum is a chain DP over end cells.
i64 best_nonconflicting(const Table& t, int delta) {
    require(t.m <= 64, ErrorCode::refused, "table too large");
    require(delta >= 1, ErrorCode::range, "delta must be positive");
    int m = t.m;
    if (m == 0) return 0;
    const i64 none = -1;
    auto idx = [m](int r, int c) { return static_cast<std::size_t>(r) * m + c; };
    int runs = std::min(delta, 2 * m - 1);

    // best[s][e]: heaviest path from s to e with at most `runs` straight runs
    std::vector<i64> best(static_cast<std::size_t>(m) * m * m * m, none);
    std::vector<i64> dp;
    for (int sr = 0; sr < m; ++sr)
        for (int sc = 0; sc < m; ++sc) {
            // dp[(k * 2 + dir) * m * m + cell]; dir 0 = moving right, 1 = moving up
            dp.assign(static_cast<std::size_t>(runs) * 2 * m * m, none);
            auto at = [&](int k, int dir, int r, int c) -> i64& {
                return dp[(static_cast<std::size_t>(k) * 2 + dir) * m * m + idx(r, c)];
            };
            at(0, 0, sr, sc) = at(0, 1, sr, sc) = t.at(sr, sc);
            for (int r = sr; r < m; ++r)
                for (int c = sc; c < m; ++c)
                    for (int k = 0; k < runs; ++k)
                        for (int dir = 0; dir < 2; ++dir) {
                            i64 v = at(k, dir, r, c);
                            if (v == none) continue;
                            i64& b = best[idx(sr, sc) * m * m + idx(r, c)];
                            b = std::max(b, v);
                            for (int nd = 0; nd < 2; ++nd) {
                                int nr = r + nd, nc = c + (1 - nd);
                                if (nr >= m || nc >= m) continue;
                                int nk = k + (nd == dir ? 0 : 1);
                                if (nk >= runs) continue;
                                i64& dst = at(nk, nd, nr, nc);
                                dst = std::max(dst, v + t.at(nr, nc));
                            }
                        }
        }

    std::vector<i64> f(static_cast<std::size_t>(m) * m, 0);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            i64 v = 0;
            if (r > 0) v = std::max(v, f[idx(r - 1, c)]);
            if (c > 0) v = std::max(v, f[idx(r, c - 1)]);
            for (int sr = 0; sr <= r; ++sr)
                for (int sc = 0; sc <= c; ++sc) {
                    i64 b = best[idx(sr, sc) * m * m + idx(r, c)];
                    if (b == none) continue;
                    i64 below = (sr > 0 && sc > 0) ? f[idx(sr - 1, sc - 1)] : 0;
                    v = std::max(v, b + below);
                }
            f[idx(r, c)] = v;
        }
    return f[idx(m - 1, m - 1)];
}

std::vector<Multisegment> all_multisegments(int m, int delta) {
    std::vector<Multisegment> out;
    Multisegment cur;
    // dir: -1 undetermined (single cell), 0 horizontal, 1 vertical
    auto rec = [&](auto&& self, int r, int c, int dir) -> void {
        out.push_back(cur);
        for (int nd = 0; nd < 2; ++nd) {
            int nr = r + nd, nc = c + (1 - nd);
            if (nr >= m || nc >= m) continue;
            if (dir == -1) {
                Segment saved = cur.segs.back();
                cur.segs.back() = nd == 0 ? Segment{true, r, c, nc} : Segment{false, c, r, nr};
                self(self, nr, nc, nd);
                cur.segs.back() = saved;
            } else if (nd == dir) {
                ++cur.segs.back().hi;
                self(self, nr, nc, dir);
                --cur.segs.back().hi;
            } else if (static_cast<int>(cur.segs.size()) < delta) {
                cur.segs.push_back(nd == 0 ? Segment{true, r, c, nc} : Segment{false, c, r, nr});
                self(self, nr, nc, nd);
                cur.segs.pop_back();
            }
        }
    };
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            cur.segs = {Segment{true, r, c, c}};
            rec(rec, r, c, -1);
        }
    return out;
}

Table staircase_table(int m) {
    Table t = Table::zeros(m);
    for (int r = 0; r < m; ++r) {
        t.at(r, r) = 1;
        if (r + 1 < m) t.at(r, r + 1) = 1;
    }
    return t;
}

// ---- value ladder ----

ValueLadder::ValueLadder(double eps, i64 top) : eps_(eps) {
    require(eps > 0, ErrorCode::range, "ladder ratio must exceed 1");
    levels_.push_back(1);
    while (levels_.back() < top) {
        i64 d = levels_.back();
        levels_.push_back(std::max(d + 1, static_cast<i64>(std::floor(static_cast<double>(d) * (1 + eps)))));
    }
}

i64 ValueLadder::floor(i64 x) const {
    auto it = std::upper_bound(levels_.begin(), levels_.end(), x);
    return it == levels_.begin() ? 0 : *(it - 1);
}

// ---- exact leaf ----

namespace {

constexpr i64 kInf = i64(1) << 61;

bool by_x(const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

class ExactOracle : public RectOracle {
public:
    ExactOracle(std::vector<Point> pts, WorkMeter* meter) : pts_(std::move(pts)), meter_(meter) {
        std::sort(pts_.begin(), pts_.end(), by_x);
    }

    i64 lis(const Rect& r) const override {
        std::vector<i64> ys;
        gather(r, [&](const Point& p) { ys.push_back(p.y); });
        return patience_lis(ys);
    }

    std::vector<SweepStep> steps(const Rect& box, int axis, int dir, const ValueLadder& ladder) const override {
        std::vector<Point> in;
        gather(box, [&](const Point& p) { in.push_back(p); });
        if (in.empty()) return {};
        std::vector<int> len(in.size());
        if (dir > 0) {
            // longest chain starting at each point
            std::vector<i64> neg;
            neg.reserve(in.size());
            for (auto it = in.rbegin(); it != in.rend(); ++it) neg.push_back(-it->y);
            auto lv = levels(neg);
            for (std::size_t k = 0; k < in.size(); ++k) len[in.size() - 1 - k] = lv[k];
        } else {
            std::vector<i64> ys;
            ys.reserve(in.size());
            for (const auto& p : in) ys.push_back(p.y);
            auto lv = levels(ys);
            std::copy(lv.begin(), lv.end(), len.begin());
        }
        int top = *std::max_element(len.begin(), len.end());
        // reach[k]: furthest cut that still keeps a chain of length k
        std::vector<i64> reach(top + 2, dir > 0 ? -kInf : kInf);
        for (std::size_t k = 0; k < in.size(); ++k) {
            i64 c = axis == 0 ? in[k].x : in[k].y;
            i64& r = reach[len[k]];
            r = dir > 0 ? std::max(r, c) : std::min(r, c);
        }
        for (int k = top - 1; k >= 1; --k)
            reach[k] = dir > 0 ? std::max(reach[k], reach[k + 1]) : std::min(reach[k], reach[k + 1]);

        std::vector<SweepStep> out;
        for (i64 v : ladder.levels()) {
            if (v > top) break;
            i64 c = reach[v];
            // exact credit of the cut at c: largest k still reaching it
            int lo = static_cast<int>(v), hi = top;
            while (lo < hi) {
                int mid = (lo + hi + 1) / 2;
                if (reach[mid] == c) lo = mid;
                else hi = mid - 1;
            }
            if (!out.empty() && out.back().coord == c) out.back().credit = lo;
            else out.push_back({c, lo});
        }
        return out;
    }

    std::size_t size() const override { return pts_.size(); }

    void insert(const Point& p) override { pts_.insert(std::lower_bound(pts_.begin(), pts_.end(), p, by_x), p); }

    void erase(const Point& p) override {
        auto it = std::lower_bound(pts_.begin(), pts_.end(), p, by_x);
        require(it != pts_.end() && it->x == p.x && it->y == p.y, ErrorCode::range, "point not present");
        pts_.erase(it);
    }

    void set_meter(WorkMeter* m) override { meter_ = m; }

private:
    std::vector<Point> pts_;
    WorkMeter* meter_;

    template <class F>
    void gather(const Rect& r, F&& f) const {
        auto it = std::lower_bound(pts_.begin(), pts_.end(), Point{r.x_lo, -kInf - 1}, by_x);
        u64 seen = 0;
        for (; it != pts_.end() && it->x < r.x_hi; ++it, ++seen)
            if (it->y >= r.y_lo && it->y < r.y_hi) f(*it);
        if (meter_) meter_->add(seen * static_cast<u64>(ceil_log2(seen + 2)) + 1);
    }
};

}  // namespace

std::unique_ptr<RectOracle> make_exact_oracle(std::vector<Point> pts, WorkMeter* meter) {
    return std::make_unique<ExactOracle>(std::move(pts), meter);
}

// ---- level configuration ----

double side_exponent(int levels) {
    double q = 5, r = 1;
    for (int i = 0; i < levels; ++i) {
        r = q / (q + 3);
        q = 4 * r;
    }
    return r;
}

LevelConfig resolve_level(const QueryLisParams& p) {
    require(p.eps > 0 && p.eps < 1, ErrorCode::range, "eps must lie in (0, 1)");
    require(p.kappa > 0 && p.kappa < 1, ErrorCode::range, "kappa must lie in (0, 1)");
    LevelConfig c;
    c.depth = p.depth > 0 ? p.depth : static_cast<int>(std::ceil(3 * std::log2(1 / p.kappa))) + 5;
    c.eps_level = p.eps / (2.0 * c.depth);
    c.delta = static_cast<int>(std::ceil(1 / c.eps_level - 1e-9));
    if (p.max_delta > 0) c.delta = std::min(c.delta, p.max_delta);
    c.leaf = std::max(1, p.leaf);
    c.max_side = std::max(2, p.max_side);
    c.side = p.side;
    return c;
}

// ---- query index ----

std::size_t QueryLisIndex::CacheHash::operator()(const CacheKey& k) const {
    u64 h = static_cast<u64>(k.axis * 2 + (k.dir > 0));
    for (i64 v : {k.a, k.b, k.c, k.d}) {
        h ^= static_cast<u64>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

QueryLisIndex::QueryLisIndex(std::vector<Point> pts, const QueryLisParams& p)
    : QueryLisIndex(std::move(pts), resolve_level(p), nullptr) {}

QueryLisIndex::QueryLisIndex(std::vector<Point> pts, const LevelConfig& cfg, std::shared_ptr<const ValueLadder> ladder,
                             WorkMeter* meter)
    : cfg_(cfg), ladder_(std::move(ladder)), pts_(std::move(pts)), meter_(meter) {
    add_work(pts_.size() * static_cast<u64>(ceil_log2(pts_.size() + 2)) + 1);
    std::sort(pts_.begin(), pts_.end(), by_x);
    if (!ladder_) ladder_ = std::make_shared<ValueLadder>(cfg_.eps_level, static_cast<i64>(std::max<std::size_t>(1, pts_.size())));
    build();
}

QueryLisIndex::~QueryLisIndex() = default;

void QueryLisIndex::set_meter(WorkMeter* m) {
    meter_ = m;
    if (leaf_) leaf_->set_meter(m);
    for (auto& c : rows_) c->set_meter(m);
    for (auto& c : cols_) c->set_meter(m);
}

std::unique_ptr<RectOracle> QueryLisIndex::make_child(std::vector<Point> pts) const {
    if (cfg_.depth <= 1 || pts.size() <= static_cast<std::size_t>(cfg_.leaf)) return make_exact_oracle(std::move(pts), meter_);
    LevelConfig c = cfg_;
    c.depth = cfg_.depth - 1;
    return std::make_unique<QueryLisIndex>(std::move(pts), c, ladder_, meter_);
}

void QueryLisIndex::build() {
    std::size_t n = pts_.size();
    if (cfg_.depth <= 0 || n <= static_cast<std::size_t>(cfg_.leaf) || n < 2) {
        side_ = 0;
        leaf_ = make_exact_oracle(pts_, meter_);
        return;
    }
    int m = cfg_.side > 0 ? cfg_.side
                          : static_cast<int>(std::lround(std::pow(static_cast<double>(n), side_exponent(cfg_.depth))));
    m = std::clamp(m, 2, cfg_.max_side);
    m = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(m), n));
    side_ = m;

    std::vector<i64> ysorted;
    ysorted.reserve(n);
    for (const auto& p : pts_) ysorted.push_back(p.y);
    std::sort(ysorted.begin(), ysorted.end());
    xs_.assign(m + 1, 0);
    ys_.assign(m + 1, 0);
    xs_[0] = ys_[0] = -kInf;
    xs_[m] = ys_[m] = kInf;
    for (int j = 1; j < m; ++j) {
        std::size_t at = static_cast<std::size_t>(j) * n / m;
        xs_[j] = pts_[at].x;
        ys_[j] = ysorted[at];
    }

    std::vector<std::vector<Point>> rp(m), cp(m);
    for (const auto& p : pts_) {
        rp[row_of(p.y)].push_back(p);
        cp[col_of(p.x)].push_back(p);
    }
    rows_.clear();
    cols_.clear();
    for (int k = 0; k < m; ++k) {
        rows_.push_back(make_child(std::move(rp[k])));
        cols_.push_back(make_child(std::move(cp[k])));
    }
    cache_.assign(2 * m, {});
    fill_table();
}

int QueryLisIndex::col_of(i64 x) const {
    int j = static_cast<int>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin()) - 1;
    return std::clamp(j, 0, side_ - 1);
}

int QueryLisIndex::row_of(i64 y) const {
    int i = static_cast<int>(std::upper_bound(ys_.begin(), ys_.end(), y) - ys_.begin()) - 1;
    return std::clamp(i, 0, side_ - 1);
}

std::size_t QueryLisIndex::gi(Cell lo, Cell hi) const {
    std::size_t m = static_cast<std::size_t>(side_);
    return ((static_cast<std::size_t>(lo.row) * m + lo.col) * m + hi.row) * m + hi.col;
}

i64 QueryLisIndex::table(Cell lo, Cell hi) const {
    require(!is_leaf(), ErrorCode::lifecycle, "leaf index has no table");
    require(lo.row >= 0 && lo.col >= 0 && hi.row < side_ && hi.col < side_ && lo.row <= hi.row && lo.col <= hi.col,
            ErrorCode::range, "cell pair out of range");
    return g_[gi(lo, hi)];
}

void QueryLisIndex::drop_cache(int strip) { cache_[strip].clear(); }

std::vector<SweepStep> QueryLisIndex::strip_steps(int strip, const Rect& box, int axis, int dir, bool use_cache) const {
    const RectOracle& child = strip < side_ ? *rows_[strip] : *cols_[strip - side_];
    CacheKey key{axis, dir, box.x_lo, box.x_hi, box.y_lo, box.y_hi};
    {
        std::lock_guard<std::mutex> lk(cache_mu_);
        auto it = cache_[strip].find(key);
        if (it != cache_[strip].end()) return it->second;
    }
    auto out = child.steps(box, axis, dir, *ladder_);
    if (use_cache) {
        std::lock_guard<std::mutex> lk(cache_mu_);
        cache_[strip].emplace(key, out);
    }
    return out;
}

// Grows chains of sweep boxes from the top-right corner of q (dir = +1) or, mirrored, from its
// bottom-left corner (dir = -1), alternating row and column strips for up to `nsteps` boxes.
// best_at[(col + 1) * (m + 2) + row + 1] receives the best credit whose boxes all lie strictly
// beyond cell (col, row): above and right of it for dir = +1, below and left for dir = -1.
void QueryLisIndex::corner(int dir, const Rect& q, int nsteps, bool use_cache, std::vector<i64>& best_at) const {
    const int m = side_;
    best_at.assign(static_cast<std::size_t>(m + 2) * (m + 2), -1);

    // canonical frame: the corner is the top-right one
    std::vector<i64> xc(m + 1), yc(m + 1);
    for (int j = 0; j <= m; ++j) {
        xc[j] = dir > 0 ? xs_[j] : -xs_[m - j] + 1;
        yc[j] = dir > 0 ? ys_[j] : -ys_[m - j] + 1;
    }
    i64 qx0 = dir > 0 ? q.x_lo : -q.x_hi + 1, qx1 = dir > 0 ? q.x_hi : -q.x_lo + 1;
    i64 qy0 = dir > 0 ? q.y_lo : -q.y_hi + 1, qy1 = dir > 0 ? q.y_hi : -q.y_lo + 1;
    if (qx0 >= qx1 || qy0 >= qy1) return;
    auto cell_of = [m](const std::vector<i64>& e, i64 t) {
        int k = static_cast<int>(std::upper_bound(e.begin(), e.end(), t) - e.begin()) - 1;
        return std::clamp(k, 0, m - 1);
    };
    auto real = [&](int k) { return dir > 0 ? k : m - 1 - k; };
    auto to_real = [&](i64 x0, i64 x1, i64 y0, i64 y1) {
        return dir > 0 ? Rect{x0, x1, y0, y1} : Rect{-x1 + 1, -x0 + 1, -y1 + 1, -y0 + 1};
    };
    auto record = [&](int j, int i, i64 v) {
        int rc = dir > 0 ? j - 1 : m - j, rr = dir > 0 ? i - 1 : m - i;
        i64& b = best_at[static_cast<std::size_t>(rc + 1) * (m + 2) + rr + 1];
        b = std::max(b, v);
    };
    // steps of the canonical box [x0, x1) x [y0, y1) sweeping its lower edge on `axis`
    auto sweep = [&](int strip, int axis, i64 x0, i64 x1, i64 y0, i64 y1, i64 floor_at) {
        if (axis == 0) x0 = -kInf;
        else y0 = -kInf;
        std::vector<SweepStep> out;
        if (x0 >= x1 || y0 >= y1) return out;
        auto raw = strip_steps(strip, to_real(x0, x1, y0, y1), axis, dir, use_cache);
        for (auto s : raw) {
            s.coord = dir > 0 ? s.coord : -s.coord;
            if (s.coord >= floor_at) out.push_back(s);
        }
        return out;
    };

    struct State {
        i64 t, val;
        int j, i;
    };
    auto prune = [&](std::vector<State>& st) {
        std::sort(st.begin(), st.end(), [](const State& a, const State& b) {
            if (a.j != b.j) return a.j < b.j;
            if (a.i != b.i) return a.i < b.i;
            if (a.t != b.t) return a.t > b.t;
            return a.val > b.val;
        });
        std::vector<State> keep;
        for (std::size_t k = 0; k < st.size(); ++k) {
            bool fresh = k == 0 || st[k].j != st[k - 1].j || st[k].i != st[k - 1].i;
            if (fresh || st[k].val > keep.back().val) keep.push_back(st[k]);
        }
        st.swap(keep);
    };

    int cx = cell_of(xc, qx1 - 1), cy = cell_of(yc, qy1 - 1);
    for (int first = 0; first < 2; ++first) {
        std::vector<State> cur;
        int axis = first;
        if (axis == 0) {
            for (auto s : sweep(real(cy), 0, qx0, std::min(xc[cx + 1], qx1), std::max(yc[cy], qy0), std::min(yc[cy + 1], qy1), qx0))
                cur.push_back({s.coord, s.credit, cell_of(xc, s.coord), cy});
        } else {
            for (auto s : sweep(m + real(cx), 1, std::max(xc[cx], qx0), std::min(xc[cx + 1], qx1), qy0, std::min(yc[cy + 1], qy1), qy0))
                cur.push_back({s.coord, s.credit, cx, cell_of(yc, s.coord)});
        }
        for (int step = 1;; ++step) {
            prune(cur);
            add_work(cur.size() + 1);
            for (const auto& st : cur) record(st.j, st.i, st.val);
            if (step >= nsteps || cur.empty()) break;
            std::vector<State> next;
            for (const auto& st : cur) {
                if (axis == 0) {
                    // column strip of the sweep point, below its row
                    for (auto s : sweep(m + real(st.j), 1, std::max(xc[st.j], qx0), st.t, qy0, yc[st.i], qy0))
                        next.push_back({s.coord, st.val + s.credit, st.j, cell_of(yc, s.coord)});
                } else {
                    for (auto s : sweep(real(st.i), 0, qx0, xc[st.j], std::max(yc[st.i], qy0), st.t, qx0))
                        next.push_back({s.coord, st.val + s.credit, cell_of(xc, s.coord), st.i});
                }
            }
            cur.swap(next);
            axis ^= 1;
        }
    }
}

void QueryLisIndex::fill_table() {
    const int m = side_;
    g_.assign(static_cast<std::size_t>(m) * m * m * m, 0);
    std::vector<i64> best;
    for (int a = 0; a < m; ++a)      // lo row
        for (int b = 0; b < m; ++b)  // lo col
            for (int r = a; r < m; ++r)
                for (int c = b; c < m; ++c) {
                    Cell lo{a, b}, hi{r, c};
                    Rect q{xs_[b], xs_[c + 1], ys_[a], ys_[r + 1]};
                    i64 v;
                    if (r == a) {
                        v = rows_[a]->lis(q);
                    } else if (c == b) {
                        v = cols_[b]->lis(q);
                    } else {
                        v = std::max(g_[gi(lo, Cell{r - 1, c})], g_[gi(lo, Cell{r, c - 1})]);
                        corner(+1, q, cfg_.delta, true, best);
                        for (int ec = -1; ec < m; ++ec)
                            for (int er = -1; er < m; ++er) {
                                i64 x = best[static_cast<std::size_t>(ec + 1) * (m + 2) + er + 1];
                                if (x < 0) continue;
                                if (er >= a && ec >= b) x += g_[gi(lo, Cell{er, ec})];
                                v = std::max(v, x);
                            }
                    }
                    g_[gi(lo, hi)] = v;
                }
}

i64 QueryLisIndex::query(const Rect& r) const {
    if (leaf_) return leaf_->lis(r);
    if (r.x_lo >= r.x_hi || r.y_lo >= r.y_hi) return 0;
    const int m = side_;
    int j0 = col_of(r.x_lo), j1 = col_of(r.x_hi - 1);
    int i0 = row_of(r.y_lo), i1 = row_of(r.y_hi - 1);
    if (j0 == j1) return cols_[j0]->lis(r);
    if (i0 == i1) return rows_[i0]->lis(r);

    std::vector<i64> tr, bl;
    corner(+1, r, cfg_.delta + 1, false, tr);
    corner(-1, r, cfg_.delta + 1, false, bl);
    auto at = [m](std::vector<i64>& v, int col, int row) -> i64& {
        return v[static_cast<std::size_t>(col + 1) * (m + 2) + row + 1];
    };
    // fully covered cells
    int fj0 = static_cast<int>(std::lower_bound(xs_.begin(), xs_.end(), r.x_lo) - xs_.begin());
    int fj1 = static_cast<int>(std::upper_bound(xs_.begin(), xs_.end(), r.x_hi) - xs_.begin()) - 2;
    int fi0 = static_cast<int>(std::lower_bound(ys_.begin(), ys_.end(), r.y_lo) - ys_.begin());
    int fi1 = static_cast<int>(std::upper_bound(ys_.begin(), ys_.end(), r.y_hi) - ys_.begin()) - 2;
    if (fj0 <= fj1 && fi0 <= fi1) {
        at(bl, fj0, fi0) = std::max<i64>(at(bl, fj0, fi0), 0);
        at(tr, fj1, fi1) = std::max<i64>(at(tr, fj1, fi1), 0);
    }

    struct Entry {
        int col, row;
        i64 v;
    };
    std::vector<Entry> lows, highs;
    i64 best = 0;
    for (int col = -1; col <= m; ++col)
        for (int row = -1; row <= m; ++row) {
            if (i64 v = at(bl, col, row); v >= 0) {
                lows.push_back({col, row, v});
                best = std::max(best, v);
            }
            if (i64 v = at(tr, col, row); v >= 0) {
                highs.push_back({col, row, v});
                best = std::max(best, v);
            }
        }
    add_work(lows.size() * highs.size() + 1);
    for (const auto& lo : lows)
        for (const auto& hi : highs) {
            if (lo.col <= hi.col && lo.row <= hi.row)
                best = std::max(best, lo.v + g_[gi(Cell{lo.row, lo.col}, Cell{hi.row, hi.col})] + hi.v);
            else if (lo.col <= hi.col + 1 && lo.row <= hi.row + 1)
                best = std::max(best, lo.v + hi.v);
        }
    return best;
}

std::vector<SweepStep> QueryLisIndex::steps(const Rect& box, int axis, int dir, const ValueLadder& ladder) const {
    if (leaf_) return leaf_->steps(box, axis, dir, ladder);
    std::vector<i64> cs;
    for (const auto& p : pts_)
        if (box.contains(p)) cs.push_back(axis == 0 ? p.x : p.y);
    if (cs.empty()) return {};
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    const int sz = static_cast<int>(cs.size());
    std::map<int, i64> memo;
    auto f = [&](int k) {
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
        Rect cut = box;
        if (dir > 0) (axis == 0 ? cut.x_lo : cut.y_lo) = cs[k];
        else (axis == 0 ? cut.x_hi : cut.y_hi) = cs[k] + 1;
        i64 v = query(cut);
        memo.emplace(k, v);
        return v;
    };
    i64 top = dir > 0 ? f(0) : f(sz - 1);
    std::vector<SweepStep> out;
    for (i64 v : ladder.levels()) {
        if (v > top) break;
        int k;
        if (dir > 0) {
            int lo = 0, hi = sz - 1;  // largest k with f(k) >= v
            while (lo < hi) {
                int mid = (lo + hi + 1) / 2;
                if (f(mid) >= v) lo = mid;
                else hi = mid - 1;
            }
            k = lo;
        } else {
            int lo = 0, hi = sz - 1;  // smallest k with f(k) >= v
            while (lo < hi) {
                int mid = (lo + hi) / 2;
                if (f(mid) >= v) hi = mid;
                else lo = mid + 1;
            }
            k = lo;
        }
        SweepStep s{cs[k], f(k)};
        auto same = std::find_if(out.begin(), out.end(), [&](const SweepStep& o) { return o.coord == s.coord; });
        if (same == out.end()) out.push_back(s);
        else same->credit = std::max(same->credit, s.credit);
    }
    std::sort(out.begin(), out.end(), [](const SweepStep& a, const SweepStep& b) { return a.credit < b.credit; });
    return out;
}

void QueryLisIndex::insert(const Point& p) {
    pts_.insert(std::lower_bound(pts_.begin(), pts_.end(), p, by_x), p);
    if (leaf_) {
        leaf_->insert(p);
        last_rebuilt_ = 1;
        return;
    }
    int i = row_of(p.y), j = col_of(p.x);
    rows_[i]->insert(p);
    cols_[j]->insert(p);
    drop_cache(i);
    drop_cache(side_ + j);
    last_rebuilt_ = 2;
    fill_table();
}

void QueryLisIndex::erase(const Point& p) {
    auto it = std::lower_bound(pts_.begin(), pts_.end(), p, by_x);
    require(it != pts_.end() && it->x == p.x && it->y == p.y, ErrorCode::range, "point not present");
    pts_.erase(it);
    if (leaf_) {
        leaf_->erase(p);
        last_rebuilt_ = 1;
        return;
    }
    int i = row_of(p.y), j = col_of(p.x);
    rows_[i]->erase(p);
    cols_[j]->erase(p);
    drop_cache(i);
    drop_cache(side_ + j);
    last_rebuilt_ = 2;
    fill_table();
}

}  // namespace dlis
