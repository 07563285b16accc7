#include "dlis/lis_oracle.hpp"

#include <algorithm>

#include "dlis/static_lis.hpp"

namespace dlis {

namespace {

void check_non_increasing(const std::vector<i64>& a, const std::vector<int>& idx) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
        require(idx[k] >= 0 && static_cast<std::size_t>(idx[k]) < a.size(), ErrorCode::range, "index out of range");
        if (k > 0)
            require(idx[k] > idx[k - 1] && a[idx[k]] <= a[idx[k - 1]], ErrorCode::invariant,
                    "subsequence is not non-increasing");
    }
}

}  // namespace

PairOracle::PairOracle(const std::vector<i64>& a, const std::vector<int>& p, const std::vector<int>& q,
                       i64 sentinel)
    : sentinel_(sentinel) {
    require(sentinel > 0, ErrorCode::range, "sentinel must be positive");
    check_non_increasing(a, p);
    check_non_increasing(a, q);

    std::vector<i64> sorted = a;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    auto rk = [&](i64 v) { return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()); };

    const int n = static_cast<int>(a.size());
    const int m = static_cast<int>(sorted.size());
    std::vector<GridPoint> seeds(n);
    for (int i = 0; i < n; ++i) seeds[i] = {i, rk(a[i])};

    std::vector<GridPoint> row_pts, col_pts;
    for (int i : p) row_pts.push_back({i + 1, rk(a[i]) + 1});
    for (int j : q) col_pts.push_back({j, rk(a[j])});
    CutPath ext_lo = extend_antichain(row_pts, n, m);
    CutPath ext_hi = extend_antichain(col_pts, n, m);
    lo_.resize(ext_lo.size());
    hi_.resize(ext_hi.size());
    for (std::size_t d = 0; d < ext_lo.size(); ++d) {
        if (ext_lo[d].x <= ext_hi[d].x) {
            lo_[d] = ext_lo[d];
            hi_[d] = ext_hi[d];
        } else {
            lo_[d] = ext_hi[d];
            hi_[d] = ext_lo[d];
        }
    }

    for (const auto& pt : row_pts) {
        int d = pt.x - pt.y + m;
        row_diag_.push_back(d);
        row_moved_.push_back(!(lo_[d] == pt));
    }
    for (const auto& pt : col_pts) {
        int d = pt.x - pt.y + m;
        col_diag_.push_back(d);
        col_moved_.push_back(!(hi_[d] == pt));
    }

    seeded_ = DistOracle(SliceSpec{n, m, lo_, hi_, std::move(seeds)});
    empty_ = DistOracle(SliceSpec{n, m, lo_, hi_, {}});
    shift_ = sentinel_ + 2 + n;
}

i64 PairOracle::entry(std::size_t i, std::size_t j) const {
    require(i < rows() && j < cols(), ErrorCode::range, "oracle entry out of range");
    const int a = row_diag_[i], b = col_diag_[j];
    const i64 big = sentinel_ + 2;
    const i64 span = static_cast<i64>(hi_[b].x) - lo_[a].x + hi_[b].y - lo_[a].y;
    const i64 twice = big * span - seeded_.dist(a, b) - (big - 1) * empty_.dist(a, b);
    i64 v = twice / 2 + 2;
    if (row_moved_[i]) v -= shift_;
    if (col_moved_[j]) v -= shift_;
    return v;
}

ImplicitAntiMonge PairOracle::matrix() const {
    return ImplicitAntiMonge{rows(), cols(), [this](std::size_t i, std::size_t j) { return entry(i, j); }};
}

SemiLocal::SemiLocal(const std::vector<i64>& a) : n_(a.size()) {
    if (n_ == 0) return;
    auto ranks = rank_reduce(a);
    const i64 top = static_cast<i64>(n_);
    std::vector<i64> padded;
    padded.reserve(3 * n_);
    std::vector<int> p, q;
    for (std::size_t i = 0; i < n_; ++i) {
        p.push_back(static_cast<int>(padded.size()));
        padded.push_back(-1);
        padded.push_back(ranks[i]);
        q.push_back(static_cast<int>(padded.size()));
        padded.push_back(top);
    }
    inner_ = PairOracle(padded, p, q, default_sentinel(padded.size()));
}

i64 SemiLocal::query(std::size_t i, std::size_t j) const {
    require(i <= j && j < n_, ErrorCode::range, "substring range invalid");
    return inner_.entry(i, j) - 2;
}

PairOracle boundary_matrix(const std::vector<i64>& vals, const std::vector<int>& prev, const std::vector<int>& cur,
                           i64 sentinel) {
    for (std::size_t k = 1; k < cur.size(); ++k)
        require(cur[k] > cur[k - 1] && vals[cur[k]] < vals[cur[k - 1]], ErrorCode::invariant,
                "boundary is not decreasing");
    if (prev.size() == 1 && prev[0] < 0) {
        auto ranks = rank_reduce(vals);
        std::vector<i64> ext;
        ext.reserve(vals.size() + 1);
        ext.push_back(-1);
        ext.insert(ext.end(), ranks.begin(), ranks.end());
        std::vector<int> c(cur);
        for (int& x : c) ++x;
        return PairOracle(ext, {0}, c, sentinel);
    }
    for (std::size_t k = 1; k < prev.size(); ++k)
        require(prev[k] > prev[k - 1] && vals[prev[k]] < vals[prev[k - 1]], ErrorCode::invariant,
                "boundary is not decreasing");
    return PairOracle(vals, prev, cur, sentinel);
}

}  // namespace dlis
