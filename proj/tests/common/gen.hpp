#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "dlis/common.hpp"
#include "dlis/monge.hpp"
#include "dlis/sag.hpp"
#include "dlis/seq_store.hpp"

namespace testutil {

using dlis::i64;

inline std::vector<i64> random_perm(dlis::Rng& rng, std::size_t n, i64 scale = 1) {
    std::vector<i64> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = static_cast<i64>(k) * scale;
    for (std::size_t k = n; k > 1; --k) std::swap(v[k - 1], v[rng.below(k)]);
    return v;
}

// O(n^2) longest strictly increasing subsequence.
inline int lis_quadratic(const std::vector<i64>& v) {
    std::vector<int> best(v.size(), 1);
    int top = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i)
            if (v[i] < v[j]) best[j] = std::max(best[j], best[i] + 1);
        top = std::max(top, best[j]);
    }
    return top;
}

// Random edit on a sequence of distinct values drawn below `universe`.
inline dlis::EditOp random_edit(dlis::Rng& rng, const std::vector<i64>& v, std::set<i64>& used, i64 universe) {
    if (v.empty() || rng.below(2) == 0) {
        i64 x;
        do x = static_cast<i64>(rng.below(static_cast<dlis::u64>(universe)));
        while (used.count(x));
        used.insert(x);
        return dlis::EditOp::ins(1 + rng.below(v.size() + 1), x);
    }
    std::size_t pos = 1 + rng.below(v.size());
    used.erase(v[pos - 1]);
    return dlis::EditOp::del(pos);
}

inline dlis::Perm random_sigma(dlis::Rng& rng, int n) {
    dlis::Perm p = dlis::Perm::identity(n);
    for (int k = n - 1; k > 0; --k) std::swap(p.sigma[k], p.sigma[rng.below(k + 1)]);
    return p;
}

// Random monotone path from (0, m) to (n, 0).
inline dlis::CutPath random_path(dlis::Rng& rng, int n, int m) {
    std::vector<int> steps(n, 1);
    steps.resize(n + m, 0);
    for (int k = n + m - 1; k > 0; --k) std::swap(steps[k], steps[rng.below(k + 1)]);
    dlis::CutPath p{{0, m}};
    dlis::GridPoint c{0, m};
    for (int s : steps) {
        if (s) ++c.x;
        else --c.y;
        p.push_back(c);
    }
    return p;
}

// Two random cut-paths ordered diagonal by diagonal, plus up to max_seeds random seeds.
inline dlis::SliceSpec random_slice(dlis::Rng& rng, int max_side, int max_seeds) {
    dlis::SliceSpec s;
    s.n = static_cast<int>(rng.below(max_side + 1));
    s.m = static_cast<int>(rng.below(max_side + 1));
    auto a = random_path(rng, s.n, s.m), b = random_path(rng, s.n, s.m);
    for (int d = 0; d <= s.n + s.m; ++d) {
        bool a_first = a[d].x < b[d].x;
        s.lo.push_back(a_first ? a[d] : b[d]);
        s.hi.push_back(a_first ? b[d] : a[d]);
    }
    int k = (s.n && s.m) ? static_cast<int>(rng.below(max_seeds + 1)) : 0;
    for (int i = 0; i < k; ++i) s.seeds.push_back({static_cast<int>(rng.below(s.n)), static_cast<int>(rng.below(s.m))});
    return s;
}

// Random decreasing subsequence through a random pivot, extended greedily on both sides.
inline std::vector<int> random_decreasing(dlis::Rng& rng, const std::vector<i64>& a, bool maximal) {
    std::vector<int> out;
    int n = static_cast<int>(a.size());
    if (n == 0) return out;
    int pivot = static_cast<int>(rng.below(n));
    int cur = pivot;
    for (int j = pivot - 1; j >= 0; --j)
        if (a[j] > a[cur] && (maximal || rng.below(2))) {
            out.push_back(j);
            cur = j;
        }
    std::reverse(out.begin(), out.end());
    out.push_back(pivot);
    cur = pivot;
    for (int j = pivot + 1; j < n; ++j)
        if (a[j] < a[cur] && (maximal || rng.below(3))) {
            out.push_back(j);
            cur = j;
        }
    return out;
}

}  // namespace testutil
