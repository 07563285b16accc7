#pragma once

#include <vector>

#include "dlis/monge.hpp"
#include "dlis/sag.hpp"

namespace dlis {

inline i64 default_sentinel(std::size_t n) { return 4 * (static_cast<i64>(n) + 2); }

// Anti-Monge access to from-to LIS lengths between two non-increasing subsequences of a.
// entry(i, j) = LIS starting at a[p[i]] and ending at a[q[j]] when p[i] < q[j] and a[p[i]] < a[q[j]],
// otherwise at most -sentinel. Values may repeat; indices are 0-based.
class PairOracle {
public:
    PairOracle() = default;
    PairOracle(const std::vector<i64>& a, const std::vector<int>& p, const std::vector<int>& q, i64 sentinel);

    i64 entry(std::size_t i, std::size_t j) const;
    std::size_t rows() const { return row_diag_.size(); }
    std::size_t cols() const { return col_diag_.size(); }
    i64 sentinel() const { return sentinel_; }
    ImplicitAntiMonge matrix() const;

private:
    i64 sentinel_ = 0;  // the caller's N; internally N + 2 is used
    i64 shift_ = 0;     // N + 2 + |S|
    CutPath lo_, hi_;
    DistOracle seeded_, empty_;
    std::vector<int> row_diag_, col_diag_;
    std::vector<char> row_moved_, col_moved_;
};

// Substring LIS over a fixed sequence.
class SemiLocal {
public:
    SemiLocal() = default;
    explicit SemiLocal(const std::vector<i64>& a);
    // LIS of a[i..j], 0-based inclusive.
    i64 query(std::size_t i, std::size_t j) const;
    std::size_t size() const { return n_; }

private:
    std::size_t n_ = 0;
    PairOracle inner_;
};

// Oracle between the previous boundary (rows) and the current boundary (columns), built over the
// restricted subsequence `vals`: prev[j] and cur[k] index into vals. A negative entry in prev
// stands for a virtual source placed before everything with value below everything.
PairOracle boundary_matrix(const std::vector<i64>& vals, const std::vector<int>& prev, const std::vector<int>& cur,
                           i64 sentinel);

}  // namespace dlis
