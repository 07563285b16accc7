#pragma once

#include <optional>
#include <vector>

#include "dlis/common.hpp"

namespace dlis {

struct Point {
    i64 x;
    i64 y;
};

// Half-open box [x_lo, x_hi) x [y_lo, y_hi).
struct Rect {
    i64 x_lo, x_hi, y_lo, y_hi;
    bool contains(const Point& p) const { return p.x >= x_lo && p.x < x_hi && p.y >= y_lo && p.y < y_hi; }
};

int patience_lis(const std::vector<i64>& values);

// b[j] = length of the longest increasing subsequence ending at values[j].
std::vector<int> levels(const std::vector<i64>& values);

// O(k^2) chain DP over the points inside r.
int lis_rect_brute(const std::vector<Point>& ps, const Rect& r);

// Longest increasing subsequence that starts at values[p] and ends at values[q]
// (0-based). Empty when p >= q or values[p] >= values[q].
std::optional<int> lis_from_to_brute(const std::vector<i64>& values, std::size_t p, std::size_t q);

// Rank-reduce to [0, n); ties share a rank.
std::vector<int> rank_reduce(const std::vector<i64>& values);

}  // namespace dlis
