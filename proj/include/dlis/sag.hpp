#pragma once

#include <vector>

#include "dlis/monge.hpp"

namespace dlis {

struct GridPoint {
    int x = 0, y = 0;
    bool operator==(const GridPoint& o) const = default;
};

// p <= q in the strict-dominance-or-equal order
inline bool dominated_eq(const GridPoint& p, const GridPoint& q) {
    return (p.x == q.x && p.y == q.y) || (p.x < q.x && p.y < q.y);
}
inline bool dominated(const GridPoint& p, const GridPoint& q) { return p.x < q.x && p.y < q.y; }

using CutPath = std::vector<GridPoint>;  // index d holds the point on diagonal x - y = d - m

struct SliceSpec {
    int n = 0, m = 0;
    CutPath lo, hi;
    std::vector<GridPoint> seeds;
};

// Smallest cut-path through the given antichain, after padding with (0,m) and (n,0).
CutPath extend_antichain(const std::vector<GridPoint>& chain, int n, int m);
bool is_cut_path(const CutPath& p, int n, int m);
// Cut-path along the bottom-left boundary (0,m)..(0,0)..(n,0) and the top-right one.
CutPath lower_boundary(int n, int m);
CutPath upper_boundary(int n, int m);

Perm build_seaweed(const SliceSpec& spec);

// Lifts the seaweed of the graph contracted to rows X and columns Y back to full size.
Perm expand_contracted(const CutPath& lo, const CutPath& hi, int n, int m, const std::vector<char>& in_x,
                       const std::vector<char>& in_y, const Perm& inner);
// The contracted slice itself (cut-paths and seeds mapped by rank).
SliceSpec contract_spec(const SliceSpec& spec, const std::vector<char>& in_x, const std::vector<char>& in_y);

class DistOracle {
public:
    DistOracle() = default;
    explicit DistOracle(const SliceSpec& spec);
    DistOracle(int n, int m, Perm seaweed);
    i64 dist(int a, int b) const;  // dist(lo[a], hi[b])
    int size() const { return n_ + m_ + 1; }
    const Perm& seaweed() const { return perm_; }

private:
    int n_ = 0, m_ = 0;
    Perm perm_;
    SigmaOracle sigma_;
};

// 0/1-weight BFS over the slice vertices; returns distances from `from` to every grid point
// (-1 for points outside the slice).
std::vector<int> slice_bfs(const SliceSpec& spec, GridPoint from);
int dist_bruteforce(const SliceSpec& spec, GridPoint p, GridPoint q);
// Full alignment graph on the whole grid.
int dist_bruteforce_full(int n, int m, const std::vector<GridPoint>& seeds, GridPoint p, GridPoint q);
DenseMatrix distance_matrix_brute(const SliceSpec& spec);

}  // namespace dlis
