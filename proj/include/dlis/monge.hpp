#pragma once

#include <functional>
#include <vector>

#include "dlis/common.hpp"

namespace dlis {

struct DenseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<i64> a;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c, i64 fill = 0) : rows(r), cols(c), a(r * c, fill) {}
    i64& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    i64 operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    bool operator==(const DenseMatrix& o) const = default;
};

// sigma[i] = j iff P[i][j] = 1
struct Perm {
    std::vector<int> sigma;
    int n() const { return static_cast<int>(sigma.size()); }
    bool operator==(const Perm& o) const = default;
    static Perm identity(int n);
};

bool is_permutation(const std::vector<int>& sigma);
DenseMatrix to_dense(const Perm& p);
// Inverse of to_dense; throws invariant when m is not a permutation matrix.
Perm from_dense(const DenseMatrix& m);

DenseMatrix distribution(const DenseMatrix& a);
DenseMatrix density(const DenseMatrix& a);
DenseMatrix minplus_dense(const DenseMatrix& a, const DenseMatrix& b);

// (A^S (.) B^S)^box for permutation matrices, O(n log n).
Perm seaweed_product(const Perm& a, const Perm& b);
// Same product through the dense pipeline; O(n^3) reference.
Perm seaweed_product_dense(const Perm& a, const Perm& b);

// Dominance counting over {(i, sigma(i))}: query(i, j) = #{i' >= i : sigma(i') < j}.
class SigmaOracle {
public:
    SigmaOracle() = default;
    explicit SigmaOracle(const Perm& p);
    int n() const { return n_; }
    int query(int i, int j) const;

private:
    struct Level {
        std::vector<u64> bits;
        std::vector<int> rank;  // ones before each word
        int zeros = 0;
        int ones_before(int pos) const;
    };
    int n_ = 0;
    int depth_ = 0;
    std::vector<Level> levels_;
    int count_less(int lo, int hi, int j) const;
};

struct ImplicitAntiMonge {
    std::size_t rows = 0, cols = 0;
    std::function<i64(std::size_t, std::size_t)> entry;
};

// out[k] = max_j (v[j] + M(j, k)) with O(rows + cols) probes. probes, when given, is incremented.
std::vector<i64> smawk_maxplus(const ImplicitAntiMonge& m, const std::vector<i64>& v, u64* probes = nullptr);
std::vector<i64> maxplus_brute(const ImplicitAntiMonge& m, const std::vector<i64>& v);

// Row minima of a totally monotone (Monge) matrix given by lookup; returns argmin per row.
std::vector<std::size_t> smawk_row_minima(std::size_t rows, std::size_t cols,
                                          const std::function<i64(std::size_t, std::size_t)>& at);

}  // namespace dlis
