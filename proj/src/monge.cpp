#include "dlis/monge.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace dlis {

Perm Perm::identity(int n) {
    Perm p;
    p.sigma.resize(n);
    for (int i = 0; i < n; ++i) p.sigma[i] = i;
    return p;
}

bool is_permutation(const std::vector<int>& sigma) {
    std::vector<char> seen(sigma.size(), 0);
    for (int s : sigma) {
        if (s < 0 || static_cast<std::size_t>(s) >= sigma.size() || seen[s]) return false;
        seen[s] = 1;
    }
    return true;
}

DenseMatrix to_dense(const Perm& p) {
    DenseMatrix m(p.sigma.size(), p.sigma.size());
    for (std::size_t i = 0; i < p.sigma.size(); ++i) m(i, p.sigma[i]) = 1;
    return m;
}

Perm from_dense(const DenseMatrix& m) {
    require(m.rows == m.cols, ErrorCode::dimension, "permutation matrix must be square");
    Perm p;
    p.sigma.assign(m.rows, -1);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            i64 v = m(i, j);
            if (v == 0) continue;
            require(v == 1 && p.sigma[i] < 0, ErrorCode::invariant, "not a permutation matrix");
            p.sigma[i] = static_cast<int>(j);
        }
    require(is_permutation(p.sigma), ErrorCode::invariant, "not a permutation matrix");
    return p;
}

DenseMatrix distribution(const DenseMatrix& a) {
    DenseMatrix s(a.rows + 1, a.cols + 1);
    for (std::size_t i = a.rows; i-- > 0;)
        for (std::size_t j = 1; j <= a.cols; ++j)
            s(i, j) = s(i + 1, j) + s(i, j - 1) - s(i + 1, j - 1) + a(i, j - 1);
    return s;
}

DenseMatrix density(const DenseMatrix& a) {
    if (a.rows < 1 || a.cols < 1) return DenseMatrix();
    DenseMatrix d(a.rows - 1, a.cols - 1);
    for (std::size_t i = 0; i + 1 < a.rows; ++i)
        for (std::size_t j = 0; j + 1 < a.cols; ++j)
            d(i, j) = a(i + 1, j) + a(i, j + 1) - a(i, j) - a(i + 1, j + 1);
    return d;
}

DenseMatrix minplus_dense(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.cols == b.rows, ErrorCode::dimension, "min-plus dimension mismatch");
    DenseMatrix c(a.rows, b.cols, std::numeric_limits<i64>::max());
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            i64 x = a(i, k);
            for (std::size_t j = 0; j < b.cols; ++j) c(i, j) = std::min(c(i, j), x + b(k, j));
        }
    return c;
}

Perm seaweed_product_dense(const Perm& a, const Perm& b) {
    require(a.n() == b.n(), ErrorCode::dimension, "seaweed product size mismatch");
    return from_dense(density(minplus_dense(distribution(to_dense(a)), distribution(to_dense(b)))));
}

namespace {

// a, b: permutations of [0, n); returns a box b.
std::vector<int> product_rec(const std::vector<int>& a, const std::vector<int>& b) {
    const int n = static_cast<int>(a.size());
    if (n <= 1) return std::vector<int>(n, 0);
    const int h = n / 2;

    // split the middle index into [0, h) and [h, n)
    std::vector<int> rows_lo, rows_hi;
    rows_lo.reserve(h);
    rows_hi.reserve(n - h);
    for (int i = 0; i < n; ++i) (a[i] < h ? rows_lo : rows_hi).push_back(i);

    std::vector<char> col_is_lo(n, 0);
    for (int j = 0; j < h; ++j) col_is_lo[b[j]] = 1;
    std::vector<int> col_rank(n);
    int clo = 0, chi = 0;
    std::vector<int> cols_lo(h), cols_hi(n - h);
    for (int k = 0; k < n; ++k) {
        if (col_is_lo[k]) {
            cols_lo[clo] = k;
            col_rank[k] = clo++;
        } else {
            cols_hi[chi] = k;
            col_rank[k] = chi++;
        }
    }

    std::vector<int> a_lo(h), b_lo(h), a_hi(n - h), b_hi(n - h);
    for (int r = 0; r < h; ++r) a_lo[r] = a[rows_lo[r]];
    for (int r = 0; r < n - h; ++r) a_hi[r] = a[rows_hi[r]] - h;
    for (int j = 0; j < h; ++j) b_lo[j] = col_rank[b[j]];
    for (int j = h; j < n; ++j) b_hi[j - h] = col_rank[b[j]];

    std::vector<int> p_lo = product_rec(a_lo, b_lo);
    std::vector<int> p_hi = product_rec(a_hi, b_hi);

    // combined nonzeros: row -> col, plus owner flag
    std::vector<int> col_of(n), row_of(n);
    std::vector<char> is_hi(n, 0);
    for (int r = 0; r < h; ++r) col_of[rows_lo[r]] = cols_lo[p_lo[r]];
    for (int r = 0; r < n - h; ++r) {
        col_of[rows_hi[r]] = cols_hi[p_hi[r]];
        is_hi[rows_hi[r]] = 1;
    }
    for (int i = 0; i < n; ++i) row_of[col_of[i]] = i;

    // delta(i,k) = #hi(row < i, col < k) - #lo(row >= i, col >= k), monotone in i and k.
    // neg_end(i) = max k with delta <= 0; pos_start(i) = min k with delta >= 0.
    std::vector<int> neg_end(n + 1), pos_start(n + 1);
    auto step_k = [&](int i, int k) {  // delta(i,k+1) - delta(i,k)
        int r = row_of[k];
        return (is_hi[r] && r < i) || (!is_hi[r] && r >= i) ? 1 : 0;
    };
    auto step_i = [&](int i, int k) {  // delta(i-1,k) - delta(i,k)
        int r = i - 1, c = col_of[r];
        return (is_hi[r] && c < k) || (!is_hi[r] && c >= k) ? -1 : 0;
    };
    int ne = 0, dne = 0;  // delta(n, 0) = 0
    int ps = 0, dps = 0;
    for (int i = n;; --i) {
        while (ne < n && dne + step_k(i, ne) <= 0) {
            dne += step_k(i, ne);
            ++ne;
        }
        while (dps < 0) {
            dps += step_k(i, ps);
            ++ps;
        }
        neg_end[i] = ne;
        pos_start[i] = ps;
        if (i == 0) break;
        dne += step_i(i, ne);
        dps += step_i(i, ps);
    }

    std::vector<int> out(n, -1);
    for (int i = 0; i < n; ++i) {
        int k = col_of[i];
        if (!is_hi[i]) {
            if (k + 1 <= neg_end[i + 1]) out[i] = k;
        } else {
            if (k >= pos_start[i]) out[i] = k;
        }
        if (out[i] < 0) {
            int c = pos_start[i] - 1;
            if (pos_start[i] >= 1 && neg_end[i + 1] == c) out[i] = c;
        }
    }
    return out;
}

}  // namespace

Perm seaweed_product(const Perm& a, const Perm& b) {
    require(a.n() == b.n(), ErrorCode::dimension, "seaweed product size mismatch");
    Perm c;
    c.sigma = product_rec(a.sigma, b.sigma);
    require(is_permutation(c.sigma), ErrorCode::internal, "seaweed product lost bijectivity");
    return c;
}

// ---- SigmaOracle: wavelet matrix over sigma ----

int SigmaOracle::Level::ones_before(int pos) const {
    int w = pos >> 6, b = pos & 63;
    int r = rank[w];
    if (b) r += std::popcount(bits[w] & ((u64(1) << b) - 1));
    return r;
}

SigmaOracle::SigmaOracle(const Perm& p) : n_(p.n()) {
    depth_ = std::max(1, ceil_log2(static_cast<u64>(n_) + 1));
    std::vector<int> cur(p.sigma), nxt(n_);
    levels_.resize(depth_);
    for (int d = 0; d < depth_; ++d) {
        int bit = depth_ - 1 - d;
        Level& L = levels_[d];
        std::size_t words = static_cast<std::size_t>(n_) / 64 + 1;
        L.bits.assign(words, 0);
        L.rank.assign(words + 1, 0);
        for (int i = 0; i < n_; ++i)
            if ((cur[i] >> bit) & 1) L.bits[i >> 6] |= u64(1) << (i & 63);
        for (std::size_t w = 0; w < words; ++w) L.rank[w + 1] = L.rank[w] + std::popcount(L.bits[w]);
        int z = 0;
        for (int i = 0; i < n_; ++i)
            if (!((cur[i] >> bit) & 1)) nxt[z++] = cur[i];
        L.zeros = z;
        for (int i = 0; i < n_; ++i)
            if ((cur[i] >> bit) & 1) nxt[z++] = cur[i];
        cur.swap(nxt);
    }
}

int SigmaOracle::count_less(int lo, int hi, int j) const {
    if (j <= 0 || lo >= hi) return 0;
    if (j >= (1 << depth_)) return hi - lo;
    int res = 0;
    for (int d = 0; d < depth_; ++d) {
        int bit = depth_ - 1 - d;
        const Level& L = levels_[d];
        int olo = L.ones_before(lo), ohi = L.ones_before(hi);
        if ((j >> bit) & 1) {
            res += (hi - lo) - (ohi - olo);
            lo = L.zeros + olo;
            hi = L.zeros + ohi;
        } else {
            lo = lo - olo;
            hi = hi - ohi;
        }
    }
    return res;
}

int SigmaOracle::query(int i, int j) const {
    require(i >= 0 && i <= n_ && j >= 0 && j <= n_, ErrorCode::range, "sigma query out of range");
    return count_less(i, n_, j);
}

// ---- SMAWK ----

namespace {

void smawk_rec(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
               const std::function<i64(std::size_t, std::size_t)>& at, std::vector<std::size_t>& arg) {
    if (rows.empty()) return;
    std::vector<std::size_t> st;
    st.reserve(rows.size());
    for (std::size_t c : cols) {
        while (!st.empty()) {
            std::size_t r = rows[st.size() - 1];
            if (at(r, st.back()) > at(r, c))
                st.pop_back();
            else
                break;
        }
        if (st.size() < rows.size()) st.push_back(c);
    }
    std::vector<std::size_t> odd;
    for (std::size_t i = 1; i < rows.size(); i += 2) odd.push_back(rows[i]);
    smawk_rec(odd, st, at, arg);

    std::size_t ci = 0;
    for (std::size_t i = 0; i < rows.size(); i += 2) {
        std::size_t r = rows[i];
        std::size_t stop = (i + 1 < rows.size()) ? arg[rows[i + 1]] : st.back();
        std::size_t best = st[ci];
        i64 bv = at(r, best);
        while (st[ci] != stop) {
            ++ci;
            i64 v = at(r, st[ci]);
            if (v < bv) {
                bv = v;
                best = st[ci];
            }
        }
        arg[r] = best;
    }
}

}  // namespace

std::vector<std::size_t> smawk_row_minima(std::size_t rows, std::size_t cols,
                                          const std::function<i64(std::size_t, std::size_t)>& at) {
    std::vector<std::size_t> arg(rows, 0);
    if (rows == 0 || cols == 0) return arg;
    std::vector<std::size_t> rs(rows), cs(cols);
    for (std::size_t i = 0; i < rows; ++i) rs[i] = i;
    for (std::size_t j = 0; j < cols; ++j) cs[j] = j;
    smawk_rec(rs, cs, at, arg);
    return arg;
}

std::vector<i64> smawk_maxplus(const ImplicitAntiMonge& m, const std::vector<i64>& v, u64* probes) {
    require(v.size() == m.rows, ErrorCode::dimension, "vector length must equal matrix rows");
    if (m.cols == 0) return {};
    require(m.rows > 0, ErrorCode::dimension, "empty matrix");
    // rows of the transposed problem are the output columns k
    auto at = [&](std::size_t k, std::size_t j) -> i64 {
        if (probes) ++*probes;
        return -(v[j] + m.entry(j, k));
    };
    auto arg = smawk_row_minima(m.cols, m.rows, at);
    std::vector<i64> out(m.cols);
    for (std::size_t k = 0; k < m.cols; ++k) out[k] = v[arg[k]] + m.entry(arg[k], k);
    if (probes) *probes += m.cols;
    return out;
}

std::vector<i64> maxplus_brute(const ImplicitAntiMonge& m, const std::vector<i64>& v) {
    require(v.size() == m.rows, ErrorCode::dimension, "vector length must equal matrix rows");
    std::vector<i64> out(m.cols, std::numeric_limits<i64>::min());
    for (std::size_t k = 0; k < m.cols; ++k)
        for (std::size_t j = 0; j < m.rows; ++j) out[k] = std::max(out[k], v[j] + m.entry(j, k));
    return out;
}

}  // namespace dlis
