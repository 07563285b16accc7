#include "dlis/static_lis.hpp"

#include <algorithm>

namespace dlis {

int patience_lis(const std::vector<i64>& values) {
    std::vector<i64> tails;
    tails.reserve(64);
    for (i64 v : values) {
        auto it = std::lower_bound(tails.begin(), tails.end(), v);
        if (it == tails.end())
            tails.push_back(v);
        else
            *it = v;
    }
    return static_cast<int>(tails.size());
}

std::vector<int> levels(const std::vector<i64>& values) {
    std::vector<i64> tails;
    std::vector<int> b(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
        auto it = std::lower_bound(tails.begin(), tails.end(), values[j]);
        b[j] = static_cast<int>(it - tails.begin()) + 1;
        if (it == tails.end())
            tails.push_back(values[j]);
        else
            *it = values[j];
    }
    return b;
}

int lis_rect_brute(const std::vector<Point>& ps, const Rect& r) {
    std::vector<Point> in;
    for (const auto& p : ps)
        if (r.contains(p)) in.push_back(p);
    std::sort(in.begin(), in.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
    std::vector<int> best(in.size(), 1);
    int ans = 0;
    for (std::size_t i = 0; i < in.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (in[j].x < in[i].x && in[j].y < in[i].y) best[i] = std::max(best[i], best[j] + 1);
        ans = std::max(ans, best[i]);
    }
    return ans;
}

std::optional<int> lis_from_to_brute(const std::vector<i64>& values, std::size_t p, std::size_t q) {
    if (p >= q || q >= values.size() || values[p] >= values[q]) return std::nullopt;
    std::vector<int> best(q - p + 1, 0);
    best[0] = 1;
    for (std::size_t i = p + 1; i <= q; ++i) {
        if (values[i] <= values[p] || values[i] >= values[q]) {
            if (i != q) continue;
        }
        int b = 0;
        for (std::size_t j = p; j < i; ++j)
            if (best[j - p] > 0 && values[j] < values[i]) b = std::max(b, best[j - p] + 1);
        best[i - p] = b;
    }
    return best[q - p];
}

std::vector<int> rank_reduce(const std::vector<i64>& values) {
    std::vector<i64> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), values[i]) - sorted.begin());
    return out;
}

}  // namespace dlis
