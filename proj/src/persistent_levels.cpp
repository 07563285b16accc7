#include <algorithm>
#include <climits>

#include "dlis/ccp.hpp"

namespace dlis {

namespace {

using NodeP = const LayerNode*;

void pull(LayerNode* n) {
    n->size = 1;
    n->lo_lay = INT_MAX;
    n->lo_cnt = 0;
    n->hi_lay = INT_MIN;
    n->hi_cnt = 0;
    auto add = [n](int lo, int lo_c, int hi, int hi_c) {
        if (lo < n->lo_lay) {
            n->lo_lay = lo;
            n->lo_cnt = lo_c;
        } else if (lo == n->lo_lay) {
            n->lo_cnt += lo_c;
        }
        if (hi > n->hi_lay) {
            n->hi_lay = hi;
            n->hi_cnt = hi_c;
        } else if (hi == n->hi_lay) {
            n->hi_cnt += hi_c;
        }
    };
    if (n->lay >= 0) add(n->lay, 1, n->lay, 1);
    for (NodeP c : {n->l, n->r}) {
        if (!c) continue;
        n->size += c->size;
        if (c->lo_cnt) add(c->lo_lay, c->lo_cnt, c->hi_lay, c->hi_cnt);
    }
}

NodeP leftmost(NodeP t) {
    while (t->l) t = t->l;
    return t;
}

NodeP rightmost(NodeP t) {
    while (t->r) t = t->r;
    return t;
}

void inorder(NodeP t, std::vector<NodeP>& out) {
    std::vector<NodeP> st;
    while (t || !st.empty()) {
        while (t) {
            st.push_back(t);
            t = t->l;
        }
        t = st.back();
        st.pop_back();
        out.push_back(t);
        t = t->r;
    }
}

}  // namespace

LayerNode* NodeArena::make() {
    constexpr std::size_t chunk = 4096;
    if (chunks_.empty() || used_ == chunk) {
        chunks_.emplace_back(new LayerNode[chunk]);
        used_ = 0;
    }
    ++count_;
    return &chunks_.back()[used_++];
}

const LayerNode* build_layer_treap(const std::vector<LayerNode*>& nodes) {
    std::vector<LayerNode*> st;
    for (LayerNode* n : nodes) {
        n->l = n->r = nullptr;
        LayerNode* last = nullptr;
        while (!st.empty() && st.back()->pri < n->pri) {
            last = st.back();
            st.pop_back();
        }
        n->l = last;
        if (!st.empty()) st.back()->r = n;
        st.push_back(n);
    }
    if (st.empty()) return nullptr;
    std::vector<std::pair<LayerNode*, bool>> work{{st.front(), false}};
    while (!work.empty()) {
        auto [n, done] = work.back();
        work.pop_back();
        if (done) {
            pull(n);
            continue;
        }
        work.push_back({n, true});
        if (n->l) work.push_back({const_cast<LayerNode*>(n->l), false});
        if (n->r) work.push_back({const_cast<LayerNode*>(n->r), false});
    }
    return st.front();
}

PersistentLevels::PersistentLevels(const DynSeq* seq, NodeArena* arena, int src_layer, int tag_layer, u64 seed)
    : seq_(seq), arena_(arena), src_layer_(src_layer), tag_layer_(tag_layer), rng_(seed) {}

void PersistentLevels::init(int first_level, std::vector<const LayerNode*> roots, std::vector<DynSeq::Handle> sources,
                            std::vector<int> source_levels) {
    require(sources.size() == source_levels.size(), ErrorCode::invariant, "source level count mismatch");
    base_ = first_level;
    roots_ = std::move(roots);
    trim();
    healthy_ = true;
    src_at_ = std::move(sources);
    src_levels_ = std::move(source_levels);
    for (int lv : src_levels_) require(lv >= 1, ErrorCode::range, "source level must be positive");
    src_val_.clear();
    for (auto h : src_at_) src_val_.push_back(h->val);
    src_cap_ = 1;
    while (src_cap_ < src_at_.size()) src_cap_ <<= 1;
    src_tree_.assign(2 * src_cap_, INT_MIN);
    for (std::size_t j = 0; j < src_at_.size(); ++j) src_tree_[src_cap_ + j] = src_levels_[j];
    for (std::size_t i = src_cap_ - 1; i >= 1; --i) src_tree_[i] = std::max(src_tree_[2 * i], src_tree_[2 * i + 1]);
}

LayerNode* PersistentLevels::clone(NodeP t) {
    touch();
    LayerNode* n = arena_->make();
    *n = *t;
    return n;
}

void PersistentLevels::split(NodeP t, int k, NodeP& a, NodeP& b) {
    if (!t) {
        a = b = nullptr;
        return;
    }
    if (k <= 0) {
        a = nullptr;
        b = t;
        return;
    }
    if (k >= t->size) {
        a = t;
        b = nullptr;
        return;
    }
    LayerNode* c = clone(t);
    if (sz(t->l) >= k) {
        NodeP x, y;
        split(t->l, k, x, y);
        c->l = y;
        pull(c);
        a = x;
        b = c;
    } else {
        NodeP x, y;
        split(t->r, k - sz(t->l) - 1, x, y);
        c->r = x;
        pull(c);
        a = c;
        b = y;
    }
}

PersistentLevels::NodeP PersistentLevels::merge(NodeP a, NodeP b) {
    if (!a) return b;
    if (!b) return a;
    if (a->pri > b->pri) {
        LayerNode* c = clone(a);
        c->r = merge(a->r, b);
        pull(c);
        return c;
    }
    LayerNode* c = clone(b);
    c->l = merge(a, b->l);
    pull(c);
    return c;
}

PersistentLevels::NodeP PersistentLevels::build(const std::vector<NodeP>& items) {
    std::vector<LayerNode*> fresh;
    fresh.reserve(items.size());
    for (NodeP t : items) fresh.push_back(clone(t));
    return build_layer_treap(fresh);
}

PersistentLevels::NodeP& PersistentLevels::root(int k) {
    if (roots_.empty()) base_ = k;
    if (k < base_) {
        roots_.insert(roots_.begin(), static_cast<std::size_t>(base_ - k), nullptr);
        base_ = k;
    }
    std::size_t idx = static_cast<std::size_t>(k - base_);
    if (idx >= roots_.size()) roots_.resize(idx + 1, nullptr);
    return roots_[idx];
}

PersistentLevels::NodeP PersistentLevels::root_or_null(int k) const {
    if (k < base_ || static_cast<std::size_t>(k - base_) >= roots_.size()) return nullptr;
    return roots_[k - base_];
}

void PersistentLevels::trim() {
    while (!roots_.empty() && !roots_.back()) roots_.pop_back();
    std::size_t lead = 0;
    while (lead < roots_.size() && !roots_[lead]) ++lead;
    if (lead) {
        roots_.erase(roots_.begin(), roots_.begin() + static_cast<std::ptrdiff_t>(lead));
        base_ += static_cast<int>(lead);
    }
}

int PersistentLevels::highest_level() const {
    return roots_.empty() ? 0 : base_ + static_cast<int>(roots_.size()) - 1;
}

int PersistentLevels::count_pos_less(NodeP t, std::size_t p) const {
    int c = 0;
    while (t) {
        touch();
        if (pos(t) < p) {
            c += sz(t->l) + 1;
            t = t->r;
        } else {
            t = t->l;
        }
    }
    return c;
}

int PersistentLevels::count_val_greater(NodeP t, i64 v) const {
    int c = 0;
    while (t) {
        touch();
        if (t->val > v) {
            c += sz(t->l) + 1;
            t = t->r;
        } else {
            t = t->l;
        }
    }
    return c;
}

PersistentLevels::NodeP PersistentLevels::kth(NodeP t, int k) const {
    while (t) {
        touch();
        int ls = sz(t->l);
        if (k < ls) {
            t = t->l;
        } else if (k == ls) {
            return t;
        } else {
            k -= ls + 1;
            t = t->r;
        }
    }
    return nullptr;
}

int PersistentLevels::regular_prefix(NodeP t, int k) const {
    int s = 0, kk = k;
    while (t && kk > 0) {
        touch();
        if (kk <= sz(t->l)) {
            t = t->l;
        } else {
            s += srcs(t->l) + (t->lay == src_layer_ ? 1 : 0);
            kk -= sz(t->l) + 1;
            t = t->r;
        }
    }
    return k - s;
}

int PersistentLevels::kth_regular(NodeP t, int r) const {
    int base = 0;
    while (t) {
        touch();
        int lreg = sz(t->l) - srcs(t->l);
        if (lreg > r) {
            t = t->l;
            continue;
        }
        r -= lreg;
        if (t->lay != src_layer_) {
            if (r == 0) return base + sz(t->l);
            --r;
        }
        base += sz(t->l) + 1;
        t = t->r;
    }
    return -1;
}

void PersistentLevels::emit_tags(NodeP t, int delta) {
    if (!sink_ || !t || tags(t) == 0) return;
    if (t->lay == tag_layer_) sink_->push_back({t->at, delta});
    emit_tags(t->l, delta);
    emit_tags(t->r, delta);
}

int PersistentLevels::find_source(std::size_t p) const {
    std::size_t lo = 0, hi = src_at_.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (pos(src_at_[mid]) < p)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < src_at_.size() && pos(src_at_[lo]) == p) return static_cast<int>(lo);
    return -1;
}

int PersistentLevels::source_level_above(std::size_t p, i64 v) const {
    if (src_at_.empty()) return 0;
    std::size_t lo = 0, hi = src_at_.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        touch();
        if (pos(src_at_[mid]) < p)
            lo = mid + 1;
        else
            hi = mid;
    }
    std::size_t c = lo;
    lo = 0;
    hi = c;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (src_val_[mid] < v)
            hi = mid;
        else
            lo = mid + 1;
    }
    if (lo >= c) return 0;
    int best = INT_MIN;
    for (std::size_t a = lo + src_cap_, b = c + src_cap_; a < b; a >>= 1, b >>= 1) {
        if (a & 1) best = std::max(best, src_tree_[a++]);
        if (b & 1) best = std::max(best, src_tree_[--b]);
    }
    return std::max(best, 0);
}

void PersistentLevels::set_source_level(int j, int level) {
    src_levels_[j] = level;
    std::size_t i = src_cap_ + static_cast<std::size_t>(j);
    src_tree_[i] = level;
    for (i >>= 1; i; i >>= 1) src_tree_[i] = std::max(src_tree_[2 * i], src_tree_[2 * i + 1]);
}

int PersistentLevels::search_level(std::size_t p, i64 v) const {
    int floor = source_level_above(p, v);
    int lo = floor + 1, hi = highest_level(), best = floor;
    while (lo <= hi) {
        int mid = lo + (hi - lo) / 2;
        NodeP t = root_or_null(mid);
        bool dom = false;
        if (t) {
            int c = count_pos_less(t, p);
            dom = c > 0 && kth(t, c - 1)->val < v;
        }
        if (dom) {
            best = mid;
            lo = mid + 1;
        } else {
            hi = mid - 1;
        }
    }
    return best + 1;
}

int PersistentLevels::level_of(DynSeq::Handle at, i64 val) const {
    std::size_t p = pos(at);
    int j = find_source(p);
    if (j >= 0) return src_levels_[j];
    return search_level(p, val);
}

std::vector<std::pair<int, std::vector<i64>>> PersistentLevels::dump() const {
    std::vector<std::pair<int, std::vector<i64>>> out;
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        if (!roots_[i]) continue;
        std::vector<NodeP> lv;
        inorder(roots_[i], lv);
        std::vector<i64> vs;
        for (NodeP n : lv) vs.push_back(n->val);
        out.push_back({base_ + static_cast<int>(i), std::move(vs)});
    }
    return out;
}

int PersistentLevels::index_in(NodeP t, DynSeq::Handle h) const {
    int idx = count_pos_less(t, pos(h));
    if (idx >= sz(t)) return -1;
    return kth(t, idx)->at == h ? idx : -1;
}

PersistentLevels::Span PersistentLevels::hull(NodeP t, Span s, const std::vector<int>& marks) {
    int a = index_in(t, src_at_[marks.front()]);
    int b = index_in(t, src_at_[marks.back()]);
    if (a < 0 || b < 0) {
        healthy_ = false;
        return s;
    }
    if (s.empty()) return {a, b};
    return {std::min(s.lo, a), std::max(s.hi, b)};
}

bool PersistentLevels::consistent(NodeP t, Span s, std::size_t marks, int regulars) {
    if (!healthy_) return false;
    if (s.empty()) return marks == 0 && regulars == 0;
    int regs = regular_prefix(t, s.hi + 1) - regular_prefix(t, s.lo);
    int len = s.hi - s.lo + 1;
    return regs == regulars && static_cast<std::size_t>(len - regs) == marks;
}

PersistentLevels::NodeP PersistentLevels::extract(int k, Span s) {
    NodeP a, b, mid, c;
    split(root(k), s.lo, a, b);
    split(b, s.hi - s.lo + 1, mid, c);
    root(k) = merge(a, c);
    return mid;
}

void PersistentLevels::place(int k, NodeP block) {
    if (!block) return;
    NodeP t = root(k);
    if (!t) {
        root(k) = block;
        return;
    }
    NodeP first = leftmost(block);
    NodeP last = rightmost(block);
    int cut = count_pos_less(t, pos(first));
    NodeP a, b;
    split(t, cut, a, b);
    if (b && pos(leftmost(b)) < pos(last)) {
        healthy_ = false;
        std::vector<NodeP> items;
        inorder(a, items);
        inorder(block, items);
        inorder(b, items);
        std::vector<std::pair<std::size_t, NodeP>> keyed;
        for (NodeP n : items) keyed.push_back({pos(n), n});
        std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        items.clear();
        for (auto& kv : keyed) items.push_back(kv.second);
        root(k) = build(items);
        return;
    }
    root(k) = merge(merge(a, block), b);
}

void PersistentLevels::promote(int start, const Marks& marks, NodeP fresh, int fresh_level) {
    NodeP carry = nullptr;
    std::size_t mi = 0;
    for (int k = start;; ++k) {
        bool has_marks = mi < marks.size() && marks[mi].first == k;
        bool fresh_here = fresh && k == fresh_level;
        if (!carry && !has_marks && !fresh_here) {
            if (mi >= marks.size()) break;
            k = marks[mi].first - 1;
            continue;
        }
        NodeP t = root_or_null(k);
        Span s;
        int regs = 0;
        if (t && (carry || fresh_here)) {
            NodeP first = carry ? leftmost(carry) : fresh;
            NodeP last = carry ? rightmost(carry) : fresh;
            int a0 = count_pos_less(t, pos(first));
            int c1 = count_val_greater(t, last->val);
            if (a0 < c1) {
                int r0 = regular_prefix(t, a0), r1 = regular_prefix(t, c1);
                regs = r1 - r0;
                if (regs > 0) s = {kth_regular(t, r0), kth_regular(t, r1 - 1)};
            }
        }
        if (has_marks) {
            if (!t)
                healthy_ = false;
            else
                s = hull(t, s, marks[mi].second);
        }
        if (t && !consistent(t, s, has_marks ? marks[mi].second.size() : 0, regs)) healthy_ = false;
        if (!healthy_) {
            place(k, carry);
            if (fresh_here) place(k, fresh);
            return;
        }
        NodeP out = s.empty() ? nullptr : extract(k, s);
        place(k, carry);
        if (fresh_here) place(k, fresh);
        if (has_marks) ++mi;
        emit_tags(out, +1);
        carry = out;
    }
    trim();
}

void PersistentLevels::demote(int start, const Marks& marks, DynSeq::Handle gone, i64 gone_val, int gone_level) {
    struct Gap {
        bool any = false;
        std::size_t first_pos = 0;
        i64 last_val = 0;
        bool has_a = false, has_b = false;
        i64 a_val = 0;
        std::size_t b_pos = 0;
    } q;
    auto gap_after = [&](int k, int at, std::size_t first_pos, i64 last_val) {
        Gap g;
        g.any = true;
        g.first_pos = first_pos;
        g.last_val = last_val;
        NodeP t = root_or_null(k);
        if (t && at > 0) {
            g.has_a = true;
            g.a_val = kth(t, at - 1)->val;
        }
        if (t && at < sz(t)) {
            g.has_b = true;
            g.b_pos = pos(kth(t, at));
        }
        return g;
    };

    std::size_t mi = 0;
    for (int k = start;; ++k) {
        bool has_marks = mi < marks.size() && marks[mi].first == k;
        bool gone_here = gone && k == gone_level;
        if (!q.any && !has_marks && !gone_here) {
            if (mi >= marks.size()) break;
            k = marks[mi].first - 1;
            continue;
        }
        NodeP t = root_or_null(k);
        if (gone_here) {
            int idx = t ? index_in(t, gone) : -1;
            if (idx < 0) fail(ErrorCode::invariant, "erased element not found at its level");
            std::size_t gp = pos(gone);
            extract(k, {idx, idx});
            q = gap_after(k, idx, gp, gone_val);
            continue;
        }
        Span s;
        int regs = 0;
        if (t && q.any) {
            int lo = count_pos_less(t, q.first_pos);
            int hi = q.has_b ? count_pos_less(t, q.b_pos) : sz(t);
            int va = q.has_a ? count_val_greater(t, q.a_val) : 0;
            int vb = count_val_greater(t, q.last_val);
            lo = std::max(lo, va);
            hi = std::min(hi, vb);
            if (lo < hi) {
                int r0 = regular_prefix(t, lo), r1 = regular_prefix(t, hi);
                regs = r1 - r0;
                if (regs > 0) s = {kth_regular(t, r0), kth_regular(t, r1 - 1)};
            }
        }
        if (has_marks) {
            if (!t)
                healthy_ = false;
            else
                s = hull(t, s, marks[mi].second);
        }
        if (t && !consistent(t, s, has_marks ? marks[mi].second.size() : 0, regs)) healthy_ = false;
        if (!healthy_) return;
        if (has_marks) ++mi;
        if (s.empty()) {
            q.any = false;
            continue;
        }
        NodeP out = extract(k, s);
        q = gap_after(k, s.lo, pos(leftmost(out)), rightmost(out)->val);
        emit_tags(out, -1);
        place(k - 1, out);
    }
    trim();
}

void PersistentLevels::heal() {
    if (!healthy_) rebuild();
}

void PersistentLevels::insert(DynSeq::Handle at, i64 val) {
    LayerNode* n = arena_->make();
    *n = LayerNode{};
    n->val = val;
    n->at = at;
    n->pri = splitmix64(rng_);
    n->lay = -1;
    pull(n);
    int level = search_level(pos(at), val);
    promote(level, {}, n, level);
    heal();
}

void PersistentLevels::erase(DynSeq::Handle at, i64 val) {
    std::size_t p = pos(at);
    require(find_source(p) < 0, ErrorCode::invariant, "sources cannot be erased");
    int level = search_level(p, val);
    demote(level, {}, at, val, level);
    if (!healthy_) {
        // the element may still be present if the cascade stopped before reaching it
        for (std::size_t i = 0; i < roots_.size(); ++i) {
            if (!roots_[i]) continue;
            int idx = index_in(roots_[i], at);
            if (idx >= 0) {
                extract(base_ + static_cast<int>(i), {idx, idx});
                break;
            }
        }
        rebuild();
    }
}

void PersistentLevels::shift_sources(const std::vector<int>& idx, int delta) {
    require(delta == 1 || delta == -1, ErrorCode::range, "source shift must be +-1");
    if (idx.empty()) return;
    std::vector<std::pair<int, int>> keyed;
    for (int j : idx) keyed.push_back({src_levels_[j], j});
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Marks marks;
    for (auto& [lv, j] : keyed) {
        if (marks.empty() || marks.back().first != lv) marks.push_back({lv, {}});
        marks.back().second.push_back(j);
    }
    for (auto& [lv, j] : keyed) {
        require(lv + delta >= 1, ErrorCode::range, "source level must stay positive");
        set_source_level(j, lv + delta);
    }
    if (delta > 0)
        promote(marks.front().first, marks, nullptr, 0);
    else
        demote(marks.front().first, marks, nullptr, 0, 0);
    heal();
}

void PersistentLevels::assign_source_levels(const std::vector<int>& levels) {
    require(levels.size() == src_at_.size(), ErrorCode::dimension, "source level count mismatch");
    for (std::size_t j = 0; j < levels.size(); ++j) {
        require(levels[j] >= 1, ErrorCode::range, "source level must be positive");
        set_source_level(static_cast<int>(j), levels[j]);
    }
    rebuild();
}

void PersistentLevels::rebuild() {
    ++rebuilds_;
    struct Item {
        std::size_t p;
        NodeP n;
        int old;
    };
    std::vector<Item> all;
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        if (!roots_[i]) continue;
        std::vector<NodeP> lv;
        inorder(roots_[i], lv);
        for (NodeP n : lv) all.push_back({pos(n), n, base_ + static_cast<int>(i)});
    }
    touch(all.size());
    std::sort(all.begin(), all.end(), [](const Item& a, const Item& b) { return a.p < b.p; });
    std::vector<i64> vals;
    for (auto& it : all) vals.push_back(it.n->val);
    std::sort(vals.begin(), vals.end());
    std::vector<int> bit(vals.size() + 1, INT_MIN);
    auto query = [&](std::size_t r) {
        int best = INT_MIN;
        for (; r > 0; r &= r - 1) best = std::max(best, bit[r]);
        return best;
    };
    auto update = [&](std::size_t r, int v) {
        for (++r; r < bit.size(); r += r & (~r + 1)) bit[r] = std::max(bit[r], v);
    };
    std::vector<int> level(all.size());
    int lo = INT_MAX, hi = INT_MIN;
    for (std::size_t i = 0; i < all.size(); ++i) {
        NodeP n = all[i].n;
        std::size_t r = static_cast<std::size_t>(std::lower_bound(vals.begin(), vals.end(), n->val) - vals.begin());
        int lv;
        if (n->lay == src_layer_) {
            int j = find_source(all[i].p);
            lv = j >= 0 ? src_levels_[j] : all[i].old;
        } else {
            lv = std::max(query(r), 0) + 1;
            if (n->lay == tag_layer_ && sink_ && lv != all[i].old) sink_->push_back({n->at, lv - all[i].old});
        }
        update(r, lv);
        level[i] = lv;
        lo = std::min(lo, lv);
        hi = std::max(hi, lv);
    }
    roots_.clear();
    healthy_ = true;
    if (all.empty()) return;
    base_ = lo;
    std::vector<std::vector<NodeP>> buckets(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t i = 0; i < all.size(); ++i) buckets[level[i] - lo].push_back(all[i].n);
    roots_.assign(buckets.size(), nullptr);
    for (std::size_t k = 0; k < buckets.size(); ++k)
        if (!buckets[k].empty()) roots_[k] = build(buckets[k]);
    trim();
}

}  // namespace dlis
