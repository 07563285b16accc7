#include "dlis/ccp.hpp"

#include <algorithm>
#include <climits>
#include <unordered_map>

#include "dlis/static_lis.hpp"

namespace dlis {

namespace {

LevelForest::Node* leftmost(LevelForest::Node* t) {
    while (t->l) t = t->l;
    return t;
}

LevelForest::Node* rightmost(LevelForest::Node* t) {
    while (t->r) t = t->r;
    return t;
}

void inorder(LevelForest::Node* t, std::vector<LevelForest::Node*>& out) {
    std::vector<LevelForest::Node*> st;
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

LevelForest::LevelForest(const DynSeq* seq, u64 seed) : seq_(seq), rng_(seed) {}

LevelForest::~LevelForest() = default;

LevelForest::Node* LevelForest::alloc() {
    if (free_.empty()) {
        constexpr std::size_t slab = 512;
        slabs_.emplace_back(new Node[slab]);
        for (std::size_t i = 0; i < slab; ++i) free_.push_back(&slabs_.back()[slab - 1 - i]);
    }
    Node* n = free_.back();
    free_.pop_back();
    *n = Node{};
    n->pri = splitmix64(rng_);
    n->size = 1;
    return n;
}

void LevelForest::release_tree(Node* t) {
    if (!t) return;
    std::vector<Node*> all;
    inorder(t, all);
    for (Node* n : all) free_.push_back(n);
}

void LevelForest::pull(Node* n) {
    n->size = 1 + sz(n->l) + sz(n->r);
    n->regular = (n->source ? 0 : 1) + reg(n->l) + reg(n->r);
    n->tagged = (n->tag ? 1 : 0) + tg(n->l) + tg(n->r);
    if (n->l) n->l->p = n;
    if (n->r) n->r->p = n;
}

void LevelForest::split(Node* t, int k, Node*& a, Node*& b) {
    if (!t) {
        a = b = nullptr;
        return;
    }
    touch();
    if (sz(t->l) >= k) {
        split(t->l, k, a, t->l);
        b = t;
    } else {
        split(t->r, k - sz(t->l) - 1, t->r, b);
        a = t;
    }
    pull(t);
    if (a) a->p = nullptr;
    if (b) b->p = nullptr;
}

LevelForest::Node* LevelForest::merge(Node* a, Node* b) {
    if (!a) return b;
    if (!b) return a;
    touch();
    if (a->pri > b->pri) {
        a->r = merge(a->r, b);
        pull(a);
        a->p = nullptr;
        return a;
    }
    b->l = merge(a, b->l);
    pull(b);
    b->p = nullptr;
    return b;
}

LevelForest::Node* LevelForest::build(const std::vector<Node*>& items) {
    std::vector<Node*> st;
    for (Node* n : items) {
        n->l = n->r = n->p = nullptr;
        Node* last = nullptr;
        while (!st.empty() && st.back()->pri < n->pri) {
            last = st.back();
            st.pop_back();
        }
        n->l = last;
        if (!st.empty()) st.back()->r = n;
        st.push_back(n);
    }
    if (st.empty()) return nullptr;
    Node* root = st.front();
    // post-order pull
    std::vector<std::pair<Node*, bool>> work{{root, false}};
    while (!work.empty()) {
        auto [n, done] = work.back();
        work.pop_back();
        if (done) {
            pull(n);
            continue;
        }
        work.push_back({n, true});
        if (n->l) work.push_back({n->l, false});
        if (n->r) work.push_back({n->r, false});
    }
    root->p = nullptr;
    return root;
}

LevelForest::Node*& LevelForest::root(int k) {
    if (roots_.empty()) base_ = k;
    if (k < base_) {
        roots_.insert(roots_.begin(), static_cast<std::size_t>(base_ - k), nullptr);
        base_ = k;
    }
    std::size_t idx = static_cast<std::size_t>(k - base_);
    if (idx >= roots_.size()) roots_.resize(idx + 1, nullptr);
    return roots_[idx];
}

LevelForest::Node* LevelForest::root_or_null(int k) const {
    if (k < base_ || static_cast<std::size_t>(k - base_) >= roots_.size()) return nullptr;
    return roots_[k - base_];
}

void LevelForest::set_root(int k, Node* t) {
    root(k) = t;
    if (t) {
        t->p = nullptr;
        t->level = k;
    }
}

void LevelForest::trim() {
    while (!roots_.empty() && !roots_.back()) roots_.pop_back();
    std::size_t lead = 0;
    while (lead < roots_.size() && !roots_[lead]) ++lead;
    if (lead) {
        roots_.erase(roots_.begin(), roots_.begin() + static_cast<std::ptrdiff_t>(lead));
        base_ += static_cast<int>(lead);
    }
}

int LevelForest::index_of(Node* n) const {
    int idx = sz(n->l);
    while (n->p) {
        touch();
        if (n == n->p->r) idx += sz(n->p->l) + 1;
        n = n->p;
    }
    return idx;
}

int LevelForest::level_of(Elem e) const {
    while (e->p) e = e->p;
    return e->level;
}

LevelForest::Node* LevelForest::kth(Node* t, int k) const {
    while (t) {
        touch();
        int ls = sz(t->l);
        if (k < ls)
            t = t->l;
        else if (k == ls)
            return t;
        else {
            k -= ls + 1;
            t = t->r;
        }
    }
    return nullptr;
}

int LevelForest::count_pos_less(Node* t, std::size_t p) const {
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

int LevelForest::count_val_greater(Node* t, i64 v) const {
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

int LevelForest::regular_prefix(Node* t, int k) const {
    int c = 0;
    while (t && k > 0) {
        touch();
        if (k <= sz(t->l)) {
            t = t->l;
        } else {
            c += reg(t->l) + (t->source ? 0 : 1);
            k -= sz(t->l) + 1;
            t = t->r;
        }
    }
    return c;
}

LevelForest::Node* LevelForest::kth_regular(Node* t, int r, int& idx) const {
    int base = 0;
    while (t) {
        touch();
        if (reg(t->l) > r) {
            t = t->l;
            continue;
        }
        r -= reg(t->l);
        if (!t->source) {
            if (r == 0) {
                idx = base + sz(t->l);
                return t;
            }
            --r;
        }
        base += sz(t->l) + 1;
        t = t->r;
    }
    idx = -1;
    return nullptr;
}

void LevelForest::collect_tagged(Node* t, int delta) {
    if (!sink_ || !t || t->tagged == 0) return;
    if (t->tag) sink_->push_back({t, delta});
    collect_tagged(t->l, delta);
    collect_tagged(t->r, delta);
}

int LevelForest::highest_level() const { return roots_.empty() ? 0 : base_ + static_cast<int>(roots_.size()) - 1; }

int LevelForest::lowest_level() const { return roots_.empty() ? 0 : base_; }

int LevelForest::nonempty_levels() const {
    int c = 0;
    for (Node* t : roots_) c += t ? 1 : 0;
    return c;
}

std::vector<std::pair<int, std::vector<LevelForest::Elem>>> LevelForest::dump() const {
    std::vector<std::pair<int, std::vector<Elem>>> out;
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        if (!roots_[i]) continue;
        std::vector<Elem> lv;
        inorder(roots_[i], lv);
        out.push_back({base_ + static_cast<int>(i), std::move(lv)});
    }
    return out;
}

// ---- sources ----

void LevelForest::reset_sources() {
    src_cap_ = 1;
    while (src_cap_ < sources_.size()) src_cap_ <<= 1;
    src_tree_.assign(2 * src_cap_, INT_MIN);
}

void LevelForest::set_source_level(int idx, int level) {
    std::size_t i = src_cap_ + static_cast<std::size_t>(idx);
    src_tree_[i] = level;
    for (i >>= 1; i; i >>= 1) src_tree_[i] = std::max(src_tree_[2 * i], src_tree_[2 * i + 1]);
}

int LevelForest::source_level_above(std::size_t p, i64 v) const {
    if (sources_.empty()) return 0;
    // sources before p form a prefix; among those, the ones below v form a suffix
    std::size_t lo = 0, hi = sources_.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (pos(sources_[mid]) < p)
            lo = mid + 1;
        else
            hi = mid;
    }
    std::size_t c = lo;
    lo = 0;
    hi = c;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (sources_[mid]->val < v)
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

// ---- content ----

std::vector<LevelForest::Elem> LevelForest::assign(const std::vector<Entry>& entries) {
    for (Node* t : roots_) release_tree(t);
    roots_.clear();
    base_ = 1;
    count_ = entries.size();
    healthy_ = true;
    sources_.clear();

    std::vector<Elem> out;
    out.reserve(entries.size());
    int lo = INT_MAX, hi = INT_MIN;
    for (const auto& e : entries) {
        Node* n = alloc();
        n->val = e.val;
        n->at = e.at;
        n->source = e.source;
        n->tag = e.tag;
        n->level = e.level;
        n->src_idx = -1;
        if (e.source) {
            require(e.level >= 1, ErrorCode::range, "source level must be positive");
            n->src_idx = static_cast<int>(sources_.size());
            sources_.push_back(n);
        }
        out.push_back(n);
        lo = std::min(lo, e.level);
        hi = std::max(hi, e.level);
    }
    reset_sources();
    for (Node* s : sources_) set_source_level(s->src_idx, s->level);
    if (out.empty()) return out;

    std::vector<std::vector<Node*>> buckets(static_cast<std::size_t>(hi - lo + 1));
    for (Node* n : out) buckets[n->level - lo].push_back(n);
    for (int k = lo; k <= hi; ++k)
        if (!buckets[k - lo].empty()) set_root(k, build(buckets[k - lo]));
    trim();
    return out;
}

LevelForest::Span LevelForest::hull_with_marks(Node* t, Span s, const std::vector<Elem>& marks) {
    Node* r = marks.front();
    while (r->p) r = r->p;
    if (r != t) {
        healthy_ = false;
        return s;
    }
    int a = index_of(marks.front()), b = index_of(marks.back());
    if (s.empty()) return {a, b};
    return {std::min(s.lo, a), std::max(s.hi, b)};
}

bool LevelForest::marks_consistent(Node* t, Span s, std::size_t marks, int regulars) {
    if (!healthy_) return false;
    if (s.empty()) return marks == 0 && regulars == 0;
    int len = s.hi - s.lo + 1;
    int regs = regular_prefix(t, s.hi + 1) - regular_prefix(t, s.lo);
    return regs == regulars && static_cast<std::size_t>(len - regs) == marks;
}

LevelForest::Node* LevelForest::extract(int k, Span s) {
    Node *a, *b, *mid, *c;
    split(root(k), s.lo, a, b);
    split(b, s.hi - s.lo + 1, mid, c);
    set_root(k, merge(a, c));
    return mid;
}

void LevelForest::place(int k, Node* block) {
    if (!block) return;
    Node* t = root(k);
    if (!t) {
        set_root(k, block);
        return;
    }
    Node* first = leftmost(block);
    Node* last = rightmost(block);
    int cut = count_pos_less(t, pos(first));
    Node *a, *b;
    split(t, cut, a, b);
    if (b && pos(leftmost(b)) < pos(last)) {
        // interleaving; keep the level valid by a full positional merge
        healthy_ = false;
        std::vector<Node*> items;
        inorder(a, items);
        inorder(block, items);
        inorder(b, items);
        std::vector<std::pair<std::size_t, Node*>> keyed;
        for (Node* n : items) keyed.push_back({pos(n), n});
        std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        items.clear();
        for (auto& kv : keyed) items.push_back(kv.second);
        set_root(k, build(items));
        return;
    }
    set_root(k, merge(merge(a, block), b));
}

void LevelForest::promote(int start, const std::vector<std::pair<int, std::vector<Elem>>>& marks, Node* fresh,
                          int fresh_level) {
    Node* carry = nullptr;
    std::size_t mi = 0;
    for (int k = start;; ++k) {
        bool has_marks = mi < marks.size() && marks[mi].first == k;
        bool fresh_here = fresh && k == fresh_level;
        if (!carry && !has_marks && !fresh_here) {
            if (mi >= marks.size()) break;
            k = marks[mi].first - 1;
            continue;
        }
        Node* t = root_or_null(k);
        Span s;
        int regs = 0;
        if (t && (carry || fresh_here)) {
            Node* first = carry ? leftmost(carry) : fresh;
            Node* last = carry ? rightmost(carry) : fresh;
            int a0 = count_pos_less(t, pos(first));
            int c1 = count_val_greater(t, last->val);
            if (a0 < c1) {
                int r0 = regular_prefix(t, a0), r1 = regular_prefix(t, c1);
                regs = r1 - r0;
                if (r1 > r0) {
                    int i0, i1;
                    kth_regular(t, r0, i0);
                    kth_regular(t, r1 - 1, i1);
                    s = {i0, i1};
                }
            }
        }
        if (has_marks) {
            if (!t)
                healthy_ = false;
            else
                s = hull_with_marks(t, s, marks[mi].second);
        }
        if (t && !marks_consistent(t, s, has_marks ? marks[mi].second.size() : 0, regs)) healthy_ = false;
        if (!healthy_) {
            place(k, carry);
            if (fresh_here) place(k, fresh);
            return;
        }
        Node* out = s.empty() ? nullptr : extract(k, s);
        place(k, carry);
        if (fresh_here) place(k, fresh);
        if (has_marks) ++mi;
        collect_tagged(out, +1);
        carry = out;
    }
    trim();
}

void LevelForest::demote(int start, const std::vector<std::pair<int, std::vector<Elem>>>& marks, Node* gone,
                         int gone_level) {
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
        Node* t = root_or_null(k);
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
        Node* t = root_or_null(k);
        if (gone_here) {
            int idx = index_of(gone);
            std::size_t gp = pos(gone);
            Node* out = extract(k, {idx, idx});
            free_.push_back(out);
            --count_;
            q = gap_after(k, idx, gp, out->val);
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
                if (r1 > r0) {
                    int i0, i1;
                    kth_regular(t, r0, i0);
                    kth_regular(t, r1 - 1, i1);
                    s = {i0, i1};
                }
            }
        }
        if (has_marks) {
            if (!t)
                healthy_ = false;
            else
                s = hull_with_marks(t, s, marks[mi].second);
        }
        if (t && !marks_consistent(t, s, has_marks ? marks[mi].second.size() : 0, regs)) healthy_ = false;
        if (!healthy_) return;
        if (has_marks) ++mi;
        if (s.empty()) {
            q.any = false;
            continue;
        }
        Node* out = extract(k, s);
        q = gap_after(k, s.lo, pos(leftmost(out)), rightmost(out)->val);
        collect_tagged(out, -1);
        place(k - 1, out);
    }
    trim();
}

LevelForest::Elem LevelForest::insert(DynSeq::Handle at, i64 val, bool tag) {
    Node* n = alloc();
    n->val = val;
    n->at = at;
    n->tag = tag;
    n->source = false;
    n->src_idx = -1;
    pull(n);
    ++count_;
    std::size_t p = pos(n);
    int floor = source_level_above(p, val);
    int lo = floor + 1, hi = highest_level(), best = floor;
    while (lo <= hi) {
        int mid = lo + (hi - lo) / 2;
        Node* t = root_or_null(mid);
        bool dom = false;
        if (t) {
            int c = count_pos_less(t, p);
            dom = c > 0 && kth(t, c - 1)->val < val;
        }
        if (dom) {
            best = mid;
            lo = mid + 1;
        } else {
            hi = mid - 1;
        }
    }
    if (!healthy_) {
        place(best + 1, n);
        return n;
    }
    promote(best + 1, {}, n, best + 1);
    return n;
}

void LevelForest::erase(Elem e) {
    require(!e->source, ErrorCode::invariant, "sources cannot be erased");
    if (!healthy_) {
        int k = level_of(e);
        int idx = index_of(e);
        Node* out = extract(k, {idx, idx});
        free_.push_back(out);
        --count_;
        trim();
        return;
    }
    demote(level_of(e), {}, e, level_of(e));
}

void LevelForest::shift_sources(const std::vector<Elem>& moved, int delta) {
    require(delta == 1 || delta == -1, ErrorCode::range, "source shift must be +-1");
    if (moved.empty()) return;
    std::vector<std::pair<int, std::vector<Elem>>> marks;
    std::vector<std::pair<int, Elem>> keyed;
    for (Elem s : moved) {
        require(s->source, ErrorCode::invariant, "shift of a non-source");
        keyed.push_back({level_of(s), s});
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [lv, s] : keyed) {
        if (marks.empty() || marks.back().first != lv) marks.push_back({lv, {}});
        marks.back().second.push_back(s);
    }
    for (auto& [lv, s] : keyed) {
        require(lv + delta >= 1, ErrorCode::range, "source level must stay positive");
        set_source_level(s->src_idx, lv + delta);
    }
    if (healthy_) {
        if (delta > 0)
            promote(marks.front().first, marks, nullptr, 0);
        else
            demote(marks.front().first, marks, nullptr, 0);
    }
    if (!healthy_) {
        // levels of the marked sources are authoritative; rebuild() will settle the rest
        for (auto& [lv, s] : keyed) {
            int cur = level_of(s);
            if (cur == lv + delta) continue;
            int idx = index_of(s);
            Node* out = extract(cur, {idx, idx});
            place(lv + delta, out);
        }
        trim();
    }
}

void LevelForest::rebuild() {
    std::vector<std::pair<std::size_t, Node*>> all;
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        if (!roots_[i]) continue;
        std::vector<Node*> lv;
        inorder(roots_[i], lv);
        int k = base_ + static_cast<int>(i);
        for (Node* n : lv) {
            n->level = k;
            all.push_back({pos(n), n});
        }
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<i64> vals;
    for (auto& kv : all) vals.push_back(kv.second->val);
    std::sort(vals.begin(), vals.end());
    // prefix max over value ranks
    std::vector<int> bit(vals.size() + 1, INT_MIN);
    auto query = [&](std::size_t r) {
        int best = INT_MIN;
        for (; r > 0; r &= r - 1) best = std::max(best, bit[r]);
        return best;
    };
    auto update = [&](std::size_t r, int v) {
        for (++r; r < bit.size(); r += r & (~r + 1)) bit[r] = std::max(bit[r], v);
    };
    int lo = INT_MAX, hi = INT_MIN;
    for (auto& kv : all) {
        Node* n = kv.second;
        std::size_t r = static_cast<std::size_t>(std::lower_bound(vals.begin(), vals.end(), n->val) - vals.begin());
        int old = n->level;
        if (!n->source) {
            n->level = std::max(query(r), 0) + 1;
            if (n->tag && sink_ && n->level != old) sink_->push_back({n, n->level - old});
        }
        update(r, n->level);
        lo = std::min(lo, n->level);
        hi = std::max(hi, n->level);
    }
    roots_.clear();
    base_ = 1;
    healthy_ = true;
    if (all.empty()) return;
    std::vector<std::vector<Node*>> buckets(static_cast<std::size_t>(hi - lo + 1));
    for (auto& kv : all) buckets[kv.second->level - lo].push_back(kv.second);
    for (int k = lo; k <= hi; ++k)
        if (!buckets[k - lo].empty()) set_root(k, build(buckets[k - lo]));
    trim();
}

// ---- CcpEngine ----

CcpEngine::CcpEngine(const std::vector<i64>& values) : seq_(values), forest_(&seq_, 0xcc9) {
    auto lv = levels(values);
    std::vector<LevelForest::Entry> entries;
    entries.reserve(values.size());
    std::vector<DynSeq::Handle> handles;
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto h = seq_.at(i + 1);
        handles.push_back(h);
        entries.push_back({h, values[i], lv[i]});
    }
    auto elems = forest_.assign(entries);
    elem_.assign(static_cast<std::size_t>(seq_.id_bound()), nullptr);
    for (std::size_t i = 0; i < elems.size(); ++i) elem_[handles[i]->id] = elems[i];
}

void CcpEngine::insert(std::size_t pos, i64 val) {
    std::vector<std::pair<int, std::vector<LevelForest::Elem>>> before;
    if (audit_) before = forest_.dump();
    auto h = seq_.insert(pos, val);
    auto e = forest_.insert(h, val);
    if (static_cast<std::size_t>(h->id) >= elem_.size()) elem_.resize(static_cast<std::size_t>(h->id) + 1, nullptr);
    elem_[h->id] = e;
    if (audit_)
        audit(before, e);
    else if (!forest_.healthy())
        forest_.rebuild();
}

i64 CcpEngine::erase(std::size_t pos) {
    require(pos >= 1 && pos <= seq_.length(), ErrorCode::range, "delete position out of range");
    std::vector<std::pair<int, std::vector<LevelForest::Elem>>> before;
    if (audit_) before = forest_.dump();
    auto h = seq_.at(pos);
    auto e = elem_[h->id];
    forest_.erase(e);
    elem_[h->id] = nullptr;
    i64 v = seq_.erase(pos);
    if (audit_)
        audit(before, e);
    else if (!forest_.healthy())
        forest_.rebuild();
    return v;
}

void CcpEngine::apply(const EditOp& op) {
    if (op.kind == EditOp::Kind::insert)
        insert(op.pos, op.val);
    else
        erase(op.pos);
}

std::vector<std::vector<i64>> CcpEngine::level_values() const {
    std::vector<std::vector<i64>> out;
    for (auto& [k, lv] : forest_.dump()) {
        std::vector<i64> vs;
        for (auto* n : lv) vs.push_back(n->val);
        out.push_back(std::move(vs));
    }
    return out;
}

void CcpEngine::audit(const std::vector<std::pair<int, std::vector<LevelForest::Elem>>>& before,
                      LevelForest::Elem skip) {
    ++audited_;
    require(forest_.healthy(), ErrorCode::invariant, "level forest lost its interval structure");
    auto vals = seq_.values();
    auto lv = levels(vals);
    int top = 0;
    for (int x : lv) top = std::max(top, x);
    std::vector<std::vector<i64>> expect(static_cast<std::size_t>(top));
    for (std::size_t i = 0; i < vals.size(); ++i) expect[lv[i] - 1].push_back(vals[i]);
    require(level_values() == expect, ErrorCode::invariant, "level forest differs from rebuild");

    auto after = forest_.dump();
    std::unordered_map<LevelForest::Elem, int> now;
    for (auto& [k, elems] : after)
        for (auto* e : elems) now[e] = k;
    for (auto& [k, elems] : before) {
        int first = -1, last = -1, moved = 0;
        for (int i = 0; i < static_cast<int>(elems.size()); ++i) {
            if (elems[i] == skip) continue;
            if (now.at(elems[i]) != k) {
                if (first < 0) first = i;
                last = i;
                ++moved;
            }
        }
        int span = first < 0 ? 0 : last - first + 1;
        bool skip_inside = false;
        for (int i = std::max(first, 0); first >= 0 && i <= last; ++i) skip_inside |= elems[i] == skip;
        require(moved == span - (skip_inside ? 1 : 0), ErrorCode::invariant, "level move is not an interval");
    }
}

}  // namespace dlis
