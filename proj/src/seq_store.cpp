#include "dlis/seq_store.hpp"

#include <string>

namespace dlis {

void apply_to_vector(std::vector<i64>& v, const EditOp& op) {
    if (op.kind == EditOp::Kind::insert) {
        require(op.pos >= 1 && op.pos <= v.size() + 1, ErrorCode::range, "insert position out of range");
        v.insert(v.begin() + static_cast<std::ptrdiff_t>(op.pos - 1), op.val);
    } else {
        require(op.pos >= 1 && op.pos <= v.size(), ErrorCode::range, "delete position out of range");
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(op.pos - 1));
    }
}

// ---- DynSeq ----

DynSeq::DynSeq() = default;

DynSeq::DynSeq(const std::vector<i64>& values, bool track_values) : track_(track_values) {
    if (track_)
        for (i64 v : values) {
            if (!present_.insert(v).second) fail(ErrorCode::duplicate, "duplicate value " + std::to_string(v));
        }
    root_ = build(values, 0, values.size(), nullptr);
}

DynSeq::~DynSeq() = default;

DynSeq::Node* DynSeq::alloc(i64 val) {
    if (free_.empty()) {
        constexpr std::size_t slab = 1024;
        slabs_.emplace_back(new Node[slab]);
        for (std::size_t i = 0; i < slab; ++i) free_.push_back(&slabs_.back()[slab - 1 - i]);
    }
    Node* n = free_.back();
    free_.pop_back();
    *n = Node{val, splitmix64(pri_state_), 1, nullptr, nullptr, nullptr, next_id_++};
    return n;
}

void DynSeq::release(Node* n) { free_.push_back(n); }

void DynSeq::pull(Node* n) const {
    n->size = 1 + sz(n->l) + sz(n->r);
    if (n->l) n->l->p = n;
    if (n->r) n->r->p = n;
}

// Heap order on priorities is restored bottom-up by assigning sorted priorities.
DynSeq::Node* DynSeq::build(const std::vector<i64>& v, std::size_t lo, std::size_t hi, Node* parent) {
    if (lo >= hi) return nullptr;
    std::size_t mid = lo + (hi - lo) / 2;
    Node* n = alloc(v[mid]);
    n->p = parent;
    n->l = build(v, lo, mid, n);
    n->r = build(v, mid + 1, hi, n);
    u64 child = 0;
    if (n->l && n->l->pri > child) child = n->l->pri;
    if (n->r && n->r->pri > child) child = n->r->pri;
    if (n->pri <= child) n->pri = child + 1;
    pull(n);
    return n;
}

void DynSeq::split(Node* t, int k, Node*& a, Node*& b) {
    if (!t) {
        a = b = nullptr;
        return;
    }
    touch();
    if (sz(t->l) < k) {
        split(t->r, k - sz(t->l) - 1, t->r, b);
        a = t;
        pull(a);
        if (b) b->p = nullptr;
    } else {
        split(t->l, k, a, t->l);
        b = t;
        pull(b);
        if (a) a->p = nullptr;
    }
}

DynSeq::Node* DynSeq::merge(Node* a, Node* b) {
    if (!a) return b;
    if (!b) return a;
    touch();
    if (a->pri > b->pri) {
        a->r = merge(a->r, b);
        pull(a);
        return a;
    }
    b->l = merge(a, b->l);
    pull(b);
    return b;
}

DynSeq::Handle DynSeq::insert(std::size_t pos, i64 val) {
    require(pos >= 1 && pos <= length() + 1, ErrorCode::range, "insert position out of range");
    if (track_) {
        if (present_.count(val)) fail(ErrorCode::duplicate, "duplicate value " + std::to_string(val));
        present_.insert(val);
    }
    return insert_unchecked(pos, val);
}

DynSeq::Handle DynSeq::insert_unchecked(std::size_t pos, i64 val) {
    Node* n = alloc(val);
    Node *a, *b;
    split(root_, static_cast<int>(pos) - 1, a, b);
    root_ = merge(merge(a, n), b);
    root_->p = nullptr;
    return n;
}

i64 DynSeq::erase(std::size_t pos) {
    require(pos >= 1 && pos <= length(), ErrorCode::range, "delete position out of range");
    Node *a, *b, *c;
    split(root_, static_cast<int>(pos) - 1, a, b);
    split(b, 1, b, c);
    i64 v = b->val;
    release(b);
    root_ = merge(a, c);
    if (root_) root_->p = nullptr;
    if (track_) present_.erase(v);
    return v;
}

DynSeq::Handle DynSeq::at(std::size_t pos) const {
    require(pos >= 1 && pos <= length(), ErrorCode::range, "position out of range");
    Node* t = root_;
    int k = static_cast<int>(pos);
    while (true) {
        touch();
        int ls = sz(t->l);
        if (k <= ls)
            t = t->l;
        else if (k == ls + 1)
            return t;
        else {
            k -= ls + 1;
            t = t->r;
        }
    }
}

i64 DynSeq::get(std::size_t pos) const { return at(pos)->val; }

std::size_t DynSeq::position(Handle h) const {
    std::size_t pos = static_cast<std::size_t>(sz(h->l)) + 1;
    for (Node* c = h; c->p; c = c->p) {
        touch();
        if (c->p->r == c) pos += static_cast<std::size_t>(sz(c->p->l)) + 1;
    }
    return pos;
}

std::vector<DynSeq::Handle> DynSeq::handles() const {
    std::vector<Handle> out;
    out.reserve(length());
    std::vector<Node*> st;
    Node* t = root_;
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
    return out;
}

std::vector<i64> DynSeq::values() const {
    std::vector<i64> out;
    out.reserve(length());
    std::vector<Node*> st;
    Node* t = root_;
    while (t || !st.empty()) {
        while (t) {
            st.push_back(t);
            t = t->l;
        }
        t = st.back();
        st.pop_back();
        out.push_back(t->val);
        t = t->r;
    }
    return out;
}

// ---- PSeq ----

struct PSeq::Node {
    i64 val;
    u64 pri;
    std::size_t size;
    Ptr l, r;
};


PSeq::Ptr PSeq::make(i64 val, u64 pri, Ptr l, Ptr r) {
    std::size_t s = 1 + (l ? l->size : 0) + (r ? r->size : 0);
    return std::make_shared<const Node>(Node{val, pri, s, std::move(l), std::move(r)});
}

PSeq::PSeq(const std::vector<i64>& values) {
    u64 st = 0x9a7c;
    root_ = build(values, 0, values.size(), st);
}

PSeq::Ptr PSeq::build(const std::vector<i64>& v, std::size_t lo, std::size_t hi, u64& st) {
    if (lo >= hi) return nullptr;
    std::size_t mid = lo + (hi - lo) / 2;
    Ptr l = build(v, lo, mid, st);
    Ptr r = build(v, mid + 1, hi, st);
    u64 pri = splitmix64(st);
    u64 child = 0;
    if (l && l->pri > child) child = l->pri;
    if (r && r->pri > child) child = r->pri;
    if (pri <= child) pri = child + 1;
    return make(v[mid], pri, l, r);
}

std::size_t PSeq::length() const { return root_ ? root_->size : 0; }

void PSeq::split(const Ptr& t, std::size_t k, Ptr& a, Ptr& b) {
    if (!t) {
        a = b = nullptr;
        return;
    }
    std::size_t ls = t->l ? t->l->size : 0;
    if (ls < k) {
        Ptr ra;
        split(t->r, k - ls - 1, ra, b);
        a = make(t->val, t->pri, t->l, ra);
    } else {
        Ptr lb;
        split(t->l, k, a, lb);
        b = make(t->val, t->pri, lb, t->r);
    }
}

PSeq::Ptr PSeq::merge(const Ptr& a, const Ptr& b) {
    if (!a) return b;
    if (!b) return a;
    if (a->pri > b->pri) return make(a->val, a->pri, a->l, merge(a->r, b));
    return make(b->val, b->pri, merge(a, b->l), b->r);
}

PSeq PSeq::inserted(std::size_t pos, i64 val) const {
    require(pos >= 1 && pos <= length() + 1, ErrorCode::range, "insert position out of range");
    u64 st = static_cast<u64>(val) * 0x2545f4914f6cdd1dULL + length();
    Ptr a, b;
    split(root_, pos - 1, a, b);
    return PSeq(merge(merge(a, make(val, splitmix64(st), nullptr, nullptr)), b));
}

PSeq PSeq::erased(std::size_t pos) const {
    require(pos >= 1 && pos <= length(), ErrorCode::range, "delete position out of range");
    Ptr a, b, c, mid;
    split(root_, pos - 1, a, b);
    split(b, 1, mid, c);
    return PSeq(merge(a, c));
}

PSeq PSeq::applied(const EditOp& op) const {
    return op.kind == EditOp::Kind::insert ? inserted(op.pos, op.val) : erased(op.pos);
}

i64 PSeq::get(std::size_t pos) const {
    require(pos >= 1 && pos <= length(), ErrorCode::range, "position out of range");
    const Node* t = root_.get();
    std::size_t k = pos;
    while (true) {
        std::size_t ls = t->l ? t->l->size : 0;
        if (k <= ls)
            t = t->l.get();
        else if (k == ls + 1)
            return t->val;
        else {
            k -= ls + 1;
            t = t->r.get();
        }
    }
}

std::vector<i64> PSeq::values() const {
    std::vector<i64> out;
    Cursor c(*this);
    c.take(length(), out);
    return out;
}

PSeq::Cursor::Cursor(const PSeq& s) { descend(s.root_.get()); }

void PSeq::Cursor::descend(const Node* n) {
    while (n) {
        stack_.push_back(n);
        n = n->l.get();
    }
}

std::size_t PSeq::Cursor::take(std::size_t k, std::vector<i64>& out) {
    std::size_t got = 0;
    while (got < k && !stack_.empty()) {
        const Node* t = stack_.back();
        stack_.pop_back();
        out.push_back(t->val);
        ++got;
        descend(t->r.get());
    }
    return got;
}

}  // namespace dlis
