#pragma once

#include <memory>
#include <unordered_set>
#include <vector>

#include "dlis/common.hpp"

namespace dlis {

struct EditOp {
    enum class Kind { insert, erase };
    Kind kind = Kind::insert;
    std::size_t pos = 1;  // 1-based
    i64 val = 0;          // insert only

    static EditOp ins(std::size_t pos, i64 val) { return {Kind::insert, pos, val}; }
    static EditOp del(std::size_t pos) { return {Kind::erase, pos, 0}; }
};

// Applies op to a plain vector; used by oracles and tests.
void apply_to_vector(std::vector<i64>& v, const EditOp& op);

// Implicit treap with parent pointers. Handles stay valid until their element is erased.
class DynSeq {
public:
    struct Node {
        i64 val;
        u64 pri;
        int size;
        Node* l;
        Node* r;
        Node* p;
        int id;  // unique per sequence, never reused
    };
    using Handle = Node*;

    DynSeq();
    // Without value tracking, duplicate checks are the caller's job and contains() is unavailable.
    explicit DynSeq(const std::vector<i64>& values, bool track_values = true);
    ~DynSeq();
    DynSeq(const DynSeq&) = delete;
    DynSeq& operator=(const DynSeq&) = delete;

    std::size_t length() const { return root_ ? static_cast<std::size_t>(root_->size) : 0; }
    Handle insert(std::size_t pos, i64 val);
    i64 erase(std::size_t pos);
    i64 get(std::size_t pos) const;
    Handle at(std::size_t pos) const;
    std::size_t position(Handle h) const;  // 1-based
    bool contains(i64 val) const { return present_.count(val) != 0; }
    std::vector<i64> values() const;
    std::vector<Handle> handles() const;
    void set_meter(WorkMeter* m) { meter_ = m; }
    int id_bound() const { return next_id_; }

    // Like insert/erase but reuse a caller-chosen duplicate policy.
    Handle insert_unchecked(std::size_t pos, i64 val);

private:
    Node* root_ = nullptr;
    std::vector<Node*> free_;
    std::vector<std::unique_ptr<Node[]>> slabs_;
    std::unordered_set<i64> present_;
    bool track_ = true;
    u64 pri_state_ = 0x5eed;
    WorkMeter* meter_ = nullptr;
    int next_id_ = 0;

    Node* alloc(i64 val);
    void release(Node* n);
    static int sz(Node* n) { return n ? n->size : 0; }
    void pull(Node* n) const;
    void split(Node* t, int k, Node*& a, Node*& b);
    Node* merge(Node* a, Node* b);
    Node* build(const std::vector<i64>& v, std::size_t lo, std::size_t hi, Node* parent);
    void touch(u64 k = 1) const {
        if (meter_) meter_->add(k);
    }
};

// Persistent implicit treap: copying a PSeq is an O(1) snapshot.
class PSeq {
    struct Node;
    using Ptr = std::shared_ptr<const Node>;

public:
    PSeq() = default;
    explicit PSeq(const std::vector<i64>& values);
    std::size_t length() const;
    PSeq inserted(std::size_t pos, i64 val) const;
    PSeq erased(std::size_t pos) const;
    PSeq applied(const EditOp& op) const;
    i64 get(std::size_t pos) const;
    std::vector<i64> values() const;

    // Resumable in-order walk, used to materialize a snapshot in bounded chunks.
    class Cursor {
    public:
        explicit Cursor(const PSeq& s);
        bool done() const { return stack_.empty(); }
        // Appends up to k values; returns how many were appended.
        std::size_t take(std::size_t k, std::vector<i64>& out);

    private:
        std::vector<const Node*> stack_;
        void descend(const Node* n);
    };

private:
    Ptr root_;
    explicit PSeq(Ptr r) : root_(std::move(r)) {}
    static Ptr make(i64 val, u64 pri, Ptr l, Ptr r);
    static void split(const Ptr& t, std::size_t k, Ptr& a, Ptr& b);
    static Ptr merge(const Ptr& a, const Ptr& b);
    static Ptr build(const std::vector<i64>& v, std::size_t lo, std::size_t hi, u64& st);
    friend class Cursor;
};

}  // namespace dlis
