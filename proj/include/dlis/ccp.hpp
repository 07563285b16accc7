#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "dlis/seq_store.hpp"

namespace dlis {

// Elements partitioned into levels by the length of the longest increasing chain ending at them.
// Each level is a treap in position order (values decrease along it). Positions are read through
// a DynSeq, so shifts caused by edits elsewhere are free.
//
// Source elements carry externally assigned levels: a regular element's level is one more than the
// highest level among everything (sources included) that precedes it with a smaller value, and at
// least 1. Sources never move unless told to via shift_sources.
class LevelForest {
public:
    struct Node {
        i64 val;
        DynSeq::Handle at;
        u64 pri;
        int size;
        int regular;  // non-source count in subtree
        int tagged;   // tagged count in subtree
        bool source;
        bool tag;
        int level;  // meaningful on roots only
        int src_idx;
        Node* l;
        Node* r;
        Node* p;
    };
    using Elem = Node*;

    struct Entry {
        DynSeq::Handle at;
        i64 val;
        int level;
        bool source = false;
        bool tag = false;
    };

    explicit LevelForest(const DynSeq* seq, u64 seed = 1);
    ~LevelForest();
    LevelForest(const LevelForest&) = delete;
    LevelForest& operator=(const LevelForest&) = delete;

    // Replaces the content. Entries must be sorted by position; levels must be consistent.
    std::vector<Elem> assign(const std::vector<Entry>& entries);

    Elem insert(DynSeq::Handle at, i64 val, bool tag = false);
    // Call before the element is removed from the sequence.
    void erase(Elem e);
    // Every listed source moves by delta (+1 or -1). Sources are given in position order; levels stay >= 1.
    void shift_sources(const std::vector<Elem>& moved, int delta);
    // Recomputes every regular level from the current source levels.
    void rebuild();

    int level_of(Elem e) const;
    int highest_level() const;
    int lowest_level() const;
    int nonempty_levels() const;
    std::size_t size() const { return count_; }
    std::vector<std::pair<int, std::vector<Elem>>> dump() const;

    // False once a cascade hit a state that contradicts the interval structure; rebuild() clears it.
    bool healthy() const { return healthy_; }
    // Tagged elements whose level changes are appended here with their delta.
    void set_tag_sink(std::vector<std::pair<Elem, int>>* sink) { sink_ = sink; }
    void set_meter(WorkMeter* m) { meter_ = m; }

private:
    const DynSeq* seq_;
    u64 rng_;
    std::vector<Node*> roots_;  // roots_[k - base_]
    int base_ = 1;
    std::size_t count_ = 0;
    bool healthy_ = true;
    std::vector<std::pair<Elem, int>>* sink_ = nullptr;
    WorkMeter* meter_ = nullptr;

    std::vector<Node*> sources_;  // by position
    std::vector<int> src_tree_;   // max segment tree over source levels
    std::size_t src_cap_ = 1;

    std::vector<std::unique_ptr<Node[]>> slabs_;
    std::vector<Node*> free_;

    Node* alloc();
    void release_tree(Node* t);
    void touch(u64 k = 1) const {
        if (meter_) meter_->add(k);
    }

    static int sz(Node* n) { return n ? n->size : 0; }
    static int reg(Node* n) { return n ? n->regular : 0; }
    static int tg(Node* n) { return n ? n->tagged : 0; }
    static void pull(Node* n);
    void split(Node* t, int k, Node*& a, Node*& b);
    Node* merge(Node* a, Node* b);
    Node* build(const std::vector<Node*>& items);

    Node*& root(int k);
    Node* root_or_null(int k) const;
    void set_root(int k, Node* t);
    void trim();
    int index_of(Node* n) const;
    Node* kth(Node* t, int k) const;
    std::size_t pos(Node* n) const { return seq_->position(n->at); }
    int count_pos_less(Node* t, std::size_t p) const;
    int count_val_greater(Node* t, i64 v) const;
    int regular_prefix(Node* t, int k) const;
    Node* kth_regular(Node* t, int r, int& idx) const;
    void collect_tagged(Node* t, int delta);

    int source_level_above(std::size_t p, i64 v) const;  // max level of sources dominating (p, v)
    void set_source_level(int idx, int level);
    void reset_sources();

    struct Span {
        int lo = 0, hi = -1;  // inclusive indices in a level
        bool empty() const { return hi < lo; }
    };
    Span hull_with_marks(Node* t, Span s, const std::vector<Elem>& marks);
    bool marks_consistent(Node* t, Span s, std::size_t marks, int regulars);
    Node* extract(int k, Span s);
    void place(int k, Node* block);
    void promote(int start, const std::vector<std::pair<int, std::vector<Elem>>>& marks, Node* fresh, int fresh_level);
    void demote(int start, const std::vector<std::pair<int, std::vector<Elem>>>& marks, Node* gone, int gone_level);
};

// Standalone dynamic LIS over its own sequence.
class CcpEngine {
public:
    explicit CcpEngine(const std::vector<i64>& values = {});
    void insert(std::size_t pos, i64 val);
    i64 erase(std::size_t pos);
    void apply(const EditOp& op);
    int lis() const { return forest_.nonempty_levels(); }
    std::size_t length() const { return seq_.length(); }
    std::vector<i64> values() const { return seq_.values(); }
    // Level partition as values in position order, lowest level first.
    std::vector<std::vector<i64>> level_values() const;
    // Audit: after every op compare against a rebuild and check moves were intervals.
    void set_audit(bool on) { audit_ = on; }
    u64 audited_ops() const { return audited_; }
    void set_meter(WorkMeter* m) {
        seq_.set_meter(m);
        forest_.set_meter(m);
    }

private:
    DynSeq seq_;
    LevelForest forest_;
    std::vector<LevelForest::Elem> elem_;  // by DynSeq id
    bool audit_ = false;
    u64 audited_ = 0;
    void audit(const std::vector<std::pair<int, std::vector<LevelForest::Elem>>>& before, LevelForest::Elem skip);
};

}  // namespace dlis

namespace dlis {

// Immutable treap node shared between forests. `lay` is the element's layer when the forest family
// was built, or -1 for elements inserted later; subtree aggregates track the lowest and highest
// such layer and how often it occurs, which lets each forest count its sources and tagged elements
// without per-forest flags.
struct LayerNode {
    i64 val;
    DynSeq::Handle at;
    u64 pri;
    int size;
    int lay;
    int lo_lay, lo_cnt;
    int hi_lay, hi_cnt;
    const LayerNode* l;
    const LayerNode* r;
};

class NodeArena {
public:
    LayerNode* make();
    std::size_t allocated() const { return count_; }

private:
    std::vector<std::unique_ptr<LayerNode[]>> chunks_;
    std::size_t used_ = 0;
    std::size_t count_ = 0;
};

// Builds a treap over nodes given in position order; the nodes must be fresh from the arena.
const LayerNode* build_layer_treap(const std::vector<LayerNode*>& nodes);

// Level forest over shared immutable treaps (path copying). Same semantics as LevelForest:
// sources are the elements whose layer equals src_layer, tagged elements those whose layer equals
// tag_layer. Elements are identified by their sequence handle.
class PersistentLevels {
public:
    using Sink = std::vector<std::pair<DynSeq::Handle, int>>;

    PersistentLevels(const DynSeq* seq, NodeArena* arena, int src_layer, int tag_layer, u64 seed);

    // roots[i] holds level first_level + i. Source j (position order, values decreasing) sits at
    // level source_levels[j] inside those roots.
    void init(int first_level, std::vector<const LayerNode*> roots, std::vector<DynSeq::Handle> sources,
              std::vector<int> source_levels);

    void insert(DynSeq::Handle at, i64 val);
    // Call before the element is removed from the sequence.
    void erase(DynSeq::Handle at, i64 val);
    // Sources listed by index (ascending) move by delta, +1 or -1; levels stay >= 1.
    void shift_sources(const std::vector<int>& idx, int delta);
    // Arbitrary new source levels (all >= 1), followed by a rebuild.
    void assign_source_levels(const std::vector<int>& levels);
    // Recomputes every regular level from the current source levels.
    void rebuild();

    int level_of(DynSeq::Handle at, i64 val) const;
    int source_level(std::size_t j) const { return src_levels_[j]; }
    std::size_t source_count() const { return src_at_.size(); }
    int highest_level() const;
    u64 rebuilds() const { return rebuilds_; }
    // Values per nonempty level, lowest level first, paired with the level number.
    std::vector<std::pair<int, std::vector<i64>>> dump() const;

    void set_sink(Sink* s) { sink_ = s; }
    void set_meter(WorkMeter* m) { meter_ = m; }

private:
    using NodeP = const LayerNode*;
    const DynSeq* seq_;
    NodeArena* arena_;
    int src_layer_, tag_layer_;
    u64 rng_;
    std::vector<NodeP> roots_;
    int base_ = 1;
    bool healthy_ = true;
    u64 rebuilds_ = 0;
    Sink* sink_ = nullptr;
    WorkMeter* meter_ = nullptr;

    std::vector<DynSeq::Handle> src_at_;
    std::vector<i64> src_val_;
    std::vector<int> src_levels_;
    std::vector<int> src_tree_;
    std::size_t src_cap_ = 1;

    void touch(u64 k = 1) const {
        if (meter_) meter_->add(k);
    }
    static int sz(NodeP t) { return t ? t->size : 0; }
    int srcs(NodeP t) const { return t && t->lo_lay == src_layer_ ? t->lo_cnt : 0; }
    int tags(NodeP t) const { return t && t->hi_lay == tag_layer_ ? t->hi_cnt : 0; }
    LayerNode* clone(NodeP t);
    void split(NodeP t, int k, NodeP& a, NodeP& b);
    NodeP merge(NodeP a, NodeP b);
    NodeP build(const std::vector<NodeP>& items);

    NodeP& root(int k);
    NodeP root_or_null(int k) const;
    void trim();
    std::size_t pos(NodeP n) const { return seq_->position(n->at); }
    std::size_t pos(DynSeq::Handle h) const { return seq_->position(h); }
    int count_pos_less(NodeP t, std::size_t p) const;
    int count_val_greater(NodeP t, i64 v) const;
    NodeP kth(NodeP t, int k) const;
    int regular_prefix(NodeP t, int k) const;
    int kth_regular(NodeP t, int r) const;
    void emit_tags(NodeP t, int delta);
    int find_source(std::size_t p) const;
    int source_level_above(std::size_t p, i64 v) const;
    void set_source_level(int j, int level);
    int search_level(std::size_t p, i64 v) const;

    struct Span {
        int lo = 0, hi = -1;
        bool empty() const { return hi < lo; }
    };
    using Marks = std::vector<std::pair<int, std::vector<int>>>;
    int index_in(NodeP t, DynSeq::Handle h) const;
    Span hull(NodeP t, Span s, const std::vector<int>& marks);
    bool consistent(NodeP t, Span s, std::size_t marks, int regulars);
    NodeP extract(int k, Span s);
    void place(int k, NodeP block);
    void promote(int start, const Marks& marks, NodeP fresh, int fresh_level);
    void demote(int start, const Marks& marks, DynSeq::Handle gone, i64 gone_val, int gone_level);
    void heal();
};

}  // namespace dlis
