#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <string>
#include <unordered_set>

#include "dlis/seq_store.hpp"

namespace dlis {

// A block algorithm: resumable preprocessing over a snapshot, then a bounded
// number of edits. All costs are reported in abstract work units.
class BlockAlgo {
public:
    virtual ~BlockAlgo() = default;
    // Spend roughly `budget` units of preprocessing; returns units spent.
    virtual u64 prep(u64 budget) = 0;
    virtual bool ready() const = 0;
    // Applies an edit and refreshes the answer; returns units spent.
    virtual u64 apply(const EditOp& op) = 0;
    virtual i64 answer() const = 0;
};

struct BlockFactory {
    std::string name;
    std::function<std::unique_ptr<BlockAlgo>(const PSeq&)> make;
    std::function<double(std::size_t)> f;  // preprocessing cost
    std::function<double(std::size_t)> g;  // edits served per block
    std::function<double(std::size_t)> h;  // per-edit cost
};

// Throws ErrorCode::invariant when g(n) > n/2 + 10 at some sampled n.
void validate_factory(const BlockFactory& fac);

// Reference block: keeps a plain copy of the values and recomputes by patience sorting after
// every edit; f = h = n log n, g = n/2 + 10.
BlockFactory recompute_factory();

class BlockScheduler {
public:
    struct StepStats {
        u64 work = 0;
        std::size_t n = 0;
        bool warming = false;
        bool swapped = false;
        bool forced = false;
    };

    BlockScheduler(BlockFactory fac, const std::vector<i64>& init);

    i64 step(const EditOp& op);
    i64 answer() const;
    const PSeq& sequence() const { return master_; }
    const StepStats& last() const { return last_; }
    // max(h(n), f(n)/g(n)) at the current length
    double step_bound(std::size_t n) const;

    u64 swaps() const { return swaps_; }
    u64 forced_finishes() const { return forced_; }
    u64 failures() const { return failures_; }
    std::size_t block_ops() const { return ops_done_; }
    std::size_t block_len() const { return g_active_; }
    // Block currently serving answers; null while it has failed.
    const BlockAlgo* active() const { return active_failed_ ? nullptr : active_.get(); }

private:
    BlockFactory fac_;
    PSeq master_;
    std::unordered_set<i64> present_;
    std::unique_ptr<BlockAlgo> active_;
    std::unique_ptr<BlockAlgo> warming_;
    std::deque<EditOp> queue_;
    std::size_t g_active_ = 1;
    std::size_t ops_done_ = 0;
    u64 budget_ = 0;
    bool active_failed_ = false;
    u64 swaps_ = 0, forced_ = 0, failures_ = 0;
    StepStats last_;

    std::size_t g_of(std::size_t n) const;
    std::unique_ptr<BlockAlgo> spawn(const PSeq& snap);
};

}  // namespace dlis
