#pragma once

#include <map>
#include <memory>
#include <vector>

#include "dlis/grid_packing.hpp"
#include "dlis/scheduler.hpp"
#include "dlis/seq_store.hpp"

namespace dlis {

// Default recursion for the dynamic index is one grid level over exact children.
QueryLisParams dyn_default_params(double eps = 0.25, double kappa = 0.5);

// One block: a query index over (key, value) points, where keys are spaced labels that keep
// sequence order. Edits touch one row child and one column child, then refill the table.
class DynApproxBlock : public BlockAlgo {
public:
    DynApproxBlock(const PSeq& snapshot, const QueryLisParams& p);
    ~DynApproxBlock() override;

    u64 prep(u64 budget) override;
    bool ready() const override { return index_ != nullptr; }
    u64 apply(const EditOp& op) override;
    i64 answer() const override { return answer_; }

    // Estimate for positions [lo, hi] (1-based, inclusive) and values in [y_lo, y_hi).
    i64 query(std::size_t lo, std::size_t hi, i64 y_lo, i64 y_hi) const;
    std::size_t length() const { return order_ ? order_->length() : 0; }
    const QueryLisIndex& index() const { return *index_; }
    u64 relabels() const { return relabels_; }

private:
    QueryLisParams params_;
    PSeq snap_;
    std::unique_ptr<PSeq::Cursor> cursor_;
    std::vector<i64> staged_;
    std::unique_ptr<DynSeq> order_;  // position -> key
    std::map<i64, i64> value_of_;
    std::unique_ptr<QueryLisIndex> index_;
    WorkMeter meter_;
    i64 answer_ = 0;
    u64 relabels_ = 0;

    void rebuild(const std::vector<i64>& values);
    void refresh_answer();
};

// Factory for the block scheduler; blocks serve n^(1 - kappa/4) edits.
BlockFactory approx_factory(const QueryLisParams& p);

// Approximate LIS under edits with worst-case work per edit, via the block scheduler.
class DynApproxIndex {
public:
    DynApproxIndex(const std::vector<i64>& init, const QueryLisParams& p);

    i64 insert(std::size_t pos, i64 val);
    i64 erase(std::size_t pos);
    i64 step(const EditOp& op) { return sched_.step(op); }
    i64 lis() const { return sched_.answer(); }
    // Estimate for positions [lo, hi] and values in [y_lo, y_hi); 0 while no block is serving.
    i64 query(std::size_t lo, std::size_t hi, i64 y_lo, i64 y_hi) const;
    std::size_t length() const { return sched_.sequence().length(); }
    const BlockScheduler& scheduler() const { return sched_; }

private:
    BlockScheduler sched_;
};

}  // namespace dlis
