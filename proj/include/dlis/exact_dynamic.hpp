#pragma once

#include <memory>
#include <vector>

#include "dlis/scheduler.hpp"
#include "dlis/seq_store.hpp"

namespace dlis {

enum class ExactMode {
    exact2,   // light baskets answer through the pair oracle and SMAWK
    exact08,  // light baskets keep dense from-to tables
};

struct ExactParams {
    int w = 0;          // layers per basket; 0 derives it from n
    int s = 0;          // light-size threshold; 0 derives it from n
    int instances = 0;  // ensemble draws; 0 means 20 * ceil(log2 n), at least 1
    u64 seed = 1;
    ExactMode mode = ExactMode::exact2;
    bool unlimited = false;  // ignore the per-block edit budget (testing only)
};

struct ResolvedParams {
    int w = 1;
    int s = 1;
    int instances = 1;
    int budget = 1;  // edits one block may serve
};

ResolvedParams resolve_params(const ExactParams& p, std::size_t n);

// Per-member structure, for inspection.
struct MemberView {
    int residue = 0;
    bool failed = false;
    i64 report = 0;
    std::vector<int> boundary_layers;  // last entry is the dummy layer
    std::vector<char> heavy;           // per basket
    std::vector<int> basket_of;        // per current element, position order
    std::vector<char> on_boundary;     // per current element
};

// One block of the ensemble: layers of a snapshot, one member per distinct sampled residue.
// Members share the sequence and the per-layer trees; baskets are materialized the first time an
// edit or an upstream change reaches them.
class ExactBlock : public BlockAlgo {
public:
    ExactBlock(const PSeq& snapshot, const ExactParams& p);
    ~ExactBlock() override;

    u64 prep(u64 budget) override;
    bool ready() const override;
    u64 apply(const EditOp& op) override;
    i64 answer() const override;

    const ResolvedParams& params() const;
    int layer_count() const;
    std::size_t residue_set_size() const;
    std::size_t member_count() const;
    MemberView view(std::size_t member) const;
    std::vector<i64> values() const;
    u64 heavy_rebuilds() const;
    std::size_t ops_applied() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Factory for the block scheduler; every block gets its own seed derived from p.seed.
BlockFactory exact_factory(const ExactParams& p);

}  // namespace dlis
