#include "dlis/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dlis/static_lis.hpp"

namespace dlis {

namespace {

double nlogn(std::size_t n) { return static_cast<double>(n) * (ceil_log2(n + 2) + 1) + 1; }

class RecomputeBlock : public BlockAlgo {
public:
    explicit RecomputeBlock(const PSeq& snap) : snap_(snap), cursor_(snap_) {}
    u64 prep(u64 budget) override {
        if (done_) return 0;
        std::size_t got = cursor_.take(std::max<u64>(budget, 1), vals_);
        u64 work = got + 1;
        if (cursor_.done()) {
            answer_ = patience_lis(vals_);
            work += static_cast<u64>(nlogn(vals_.size()));
            done_ = true;
            snap_ = PSeq();
        }
        return work;
    }
    bool ready() const override { return done_; }
    u64 apply(const EditOp& op) override {
        apply_to_vector(vals_, op);
        answer_ = patience_lis(vals_);
        return static_cast<u64>(nlogn(vals_.size()));
    }
    i64 answer() const override { return answer_; }

private:
    PSeq snap_;
    PSeq::Cursor cursor_;
    std::vector<i64> vals_;
    i64 answer_ = 0;
    bool done_ = false;
};

}  // namespace

BlockFactory recompute_factory() {
    BlockFactory fac;
    fac.name = "recompute";
    fac.make = [](const PSeq& snap) -> std::unique_ptr<BlockAlgo> { return std::make_unique<RecomputeBlock>(snap); };
    fac.f = [](std::size_t n) { return 2 * nlogn(n); };
    fac.g = [](std::size_t n) { return std::floor(static_cast<double>(n) / 2) + 10; };
    fac.h = [](std::size_t n) { return nlogn(n); };
    return fac;
}

void validate_factory(const BlockFactory& fac) {
    require(fac.make && fac.f && fac.g && fac.h, ErrorCode::invariant, "factory is missing a member");
    const std::size_t samples[] = {0, 1, 2, 3, 5, 8, 13, 20, 50, 100, 1000, 10000, 100000, 1000000};
    for (std::size_t n : samples) {
        if (fac.g(n) > static_cast<double>(n) / 2.0 + 10.0)
            fail(ErrorCode::invariant, "factory " + fac.name + ": g(n) exceeds n/2+10 at n=" + std::to_string(n));
    }
}

BlockScheduler::BlockScheduler(BlockFactory fac, const std::vector<i64>& init) : fac_(std::move(fac)), master_(init) {
    validate_factory(fac_);
    for (i64 v : init)
        if (!present_.insert(v).second) fail(ErrorCode::duplicate, "duplicate value " + std::to_string(v));
    // the first block is built eagerly; its errors reach the caller
    active_ = fac_.make(master_);
    while (!active_->ready()) active_->prep(~u64(0) >> 1);
    g_active_ = g_of(init.size());
}

std::size_t BlockScheduler::g_of(std::size_t n) const {
    double g = std::floor(fac_.g(n));
    return g < 1 ? 1 : static_cast<std::size_t>(g);
}

std::unique_ptr<BlockAlgo> BlockScheduler::spawn(const PSeq& snap) {
    try {
        return fac_.make(snap);
    } catch (const Error&) {
        ++failures_;
        return nullptr;
    }
}

double BlockScheduler::step_bound(std::size_t n) const {
    double g = std::max(1.0, std::floor(fac_.g(n)));
    return std::max(fac_.h(n), fac_.f(n) / g);
}

i64 BlockScheduler::step(const EditOp& op) {
    if (op.kind == EditOp::Kind::insert) {
        require(op.pos >= 1 && op.pos <= master_.length() + 1, ErrorCode::range, "insert position out of range");
        if (present_.count(op.val)) fail(ErrorCode::duplicate, "duplicate value " + std::to_string(op.val));
        present_.insert(op.val);
    } else {
        require(op.pos >= 1 && op.pos <= master_.length(), ErrorCode::range, "delete position out of range");
        present_.erase(master_.get(op.pos));
    }
    master_ = master_.applied(op);
    last_ = StepStats{};
    last_.n = master_.length();

    u64 work = 0;
    if (active_ && !active_failed_) {
        try {
            work += active_->apply(op);
        } catch (const Error&) {
            active_failed_ = true;
            ++failures_;
        }
    }
    if (warming_) queue_.push_back(op);
    ++ops_done_;

    std::size_t window = (g_active_ + 9) / 10;
    if (!warming_ && ops_done_ + window >= g_active_) {
        warming_ = spawn(master_);
        queue_.clear();
        double per = std::ceil(fac_.f(master_.length()) / (static_cast<double>(g_active_) / 20.0));
        budget_ = static_cast<u64>(std::max(1.0, per));
    }
    if (warming_) {
        last_.warming = true;
        if (!warming_->ready()) {
            work += warming_->prep(budget_);
        } else {
            for (int k = 0; k < 2 && !queue_.empty(); ++k) {
                work += warming_->apply(queue_.front());
                queue_.pop_front();
            }
        }
    }
    if (ops_done_ >= g_active_) {
        if (warming_) {
            if (!warming_->ready() || !queue_.empty()) {
                last_.forced = true;
                ++forced_;
            }
            while (!warming_->ready()) work += warming_->prep(budget_);
            while (!queue_.empty()) {
                work += warming_->apply(queue_.front());
                queue_.pop_front();
            }
        }
        active_ = std::move(warming_);
        active_failed_ = false;
        g_active_ = g_of(master_.length());
        ops_done_ = 0;
        last_.swapped = true;
        ++swaps_;
    }
    last_.work = work;
    return answer();
}

i64 BlockScheduler::answer() const {
    if (!active_ || active_failed_) return 0;
    return active_->answer();
}

}  // namespace dlis
