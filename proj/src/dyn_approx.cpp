#include "dlis/dyn_approx.hpp"

#include <algorithm>
#include <cmath>

namespace dlis {

namespace {

constexpr i64 kSpan = i64(1) << 60;  // keys live in (0, kSpan)
constexpr i64 kValueLimit = i64(1) << 59;

double lg(std::size_t n) { return ceil_log2(n + 2) + 1.0; }

int side_for(const QueryLisParams& p, std::size_t n) {
    if (p.side > 0) return p.side;
    int m = static_cast<int>(std::lround(std::pow(static_cast<double>(std::max<std::size_t>(n, 1)), p.kappa / 4)));
    return std::clamp(m, 2, std::max(2, p.max_side));
}

}  // namespace

QueryLisParams dyn_default_params(double eps, double kappa) {
    QueryLisParams p;
    p.eps = eps;
    p.kappa = kappa;
    p.depth = 1;
    return p;
}

DynApproxBlock::DynApproxBlock(const PSeq& snapshot, const QueryLisParams& p) : params_(p), snap_(snapshot) {
    resolve_level(p);  // validates eps and kappa
    cursor_ = std::make_unique<PSeq::Cursor>(snap_);
}

DynApproxBlock::~DynApproxBlock() = default;

u64 DynApproxBlock::prep(u64 budget) {
    if (index_) return 0;
    u64 before = meter_.units;
    if (!cursor_->done()) {
        std::size_t got = cursor_->take(std::max<u64>(budget, 1), staged_);
        meter_.add(got + 1);
        if (!cursor_->done()) return meter_.units - before;
    }
    std::vector<i64> vals = std::move(staged_);
    staged_.clear();
    snap_ = PSeq();
    cursor_.reset();
    rebuild(vals);
    return meter_.units - before;
}

void DynApproxBlock::rebuild(const std::vector<i64>& values) {
    const std::size_t n = values.size();
    i64 gap = kSpan / static_cast<i64>(n + 1);
    std::vector<i64> keys(n);
    std::vector<Point> pts(n);
    value_of_.clear();
    for (std::size_t k = 0; k < n; ++k) {
        require(values[k] > -kValueLimit && values[k] < kValueLimit, ErrorCode::range, "value out of range");
        keys[k] = static_cast<i64>(k + 1) * gap;
        pts[k] = {keys[k], values[k]};
        value_of_.emplace(keys[k], values[k]);
    }
    order_ = std::make_unique<DynSeq>(keys, false);
    order_->set_meter(&meter_);
    meter_.add(static_cast<u64>(n * lg(n)) + 1);

    QueryLisParams q = params_;
    if (q.side == 0) q.side = side_for(params_, n);
    auto cfg = resolve_level(q);
    auto ladder = std::make_shared<ValueLadder>(cfg.eps_level, static_cast<i64>(std::max<std::size_t>(n, 1)) * 2);
    index_ = std::make_unique<QueryLisIndex>(std::move(pts), cfg, ladder, &meter_);
    refresh_answer();
}

void DynApproxBlock::refresh_answer() { answer_ = index_->query(Rect{0, kSpan, -kValueLimit, kValueLimit}); }

u64 DynApproxBlock::apply(const EditOp& op) {
    require(index_ != nullptr, ErrorCode::lifecycle, "block not prepared");
    u64 before = meter_.units;
    std::size_t len = order_->length();
    if (op.kind == EditOp::Kind::insert) {
        require(op.pos >= 1 && op.pos <= len + 1, ErrorCode::range, "insert position out of range");
        require(op.val > -kValueLimit && op.val < kValueLimit, ErrorCode::range, "value out of range");
        i64 left = op.pos > 1 ? order_->get(op.pos - 1) : 0;
        i64 right = op.pos <= len ? order_->get(op.pos) : kSpan;
        if (right - left < 2) {
            // labels exhausted here: respace everything
            ++relabels_;
            std::vector<i64> vals;
            vals.reserve(len + 1);
            for (i64 key : order_->values()) vals.push_back(value_of_.at(key));
            vals.insert(vals.begin() + static_cast<std::ptrdiff_t>(op.pos - 1), op.val);
            rebuild(vals);
            return meter_.units - before;
        }
        i64 key = left + (right - left) / 2;
        order_->insert(op.pos, key);
        value_of_.emplace(key, op.val);
        index_->insert(Point{key, op.val});
    } else {
        require(op.pos >= 1 && op.pos <= len, ErrorCode::range, "delete position out of range");
        i64 key = order_->erase(op.pos);
        auto it = value_of_.find(key);
        index_->erase(Point{key, it->second});
        value_of_.erase(it);
    }
    refresh_answer();
    return meter_.units - before;
}

i64 DynApproxBlock::query(std::size_t lo, std::size_t hi, i64 y_lo, i64 y_hi) const {
    require(index_ != nullptr, ErrorCode::lifecycle, "block not prepared");
    hi = std::min(hi, order_->length());
    if (lo < 1) lo = 1;
    if (lo > hi || y_lo >= y_hi) return 0;
    return index_->query(Rect{order_->get(lo), order_->get(hi) + 1, std::max(y_lo, -kValueLimit), std::min(y_hi, kValueLimit)});
}

BlockFactory approx_factory(const QueryLisParams& p) {
    resolve_level(p);
    BlockFactory fac;
    fac.name = "approx";
    fac.make = [p](const PSeq& snap) -> std::unique_ptr<BlockAlgo> { return std::make_unique<DynApproxBlock>(snap, p); };
    // one edit: two child updates and a table refill with Delta-step corner sweeps per cell pair
    fac.h = [p](std::size_t n) {
        double m = side_for(p, n);
        auto cfg = resolve_level(p);
        double ladder = std::log(static_cast<double>(n) + 2) / std::log1p(cfg.eps_level) + 1;
        double strip = static_cast<double>(n) / m + 1;
        return m * m * m * m * cfg.delta * std::min(ladder, strip) * strip * lg(n) + static_cast<double>(n) * lg(n);
    };
    fac.f = [h = fac.h](std::size_t n) { return h(n) + static_cast<double>(n) * lg(n); };
    fac.g = [p](std::size_t n) {
        double x = static_cast<double>(n);
        return std::max(1.0, std::floor(std::min(std::pow(x, 1 - p.kappa / 4), x / 2)));
    };
    return fac;
}

DynApproxIndex::DynApproxIndex(const std::vector<i64>& init, const QueryLisParams& p) : sched_(approx_factory(p), init) {}

i64 DynApproxIndex::insert(std::size_t pos, i64 val) { return sched_.step(EditOp::ins(pos, val)); }

i64 DynApproxIndex::erase(std::size_t pos) { return sched_.step(EditOp::del(pos)); }

i64 DynApproxIndex::query(std::size_t lo, std::size_t hi, i64 y_lo, i64 y_hi) const {
    auto* blk = dynamic_cast<const DynApproxBlock*>(sched_.active());
    return blk ? blk->query(lo, hi, y_lo, y_hi) : 0;
}

}  // namespace dlis
