#include "dlis/engines.hpp"

#include <algorithm>

#include "dlis/ccp.hpp"
#include "dlis/dyn_approx.hpp"
#include "dlis/static_lis.hpp"

namespace dlis {

EngineKind parse_engine(const std::string& name) {
    if (name == "patience") return EngineKind::patience;
    if (name == "ccp") return EngineKind::ccp;
    if (name == "exact") return EngineKind::exact;
    if (name == "approx") return EngineKind::approx;
    fail(ErrorCode::parse, "unknown engine '" + name + "'");
}

const char* engine_name(EngineKind k) {
    switch (k) {
        case EngineKind::patience: return "patience";
        case EngineKind::ccp: return "ccp";
        case EngineKind::exact: return "exact";
        case EngineKind::approx: return "approx";
    }
    return "?";
}

bool engine_is_exact(EngineKind k) { return k != EngineKind::approx; }

i64 rect_lis(const std::vector<i64>& values, i64 x_lo, i64 x_hi, i64 y_lo, i64 y_hi) {
    i64 n = static_cast<i64>(values.size());
    x_lo = std::max<i64>(x_lo, 1);
    x_hi = std::min<i64>(x_hi, n + 1);
    std::vector<i64> in;
    for (i64 p = x_lo; p < x_hi; ++p) {
        i64 v = values[static_cast<std::size_t>(p - 1)];
        if (v >= y_lo && v < y_hi) in.push_back(v);
    }
    return patience_lis(in);
}

namespace {

// Recomputes from scratch after every edit.
class PatienceEngine : public Engine {
public:
    explicit PatienceEngine(const std::vector<i64>& init) : seq_(init) {
        seq_.set_meter(&meter_);
        recompute();
    }
    void apply(const EditOp& op) override {
        if (op.kind == EditOp::Kind::insert) seq_.insert(op.pos, op.val);
        else seq_.erase(op.pos);
        recompute();
    }
    i64 lis() const override { return lis_; }
    i64 query(i64 x_lo, i64 x_hi, i64 y_lo, i64 y_hi) const override { return rect_lis(seq_.values(), x_lo, x_hi, y_lo, y_hi); }
    std::size_t length() const override { return seq_.length(); }
    std::vector<i64> values() const override { return seq_.values(); }

private:
    DynSeq seq_;
    i64 lis_ = 0;
    void recompute() {
        auto v = seq_.values();
        meter_.add(v.size() * static_cast<u64>(ceil_log2(v.size() + 2)) + 1);
        lis_ = patience_lis(v);
    }
};

class CcpAdapter : public Engine {
public:
    explicit CcpAdapter(const std::vector<i64>& init) : eng_(init) { eng_.set_meter(&meter_); }
    void apply(const EditOp& op) override { eng_.apply(op); }
    i64 lis() const override { return eng_.lis(); }
    i64 query(i64 x_lo, i64 x_hi, i64 y_lo, i64 y_hi) const override { return rect_lis(eng_.values(), x_lo, x_hi, y_lo, y_hi); }
    std::size_t length() const override { return eng_.length(); }
    std::vector<i64> values() const override { return eng_.values(); }

private:
    CcpEngine eng_;
};

// Work is summed from the scheduler's per-step counters.
class ExactAdapter : public Engine {
public:
    ExactAdapter(const std::vector<i64>& init, const EngineConfig& cfg) : sched_(factory(cfg), init) {}
    void apply(const EditOp& op) override {
        sched_.step(op);
        meter_.add(sched_.last().work);
    }
    i64 lis() const override { return sched_.answer(); }
    i64 query(i64 x_lo, i64 x_hi, i64 y_lo, i64 y_hi) const override {
        return rect_lis(sched_.sequence().values(), x_lo, x_hi, y_lo, y_hi);
    }
    std::size_t length() const override { return sched_.sequence().length(); }
    std::vector<i64> values() const override { return sched_.sequence().values(); }

private:
    BlockScheduler sched_;
    static BlockFactory factory(const EngineConfig& cfg) {
        ExactParams p;
        p.seed = cfg.seed;
        p.mode = cfg.mode;
        p.instances = cfg.instances;
        return exact_factory(p);
    }
};

class ApproxAdapter : public Engine {
public:
    ApproxAdapter(const std::vector<i64>& init, const EngineConfig& cfg) : idx_(init, dyn_default_params(cfg.eps, cfg.kappa)) {}
    void apply(const EditOp& op) override {
        idx_.step(op);
        meter_.add(idx_.scheduler().last().work);
    }
    i64 lis() const override { return idx_.lis(); }
    i64 query(i64 x_lo, i64 x_hi, i64 y_lo, i64 y_hi) const override {
        x_lo = std::max<i64>(x_lo, 1);
        if (x_hi <= x_lo) return 0;
        return idx_.query(static_cast<std::size_t>(x_lo), static_cast<std::size_t>(x_hi - 1), y_lo, y_hi);
    }
    std::size_t length() const override { return idx_.length(); }
    std::vector<i64> values() const override { return idx_.scheduler().sequence().values(); }

private:
    DynApproxIndex idx_;
};

}  // namespace

std::unique_ptr<Engine> make_engine(const EngineConfig& cfg, const std::vector<i64>& init) {
    switch (cfg.kind) {
        case EngineKind::patience: return std::make_unique<PatienceEngine>(init);
        case EngineKind::ccp: return std::make_unique<CcpAdapter>(init);
        case EngineKind::exact: return std::make_unique<ExactAdapter>(init, cfg);
        case EngineKind::approx: return std::make_unique<ApproxAdapter>(init, cfg);
    }
    fail(ErrorCode::internal, "unknown engine kind");
}

}  // namespace dlis
