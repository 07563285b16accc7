#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dlis/exact_dynamic.hpp"
#include "dlis/seq_store.hpp"

namespace dlis {

enum class EngineKind { patience, ccp, exact, approx };

struct EngineConfig {
    EngineKind kind = EngineKind::patience;
    u64 seed = 1;
    double eps = 0.25;
    double kappa = 0.5;
    ExactMode mode = ExactMode::exact2;
    int instances = 0;  // exact ensemble size; 0 keeps the default
};

EngineKind parse_engine(const std::string& name);
const char* engine_name(EngineKind k);
bool engine_is_exact(EngineKind k);

// Dynamic LIS over a sequence of distinct values, behind one interface.
class Engine {
public:
    virtual ~Engine() = default;
    virtual void apply(const EditOp& op) = 0;
    virtual i64 lis() const = 0;
    // LIS of the elements at positions [x_lo, x_hi) (1-based) with values in [y_lo, y_hi).
    virtual i64 query(i64 x_lo, i64 x_hi, i64 y_lo, i64 y_hi) const = 0;
    virtual std::size_t length() const = 0;
    virtual std::vector<i64> values() const = 0;
    u64 work() const { return meter_.units; }

protected:
    WorkMeter meter_;
};

std::unique_ptr<Engine> make_engine(const EngineConfig& cfg, const std::vector<i64>& init);

// Exact rectangle answer by filtering and patience sorting.
i64 rect_lis(const std::vector<i64>& values, i64 x_lo, i64 x_hi, i64 y_lo, i64 y_hi);

}  // namespace dlis
