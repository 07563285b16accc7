#include "dlis.h"

#include <string>

#include "dlis/engines.hpp"
#include "dlis/static_lis.hpp"

struct dlis_engine {
    std::unique_ptr<dlis::Engine> impl;
};

struct dlis_rng {
    dlis::Rng impl;
};

namespace {

thread_local std::string last_error;

dlis_status to_status(dlis::ErrorCode c) {
    switch (c) {
        case dlis::ErrorCode::ok: return DLIS_OK;
        case dlis::ErrorCode::range: return DLIS_E_RANGE;
        case dlis::ErrorCode::duplicate: return DLIS_E_DUPLICATE;
        case dlis::ErrorCode::invariant: return DLIS_E_INVARIANT;
        case dlis::ErrorCode::dimension: return DLIS_E_DIMENSION;
        case dlis::ErrorCode::lifecycle: return DLIS_E_LIFECYCLE;
        case dlis::ErrorCode::parse: return DLIS_E_PARSE;
        case dlis::ErrorCode::refused: return DLIS_E_REFUSED;
        case dlis::ErrorCode::internal: return DLIS_E_INTERNAL;
    }
    return DLIS_E_INTERNAL;
}

template <class F>
dlis_status guarded(F&& f) {
    last_error.clear();
    try {
        f();
        return DLIS_OK;
    } catch (const dlis::Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::exception& e) {
        last_error = e.what();
        return DLIS_E_INTERNAL;
    }
}

dlis_status null_arg() {
    last_error = "null argument";
    return DLIS_E_ARGUMENT;
}

}  // namespace

extern "C" {

void dlis_config_default(dlis_config* cfg) {
    if (!cfg) return;
    cfg->kind = DLIS_ENGINE_PATIENCE;
    cfg->seed = 1;
    cfg->eps = 0.25;
    cfg->kappa = 0.5;
    cfg->mode = DLIS_MODE_EXACT2;
    cfg->instances = 0;
}

dlis_status dlis_engine_kind_parse(const char* name, dlis_engine_kind* out) {
    if (!name || !out) return null_arg();
    return guarded([&] { *out = static_cast<dlis_engine_kind>(dlis::parse_engine(name)); });
}

dlis_status dlis_engine_create(const dlis_config* cfg, const int64_t* init, size_t n, dlis_engine** out) {
    if (!cfg || !out || (n > 0 && !init)) return null_arg();
    *out = nullptr;
    return guarded([&] {
        dlis::EngineConfig c;
        dlis::require(cfg->kind >= DLIS_ENGINE_PATIENCE && cfg->kind <= DLIS_ENGINE_APPROX, dlis::ErrorCode::range,
                      "unknown engine kind");
        c.kind = static_cast<dlis::EngineKind>(cfg->kind);
        c.seed = cfg->seed;
        c.eps = cfg->eps;
        c.kappa = cfg->kappa;
        c.mode = cfg->mode == DLIS_MODE_EXACT08 ? dlis::ExactMode::exact08 : dlis::ExactMode::exact2;
        c.instances = cfg->instances;
        std::vector<dlis::i64> v(init, init + n);
        auto e = std::make_unique<dlis_engine>();
        e->impl = dlis::make_engine(c, v);
        *out = e.release();
    });
}

void dlis_engine_destroy(dlis_engine* e) { delete e; }

dlis_status dlis_engine_insert(dlis_engine* e, size_t pos, int64_t val) {
    if (!e) return null_arg();
    return guarded([&] { e->impl->apply(dlis::EditOp::ins(pos, val)); });
}

dlis_status dlis_engine_erase(dlis_engine* e, size_t pos) {
    if (!e) return null_arg();
    return guarded([&] { e->impl->apply(dlis::EditOp::del(pos)); });
}

dlis_status dlis_engine_lis(const dlis_engine* e, int64_t* out) {
    if (!e || !out) return null_arg();
    return guarded([&] { *out = e->impl->lis(); });
}

dlis_status dlis_engine_query(const dlis_engine* e, int64_t x_lo, int64_t x_hi, int64_t y_lo, int64_t y_hi, int64_t* out) {
    if (!e || !out) return null_arg();
    return guarded([&] { *out = e->impl->query(x_lo, x_hi, y_lo, y_hi); });
}

size_t dlis_engine_length(const dlis_engine* e) { return e ? e->impl->length() : 0; }

size_t dlis_engine_values(const dlis_engine* e, int64_t* buf, size_t cap) {
    if (!e) return 0;
    auto v = e->impl->values();
    for (size_t k = 0; k < v.size() && k < cap && buf; ++k) buf[k] = v[k];
    return v.size();
}

uint64_t dlis_engine_work(const dlis_engine* e) { return e ? e->impl->work() : 0; }

int64_t dlis_lis(const int64_t* values, size_t n) {
    if (!values) return 0;
    return dlis::patience_lis(std::vector<dlis::i64>(values, values + n));
}

int64_t dlis_rect_lis(const int64_t* values, size_t n, int64_t x_lo, int64_t x_hi, int64_t y_lo, int64_t y_hi) {
    if (!values) return 0;
    return dlis::rect_lis(std::vector<dlis::i64>(values, values + n), x_lo, x_hi, y_lo, y_hi);
}

dlis_rng* dlis_rng_create(uint64_t seed) { return new dlis_rng{dlis::Rng(seed)}; }

void dlis_rng_destroy(dlis_rng* r) { delete r; }

uint64_t dlis_rng_next(dlis_rng* r) { return r ? r->impl.next() : 0; }

uint64_t dlis_rng_below(dlis_rng* r, uint64_t bound) { return r && bound ? r->impl.below(bound) : 0; }

const char* dlis_last_error(void) { return last_error.c_str(); }

}  // extern "C"
