#ifndef DLIS_H
#define DLIS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DLIS_API __declspec(dllexport)
#else
#define DLIS_API __attribute__((visibility("default")))
#endif

typedef enum dlis_status {
    DLIS_OK = 0,
    DLIS_E_RANGE = 1,
    DLIS_E_DUPLICATE = 2,
    DLIS_E_INVARIANT = 3,
    DLIS_E_DIMENSION = 4,
    DLIS_E_LIFECYCLE = 5,
    DLIS_E_PARSE = 6,
    DLIS_E_REFUSED = 7,
    DLIS_E_ARGUMENT = 8, /* null handle or pointer */
    DLIS_E_INTERNAL = 99
} dlis_status;

typedef enum dlis_engine_kind {
    DLIS_ENGINE_PATIENCE = 0,
    DLIS_ENGINE_CCP = 1,
    DLIS_ENGINE_EXACT = 2,
    DLIS_ENGINE_APPROX = 3
} dlis_engine_kind;

typedef enum dlis_exact_mode { DLIS_MODE_EXACT2 = 0, DLIS_MODE_EXACT08 = 1 } dlis_exact_mode;

typedef struct dlis_config {
    dlis_engine_kind kind;
    uint64_t seed;
    double eps;   /* approx engine */
    double kappa; /* approx engine */
    dlis_exact_mode mode;
    int instances; /* exact ensemble size, 0 = default */
} dlis_config;

typedef struct dlis_engine dlis_engine;
typedef struct dlis_rng dlis_rng;

/* Fills defaults: patience engine, seed 1, eps 0.25, kappa 0.5, exact2, default ensemble. */
DLIS_API void dlis_config_default(dlis_config* cfg);
/* Name to kind ("patience", "ccp", "exact", "approx"). */
DLIS_API dlis_status dlis_engine_kind_parse(const char* name, dlis_engine_kind* out);

/* Values must be pairwise distinct. */
DLIS_API dlis_status dlis_engine_create(const dlis_config* cfg, const int64_t* init, size_t n, dlis_engine** out);
DLIS_API void dlis_engine_destroy(dlis_engine* e);
/* Positions are 1-based. Failed edits leave the engine unchanged. */
DLIS_API dlis_status dlis_engine_insert(dlis_engine* e, size_t pos, int64_t val);
DLIS_API dlis_status dlis_engine_erase(dlis_engine* e, size_t pos);
DLIS_API dlis_status dlis_engine_lis(const dlis_engine* e, int64_t* out);
/* Positions in [x_lo, x_hi), values in [y_lo, y_hi). */
DLIS_API dlis_status dlis_engine_query(const dlis_engine* e, int64_t x_lo, int64_t x_hi, int64_t y_lo, int64_t y_hi,
                                       int64_t* out);
DLIS_API size_t dlis_engine_length(const dlis_engine* e);
/* Copies up to cap values in position order; returns the sequence length. */
DLIS_API size_t dlis_engine_values(const dlis_engine* e, int64_t* buf, size_t cap);
/* Abstract work units spent so far. */
DLIS_API uint64_t dlis_engine_work(const dlis_engine* e);

/* Static helpers. */
DLIS_API int64_t dlis_lis(const int64_t* values, size_t n);
DLIS_API int64_t dlis_rect_lis(const int64_t* values, size_t n, int64_t x_lo, int64_t x_hi, int64_t y_lo, int64_t y_hi);

/* Seeded xoshiro256** generator (state expanded from the seed with splitmix64). */
DLIS_API dlis_rng* dlis_rng_create(uint64_t seed);
DLIS_API void dlis_rng_destroy(dlis_rng* r);
DLIS_API uint64_t dlis_rng_next(dlis_rng* r);
/* Uniform in [0, bound); bound 0 returns 0. */
DLIS_API uint64_t dlis_rng_below(dlis_rng* r, uint64_t bound);

/* Message for the last failure on this thread; empty when none. */
DLIS_API const char* dlis_last_error(void);

#ifdef __cplusplus
}
#endif

#endif
