#include "dlis/common.hpp"

namespace dlis {

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

u64 splitmix64(u64& state) {
    u64 z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng::Rng(u64 seed) {
    u64 st = seed;
    for (auto& w : s_) w = splitmix64(st);
}

static inline u64 rotl(u64 x, int k) { return (x << k) | (x >> (64 - k)); }

u64 Rng::next() {
    const u64 result = rotl(s_[1] * 5, 7) * 9;
    const u64 t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

u64 Rng::below(u64 bound) {
    if (bound <= 1) return 0;
    // rejection keeps the draw unbiased
    u64 limit = ~u64(0) - (~u64(0) % bound);
    u64 x;
    do {
        x = next();
    } while (x >= limit);
    return x % bound;
}

i64 Rng::range(i64 lo, i64 hi) { return lo + static_cast<i64>(below(static_cast<u64>(hi - lo) + 1)); }

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

int ceil_log2(u64 n) {
    int k = 0;
    while ((u64(1) << k) < n) ++k;
    return k;
}

}  // namespace dlis
