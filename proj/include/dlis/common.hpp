#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dlis {

using i64 = std::int64_t;
using u64 = std::uint64_t;

enum class ErrorCode : int {
    ok = 0,
    range = 1,
    duplicate = 2,
    invariant = 3,
    dimension = 4,
    lifecycle = 5,
    parse = 6,
    refused = 7,
    internal = 99,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool cond, ErrorCode code, const char* what) {
    if (!cond) fail(code, what);
}

// splitmix64 seeds xoshiro256**; both are fixed so repro seeds port across builds.
class Rng {
public:
    explicit Rng(u64 seed = 0);
    u64 next();
    // uniform in [0, bound)
    u64 below(u64 bound);
    i64 range(i64 lo, i64 hi);  // inclusive
    double unit();

private:
    u64 s_[4];
};

u64 splitmix64(u64& state);

// Counts abstract work units (tree node visits, matrix probes).
struct WorkMeter {
    u64 units = 0;
    void add(u64 k = 1) { units += k; }
};

int ceil_log2(u64 n);

}  // namespace dlis
