// Command-line harness over the C API: trace replay, fuzzing against patience sorting, and
// update-time benchmarks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dlis.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string engine = "patience";
    uint64_t seed = 1;
    double eps = 0.25;
    double kappa = 0.5;
    std::string mode = "exact2";
    int instances = 0;
    std::string csv;
};

struct EngineDeleter {
    void operator()(dlis_engine* e) const { dlis_engine_destroy(e); }
};
using EnginePtr = std::unique_ptr<dlis_engine, EngineDeleter>;

struct RngDeleter {
    void operator()(dlis_rng* r) const { dlis_rng_destroy(r); }
};
using RngPtr = std::unique_ptr<dlis_rng, RngDeleter>;

dlis_config make_config(const Options& o) {
    dlis_config c;
    dlis_config_default(&c);
    if (dlis_engine_kind_parse(o.engine.c_str(), &c.kind) != DLIS_OK) throw UsageError("unknown engine '" + o.engine + "'");
    c.seed = o.seed;
    c.eps = o.eps;
    c.kappa = o.kappa;
    c.mode = o.mode == "exact08" ? DLIS_MODE_EXACT08 : DLIS_MODE_EXACT2;
    c.instances = o.instances;
    return c;
}

EnginePtr create(const dlis_config& c, const std::vector<int64_t>& init) {
    dlis_engine* e = nullptr;
    if (dlis_engine_create(&c, init.data(), init.size(), &e) != DLIS_OK)
        throw UsageError(std::string("engine creation failed: ") + dlis_last_error());
    return EnginePtr(e);
}

int64_t lis_of(const dlis_engine* e) {
    int64_t v = 0;
    dlis_engine_lis(e, &v);
    return v;
}

std::vector<int64_t> values_of(const dlis_engine* e) {
    std::vector<int64_t> v(dlis_engine_length(e));
    dlis_engine_values(e, v.data(), v.size());
    return v;
}

// Exact engines must match; the approximate one must land in [(1 - eps) truth, truth].
bool within_contract(bool exact, double eps, int64_t got, int64_t truth) {
    if (exact) return got == truth;
    return got <= truth && static_cast<double>(got) >= (1 - eps) * static_cast<double>(truth) - 1e-9;
}

uint64_t mix_checksum(uint64_t acc, int64_t answer) { return acc * 1000003ULL + static_cast<uint64_t>(answer) + 1; }

// ---- traces ----

struct TraceOp {
    char kind;  // I, D, L, Q
    int64_t a = 0, b = 0, c = 0, d = 0;
    int line = 0;
};

struct Trace {
    std::vector<int64_t> init;
    std::vector<TraceOp> ops;
};

int64_t parse_int(const std::string& tok, int line) {
    std::size_t used = 0;
    int64_t v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size() || tok.empty()) throw UsageError("line " + std::to_string(line) + ": bad integer '" + tok + "'");
    return v;
}

Trace parse_trace(std::istream& in) {
    Trace t;
    std::string raw;
    int line = 0;
    bool have_init = false;
    while (std::getline(in, raw)) {
        ++line;
        std::istringstream ss(raw);
        std::vector<std::string> tok;
        for (std::string w; ss >> w;) tok.push_back(w);
        if (tok.empty() || tok[0][0] == '#') continue;
        auto want = [&](std::size_t k) {
            if (tok.size() != k)
                throw UsageError("line " + std::to_string(line) + ": '" + tok[0] + "' takes " + std::to_string(k - 1) + " arguments");
        };
        if (!have_init) {
            if (tok[0] != "INIT") throw UsageError("line " + std::to_string(line) + ": trace must start with INIT");
            for (std::size_t k = 1; k < tok.size(); ++k) t.init.push_back(parse_int(tok[k], line));
            have_init = true;
            continue;
        }
        TraceOp op;
        op.line = line;
        if (tok[0] == "I") {
            want(3);
            op.kind = 'I';
            op.a = parse_int(tok[1], line);
            op.b = parse_int(tok[2], line);
        } else if (tok[0] == "D") {
            want(2);
            op.kind = 'D';
            op.a = parse_int(tok[1], line);
        } else if (tok[0] == "L") {
            want(1);
            op.kind = 'L';
        } else if (tok[0] == "Q") {
            want(5);
            op.kind = 'Q';
            op.a = parse_int(tok[1], line);
            op.b = parse_int(tok[2], line);
            op.c = parse_int(tok[3], line);
            op.d = parse_int(tok[4], line);
        } else {
            throw UsageError("line " + std::to_string(line) + ": unknown op '" + tok[0] + "'");
        }
        if ((op.kind == 'I' || op.kind == 'D') && op.a < 1)
            throw UsageError("line " + std::to_string(line) + ": positions are 1-based");
        t.ops.push_back(op);
    }
    if (!have_init) throw UsageError("trace is empty; expected an INIT line");
    return t;
}

void write_csv(const std::string& path, const std::vector<std::string>& rows) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << "n,ops,total_ns,amortized_ns,answer_checksum\n";
    for (const auto& r : rows) out << r << "\n";
}

std::string csv_row(std::size_t n, std::size_t ops, int64_t total_ns, uint64_t checksum) {
    double amort = ops ? static_cast<double>(total_ns) / static_cast<double>(ops) : 0.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu,%zu,%lld,%.1f,%llu", n, ops, static_cast<long long>(total_ns), amort,
                  static_cast<unsigned long long>(checksum));
    return buf;
}

int run_trace(const Options& o, const std::string& path, bool oracle) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open trace " + path);
    Trace t = parse_trace(in);
    dlis_config cfg = make_config(o);
    EnginePtr eng = create(cfg, t.init);
    const bool exact = cfg.kind != DLIS_ENGINE_APPROX;

    std::size_t mismatches = 0, edits = 0;
    uint64_t checksum = 0;
    int64_t total_ns = 0;
    for (const auto& op : t.ops) {
        int64_t got = 0;
        std::optional<int64_t> truth;
        auto t0 = std::chrono::steady_clock::now();
        dlis_status st = DLIS_OK;
        if (op.kind == 'I') st = dlis_engine_insert(eng.get(), static_cast<size_t>(op.a), op.b);
        else if (op.kind == 'D') st = dlis_engine_erase(eng.get(), static_cast<size_t>(op.a));
        else if (op.kind == 'L') st = dlis_engine_lis(eng.get(), &got);
        else st = dlis_engine_query(eng.get(), op.a, op.b, op.c, op.d, &got);
        total_ns += std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
        if (st != DLIS_OK) throw UsageError("line " + std::to_string(op.line) + ": " + dlis_last_error());

        if (op.kind == 'I' || op.kind == 'D') {
            ++edits;
            if (oracle) {
                auto v = values_of(eng.get());
                int64_t want = dlis_lis(v.data(), v.size());
                int64_t have = lis_of(eng.get());
                if (!within_contract(exact, o.eps, have, want)) {
                    ++mismatches;
                    std::cout << "mismatch line " << op.line << ": engine " << have << " oracle " << want << "\n";
                }
            }
            continue;
        }
        if (oracle) {
            auto v = values_of(eng.get());
            truth = op.kind == 'L' ? dlis_lis(v.data(), v.size()) : dlis_rect_lis(v.data(), v.size(), op.a, op.b, op.c, op.d);
        }
        checksum = mix_checksum(checksum, got);
        std::cout << got;
        if (truth) {
            std::cout << " oracle " << *truth;
            if (!within_contract(exact, o.eps, got, *truth)) {
                ++mismatches;
                std::cout << " MISMATCH line " << op.line;
            }
        }
        std::cout << "\n";
    }
    std::cerr << "engine=" << o.engine << " ops=" << t.ops.size() << " edits=" << edits << " n=" << dlis_engine_length(eng.get())
              << " mismatches=" << mismatches << " work=" << dlis_engine_work(eng.get()) << "\n";
    if (!o.csv.empty()) write_csv(o.csv, {csv_row(dlis_engine_length(eng.get()), t.ops.size(), total_ns, checksum)});
    return mismatches ? kExitViolation : kExitOk;
}

// ---- fuzz ----

int64_t fresh_value(dlis_rng* rng, std::set<int64_t>& used, int64_t universe) {
    for (;;) {
        int64_t v = static_cast<int64_t>(dlis_rng_below(rng, static_cast<uint64_t>(universe)));
        if (used.insert(v).second) return v;
    }
}

// Returns the number of contract violations in one random trace.
std::size_t fuzz_trial(const Options& o, uint64_t seed, std::size_t n_max, std::size_t ops) {
    RngPtr rng(dlis_rng_create(seed));
    dlis_config cfg = make_config(o);
    cfg.seed = seed;
    const bool exact = cfg.kind != DLIS_ENGINE_APPROX;
    std::size_t n = dlis_rng_below(rng.get(), n_max + 1);
    int64_t universe = static_cast<int64_t>(8 * (n_max + ops) + 16);
    std::set<int64_t> used;
    std::vector<int64_t> seq;
    for (std::size_t k = 0; k < n; ++k) seq.push_back(fresh_value(rng.get(), used, universe));
    EnginePtr eng = create(cfg, seq);
    std::size_t count = ops ? ops : 2 * n + 8;
    std::size_t bad = 0;
    auto check = [&](int64_t got, int64_t truth) {
        if (!within_contract(exact, o.eps, got, truth)) ++bad;
    };
    check(lis_of(eng.get()), dlis_lis(seq.data(), seq.size()));
    for (std::size_t step = 0; step < count; ++step) {
        bool ins = seq.empty() || dlis_rng_below(rng.get(), 2) == 0;
        if (ins) {
            std::size_t pos = 1 + dlis_rng_below(rng.get(), seq.size() + 1);
            int64_t v = fresh_value(rng.get(), used, universe);
            seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(pos - 1), v);
            if (dlis_engine_insert(eng.get(), pos, v) != DLIS_OK) return bad + 1;
        } else {
            std::size_t pos = 1 + dlis_rng_below(rng.get(), seq.size());
            used.erase(seq[pos - 1]);
            seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(pos - 1));
            if (dlis_engine_erase(eng.get(), pos) != DLIS_OK) return bad + 1;
        }
        check(lis_of(eng.get()), dlis_lis(seq.data(), seq.size()));
        if (step % 8 == 7 && !seq.empty()) {
            int64_t a = 1 + static_cast<int64_t>(dlis_rng_below(rng.get(), seq.size()));
            int64_t b = a + 1 + static_cast<int64_t>(dlis_rng_below(rng.get(), seq.size() - static_cast<std::size_t>(a) + 1));
            int64_t c = static_cast<int64_t>(dlis_rng_below(rng.get(), static_cast<uint64_t>(universe)));
            int64_t d = c + 1 + static_cast<int64_t>(dlis_rng_below(rng.get(), static_cast<uint64_t>(universe)));
            int64_t got = 0;
            dlis_engine_query(eng.get(), a, b, c, d, &got);
            check(got, dlis_rect_lis(seq.data(), seq.size(), a, b, c, d));
        }
    }
    return bad;
}

int fuzz(const Options& o, std::size_t trials, std::size_t n_max, std::size_t ops) {
    std::size_t failed = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        uint64_t seed = o.seed + t;
        std::size_t bad = fuzz_trial(o, seed, n_max, ops);
        if (bad) {
            ++failed;
            std::cout << "violation: " << bad << " checks failed; repro: fuzz --engine " << o.engine << " --seed " << seed
                      << " --trials 1 --nmax " << n_max << " --ops " << ops << "\n";
        }
    }
    std::cerr << "engine=" << o.engine << " trials=" << trials << " failed=" << failed << "\n";
    return failed ? kExitViolation : kExitOk;
}

// ---- bench ----

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double n = static_cast<double>(xs.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        double x = std::log(xs[k]), y = std::log(ys[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double den = n * sxx - sx * sx;
    return den == 0 ? 0 : (n * sxy - sx * sy) / den;
}

int bench(const Options& o, const std::vector<std::size_t>& sizes, std::size_t ops) {
    dlis_config cfg = make_config(o);
    RngPtr rng(dlis_rng_create(o.seed));
    std::vector<std::string> rows;
    std::vector<double> xs, ys;
    std::cout << "n,ops,total_ns,amortized_ns,answer_checksum\n";
    for (std::size_t n : sizes) {
        // random permutation of even values; inserts draw fresh odd ones
        std::vector<int64_t> init(n);
        for (std::size_t k = 0; k < n; ++k) init[k] = 2 * static_cast<int64_t>(k);
        for (std::size_t k = n; k > 1; --k) std::swap(init[k - 1], init[dlis_rng_below(rng.get(), k)]);
        std::set<int64_t> used(init.begin(), init.end());
        int64_t universe = static_cast<int64_t>(4 * (n + ops) + 8);
        EnginePtr eng = create(cfg, init);
        std::size_t len = n;
        uint64_t checksum = 0;
        int64_t total_ns = 0;
        for (std::size_t k = 0; k < ops; ++k) {
            bool ins = len == 0 || k % 2 == 0;
            std::size_t pos = 1 + dlis_rng_below(rng.get(), ins ? len + 1 : len);
            int64_t v = 0;
            if (ins) {
                do v = 2 * static_cast<int64_t>(dlis_rng_below(rng.get(), static_cast<uint64_t>(universe))) + 1;
                while (!used.insert(v).second);
            }
            auto t0 = std::chrono::steady_clock::now();
            dlis_status st = ins ? dlis_engine_insert(eng.get(), pos, v) : dlis_engine_erase(eng.get(), pos);
            total_ns += std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
            if (st != DLIS_OK) throw UsageError(std::string("bench edit failed: ") + dlis_last_error());
            len += ins ? 1 : -1;
            checksum = mix_checksum(checksum, lis_of(eng.get()));
        }
        rows.push_back(csv_row(n, ops, total_ns, checksum));
        std::cout << rows.back() << std::endl;
        xs.push_back(static_cast<double>(n));
        ys.push_back(std::max(1.0, static_cast<double>(total_ns) / static_cast<double>(std::max<std::size_t>(ops, 1))));
    }
    if (xs.size() >= 2) std::cerr << "engine=" << o.engine << " slope=" << loglog_slope(xs, ys) << "\n";
    if (!o.csv.empty()) write_csv(o.csv, rows);
    return kExitOk;
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--engine", o.engine, "patience | ccp | exact | approx")
        ->check(CLI::IsMember({"patience", "ccp", "exact", "approx"}));
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--eps", o.eps, "approximation slack for the approx engine")->check(CLI::Range(1e-6, 0.999));
    sub->add_option("--kappa", o.kappa, "grid exponent parameter for the approx engine")->check(CLI::Range(1e-6, 0.999));
    sub->add_option("--mode", o.mode, "exact engine variant")->check(CLI::IsMember({"exact2", "exact08"}));
    sub->add_option("--instances", o.instances, "exact ensemble size (0 = default)")->check(CLI::NonNegativeNumber);
    sub->add_option("--csv", o.csv, "write a CSV summary here");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic LIS engines: trace replay, fuzzing and benchmarks"};
    app.require_subcommand(1);
    Options o;

    std::string trace;
    bool oracle = false;
    auto* rt = app.add_subcommand("run_trace", "replay a trace file");
    add_common(rt, o);
    rt->add_option("--trace", trace, "trace file")->required();
    rt->add_flag("--oracle", oracle, "check every answer against patience sorting");

    std::size_t trials = 100, n_max = 64, ops = 0;
    auto* fz = app.add_subcommand("fuzz", "random traces checked against patience sorting");
    add_common(fz, o);
    fz->add_option("--trials", trials, "number of traces");
    fz->add_option("--nmax", n_max, "largest initial length");
    fz->add_option("--ops", ops, "edits per trace (0 = 2n + 8)");

    std::vector<std::size_t> sizes{4096, 8192, 16384, 32768, 65536};
    std::size_t bench_ops = 2000;
    auto* bn = app.add_subcommand("bench", "amortized update time per size");
    add_common(bn, o);
    bn->add_option("--sizes", sizes, "initial lengths")->delimiter(',');
    bn->add_option("--ops", bench_ops, "edits per size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }
    try {
        if (*rt) return run_trace(o, trace, oracle);
        if (*fz) return fuzz(o, trials, n_max, ops);
        return bench(o, sizes, bench_ops);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
