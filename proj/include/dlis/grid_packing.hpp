#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "dlis/common.hpp"
#include "dlis/static_lis.hpp"

namespace dlis {

// ---- table combinatorics ----

// m x m non-negative table; row 0 is the bottom row, column 0 the leftmost.
struct Table {
    int m = 0;
    std::vector<i64> cells;

    static Table zeros(int m);
    i64& at(int row, int col) { return cells[static_cast<std::size_t>(row) * m + col]; }
    i64 at(int row, int col) const { return cells[static_cast<std::size_t>(row) * m + col]; }
};

struct Cell {
    int row = 0, col = 0;
    bool operator==(const Cell&) const = default;
};

// Cells lo..hi (inclusive) of one row (horizontal) or one column.
struct Segment {
    bool horizontal = true;
    int line = 0;
    int lo = 0, hi = 0;

    Cell first() const { return horizontal ? Cell{line, lo} : Cell{lo, line}; }
    Cell last() const { return horizontal ? Cell{line, hi} : Cell{hi, line}; }
    std::vector<Cell> cells() const;
};

struct Multisegment {
    std::vector<Segment> segs;

    // last cell of each segment equals the first cell of the next
    bool chained() const;
    std::vector<Cell> cells() const;  // distinct cells, path order
};

// a precedes b: every cell of a is strictly above and strictly right of every cell of b.
bool precedes(const Segment& a, const Segment& b);
bool conflicting(const Segment& a, const Segment& b);
bool conflicting(const Multisegment& a, const Multisegment& b);

i64 multisegment_score(const Table& t, const Multisegment& s);
// Best up/right path sum from the bottom-left to the top-right corner.
i64 table_score(const Table& t);
// Optimum over sets of pairwise non-conflicting multisegments with at most `delta` segments each.
// Refuses tables larger than 64 x 64.
i64 best_nonconflicting(const Table& t, int delta);
// Every multisegment with at most `delta` segments, one representative per distinct cell path.
std::vector<Multisegment> all_multisegments(int m, int delta);
// 1 on the staircase (0,0),(0,1),(1,1),(1,2),... up to the top-right corner, 0 elsewhere.
Table staircase_table(int m);

// ---- value ladder ----

// Geometric candidate values 1 = d_0 < d_1 < ... with d_last >= top; every integer x in [1, top]
// has a ladder value in [x / (1 + eps), x].
class ValueLadder {
public:
    ValueLadder() = default;
    ValueLadder(double eps, i64 top);
    const std::vector<i64>& levels() const { return levels_; }
    // Largest ladder value <= x (0 when x < 1).
    i64 floor(i64 x) const;
    double eps() const { return eps_; }

private:
    double eps_ = 0;
    std::vector<i64> levels_;
};

// ---- rectangle LIS ----

// One step of a sweep: moving the free edge to `coord` makes the swept box reach `credit`.
struct SweepStep {
    i64 coord;
    i64 credit;
};

// Rectangle LIS over a fixed point set. Estimates never exceed the truth.
class RectOracle {
public:
    virtual ~RectOracle() = default;
    virtual i64 lis(const Rect& r) const = 0;
    // Sweeps the lower edge of `box` on `axis` (0 = x, 1 = y) downward when dir = +1, or the upper
    // edge upward when dir = -1. Returns, by increasing credit, point coordinates t where the box
    // cut at t (inclusive) first reaches each credit value.
    virtual std::vector<SweepStep> steps(const Rect& box, int axis, int dir, const ValueLadder& ladder) const = 0;
    virtual std::size_t size() const = 0;
    virtual void insert(const Point& p) = 0;
    virtual void erase(const Point& p) = 0;
    virtual void set_meter(WorkMeter*) {}
};

struct QueryLisParams {
    double eps = 0.2;
    double kappa = 0.5;
    int depth = 0;      // grid levels; 0 derives ceil(3 log2(1/kappa)) + 5
    int leaf = 64;      // children with at most this many points are answered exactly
    int max_side = 8;   // cap on the grid side per level
    int side = 0;       // fixed grid side for every level; 0 follows the exponent schedule
    int max_delta = 0;  // cap on segments per multisegment; 0 keeps ceil(1 / eps')
};

// Level-local settings derived from QueryLisParams.
struct LevelConfig {
    int depth = 1;
    double eps_level = 0.1;
    int delta = 10;
    int leaf = 64;
    int max_side = 8;
    int side = 0;
};

LevelConfig resolve_level(const QueryLisParams& p);
// Exponent r_k of the grid side at a level with k grid levels beneath and including it.
double side_exponent(int levels);

class QueryLisIndex : public RectOracle {
public:
    QueryLisIndex(std::vector<Point> pts, const QueryLisParams& p);
    QueryLisIndex(std::vector<Point> pts, const LevelConfig& cfg, std::shared_ptr<const ValueLadder> ladder,
                  WorkMeter* meter = nullptr);
    ~QueryLisIndex() override;

    i64 query(const Rect& r) const;
    i64 lis(const Rect& r) const override { return query(r); }
    std::vector<SweepStep> steps(const Rect& box, int axis, int dir, const ValueLadder& ladder) const override;
    std::size_t size() const override { return pts_.size(); }
    // Grid edges stay fixed; the affected row and column children change and the table is refilled.
    void insert(const Point& p) override;
    void erase(const Point& p) override;

    bool is_leaf() const { return side_ == 0; }
    int side() const { return side_; }
    int delta() const { return cfg_.delta; }
    int depth() const { return cfg_.depth; }
    double eps_level() const { return cfg_.eps_level; }
    const ValueLadder& ladder() const { return *ladder_; }
    const std::vector<i64>& col_edges() const { return xs_; }
    const std::vector<i64>& row_edges() const { return ys_; }
    // Estimate for the cell rectangle spanned by `lo` and `hi` (hi not below or left of lo).
    i64 table(Cell lo, Cell hi) const;
    // Children refreshed by the last insert or erase.
    std::size_t last_rebuilt_children() const { return last_rebuilt_; }
    void set_meter(WorkMeter* m) override;

private:
    struct CacheKey {
        int axis, dir;
        i64 a, b, c, d;
        bool operator==(const CacheKey&) const = default;
    };
    struct CacheHash {
        std::size_t operator()(const CacheKey& k) const;
    };

    LevelConfig cfg_;
    std::shared_ptr<const ValueLadder> ladder_;
    std::vector<Point> pts_;  // sorted by x
    int side_ = 0;
    std::vector<i64> xs_, ys_;  // side_ + 1 edges each, outermost ones infinite
    std::vector<std::unique_ptr<RectOracle>> rows_, cols_;
    std::unique_ptr<RectOracle> leaf_;
    std::vector<i64> g_;
    mutable std::mutex cache_mu_;
    // per strip: rows first, then columns
    mutable std::vector<std::unordered_map<CacheKey, std::vector<SweepStep>, CacheHash>> cache_;
    std::size_t last_rebuilt_ = 0;
    WorkMeter* meter_ = nullptr;

    void build();
    void fill_table();
    std::size_t gi(Cell lo, Cell hi) const;
    int col_of(i64 x) const;
    int row_of(i64 y) const;
    std::unique_ptr<RectOracle> make_child(std::vector<Point> pts) const;
    std::vector<SweepStep> strip_steps(int strip, const Rect& box, int axis, int dir, bool use_cache) const;
    void drop_cache(int strip);
    void corner(int dir, const Rect& q, int nsteps, bool use_cache, std::vector<i64>& best_at) const;
    void add_work(u64 k) const {
        if (meter_) meter_->add(k);
    }
};

// Exact rectangle LIS by filtering and patience sorting.
std::unique_ptr<RectOracle> make_exact_oracle(std::vector<Point> pts, WorkMeter* meter = nullptr);

}  // namespace dlis
