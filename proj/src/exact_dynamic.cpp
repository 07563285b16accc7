#include "dlis/exact_dynamic.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "dlis/ccp.hpp"
#include "dlis/lis_oracle.hpp"
#include "dlis/monge.hpp"

namespace dlis {

namespace {

constexpr i64 kUnreachable = -(i64(1) << 40);
constexpr int kNoLayer = INT_MAX;

// Smallest x with x^k >= n^j, for the exact roots used by the default parameters.
int ceil_power(std::size_t n, int j, int k) {
    if (n <= 1) return 1;
    long double target = std::pow(static_cast<long double>(n), static_cast<long double>(j) / k);
    i64 x = static_cast<i64>(std::floor(target));
    if (x < 1) x = 1;
    auto pw = [](long double b, int e) {
        long double r = 1;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    };
    long double nj = pw(static_cast<long double>(n), j);
    while (x > 1 && pw(static_cast<long double>(x - 1), k) >= nj) --x;
    while (pw(static_cast<long double>(x), k) < nj) ++x;
    return static_cast<int>(x);
}

int log_units(std::size_t n) { return ceil_log2(n + 2) + 1; }

}  // namespace

ResolvedParams resolve_params(const ExactParams& p, std::size_t n) {
    ResolvedParams r;
    if (p.mode == ExactMode::exact2) {
        r.w = ceil_power(n, 1, 3);
        r.s = ceil_power(n, 2, 3);
    } else {
        r.w = ceil_power(n, 2, 5);
        r.s = ceil_power(n, 3, 5);
    }
    if (p.w > 0) r.w = p.w;
    if (p.s > 0) r.s = p.s;
    r.w = std::max(r.w, 1);
    r.s = std::max(r.s, r.w);
    r.instances = p.instances > 0 ? p.instances : std::max(1, 20 * ceil_log2(std::max<std::size_t>(n, 1)));
    r.budget = std::max(1, r.w / 12);
    return r;
}

struct ExactBlock::Impl {
    struct Ref {
        DynSeq::Handle h;
        int id;
    };

    struct Basket {
        int lo = 1, hi = 1;  // layers lo..hi; hi beyond the last layer marks the dummy basket
        bool heavy = false;
        std::vector<i64> out;  // boundary values; empty while all equal hi
        std::unique_ptr<PersistentLevels> forest;
        PersistentLevels::Sink sink;
        std::vector<Ref> inserted;  // light baskets only
        bool dirty = true;
        bool built = false;
        PairOracle oracle;
        std::vector<i64> table;  // dense mode: prev rows x boundary columns
        std::size_t table_cols = 0;
    };

    struct Member {
        int r = 0;
        bool failed = false;
        std::vector<int> bounds;  // boundary layers, the dummy layer last
        std::vector<Basket> baskets;
        std::unordered_map<int, int> ins;  // inserted id -> basket
        i64 report = 0;
        u64 seed = 0;
    };

    ExactParams p;
    ResolvedParams rp;
    PSeq snap;
    std::unique_ptr<PSeq::Cursor> cursor;
    int stage = 0;
    std::vector<i64> vals;
    std::vector<int> b;
    std::vector<i64> tails;

    std::unique_ptr<DynSeq> seq;
    WorkMeter meter;
    NodeArena arena;
    int L = 0;
    std::size_t n0 = 0;
    std::vector<std::vector<Ref>> layer;  // 1-based
    std::vector<const LayerNode*> layer_root;
    std::vector<int> prefix;  // prefix[l] = elements in layers 1..l
    std::vector<int> lay_of, idx_of;  // by id, originals only
    std::vector<char> alive;          // by id
    std::size_t r_size = 0;
    std::vector<Member> members;
    std::size_t applied = 0;
    std::size_t op_limit = 0;
    u64 rebuilds_retired = 0;

    int layer_size(int l) const { return l >= 1 && l <= L ? static_cast<int>(layer[l].size()) : 1; }
    std::size_t pos(DynSeq::Handle h) const { return seq->position(h); }

    // ---- preprocessing ----

    void patience_chunk(std::size_t k) {
        std::size_t start = vals.size();
        cursor->take(k, vals);
        for (std::size_t i = start; i < vals.size(); ++i) {
            auto it = std::lower_bound(tails.begin(), tails.end(), vals[i]);
            b.push_back(static_cast<int>(it - tails.begin()) + 1);
            if (it == tails.end())
                tails.push_back(vals[i]);
            else
                *it = vals[i];
        }
        meter.add((vals.size() - start) * static_cast<u64>(log_units(vals.size())));
    }

    void build_shared(u64 seed) {
        n0 = vals.size();
        seq = std::make_unique<DynSeq>(vals, false);
        seq->set_meter(&meter);
        auto hs = seq->handles();
        L = static_cast<int>(tails.size());
        layer.assign(static_cast<std::size_t>(L) + 1, {});
        lay_of.assign(n0, 0);
        idx_of.assign(n0, 0);
        alive.assign(static_cast<std::size_t>(seq->id_bound()), 1);
        for (std::size_t i = 0; i < n0; ++i) {
            int id = hs[i]->id;
            lay_of[id] = b[i];
            idx_of[id] = static_cast<int>(layer[b[i]].size());
            layer[b[i]].push_back({hs[i], id});
        }
        prefix.assign(static_cast<std::size_t>(L) + 1, 0);
        for (int l = 1; l <= L; ++l) prefix[l] = prefix[l - 1] + static_cast<int>(layer[l].size());
        layer_root.assign(static_cast<std::size_t>(L) + 1, nullptr);
        u64 st = seed ^ 0x1a7e5;
        std::vector<LayerNode*> nodes;
        for (int l = 1; l <= L; ++l) {
            nodes.clear();
            for (const Ref& ref : layer[l]) {
                LayerNode* nd = arena.make();
                *nd = LayerNode{};
                nd->val = ref.h->val;
                nd->at = ref.h;
                nd->pri = splitmix64(st);
                nd->lay = l;
                nodes.push_back(nd);
            }
            layer_root[l] = build_layer_treap(nodes);
        }
        meter.add(3 * n0);
    }

    void build_members(u64 seed) {
        int w = rp.w;
        std::vector<i64> sums(static_cast<std::size_t>(w), 0);
        for (int l = 1; l <= L; ++l) sums[l % w] += static_cast<i64>(layer[l].size());
        std::vector<int> R;
        for (int r = 0; r < w; ++r)
            if (sums[r] * w <= 2 * static_cast<i64>(n0)) R.push_back(r);
        if (R.empty()) R.push_back(static_cast<int>(std::min_element(sums.begin(), sums.end()) - sums.begin()));
        r_size = R.size();
        Rng rng(seed);
        std::vector<char> picked(static_cast<std::size_t>(w), 0);
        for (int k = 0; k < rp.instances; ++k) picked[R[rng.below(R.size())]] = 1;
        for (int r = 0; r < w; ++r) {
            if (!picked[r]) continue;
            Member m;
            m.r = r;
            u64 ms = seed ^ (0x9e3779b97f4a7c15ULL * static_cast<u64>(r + 1));
            m.seed = splitmix64(ms);
            for (int l = 1; l <= L; ++l)
                if (l % w == r) m.bounds.push_back(l);
            m.bounds.push_back(L + 1);
            int lo = 1;
            for (int hi : m.bounds) {
                Basket bk;
                bk.lo = lo;
                bk.hi = hi;
                int top = std::min(hi, L);
                i64 d = top >= lo ? prefix[top] - prefix[lo - 1] : 0;
                i64 e = layer_size(hi);
                i64 e_prev = lo > 1 ? layer_size(lo - 1) : 1;
                bk.heavy = !(d <= rp.s && e * w <= rp.s && e_prev * w <= rp.s);
                m.baskets.push_back(std::move(bk));
                lo = hi + 1;
            }
            m.report = L;
            meter.add(m.baskets.size() + 1);
            members.push_back(std::move(m));
        }
    }

    // ---- basket bookkeeping ----

    i64 out_value(const Member& m, std::size_t i, std::size_t k) const {
        const Basket& bk = m.baskets[i];
        return bk.out.empty() ? bk.hi : bk.out[k];
    }

    void ensure_out(Basket& bk) {
        if (bk.out.empty()) bk.out.assign(static_cast<std::size_t>(layer_size(bk.hi)), bk.hi);
    }

    std::size_t basket_of_layer(const Member& m, int l) const {
        return static_cast<std::size_t>(std::lower_bound(m.bounds.begin(), m.bounds.end(), l) - m.bounds.begin());
    }

    // Does some element of layer l sit left of position p with a smaller value than x?
    bool layer_dominates(int l, std::size_t p, i64 x) const {
        const auto& lv = layer[l];
        std::size_t lo = 0, hi = lv.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (pos(lv[mid].h) < p)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo > 0 && lv[lo - 1].h->val < x;
    }

    std::size_t locate_insert(const Member& m, std::size_t p, i64 x) const {
        std::size_t lo = 0, hi = m.baskets.size() - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (layer_dominates(m.bounds[mid], p, x))
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }

    i64 source_level(const Member& m, std::size_t i, std::size_t j) const {
        return std::max<i64>(1, out_value(m, i - 1, j));
    }

    void materialize_heavy(Member& m, std::size_t i) {
        Basket& bk = m.baskets[i];
        int src_layer = i > 0 ? m.bounds[i - 1] : 0;
        int tag_layer = bk.hi <= L ? bk.hi : kNoLayer;
        u64 st = m.seed ^ (0xc2b2ae3d27d4eb4fULL * (i + 1));
        bk.forest = std::make_unique<PersistentLevels>(seq.get(), &arena, src_layer, tag_layer, splitmix64(st));
        bk.forest->set_meter(&meter);
        bk.forest->set_sink(&bk.sink);
        int first = i > 0 ? src_layer : bk.lo;
        int top = std::min(bk.hi, L);
        std::vector<const LayerNode*> roots;
        for (int l = first; l <= top; ++l) roots.push_back(layer_root[l]);
        std::vector<DynSeq::Handle> srcs;
        std::vector<int> lv;
        if (i > 0)
            for (const Ref& ref : layer[src_layer]) {
                srcs.push_back(ref.h);
                lv.push_back(src_layer);
            }
        meter.add(roots.size() + srcs.size() + 1);
        bk.forest->init(first, std::move(roots), std::move(srcs), std::move(lv));
    }

    // Brings the sources of heavy basket i in line with the upstream boundary values at `idx`.
    void sync_sources(Member& m, std::size_t i, const std::vector<int>& idx) {
        Basket& bk = m.baskets[i];
        std::vector<int> up, down;
        bool wide = false;
        for (int j : idx) {
            i64 want = source_level(m, i, static_cast<std::size_t>(j));
            i64 have = bk.forest->source_level(static_cast<std::size_t>(j));
            if (want == have + 1)
                up.push_back(j);
            else if (want == have - 1)
                down.push_back(j);
            else if (want != have)
                wide = true;
        }
        if (wide) {
            std::vector<int> all(bk.forest->source_count());
            for (std::size_t j = 0; j < all.size(); ++j) all[j] = static_cast<int>(source_level(m, i, j));
            bk.forest->assign_source_levels(all);
            return;
        }
        std::sort(down.begin(), down.end());
        std::sort(up.begin(), up.end());
        if (!down.empty()) bk.forest->shift_sources(down, -1);
        if (!up.empty()) bk.forest->shift_sources(up, +1);
    }

    // Folds pending level changes of tagged elements into the boundary values.
    std::vector<int> drain_heavy(Member& m, std::size_t i) {
        Basket& bk = m.baskets[i];
        std::vector<int> changed;
        if (bk.hi > L) {
            i64 v = bk.forest->highest_level() + 1;
            if (out_value(m, i, 0) != v) {
                ensure_out(bk);
                bk.out[0] = v;
                changed.push_back(0);
            }
            bk.sink.clear();
            return changed;
        }
        if (bk.sink.empty()) return changed;
        ensure_out(bk);
        std::vector<std::pair<int, int>> net;
        for (auto& [h, d] : bk.sink) net.push_back({idx_of[h->id], d});
        bk.sink.clear();
        std::sort(net.begin(), net.end());
        for (std::size_t a = 0; a < net.size();) {
            std::size_t c = a;
            int sum = 0;
            while (c < net.size() && net[c].first == net[a].first) sum += net[c++].second;
            if (sum != 0) {
                bk.out[net[a].first] += sum;
                changed.push_back(net[a].first);
            }
            a = c;
        }
        return changed;
    }

    struct LightInput {
        std::vector<i64> vals;
        std::vector<int> prev, cur;
    };

    LightInput gather_light(const Member& m, std::size_t i) const {
        const Basket& bk = m.baskets[i];
        std::vector<std::pair<std::size_t, std::pair<i64, int>>> items;  // position, (value, role)
        // role: -1 basket element, -2 previous boundary j encoded as -(3 + j), >= 0 boundary k
        if (i > 0) {
            const auto& pl = layer[m.bounds[i - 1]];
            for (std::size_t j = 0; j < pl.size(); ++j)
                items.push_back({pos(pl[j].h), {pl[j].h->val, -3 - static_cast<int>(j)}});
        }
        int top = std::min(bk.hi, L);
        for (int l = bk.lo; l <= top; ++l) {
            const auto& lv = layer[l];
            for (std::size_t k = 0; k < lv.size(); ++k) {
                if (!alive[lv[k].id]) continue;
                int role = l == bk.hi ? static_cast<int>(k) : -1;
                items.push_back({pos(lv[k].h), {lv[k].h->val, role}});
            }
        }
        for (const Ref& ref : bk.inserted)
            if (alive[ref.id]) items.push_back({pos(ref.h), {ref.h->val, -1}});
        std::sort(items.begin(), items.end(), [](const auto& a, const auto& c) { return a.first < c.first; });
        LightInput in;
        in.prev.assign(i > 0 ? layer[m.bounds[i - 1]].size() : 1, -1);
        in.cur.assign(static_cast<std::size_t>(layer_size(bk.hi)), -1);
        for (std::size_t t = 0; t < items.size(); ++t) {
            int role = items[t].second.second;
            in.vals.push_back(items[t].second.first);
            if (role <= -3)
                in.prev[static_cast<std::size_t>(-3 - role)] = static_cast<int>(t);
            else if (role >= 0)
                in.cur[static_cast<std::size_t>(role)] = static_cast<int>(t);
        }
        if (bk.hi > L) {
            in.vals.push_back(std::numeric_limits<i64>::max());
            in.cur[0] = static_cast<int>(in.vals.size()) - 1;
        }
        return in;
    }

    // Dense from-to table: rows are previous-boundary elements (or a virtual source), columns the
    // boundary elements. Entries count both endpoints; unreachable pairs hold kUnreachable.
    void build_table(Basket& bk, const LightInput& in) {
        std::size_t rows = in.prev.size(), cols = in.cur.size();
        bk.table.assign(rows * cols, kUnreachable);
        bk.table_cols = cols;
        std::vector<i64> sorted = in.vals;
        std::sort(sorted.begin(), sorted.end());
        std::vector<i64> bit(sorted.size() + 1);
        std::vector<i64> dp(in.vals.size());
        std::vector<int> col_of(in.vals.size(), -1);
        for (std::size_t k = 0; k < cols; ++k) col_of[in.cur[k]] = static_cast<int>(k);
        for (std::size_t j = 0; j < rows; ++j) {
            std::fill(bit.begin(), bit.end(), kUnreachable);
            int start = in.prev[j];
            i64 start_val = start >= 0 ? in.vals[start] : std::numeric_limits<i64>::min();
            auto rank = [&](i64 v) {
                return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
            };
            if (start >= 0) {
                for (std::size_t r = rank(start_val) + 1; r < bit.size(); r += r & (~r + 1)) bit[r] = std::max<i64>(bit[r], 1);
            }
            for (std::size_t t = static_cast<std::size_t>(start + 1); t < in.vals.size(); ++t) {
                i64 v = in.vals[t];
                std::size_t r = rank(v);
                i64 best = start >= 0 ? kUnreachable : 1;  // the virtual source precedes everything
                for (std::size_t q = r; q > 0; q &= q - 1) best = std::max(best, bit[q]);
                if (v <= start_val || best == kUnreachable) {
                    dp[t] = kUnreachable;
                    continue;
                }
                dp[t] = best + 1;
                for (std::size_t q = r + 1; q < bit.size(); q += q & (~q + 1)) bit[q] = std::max(bit[q], dp[t]);
                if (col_of[t] >= 0) bk.table[j * cols + static_cast<std::size_t>(col_of[t])] = dp[t];
            }
            meter.add(in.vals.size() * static_cast<u64>(log_units(in.vals.size())));
        }
    }

    std::vector<int> refresh_light(Member& m, std::size_t i) {
        Basket& bk = m.baskets[i];
        if (bk.dirty || !bk.built) {
            LightInput in = gather_light(m, i);
            u64 len = in.vals.size();
            meter.add(len * static_cast<u64>(log_units(len)) * static_cast<u64>(log_units(len)));
            if (p.mode == ExactMode::exact2) {
                bk.oracle = boundary_matrix(in.vals, in.prev, in.cur, default_sentinel(seq->length() + 2));
            } else {
                build_table(bk, in);
            }
            bk.dirty = false;
            bk.built = true;
        }
        std::size_t rows = i > 0 ? layer[m.bounds[i - 1]].size() : 1;
        std::vector<i64> v(rows);
        for (std::size_t j = 0; j < rows; ++j) v[j] = (i > 0 ? out_value(m, i - 1, j) : 0) - 1;
        std::vector<i64> res;
        if (p.mode == ExactMode::exact2) {
            u64 probes = 0;
            res = smawk_maxplus(bk.oracle.matrix(), v, &probes);
            meter.add(probes * static_cast<u64>(log_units(seq->length())));
        } else {
            std::size_t cols = bk.table_cols;
            res.assign(cols, kUnreachable);
            for (std::size_t j = 0; j < rows; ++j)
                for (std::size_t k = 0; k < cols; ++k) {
                    i64 e = bk.table[j * cols + k];
                    if (e != kUnreachable && v[j] > kUnreachable / 2) res[k] = std::max(res[k], v[j] + e);
                }
            meter.add(rows * cols);
        }
        std::vector<int> changed;
        for (std::size_t k = 0; k < res.size(); ++k) {
            i64 nv = res[k] >= 1 ? res[k] : kUnreachable;
            if (nv != out_value(m, i, k)) {
                ensure_out(bk);
                bk.out[k] = nv;
                changed.push_back(static_cast<int>(k));
            }
        }
        return changed;
    }

    void sweep(Member& m, std::size_t t) {
        std::vector<int> changed = m.baskets[t].heavy ? drain_heavy(m, t) : refresh_light(m, t);
        for (std::size_t i = t + 1; i < m.baskets.size() && !changed.empty(); ++i) {
            Basket& bk = m.baskets[i];
            if (bk.heavy) {
                if (!bk.forest) {
                    materialize_heavy(m, i);
                    changed.resize(bk.forest->source_count());
                    for (std::size_t j = 0; j < changed.size(); ++j) changed[j] = static_cast<int>(j);
                }
                sync_sources(m, i, changed);
                changed = drain_heavy(m, i);
            } else {
                changed = refresh_light(m, i);
            }
        }
        m.report = out_value(m, m.baskets.size() - 1, 0) - 1;
    }

    void member_insert(Member& m, DynSeq::Handle h, int id, std::size_t p_ins) {
        std::size_t t = locate_insert(m, p_ins, h->val);
        m.ins[id] = static_cast<int>(t);
        Basket& bk = m.baskets[t];
        if (bk.heavy) {
            if (!bk.forest) materialize_heavy(m, t);
            bk.forest->insert(h, h->val);
        } else {
            bk.inserted.push_back({h, id});
            bk.dirty = true;
        }
        sweep(m, t);
    }

    void member_erase(Member& m, DynSeq::Handle h, int id) {
        std::size_t t;
        bool original = static_cast<std::size_t>(id) < n0;
        if (original) {
            int l = lay_of[id];
            t = basket_of_layer(m, l);
            if (m.bounds[t] == l) {
                m.failed = true;
                m.report = 0;
                return;
            }
        } else {
            auto it = m.ins.find(id);
            require(it != m.ins.end(), ErrorCode::internal, "inserted element without a basket");
            t = static_cast<std::size_t>(it->second);
            m.ins.erase(it);
        }
        Basket& bk = m.baskets[t];
        if (bk.heavy) {
            if (!bk.forest) materialize_heavy(m, t);
            bk.forest->erase(h, h->val);
        } else {
            if (!original) {
                auto& v = bk.inserted;
                v.erase(std::remove_if(v.begin(), v.end(), [id](const Ref& r) { return r.id == id; }), v.end());
            }
            bk.dirty = true;
        }
        sweep(m, t);
    }
};

ExactBlock::ExactBlock(const PSeq& snapshot, const ExactParams& p) : impl_(std::make_unique<Impl>()) {
    impl_->p = p;
    impl_->rp = resolve_params(p, snapshot.length());
    impl_->snap = snapshot;
    impl_->cursor = std::make_unique<PSeq::Cursor>(impl_->snap);
    std::size_t window = (static_cast<std::size_t>(impl_->rp.budget) + 9) / 10;
    impl_->op_limit = static_cast<std::size_t>(impl_->rp.budget) + window + 1;
}

ExactBlock::~ExactBlock() = default;

u64 ExactBlock::prep(u64 budget) {
    Impl& s = *impl_;
    u64 before = s.meter.units;
    u64 st = s.p.seed;
    u64 seed = splitmix64(st);
    while (s.stage < 3 && s.meter.units - before < budget) {
        if (s.stage == 0) {
            u64 per = static_cast<u64>(log_units(s.snap.length()));
            u64 room = (budget - (s.meter.units - before)) / per + 1;
            s.patience_chunk(static_cast<std::size_t>(std::min<u64>(room, 1u << 20)));
            if (s.cursor->done()) s.stage = 1;
        } else if (s.stage == 1) {
            s.build_shared(seed);
            s.stage = 2;
        } else {
            s.build_members(splitmix64(seed));
            s.stage = 3;
            s.snap = PSeq();
            s.cursor.reset();
        }
    }
    return s.meter.units - before;
}

bool ExactBlock::ready() const { return impl_->stage == 3; }

u64 ExactBlock::apply(const EditOp& op) {
    Impl& s = *impl_;
    require(ready(), ErrorCode::lifecycle, "block used before preprocessing finished");
    require(s.p.unlimited || s.applied < s.op_limit, ErrorCode::lifecycle, "block edit budget exhausted");
    u64 before = s.meter.units;
    if (op.kind == EditOp::Kind::insert) {
        require(op.pos >= 1 && op.pos <= s.seq->length() + 1, ErrorCode::range, "insert position out of range");
        DynSeq::Handle h = s.seq->insert_unchecked(op.pos, op.val);
        int id = h->id;
        if (static_cast<std::size_t>(id) >= s.alive.size()) s.alive.resize(static_cast<std::size_t>(id) + 1, 0);
        s.alive[id] = 1;
        for (auto& m : s.members)
            if (!m.failed) s.member_insert(m, h, id, op.pos);
    } else {
        require(op.pos >= 1 && op.pos <= s.seq->length(), ErrorCode::range, "delete position out of range");
        DynSeq::Handle h = s.seq->at(op.pos);
        int id = h->id;
        s.alive[id] = 0;
        for (auto& m : s.members)
            if (!m.failed) s.member_erase(m, h, id);
        s.seq->erase(op.pos);
    }
    ++s.applied;
    return s.meter.units - before;
}

i64 ExactBlock::answer() const {
    i64 best = 0;
    for (const auto& m : impl_->members)
        if (!m.failed) best = std::max(best, m.report);
    return best;
}

const ResolvedParams& ExactBlock::params() const { return impl_->rp; }
int ExactBlock::layer_count() const { return impl_->L; }
std::size_t ExactBlock::residue_set_size() const { return impl_->r_size; }
std::size_t ExactBlock::member_count() const { return impl_->members.size(); }
std::size_t ExactBlock::ops_applied() const { return impl_->applied; }

std::vector<i64> ExactBlock::values() const { return impl_->seq ? impl_->seq->values() : std::vector<i64>{}; }

u64 ExactBlock::heavy_rebuilds() const {
    u64 total = 0;
    for (const auto& m : impl_->members)
        for (const auto& bk : m.baskets)
            if (bk.forest) total += bk.forest->rebuilds();
    return total;
}

MemberView ExactBlock::view(std::size_t member) const {
    const Impl& s = *impl_;
    require(member < s.members.size(), ErrorCode::range, "member index out of range");
    const auto& m = s.members[member];
    MemberView v;
    v.residue = m.r;
    v.failed = m.failed;
    v.report = m.failed ? 0 : m.report;
    v.boundary_layers = m.bounds;
    for (const auto& bk : m.baskets) v.heavy.push_back(bk.heavy ? 1 : 0);
    for (DynSeq::Handle h : s.seq->handles()) {
        int id = h->id;
        if (static_cast<std::size_t>(id) < s.n0) {
            std::size_t t = s.basket_of_layer(m, s.lay_of[id]);
            v.basket_of.push_back(static_cast<int>(t));
            v.on_boundary.push_back(m.bounds[t] == s.lay_of[id] ? 1 : 0);
        } else {
            auto it = m.ins.find(id);
            v.basket_of.push_back(it == m.ins.end() ? -1 : it->second);
            v.on_boundary.push_back(0);
        }
    }
    return v;
}

BlockFactory exact_factory(const ExactParams& p) {
    auto counter = std::make_shared<u64>(0);
    BlockFactory fac;
    fac.name = p.mode == ExactMode::exact2 ? "exact2" : "exact08";
    fac.make = [p, counter](const PSeq& snap) -> std::unique_ptr<BlockAlgo> {
        ExactParams q = p;
        u64 st = p.seed + 0x51ed27 * ++*counter;
        q.seed = splitmix64(st);
        return std::make_unique<ExactBlock>(snap, q);
    };
    fac.f = [](std::size_t n) { return static_cast<double>(n) * (log_units(n) + 4) + 64.0; };
    fac.g = [p](std::size_t n) { return static_cast<double>(resolve_params(p, n).budget); };
    fac.h = [p](std::size_t n) {
        ResolvedParams r = resolve_params(p, n);
        double lg = log_units(n);
        return static_cast<double>(std::min(r.instances, r.w)) * r.s * lg * lg;
    };
    return fac;
}

}  // namespace dlis
