#include "doctest.h"
#include "dlis/scheduler.hpp"
#include "dlis/static_lis.hpp"
#include "gen.hpp"

using namespace dlis;

TEST_CASE("recompute factory answers every step like a rebuild") {
    for (u64 seed : {1u, 2u, 3u}) {
        Rng rng(seed);
        std::size_t n0 = rng.below(40);
        auto init = testutil::random_perm(rng, n0, 2);
        std::set<i64> used(init.begin(), init.end());
        BlockScheduler sched(recompute_factory(), init);
        std::vector<i64> ref = init;
        CHECK(sched.answer() == patience_lis(ref));
        for (int k = 0; k < 400; ++k) {
            auto op = testutil::random_edit(rng, ref, used, 10000);
            apply_to_vector(ref, op);
            CHECK(sched.step(op) == patience_lis(ref));
            CHECK(sched.sequence().length() == ref.size());
        }
        CHECK(sched.sequence().values() == ref);
        CHECK(sched.swaps() > 0);
        CHECK(sched.failures() == 0);
    }
}

TEST_CASE("empty start") {
    BlockScheduler sched(recompute_factory(), {});
    CHECK(sched.answer() == 0);
    CHECK(sched.step(EditOp::ins(1, 5)) == 1);
    CHECK(sched.step(EditOp::ins(2, 9)) == 2);
    CHECK(sched.step(EditOp::del(1)) == 1);
}

TEST_CASE("blocks are swapped after g edits and warm up within the window") {
    auto fac = recompute_factory();
    fac.g = [](std::size_t) { return 10.0; };
    Rng rng(9);
    auto init = testutil::random_perm(rng, 200, 2);
    std::set<i64> used(init.begin(), init.end());
    std::vector<i64> ref = init;
    BlockScheduler sched(fac, init);
    std::vector<int> swap_at;
    for (int k = 1; k <= 100; ++k) {
        auto op = testutil::random_edit(rng, ref, used, 100000);
        apply_to_vector(ref, op);
        sched.step(op);
        if (sched.last().swapped) swap_at.push_back(k);
        CHECK(sched.last().work <= 4 * sched.step_bound(sched.last().n) + 4);
    }
    CHECK(swap_at == std::vector<int>{10, 20, 30, 40, 50, 60, 70, 80, 90, 100});
    CHECK(sched.forced_finishes() == 0);
}

TEST_CASE("rejects bad edits and bad factories") {
    BlockScheduler sched(recompute_factory(), {1, 2, 3});
    CHECK_THROWS_AS(sched.step(EditOp::ins(1, 2)), Error);
    CHECK_THROWS_AS(sched.step(EditOp::ins(5, 7)), Error);
    CHECK_THROWS_AS(sched.step(EditOp::del(4)), Error);
    CHECK(sched.sequence().values() == std::vector<i64>{1, 2, 3});
    CHECK_THROWS_AS(BlockScheduler(recompute_factory(), {4, 4}), Error);

    auto greedy = recompute_factory();
    greedy.g = [](std::size_t n) { return static_cast<double>(n); };
    try {
        validate_factory(greedy);
        FAIL("factory with g = n was accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invariant);
    }
}

namespace {
// A block that fails on its first edit, to check that the scheduler keeps going.
class FailingBlock : public BlockAlgo {
public:
    u64 prep(u64) override { return 1; }
    bool ready() const override { return true; }
    u64 apply(const EditOp&) override { fail(ErrorCode::invariant, "boom"); }
    i64 answer() const override { return 42; }
};
}  // namespace

TEST_CASE("failed blocks answer 0 until replaced") {
    BlockFactory fac;
    fac.name = "failing";
    fac.make = [](const PSeq&) -> std::unique_ptr<BlockAlgo> { return std::make_unique<FailingBlock>(); };
    fac.f = [](std::size_t) { return 1.0; };
    fac.g = [](std::size_t) { return 3.0; };
    fac.h = [](std::size_t) { return 1.0; };
    BlockScheduler sched(fac, {10, 20});
    CHECK(sched.answer() == 42);
    CHECK(sched.step(EditOp::ins(1, 5)) == 0);
    CHECK(sched.failures() == 1);
    CHECK(sched.active() == nullptr);
}
