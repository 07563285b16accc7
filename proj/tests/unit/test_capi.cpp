#include <cstring>
#include <vector>

#include "dlis.h"
#include "doctest.h"

TEST_CASE("c api: engine lifecycle and answers") {
    const dlis_engine_kind kinds[] = {DLIS_ENGINE_PATIENCE, DLIS_ENGINE_CCP, DLIS_ENGINE_EXACT, DLIS_ENGINE_APPROX};
    for (auto kind : kinds) {
        dlis_config cfg;
        dlis_config_default(&cfg);
        cfg.kind = kind;
        const int64_t init[] = {1, 5, 2, 4, 6, 7, 9, 10, 8};
        dlis_engine* e = nullptr;
        REQUIRE(dlis_engine_create(&cfg, init, 9, &e) == DLIS_OK);
        int64_t lis = -1;
        CHECK(dlis_engine_lis(e, &lis) == DLIS_OK);
        if (kind == DLIS_ENGINE_APPROX) CHECK((lis >= 6 && lis <= 7));
        else CHECK(lis == 7);

        CHECK(dlis_engine_insert(e, 4, 3) == DLIS_OK);
        CHECK(dlis_engine_lis(e, &lis) == DLIS_OK);
        if (kind != DLIS_ENGINE_APPROX) CHECK(lis == 8);
        CHECK(dlis_engine_length(e) == 10);

        CHECK(dlis_engine_insert(e, 1, 3) == DLIS_E_DUPLICATE);
        CHECK(dlis_engine_insert(e, 12, 100) == DLIS_E_RANGE);
        CHECK(dlis_engine_erase(e, 11) == DLIS_E_RANGE);
        CHECK(std::strlen(dlis_last_error()) > 0);
        CHECK(dlis_engine_length(e) == 10);

        int64_t buf[16];
        CHECK(dlis_engine_values(e, buf, 3) == 10);
        CHECK(buf[2] == 2);
        CHECK(dlis_engine_values(e, buf, 16) == 10);
        const int64_t expect[] = {1, 5, 2, 3, 4, 6, 7, 9, 10, 8};
        CHECK(std::memcmp(buf, expect, sizeof expect) == 0);

        int64_t q = -1;
        CHECK(dlis_engine_query(e, 1, 5, 0, 100, &q) == DLIS_OK);  // 1,5,2,3 -> 3
        CHECK(q == 3);
        CHECK(dlis_engine_query(e, 5, 5, 0, 100, &q) == DLIS_OK);
        CHECK(q == 0);

        CHECK(dlis_engine_erase(e, 4) == DLIS_OK);
        CHECK(dlis_engine_lis(e, &lis) == DLIS_OK);
        if (kind != DLIS_ENGINE_APPROX) CHECK(lis == 7);
        CHECK(dlis_engine_work(e) > 0);
        dlis_engine_destroy(e);
    }
}

TEST_CASE("c api: argument errors") {
    dlis_engine* e = nullptr;
    CHECK(dlis_engine_create(nullptr, nullptr, 0, &e) == DLIS_E_ARGUMENT);
    dlis_config cfg;
    dlis_config_default(&cfg);
    CHECK(dlis_engine_create(&cfg, nullptr, 0, nullptr) == DLIS_E_ARGUMENT);
    CHECK(dlis_engine_create(&cfg, nullptr, 3, &e) == DLIS_E_ARGUMENT);
    const int64_t dup[] = {4, 4};
    CHECK(dlis_engine_create(&cfg, dup, 2, &e) == DLIS_E_DUPLICATE);
    CHECK(e == nullptr);
    cfg.kind = DLIS_ENGINE_APPROX;
    cfg.eps = 2.0;
    CHECK(dlis_engine_create(&cfg, nullptr, 0, &e) == DLIS_E_RANGE);

    int64_t out = 0;
    CHECK(dlis_engine_lis(nullptr, &out) == DLIS_E_ARGUMENT);
    CHECK(dlis_engine_insert(nullptr, 1, 1) == DLIS_E_ARGUMENT);
    CHECK(dlis_engine_erase(nullptr, 1) == DLIS_E_ARGUMENT);
    CHECK(dlis_engine_length(nullptr) == 0);
    dlis_engine_destroy(nullptr);

    dlis_engine_kind k;
    CHECK(dlis_engine_kind_parse("ccp", &k) == DLIS_OK);
    CHECK(k == DLIS_ENGINE_CCP);
    CHECK(dlis_engine_kind_parse("bogus", &k) == DLIS_E_PARSE);
    CHECK(dlis_engine_kind_parse(nullptr, &k) == DLIS_E_ARGUMENT);
}

TEST_CASE("c api: static helpers and rng") {
    const int64_t a[] = {7, 2, 4, 1, 9, 6, 3, 5, 8};
    CHECK(dlis_lis(a, 9) == 4);
    CHECK(dlis_lis(nullptr, 0) == 0);
    CHECK(dlis_rect_lis(a, 9, 1, 10, 0, 100) == 4);
    CHECK(dlis_rect_lis(a, 9, 1, 4, 0, 100) == 2);

    dlis_rng* r1 = dlis_rng_create(99);
    dlis_rng* r2 = dlis_rng_create(99);
    for (int k = 0; k < 100; ++k) CHECK(dlis_rng_next(r1) == dlis_rng_next(r2));
    for (int k = 0; k < 100; ++k) CHECK(dlis_rng_below(r1, 7) < 7);
    CHECK(dlis_rng_below(r1, 0) == 0);
    dlis_rng_destroy(r1);
    dlis_rng_destroy(r2);
}
