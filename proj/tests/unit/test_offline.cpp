#include "paging/offline.hpp"

#include "../oracles.hpp"

#include <doctest.h>

using namespace paging;

namespace {

RunReport fitf_on(const std::vector<Page>& raw, Page n, int k)
{
    const auto trace = augment_sequence(raw, n);
    return fitf_run(trace, NatTable(trace), CacheState::first_pages(n, k));
}

std::int64_t dp_on(const std::vector<Page>& raw, Page n, int k)
{
    return dp_opt(augment_sequence(raw, n), CacheState::first_pages(n, k)).cost;
}

} // namespace

TEST_CASE("fitf examples")
{
    CHECK(fitf_on({1, 1}, 3, 2).cost == 0);

    // dp_opt is the oracle for the frozen optimum.
    REQUIRE(dp_on({1, 2, 3, 1}, 3, 2) == 1);
    const auto r = fitf_on({1, 2, 3, 1}, 3, 2);
    CHECK(r.cost == 1);
    CHECK(r.evictions[2] == 2);
    CHECK(r.per_round_miss == std::vector<std::uint8_t>{0, 0, 1, 0});

    REQUIRE(dp_on({1, 2, 3, 2, 1}, 3, 2) == 2);
    CHECK(fitf_on({1, 2, 3, 2, 1}, 3, 2).cost == 2);
}

TEST_CASE("dp_opt examples and guard")
{
    CHECK(dp_on({1, 2, 3, 1}, 3, 2) == 1);
    CHECK(dp_on({2, 1, 2, 2, 1}, 3, 2) == 0);
    CHECK(dp_on({}, 3, 2) == 0);
    CHECK(dp_on({1, 2, 3, 2, 1}, 3, 2) == 2);

    const auto big = augment_sequence(std::vector<Page>(100, 1), 40);
    CHECK_THROWS_AS(dp_opt(big, CacheState::first_pages(40, 20)), InstanceTooLarge);
}

TEST_CASE("Belady optimality on random small instances")
{
    CounterRng rng(1, "belady-unit");
    for (int trial = 0; trial < 300; ++trial) {
        const auto n = static_cast<Page>(rng.between(2, 6));
        const int k = static_cast<int>(rng.between(1, std::min<Page>(3, n - 1)));
        const auto raw = oracle::random_pages(rng, static_cast<std::size_t>(rng.between(0, 12)), n);
        const auto trace = augment_sequence(raw, n);
        const CacheState initial(n, oracle::random_subset(rng, n, k));
        const auto fitf = fitf_opt(trace, NatTable(trace), initial);
        REQUIRE(fitf.cost == dp_opt(trace, initial).cost);
        REQUIRE(fitf.witness.has_value());
        REQUIRE(replay_schedule(trace, initial, *fitf.witness) == fitf.cost);
    }
}

TEST_CASE("lazy schedules lose nothing against voluntary evictions")
{
    CounterRng rng(2, "lazy");
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<Page>(rng.between(2, 5));
        const int k = static_cast<int>(rng.between(1, std::min<Page>(2, n - 1)));
        const auto raw = oracle::random_pages(rng, static_cast<std::size_t>(rng.between(0, 8)), n);
        const auto start = oracle::random_subset(rng, n, k);
        const auto trace = augment_sequence(raw, n);
        REQUIRE(dp_opt(trace, CacheState(n, start)).cost == oracle::non_lazy_opt(raw, n, start));
    }
}

TEST_CASE("fitf is deterministic and never beaten by lru")
{
    CounterRng rng(5, "lru");
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = static_cast<Page>(rng.between(3, 30));
        const int k = static_cast<int>(rng.between(1, n - 1));
        const auto raw = oracle::random_pages(rng, 500, n);
        const auto trace = augment_sequence(raw, n);
        const NatTable nat(trace);
        const auto initial = CacheState::first_pages(n, k);
        const auto a = fitf_run(trace, nat, initial);
        const auto b = fitf_run(trace, nat, initial);
        REQUIRE(a.evictions == b.evictions);
        const auto lru = lru_run(trace, initial);
        REQUIRE(lru.cost >= a.cost);
        REQUIRE(lru.cost == lru.miss_count());
    }
}

TEST_CASE("lru evicts the least recently used page")
{
    // Initial recency order is ascending page id: 1 is least recent.
    const auto trace = augment_sequence(std::vector<Page>{1, 3, 2, 4}, 4);
    const auto r = lru_run(trace, CacheState::first_pages(4, 2));
    CHECK(r.evictions == std::vector<Page>{kNoPage, 2, 1, 3});
    CHECK(r.cost == 3);
}

TEST_CASE("binomial")
{
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(3, 4) == 0);
}
