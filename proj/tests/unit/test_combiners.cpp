#include "paging/combiners.hpp"
#include "paging/generators.hpp"
#include "paging/offline.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace paging;

namespace {

std::vector<NatPredictionStream> noisy_bundle(const RequestTrace& trace, const NatTable& nat, int count, std::uint64_t seed)
{
    PredictorBundleSpec spec;
    spec.count = count;
    spec.good = 1;
    spec.seed = seed;
    return gen_predictors(spec, trace, nat);
}

} // namespace

TEST_CASE("epoch schedule")
{
    const EpochSchedule s(10, 3);
    CHECK(s.count() == 4);
    CHECK(s.first(4) == 10);
    CHECK(s.last(4) == 10);
    CHECK(s.last(2) == 6);
    CHECK(s.epoch_of(7) == 3);
    CHECK(EpochSchedule::default_tau(1000) == 10);
    CHECK(EpochSchedule::default_tau(999) == 9);
    CHECK(EpochSchedule::default_tau((1 << 15) - 1) == 31);
    CHECK(EpochSchedule::default_tau(1 << 15) == 32);
    CHECK(EpochSchedule::default_tau(1) == 1);
    CHECK(EpochSchedule::default_tau(0) == 1);
    CHECK_THROWS_AS(EpochSchedule(10, 0), ValidationError);
}

TEST_CASE("epoch cost examples")
{
    const Round unseen = 99;
    // Repeated hits on a page requested in the first round.
    std::vector<EpochRound> same{{1, false, unseen}, {2, false, 5}, {3, false, 5}, {4, false, 5}};
    auto rec = epoch_cost(same, 4, unseen);
    CHECK(rec.f == 1);
    CHECK(rec.F == doctest::Approx(0.25));

    // All misses.
    std::vector<EpochRound> misses{{1, true, unseen}, {2, true, unseen}, {3, true, unseen}};
    rec = epoch_cost(misses, 3, unseen);
    CHECK(rec.f == 3);
    CHECK(rec.F == 1.0);
    CHECK(rec.evictions == 3);

    std::vector<EpochRound> single{{1, false, 7}};
    CHECK(epoch_cost(single, 1, unseen).F == 1.0);

    // Through the real Sim: tau identical requests to a cached page.
    const auto trace = augment_sequence(std::vector<Page>{2, 2, 2, 2}, 3);
    const NatTable nat(trace);
    const auto perfect = perfect_nat(trace, nat);
    CacheState cache = CacheState::first_pages(3, 2);
    const auto rounds = run_epoch(trace, [&](Round t) { return perfect.at(t); }, 1, 4, cache);
    CHECK(epoch_cost(rounds, 4, RemedyTable::sentinel_for(trace) + 1).f == 1);
}

TEST_CASE("epoch sandwich and initial-cache obliviousness")
{
    CounterRng rng(53, "epochs-unit");
    for (int trial = 0; trial < 60; ++trial) {
        const auto n = static_cast<Page>(rng.between(3, 12));
        const int k = static_cast<int>(rng.between(1, n - 1));
        const auto trace = augment_sequence(oracle::random_pages(rng, static_cast<std::size_t>(rng.between(1, 300)), n), n);
        const NatTable nat(trace);
        const Round tau = rng.between(1, 20);
        const auto bundle = noisy_bundle(trace, nat, 3, rng());
        PredictorPool pool(bundle, AccessMode::kBandit);
        const auto result = scs_run(trace, pool, CacheState(n, oracle::random_subset(rng, n, k)), {tau, rng()});
        const Round unseen = RemedyTable::sentinel_for(trace) + 1;
        const EpochSchedule schedule(trace.horizon(), tau);
        REQUIRE(static_cast<std::int64_t>(result.epochs.size()) == schedule.count());

        // One query per round, one predictor per epoch.
        REQUIRE(static_cast<Round>(pool.query_log().size()) == trace.horizon());
        for (const auto& q : pool.query_log())
            REQUIRE(q.predictor == result.epochs[static_cast<std::size_t>(schedule.epoch_of(q.round) - 1)].predictor);

        for (const auto& e : result.epochs) {
            REQUIRE(e.evictions <= tau * e.F + 1e-9);
            REQUIRE(tau * e.F <= e.evictions + k + 1e-9);
            const auto& stream = bundle[static_cast<std::size_t>(e.predictor - 1)];
            for (int pair = 0; pair < 5; ++pair) {
                CacheState a(n, oracle::random_subset(rng, n, k));
                CacheState b(n, oracle::random_subset(rng, n, k));
                auto predict = [&](Round t) { return stream.at(t); };
                const auto ra = run_epoch(trace, predict, schedule.first(e.epoch), schedule.last(e.epoch), a);
                const auto rb = run_epoch(trace, predict, schedule.first(e.epoch), schedule.last(e.epoch), b);
                REQUIRE(epoch_cost(ra, tau, unseen).f == epoch_cost(rb, tau, unseen).f);
            }
        }
    }
}

TEST_CASE("scs with one predictor restarts Sim every epoch")
{
    CounterRng rng(59, "scs-single");
    for (int trial = 0; trial < 40; ++trial) {
        const auto n = static_cast<Page>(rng.between(3, 10));
        const int k = static_cast<int>(rng.between(1, n - 1));
        const auto trace = augment_sequence(oracle::random_pages(rng, static_cast<std::size_t>(rng.between(1, 200)), n), n);
        const NatTable nat(trace);
        const auto stream = inject_errors(perfect_nat(trace, nat), {InjectionModel::kUniformResample, 0.3, rng(), 0}, trace, nat);
        const Round tau = rng.between(1, 15);
        const CacheState initial(n, oracle::random_subset(rng, n, k));

        PredictorPool pool({stream}, AccessMode::kBandit);
        const auto got = scs_run(trace, pool, initial, {tau, 1});

        SimPolicy sim(trace, initial);
        std::int64_t cost = 0;
        for (Round t = 1; t <= trace.horizon(); ++t) {
            if ((t - 1) % tau == 0)
                sim.restart_remedies();
            cost += sim.serve(t, stream.at(t)).miss ? 1 : 0;
        }
        REQUIRE(got.report.cost == cost);
        REQUIRE(got.report.final_cache == sim.cache());
    }
}

TEST_CASE("scs with a single epoch is Sim on the drawn predictor")
{
    CounterRng rng(61, "scs-one-epoch");
    const auto trace = augment_sequence(oracle::random_pages(rng, 150, 8), 8);
    const NatTable nat(trace);
    const auto bundle = noisy_bundle(trace, nat, 4, 5);
    const auto initial = CacheState::first_pages(8, 3);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        PredictorPool pool(bundle, AccessMode::kBandit);
        const auto got = scs_run(trace, pool, initial, {trace.horizon(), seed});
        REQUIRE(got.epochs.size() == 1);
        const auto& chosen = bundle[static_cast<std::size_t>(got.epochs[0].predictor - 1)];
        REQUIRE(got.report.cost == sim_run(trace, chosen, initial).cost);
    }
}

TEST_CASE("scs rejects a full-information pool and is deterministic")
{
    const auto trace = gen_trace({TraceKind::kUniform, 10, 2000, 3});
    const NatTable nat(trace);
    const auto bundle = noisy_bundle(trace, nat, 5, 8);
    PredictorPool full(bundle, AccessMode::kFullInformation);
    CHECK_THROWS_AS(scs_run(trace, full, CacheState::first_pages(10, 4)), ValidationError);

    PredictorPool p1(bundle, AccessMode::kBandit);
    PredictorPool p2(bundle, AccessMode::kBandit);
    const auto a = scs_run(trace, p1, CacheState::first_pages(10, 4), {0, 17});
    const auto b = scs_run(trace, p2, CacheState::first_pages(10, 4), {0, 17});
    CHECK(a.report.evictions == b.report.evictions);
    CHECK(a.epochs.size() == b.epochs.size());
}

TEST_CASE("default epsilon")
{
    CHECK(default_epsilon(10'000, 10, 8) == doctest::Approx(std::sqrt(10 * std::log(8.0) / 1e4)));
    CHECK(default_epsilon(10'000, 10, 8) == doctest::Approx(0.0456).epsilon(0.001));
    // 0.144 is what the formula gives at T = 1000, not 10^4.
    CHECK(default_epsilon(1000, 10, 8) == doctest::Approx(0.144).epsilon(0.001));
    CHECK(default_epsilon(10, 10, 8) == 0.2);
    CHECK(default_epsilon(10'000, 10, 1) == 0.2);
}

TEST_CASE("multiplexer degenerate cases")
{
    const auto trace = gen_trace({TraceKind::kUniform, 12, 3000, 4});
    const NatTable nat(trace);
    const auto initial = CacheState::first_pages(12, 4);
    const auto noisy = inject_errors(perfect_nat(trace, nat), {InjectionModel::kUniformResample, 0.5, 2, 0}, trace, nat);

    PredictorPool one({noisy}, AccessMode::kFullInformation);
    const auto single = multiplexer_run(trace, one, initial, {0.1, 3});
    CHECK(single.cost <= sim_run(trace, noisy, initial).cost + 4);

    PredictorPool same({noisy, noisy, noisy}, AccessMode::kFullInformation);
    MultiplexerStats stats;
    const auto r = multiplexer_run(trace, same, initial, {0.1, 3}, &stats);
    CHECK(stats.switches == 0);
    CHECK(r.sync_fetches == 0);
    CHECK(r.cost == sim_run(trace, noisy, initial).cost);

    PredictorPool bad({noisy}, AccessMode::kFullInformation);
    CHECK_THROWS_AS(multiplexer_run(trace, bad, initial, {0.25, 3}), ValidationError);
    PredictorPool bandit({noisy}, AccessMode::kBandit);
    CHECK_THROWS_AS(multiplexer_run(trace, bandit, initial), ValidationError);
}

TEST_CASE("multiplexer follows the better instance and is deterministic")
{
    const auto trace = gen_trace({TraceKind::kUniform, 20, 4000, 6});
    const NatTable nat(trace);
    const auto initial = CacheState::first_pages(20, 5);
    const auto bundle = noisy_bundle(trace, nat, 2, 9);
    PredictorPool p1(bundle, AccessMode::kFullInformation);
    PredictorPool p2(bundle, AccessMode::kFullInformation);
    MultiplexerStats s1;
    const auto a = multiplexer_run(trace, p1, initial, {0.05, 21}, &s1);
    const auto b = multiplexer_run(trace, p2, initial, {0.05, 21});
    CHECK(a.evictions == b.evictions);
    CHECK(a.cost == b.cost);
    CHECK(a.cost == a.miss_count() + a.sync_fetches);
    const auto perfect = sim_run(trace, bundle[0], initial).cost;
    CHECK(s1.instance_costs[0] == perfect);
    CHECK(a.cost <= (1 + 2 * 0.05) * perfect + (1 / 0.05 + 7.0 / 6.0) * 5 * std::log(2.0) + 50);
}

TEST_CASE("scs beats a fixed noisy predictor and its regret per round shrinks")
{
    double per_round_prev = 0.0;
    for (Round T : {Round{1} << 15, Round{1} << 16}) {
        double scs = 0.0;
        double noisy = 0.0;
        const int seeds = 20;
        for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
            const auto trace = gen_trace({TraceKind::kUniform, 50, T, seed});
            const NatTable nat(trace);
            const auto bundle = noisy_bundle(trace, nat, 10, seed);
            const auto initial = CacheState::first_pages(50, 10);
            const auto opt = fitf_run(trace, nat, initial).cost;
            PredictorPool pool(bundle, AccessMode::kBandit);
            scs += static_cast<double>(scs_run(trace, pool, initial, {0, seed}).report.cost - opt) / seeds;
            noisy += static_cast<double>(sim_run(trace, bundle[1], initial).cost - opt) / seeds;
        }
        CHECK(scs < noisy);
        if (per_round_prev > 0.0)
            CHECK(scs / static_cast<double>(T) < per_round_prev);
        per_round_prev = scs / static_cast<double>(T);
    }
}
