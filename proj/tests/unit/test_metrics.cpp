#include "paging/metrics.hpp"

#include "../oracles.hpp"

#include <doctest.h>

using namespace paging;

namespace {

MetricsReport metrics_of(const std::vector<Page>& raw, Page n, const std::vector<Round>& p)
{
    const auto trace = augment_sequence(raw, n);
    return compute_metrics(trace, NatTable(trace), NatPredictionStream(p, trace.augmented_length()));
}

void check_against_oracle(const std::vector<Page>& raw, Page n, const std::vector<Round>& p)
{
    const auto got = metrics_of(raw, n, p);
    const auto want = oracle::brute_force_metrics(raw, n, p);
    REQUIRE(got.error_rounds == want.error_rounds);
    REQUIRE(got.inverted_pairs == want.inverted_pairs);
    REQUIRE(got.inverted_rounds == want.inverted_rounds);
    REQUIRE(got.eta_refined == want.eta_refined);
    REQUIRE(got.l1 == want.l1);
}

} // namespace

TEST_CASE("two-page reversal example")
{
    const std::vector<Page> raw{1, 1, 2, 2};
    const std::vector<Round> p{3, 3, 6, 6};
    const auto want = oracle::brute_force_metrics(raw, 2, p);
    REQUIRE(want.error_rounds == 3);
    REQUIRE(want.inverted_pairs == 3);
    REQUIRE(want.inverted_rounds == 4);
    REQUIRE(want.eta_refined == 3);
    REQUIRE(want.l1 == 5);
    CHECK(metrics_of(raw, 2, p) == MetricsReport{3, 3, 4, 3, 5});
}

TEST_CASE("perfect predictions have zero error everywhere")
{
    CounterRng rng(31, "perfect");
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = static_cast<Page>(rng.between(2, 10));
        const auto trace = augment_sequence(oracle::random_pages(rng, 120, n), n);
        const NatTable nat(trace);
        CHECK(compute_metrics(trace, nat, perfect_nat(trace, nat)) == MetricsReport{});
    }
}

TEST_CASE("a single round forms no pair")
{
    // The oracle accepts an over-range prediction; the stream type does not.
    const auto o = oracle::brute_force_metrics({1}, 2, {5});
    CHECK(o.error_rounds == 1);
    CHECK(o.inverted_pairs == 0);
    CHECK(o.l1 == 3);
    CHECK(metrics_of({1}, 2, {3}) == MetricsReport{1, 0, 0, 0, 1});
}

TEST_CASE("explicit error counts mismatching rounds")
{
    const auto trace = augment_sequence(std::vector<Page>{1, 1, 2, 2}, 2);
    CHECK(compute_explicit_error(ExplicitPredictionStream(std::vector<Page>{1, 1, 2, 2}, 2), trace) == 0);
    CHECK(compute_explicit_error(ExplicitPredictionStream(std::vector<Page>{2, 2, 1, 1}, 2), trace) == 4);
    const auto t2 = augment_sequence(std::vector<Page>{1, 2, 1}, 2);
    CHECK(compute_explicit_error(ExplicitPredictionStream(std::vector<Page>{1, 1, 1}, 2), t2) == 1);
}

TEST_CASE("fast metrics agree with the pair enumerator and keep their internal inequalities")
{
    CounterRng rng(37, "metrics-fuzz");
    for (int trial = 0; trial < 300; ++trial) {
        const auto n = static_cast<Page>(rng.between(2, 12));
        const auto T = static_cast<std::size_t>(rng.between(0, 300));
        const auto raw = oracle::random_pages(rng, T, n);
        const auto limit = static_cast<Round>(T) + n;
        std::vector<Round> p(T);
        const auto aug = oracle::augmented_copy(raw, n);
        const double noise = rng.uniform01();
        for (std::size_t r = 0; r < T; ++r) {
            const Round t = static_cast<Round>(r) + 1;
            p[r] = rng.bernoulli(noise) ? rng.between(t + 1, limit) : oracle::scan_next_arrival(aug, t, raw[r]);
        }
        check_against_oracle(raw, n, p);
        const auto m = metrics_of(raw, n, p);
        REQUIRE(m.eta_refined <= std::min(m.error_rounds, m.inverted_rounds));
        REQUIRE(m.inverted_rounds <= 2 * m.inverted_pairs);
        REQUIRE(m.error_rounds <= m.l1);
    }
}

TEST_CASE("half-and-half reversal: pairs grow quadratically, rounds linearly")
{
    const Round T = 1000;
    std::vector<Page> sigma(T), pi(T);
    for (Round t = 1; t <= T; ++t) {
        sigma[static_cast<std::size_t>(t - 1)] = t <= T / 2 ? 1 : 2;
        pi[static_cast<std::size_t>(t - 1)] = t <= T / 2 ? 2 : 1;
    }
    const auto trace = augment_sequence(sigma, 2);
    const auto m = compute_metrics(trace, NatTable(trace), derive_consistent_nat(ExplicitPredictionStream(pi, 2), trace));
    CHECK(m.inverted_pairs >= (T / 2 - 1) * (T / 2 - 2) / 2);
    CHECK(m.inverted_rounds <= T);
}
