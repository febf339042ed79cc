#pragma once

// Synthetic request traces, predictor bundles, and the random-trace lower-bound
// experiment.

#include "paging/core.hpp"
#include "paging/predictors.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace paging {

enum class TraceKind { kUniform, kCyclic, kZipf, kPhasedAdversarial };

std::string to_string(TraceKind kind);
TraceKind parse_trace_kind(const std::string& name);

struct TraceSpec {
    TraceKind kind = TraceKind::kUniform;
    Page n = 2;
    Round horizon = 0;
    std::uint64_t seed = 0;
    // cyclic: period (defaults to n); phased-adversarial: working-set size
    // (defaults to ceil(n / 2), at least 2).
    Page cycle = 0;
    double zipf_exponent = 1.0;
    // phased-adversarial: rounds per phase (defaults to 10 * working set).
    Round phase_length = 0;
};

// uniform: i.i.d. over [1, n]. cyclic: ((t - 1) mod cycle) + 1.
// zipf: P(i) proportional to i^{-s}. phased-adversarial: each phase draws a
// fresh working set and cycles through it in a random order.
RequestTrace gen_trace(const TraceSpec& spec);

// M predictors over one trace. Predictor `good` (1-based, 0 for none) is the
// perfect stream with `good_injection` applied; all others get `injection`.
// Each predictor draws from its own seeded sub-stream.
struct PredictorBundleSpec {
    int count = 1;
    int good = 1;
    ErrorInjection good_injection{InjectionModel::kUniformResample, 0.0, 0, 0};
    ErrorInjection injection{InjectionModel::kUniformResample, 1.0, 0, 0};
    std::uint64_t seed = 0;
};

std::vector<NatPredictionStream> gen_predictors(const PredictorBundleSpec& spec, const RequestTrace& trace,
                                                const NatTable& nat);

// Minimal consecutive intervals in which every page is requested at least
// once; the unfinished tail (if any) is not a phase. Bounds are [first, last].
struct Phase {
    Round first = 0;
    Round last = 0;
};
std::vector<Phase> coupon_phases(const RequestTrace& trace);

struct LowerBoundSeedResult {
    std::uint64_t seed = 0;
    std::int64_t complete_phases = 0;
    double mean_phase_length = 0.0;
    std::int64_t max_fitf_misses_per_phase = 0;
    std::int64_t fitf_cost = 0;
    std::int64_t lru_cost = 0;
};

struct LowerBoundSummary {
    int k = 0;
    Page n = 0;
    Round horizon = 0;
    std::vector<LowerBoundSeedResult> seeds;
    double mean_phase_length = 0.0;         // over all complete phases of all seeds
    std::int64_t max_fitf_misses_per_phase = 0;
    double mean_fitf_cost = 0.0;
    double mean_lru_cost = 0.0;
    double coupon_expectation = 0.0;        // n * H_n
};

// Uniform traces over n = k + 1 pages, FitF versus least-recently-used, both
// from the cache {1..k}.
LowerBoundSummary lower_bound_experiment(int k, Round horizon, const std::vector<std::uint64_t>& seeds);

double harmonic_number(std::int64_t n);

} // namespace paging
