#include "paging/generators.hpp"

#include "paging/offline.hpp"
#include "paging/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace paging {

std::string to_string(TraceKind kind)
{
    switch (kind) {
    case TraceKind::kUniform:
        return "uniform";
    case TraceKind::kCyclic:
        return "cyclic";
    case TraceKind::kZipf:
        return "zipf";
    case TraceKind::kPhasedAdversarial:
        return "phased-adversarial";
    }
    return "unknown";
}

TraceKind parse_trace_kind(const std::string& name)
{
    if (name == "uniform")
        return TraceKind::kUniform;
    if (name == "cyclic")
        return TraceKind::kCyclic;
    if (name == "zipf")
        return TraceKind::kZipf;
    if (name == "phased-adversarial" || name == "phased")
        return TraceKind::kPhasedAdversarial;
    throw ValidationError("unknown trace kind '" + name + "'");
}

RequestTrace gen_trace(const TraceSpec& spec)
{
    if (spec.n < 2)
        throw ValidationError("trace spec: n must be at least 2");
    if (spec.horizon < 0)
        throw ValidationError("trace spec: horizon must be non-negative");

    CounterRng rng(spec.seed, "trace");
    std::vector<Page> raw(static_cast<std::size_t>(spec.horizon));
    const auto n = static_cast<std::uint64_t>(spec.n);

    switch (spec.kind) {
    case TraceKind::kUniform:
        for (Page& p : raw)
            p = static_cast<Page>(rng.below(n)) + 1;
        break;
    case TraceKind::kCyclic: {
        const Page cycle = spec.cycle == 0 ? spec.n : spec.cycle;
        if (cycle < 1 || cycle > spec.n)
            throw ValidationError("trace spec: cycle length must lie in [1, n]");
        for (std::size_t idx = 0; idx < raw.size(); ++idx)
            raw[idx] = static_cast<Page>(idx % static_cast<std::size_t>(cycle)) + 1;
        break;
    }
    case TraceKind::kZipf: {
        if (!(spec.zipf_exponent >= 0.0) || !std::isfinite(spec.zipf_exponent))
            throw ValidationError("trace spec: zipf exponent must be finite and non-negative");
        std::vector<double> cdf(n);
        double acc = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) {
            acc += std::pow(static_cast<double>(i + 1), -spec.zipf_exponent);
            cdf[i] = acc;
        }
        for (Page& p : raw) {
            const double u = rng.uniform01() * acc;
            const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            p = static_cast<Page>(std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(n) - 1)) + 1;
        }
        break;
    }
    case TraceKind::kPhasedAdversarial: {
        const Page ws = spec.cycle == 0 ? std::max<Page>(2, (spec.n + 1) / 2) : spec.cycle;
        if (ws < 1 || ws > spec.n)
            throw ValidationError("trace spec: working set must lie in [1, n]");
        const Round phase = spec.phase_length == 0 ? 10 * static_cast<Round>(ws) : spec.phase_length;
        if (phase < 1)
            throw ValidationError("trace spec: phase length must be positive");
        std::vector<Page> universe(static_cast<std::size_t>(spec.n));
        std::iota(universe.begin(), universe.end(), Page{1});
        std::vector<Page> working;
        for (std::size_t idx = 0; idx < raw.size(); ++idx) {
            if (idx % static_cast<std::size_t>(phase) == 0) {
                // Partial Fisher-Yates: the first ws entries become the working set.
                for (Page i = 0; i < ws; ++i) {
                    const auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(spec.n - i));
                    std::swap(universe[static_cast<std::size_t>(i)], universe[j]);
                }
                working.assign(universe.begin(), universe.begin() + ws);
            }
            raw[idx] = working[(idx % static_cast<std::size_t>(phase)) % working.size()];
        }
        break;
    }
    }
    return augment_sequence(raw, spec.n);
}

std::vector<NatPredictionStream> gen_predictors(const PredictorBundleSpec& spec, const RequestTrace& trace,
                                                const NatTable& nat)
{
    if (spec.count < 1)
        throw ValidationError("predictor bundle: count must be at least 1");
    if (spec.good < 0 || spec.good > spec.count)
        throw ValidationError("predictor bundle: good predictor index outside [0, M]");
    const NatPredictionStream clean = perfect_nat(trace, nat);
    std::vector<NatPredictionStream> out;
    out.reserve(static_cast<std::size_t>(spec.count));
    const CounterRng base(spec.seed, "predictors");
    for (int j = 1; j <= spec.count; ++j) {
        ErrorInjection cfg = j == spec.good ? spec.good_injection : spec.injection;
        cfg.seed = base.split(static_cast<std::uint64_t>(j))();
        out.push_back(inject_errors(clean, cfg, trace, nat));
    }
    return out;
}

std::vector<Phase> coupon_phases(const RequestTrace& trace)
{
    std::vector<Phase> phases;
    const auto n = static_cast<std::size_t>(trace.universe());
    std::vector<Round> stamp(n + 1, 0);
    std::size_t seen = 0;
    Round start = 1;
    for (Round t = 1; t <= trace.horizon(); ++t) {
        const auto p = static_cast<std::size_t>(trace.at(t));
        if (stamp[p] != start) {
            stamp[p] = start;
            ++seen;
        }
        if (seen == n) {
            phases.push_back({start, t});
            start = t + 1;
            seen = 0;
        }
    }
    return phases;
}

double harmonic_number(std::int64_t n)
{
    double h = 0.0;
    for (std::int64_t i = n; i >= 1; --i)
        h += 1.0 / static_cast<double>(i);
    return h;
}

LowerBoundSummary lower_bound_experiment(int k, Round horizon, const std::vector<std::uint64_t>& seeds)
{
    if (k < 1)
        throw ValidationError("lower-bound experiment: k must be at least 1");
    LowerBoundSummary summary;
    summary.k = k;
    summary.n = static_cast<Page>(k + 1);
    summary.horizon = horizon;
    summary.coupon_expectation = summary.n * harmonic_number(summary.n);

    std::int64_t total_phases = 0;
    double total_length = 0.0;
    for (std::uint64_t seed : seeds) {
        TraceSpec spec;
        spec.kind = TraceKind::kUniform;
        spec.n = summary.n;
        spec.horizon = horizon;
        spec.seed = seed;
        const RequestTrace trace = gen_trace(spec);
        const NatTable nat(trace);
        const CacheState initial = CacheState::first_pages(summary.n, k);
        const RunReport fitf = fitf_run(trace, nat, initial);
        const RunReport lru = lru_run(trace, initial);

        LowerBoundSeedResult r;
        r.seed = seed;
        r.fitf_cost = fitf.cost;
        r.lru_cost = lru.cost;
        const auto phases = coupon_phases(trace);
        r.complete_phases = static_cast<std::int64_t>(phases.size());
        double length = 0.0;
        for (const Phase& ph : phases) {
            std::int64_t misses = 0;
            for (Round t = ph.first; t <= ph.last; ++t)
                misses += fitf.per_round_miss[static_cast<std::size_t>(t - 1)];
            r.max_fitf_misses_per_phase = std::max(r.max_fitf_misses_per_phase, misses);
            length += static_cast<double>(ph.last - ph.first + 1);
        }
        r.mean_phase_length = phases.empty() ? 0.0 : length / static_cast<double>(phases.size());
        total_phases += r.complete_phases;
        total_length += length;
        summary.max_fitf_misses_per_phase = std::max(summary.max_fitf_misses_per_phase, r.max_fitf_misses_per_phase);
        summary.mean_fitf_cost += static_cast<double>(r.fitf_cost);
        summary.mean_lru_cost += static_cast<double>(r.lru_cost);
        summary.seeds.push_back(r);
    }
    if (!seeds.empty()) {
        summary.mean_fitf_cost /= static_cast<double>(seeds.size());
        summary.mean_lru_cost /= static_cast<double>(seeds.size());
    }
    summary.mean_phase_length = total_phases == 0 ? 0.0 : total_length / static_cast<double>(total_phases);
    return summary;
}

} // namespace paging
