#include "paging/combiners.hpp"

#include "paging/rng.hpp"

#include <algorithm>
#include <cmath>

namespace paging {

EpochSchedule::EpochSchedule(Round horizon, Round tau)
    : horizon_(horizon)
    , tau_(tau)
{
    if (horizon < 0)
        throw ValidationError("epoch schedule: negative horizon");
    if (tau < 1)
        throw ValidationError("epoch length tau must be positive, got " + std::to_string(tau));
}

Round EpochSchedule::default_tau(Round horizon)
{
    auto tau = static_cast<Round>(std::cbrt(static_cast<double>(horizon)));
    // cbrt of a perfect cube can land just below the integer.
    while ((tau + 1) * (tau + 1) * (tau + 1) <= horizon)
        ++tau;
    while (tau > 0 && tau * tau * tau > horizon)
        --tau;
    return std::max<Round>(tau, 1);
}

EpochCostRecord epoch_cost(std::span<const EpochRound> rounds, Round tau, Round unseen)
{
    EpochCostRecord rec;
    for (std::size_t idx = 0; idx < rounds.size(); ++idx) {
        const EpochRound& r = rounds[idx];
        if (r.evicted)
            ++rec.evictions;
        if (idx == 0 || r.evicted || r.prior_remedy == unseen)
            ++rec.f;
    }
    rec.F = static_cast<double>(rec.f) / static_cast<double>(tau);
    return rec;
}

std::vector<EpochRound> run_epoch(const RequestTrace& trace, const std::function<Round(Round)>& predict, Round first,
                                  Round last, CacheState& cache, PromotionRule rule, RunRecorder* recorder)
{
    if (first < 1 || last > trace.horizon() || first > last)
        throw ContractViolation("run_epoch: invalid round range");
    SimPolicy sim(trace, cache, rule);
    std::vector<EpochRound> rounds;
    rounds.reserve(static_cast<std::size_t>(last - first + 1));
    for (Round t = first; t <= last; ++t) {
        const auto step = sim.serve(t, predict(t));
        rounds.push_back({t, step.miss, step.prior_remedy});
        if (recorder)
            recorder->record(t, step.miss, step.evicted);
    }
    cache = sim.cache();
    return rounds;
}

ScsResult scs_run(const RequestTrace& trace, PredictorPool& pool, const CacheState& initial, const ScsOptions& options)
{
    if (pool.mode() != AccessMode::kBandit)
        throw ValidationError("scs_run requires a bandit-mode predictor pool");
    if (pool.horizon() != trace.horizon())
        throw ValidationError("scs_run: pool horizon differs from the trace horizon");

    const Round tau = options.tau > 0 ? options.tau : EpochSchedule::default_tau(trace.horizon());
    const EpochSchedule schedule(trace.horizon(), tau);
    const Round unseen = RemedyTable::sentinel_for(trace) + 1;

    ScsResult result;
    RunRecorder rec(trace.horizon());
    CacheState cache = initial;
    if (schedule.count() == 0) {
        result.report = std::move(rec).finish(std::move(cache));
        return result;
    }

    auto learner = make_learner(options.learner, pool.size(), schedule.count(), options.seed);
    for (std::int64_t epoch = 1; epoch <= schedule.count(); ++epoch) {
        const int chosen = learner->choose();
        const auto rounds = run_epoch(
            trace, [&pool, chosen](Round t) { return pool.query(chosen, t); }, schedule.first(epoch),
            schedule.last(epoch), cache, options.rule, &rec);
        EpochCostRecord cost = epoch_cost(rounds, tau, unseen);
        cost.epoch = epoch;
        cost.predictor = chosen;
        learner->update(chosen, cost.F);
        result.epochs.push_back(cost);
    }
    result.report = std::move(rec).finish(std::move(cache));
    return result;
}

double default_epsilon(Round horizon, int k, int predictors)
{
    if (horizon <= 0 || predictors <= 1)
        return 0.2;
    const double eps = std::sqrt(k * std::log(static_cast<double>(predictors)) / static_cast<double>(horizon));
    return eps > 0.0 ? std::min(0.2, eps) : 0.2;
}

namespace {

// Normalised weights (1 - eps)^{misses_j}, computed in the log domain.
void normalised_weights(const std::vector<std::int64_t>& misses, double log_decay, std::vector<double>& out)
{
    const std::int64_t fewest = *std::min_element(misses.begin(), misses.end());
    double total = 0.0;
    for (std::size_t j = 0; j < misses.size(); ++j) {
        out[j] = std::exp(static_cast<double>(misses[j] - fewest) * log_decay);
        total += out[j];
    }
    for (double& q : out)
        q /= total;
}

} // namespace

RunReport multiplexer_run(const RequestTrace& trace, PredictorPool& pool, const CacheState& initial,
                          const MultiplexerOptions& options, MultiplexerStats* stats)
{
    if (pool.mode() != AccessMode::kFullInformation)
        throw ValidationError("multiplexer_run requires a full-information predictor pool");
    if (pool.horizon() != trace.horizon())
        throw ValidationError("multiplexer_run: pool horizon differs from the trace horizon");
    const int m = pool.size();
    const double eps = options.epsilon.value_or(default_epsilon(trace.horizon(), initial.capacity(), m));
    if (!(eps > 0.0 && eps < 0.25))
        throw ValidationError("multiplexer epsilon must lie in (0, 1/4), got " + std::to_string(eps));
    const double log_decay = std::log1p(-eps);

    std::vector<SimPolicy> sims(static_cast<std::size_t>(m), SimPolicy(trace, initial, options.rule));
    std::vector<std::int64_t> misses(static_cast<std::size_t>(m), 0);
    std::vector<double> q_old(static_cast<std::size_t>(m));
    std::vector<double> q_new(static_cast<std::size_t>(m));
    normalised_weights(misses, log_decay, q_old);

    CounterRng rng(options.seed, "multiplexer");
    auto sample = [&rng](const std::vector<double>& weights, double total) {
        double u = rng.uniform01() * total;
        std::size_t last_positive = 0;
        for (std::size_t j = 0; j < weights.size(); ++j) {
            if (weights[j] <= 0.0)
                continue;
            last_positive = j;
            if (u < weights[j])
                return j;
            u -= weights[j];
        }
        return last_positive;
    };

    std::size_t current = sample(q_old, 1.0);
    std::int64_t switches = 0;
    RunRecorder rec(trace.horizon());
    std::vector<double> gain(static_cast<std::size_t>(m));

    for (Round t = 1; t <= trace.horizon(); ++t) {
        bool followed_miss = false;
        Page followed_evicted = kNoPage;
        for (int j = 1; j <= m; ++j) {
            const auto idx = static_cast<std::size_t>(j - 1);
            const auto step = sims[idx].serve(t, pool.query(j, t));
            if (step.miss)
                ++misses[idx];
            if (idx == current) {
                followed_miss = step.miss;
                followed_evicted = step.evicted;
            }
        }
        rec.record(t, followed_miss, followed_evicted);

        normalised_weights(misses, log_decay, q_new);
        const double stay = std::min(1.0, q_new[current] / q_old[current]);
        if (stay < 1.0 && rng.uniform01() >= stay) {
            double total = 0.0;
            for (std::size_t j = 0; j < gain.size(); ++j) {
                gain[j] = std::max(0.0, q_new[j] - q_old[j]);
                total += gain[j];
            }
            if (total > 0.0) {
                const std::size_t next = sample(gain, total);
                if (next != current) {
                    std::int64_t fetches = 0;
                    for (Page p : sims[next].cache().members())
                        fetches += sims[current].cache().contains(p) ? 0 : 1;
                    rec.charge_sync(fetches);
                    current = next;
                    ++switches;
                }
            }
        }
        q_old.swap(q_new);
    }

    if (stats) {
        stats->epsilon = eps;
        stats->switches = switches;
        stats->instance_costs = misses;
    }
    return std::move(rec).finish(sims[current].cache());
}

} // namespace paging
