#include "paging/sim.hpp"

#include <algorithm>
#include <string>

namespace paging {

RemedyTable::RemedyTable(Page n, Round sentinel)
    : values_(static_cast<std::size_t>(n) + 1, sentinel + 1)
    , sentinel_(sentinel)
{
}

Round RemedyTable::step(Round t, Page requested, Round prediction, PromotionRule rule)
{
    const auto req = static_cast<std::size_t>(requested);
    if (requested < 1 || req >= values_.size())
        throw ContractViolation("remedy_step: page " + std::to_string(requested) + " outside [1, n]");

    if (fresh_) {
        std::fill(values_.begin(), values_.end(), unseen());
        values_[req] = prediction;
        round_ = t;
        fresh_ = false;
        return unseen();
    }
    if (t != round_ + 1)
        throw ContractViolation("remedy_step: round " + std::to_string(t) + " does not follow round " +
                                std::to_string(round_));

    const Round prior = values_[req];
    if (prior < sentinel_) {
        for (std::size_t i = 1; i < values_.size(); ++i) {
            if (i == req)
                continue;
            const Round v = values_[i];
            const bool expired = rule == PromotionRule::kAtMost ? v <= t : v == t;
            if (expired && v <= prior)
                values_[i] = sentinel_;
        }
    }
    values_[req] = prediction;
    round_ = t;
    return prior;
}

SimPolicy::SimPolicy(const RequestTrace& trace, CacheState initial, PromotionRule rule)
    : trace_(&trace)
    , cache_(std::move(initial))
    , remedies_(trace.universe(), RemedyTable::sentinel_for(trace))
    , rule_(rule)
{
    if (cache_.universe() != trace.universe())
        throw ValidationError("Sim: initial cache universe does not match the trace");
}

Page SimPolicy::argmax_remedy(Page skip) const
{
    Page best = kNoPage;
    Round best_value = 0;
    for (Page p : cache_.members()) {
        if (p == skip)
            continue;
        const Round v = remedies_.value(p);
        if (best == kNoPage || v > best_value || (v == best_value && p < best)) {
            best = p;
            best_value = v;
        }
    }
    return best;
}

SimPolicy::Step SimPolicy::serve(Round t, Round prediction)
{
    const Page page = trace_->at(t);
    Step step;
    step.prior_remedy = remedies_.step(t, page, prediction, rule_);
    if (!cache_.contains(page)) {
        step.miss = true;
        step.evicted = argmax_remedy(page);
        cache_.replace(step.evicted, page);
    }
    return step;
}

namespace {

template <class Predict>
RunReport drive_sim(const RequestTrace& trace, const CacheState& initial, const SimOptions& options, Predict&& predict)
{
    SimPolicy sim(trace, initial, options.rule);
    RunRecorder rec(trace.horizon());
    for (Round t = 1; t <= trace.horizon(); ++t) {
        const auto step = sim.serve(t, predict(t));
        rec.record(t, step.miss, step.evicted);
        if (options.observer) {
            const Page candidate = step.miss ? step.evicted : sim.argmax_remedy(trace.at(t));
            options.observer(SimRoundView{t, trace.at(t), step.miss, step.evicted, candidate, sim.remedies()});
        }
    }
    return std::move(rec).finish(sim.cache());
}

} // namespace

RunReport sim_run(const RequestTrace& trace, const NatPredictionStream& stream, const CacheState& initial,
                  const SimOptions& options)
{
    if (stream.horizon() != trace.horizon())
        throw ValidationError("sim_run: stream length differs from the trace horizon");
    return drive_sim(trace, initial, options, [&stream](Round t) { return stream.at(t); });
}

RunReport sim_run(const RequestTrace& trace, PredictorPool& pool, int predictor, const CacheState& initial,
                  const SimOptions& options)
{
    if (pool.horizon() != trace.horizon())
        throw ValidationError("sim_run: pool horizon differs from the trace horizon");
    return drive_sim(trace, initial, options, [&pool, predictor](Round t) { return pool.query(predictor, t); });
}

} // namespace paging
