#pragma once

// Combining M NAT predictors.
//
// scs_run (sightless chasing and switching, bandit access): rounds are split
// into epochs of tau rounds. At each epoch start a bandit learner picks one
// predictor; throughout the epoch Sim runs on that predictor alone with its
// remedy table restarted at the epoch's first round, continuing the real cache.
// At the epoch end the learner is charged F = f / tau where f counts the epoch
// rounds that are (a) the first round, (b) a miss, or (c) a hit on a page whose
// remedy before the round was still "never seen". This proxy cost does not
// depend on the epoch's initial cache, and
//   evictions <= tau * F <= evictions + k.
//
// multiplexer_run (full information): all M Sim instances run in lockstep; the
// combiner keeps weights (1 - eps)^{misses_j}, follows one instance at a time,
// and on a switch adopts the new instance's cache, paying for every page it
// has to fetch.

#include "paging/bandit.hpp"
#include "paging/core.hpp"
#include "paging/predictors.hpp"
#include "paging/sim.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace paging {

class EpochSchedule {
public:
    EpochSchedule(Round horizon, Round tau);

    // floor(T^{1/3}), at least 1.
    static Round default_tau(Round horizon);

    Round tau() const { return tau_; }
    Round horizon() const { return horizon_; }
    std::int64_t count() const { return horizon_ == 0 ? 0 : (horizon_ + tau_ - 1) / tau_; }
    Round first(std::int64_t epoch) const { return (epoch - 1) * tau_ + 1; }
    Round last(std::int64_t epoch) const { return std::min(epoch * tau_, horizon_); }
    std::int64_t epoch_of(Round t) const { return (t - 1) / tau_ + 1; }

private:
    Round horizon_;
    Round tau_;
};

// What the proxy cost needs to know about one executed round.
struct EpochRound {
    Round t = 0;
    bool evicted = false;
    Round prior_remedy = 0;
};

struct EpochCostRecord {
    std::int64_t epoch = 0;
    int predictor = 0;
    std::int64_t f = 0;
    double F = 0.0;
    std::int64_t evictions = 0;
};

// f and F for one epoch's rounds (in order, first round first). `unseen` is the
// never-seen remedy value Z + 1.
EpochCostRecord epoch_cost(std::span<const EpochRound> rounds, Round tau, Round unseen);

// Runs rounds [first, last] of Sim with a restarted remedy table from `cache`
// (updated in place) reading predictions from `predict`. Returns the rounds in
// order plus the per-round outcomes via `recorder` when provided.
std::vector<EpochRound> run_epoch(const RequestTrace& trace, const std::function<Round(Round)>& predict, Round first,
                                  Round last, CacheState& cache, PromotionRule rule = PromotionRule::kAtMost,
                                  RunRecorder* recorder = nullptr);

struct ScsOptions {
    Round tau = 0; // 0 selects floor(T^{1/3})
    std::uint64_t seed = 0;
    LearnerKind learner = LearnerKind::kInf;
    PromotionRule rule = PromotionRule::kAtMost;
};

struct ScsResult {
    RunReport report;
    std::vector<EpochCostRecord> epochs;
};

ScsResult scs_run(const RequestTrace& trace, PredictorPool& pool, const CacheState& initial, const ScsOptions& options = {});

// min(0.2, sqrt(k ln M / T)); 0.2 when that formula gives 0.
double default_epsilon(Round horizon, int k, int predictors);

struct MultiplexerOptions {
    std::optional<double> epsilon; // must lie in (0, 1/4)
    std::uint64_t seed = 0;
    PromotionRule rule = PromotionRule::kAtMost;
};

struct MultiplexerStats {
    double epsilon = 0.0;
    std::int64_t switches = 0;
    std::vector<std::int64_t> instance_costs;
};

RunReport multiplexer_run(const RequestTrace& trace, PredictorPool& pool, const CacheState& initial,
                          const MultiplexerOptions& options = {}, MultiplexerStats* stats = nullptr);

} // namespace paging
