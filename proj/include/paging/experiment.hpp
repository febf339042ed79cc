#pragma once

// Experiment harness: one algorithm over a list of seeds, each seed generating
// its own trace and predictor bundle, with the regret measured against FitF.
//
// Results CSV (fixed column order):
//   seed,algorithm,T,k,M,cost,opt,regret,eta_min
// Reals are printed with 6 significant digits. Wall times, which would break
// byte-identical reruns, go to `<output>.timings.csv` when `timings = true`.

#include "paging/combiners.hpp"
#include "paging/core.hpp"
#include "paging/generators.hpp"
#include "paging/io.hpp"
#include "paging/predictors.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace paging {

enum class Algorithm { kFitf, kDpOpt, kLru, kSim, kScs, kMultiplexer };

std::string to_string(Algorithm algo);
Algorithm parse_algorithm(const std::string& name);

struct AlgorithmSettings {
    Algorithm algorithm = Algorithm::kFitf;
    int predictor = 1; // for sim
    Round tau = 0;
    std::optional<double> epsilon;
    std::uint64_t seed = 0;
    LearnerKind learner = LearnerKind::kInf;
    PromotionRule rule = PromotionRule::kAtMost;
};

struct AlgorithmOutcome {
    RunReport report;
    std::vector<EpochCostRecord> epochs; // scs only
};

// Dispatches to the chosen algorithm. The pool is re-created internally in the
// access mode each algorithm requires.
AlgorithmOutcome run_algorithm(const RequestTrace& trace, const NatTable& nat,
                               const std::vector<NatPredictionStream>& streams, const CacheState& initial,
                               const AlgorithmSettings& settings);

struct ExperimentConfig {
    TraceSpec trace;
    int k = 1;
    PredictorBundleSpec predictors;
    AlgorithmSettings algorithm;
    std::vector<std::uint64_t> seeds;
    std::filesystem::path output;
    bool timings = false;
};

ExperimentConfig parse_experiment_config(const KeyValues& kv, const std::string& origin);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// "1,2,5" or "1..20" (inclusive) or a mix of both.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

struct ResultRow {
    std::uint64_t seed = 0;
    std::string algorithm;
    Round horizon = 0;
    int k = 0;
    int predictors = 0;
    std::int64_t cost = 0;
    std::int64_t opt = 0;
    std::int64_t regret = 0;
    std::int64_t eta_min = 0;
    double wall_seconds = 0.0;
};

ResultRow run_seed(const ExperimentConfig& config, std::uint64_t seed);

// Runs every seed (in seed-list order), writes the CSV atomically when
// config.output is non-empty, and returns the rows.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

std::string format_results_csv(const std::vector<ResultRow>& rows);
std::string format_timings_csv(const std::vector<ResultRow>& rows);

std::string format_epochs_csv(const std::vector<EpochCostRecord>& epochs);

} // namespace paging
