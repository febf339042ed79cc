#pragma once

// Adversarial multi-armed bandit learners over arms 1..M and a known horizon
// of Upsilon rounds, with losses in [0, 1].
//
// InfLearner is the implicitly normalized forecaster with the quadratic
// polynomial potential, written for losses:
//
//   p_i = 1 / (eta^2 (L_i - lambda)^2),   lambda < min_i L_i,  sum_i p_i = 1,
//
// where L_i is the importance-weighted cumulative loss estimate of arm i
// (the played arm's loss divided by its probability) and eta = 2 / sqrt(Upsilon).
// lambda is found by Newton iteration on the convex increasing map
// lambda -> sum_i p_i, started from min L - 1/eta where the sum is >= 1. The
// expected regret is O(sqrt(M * Upsilon)) without a log M factor.
//
// Exp3Learner is exponential weights with the same estimator and
// eta = sqrt(2 ln M / (M Upsilon)); regret O(sqrt(M Upsilon log M)).

#include "paging/rng.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace paging {

class BanditLearner {
public:
    BanditLearner(int arms, std::int64_t horizon, std::uint64_t seed);
    virtual ~BanditLearner() = default;

    // Samples an arm (1-based). At most `horizon` calls, each followed by update().
    int choose();

    // Feeds the loss of the arm returned by the preceding choose().
    void update(int arm, double loss);

    int arms() const { return static_cast<int>(estimates_.size()); }
    std::int64_t horizon() const { return horizon_; }
    std::int64_t rounds_played() const { return round_; }
    const std::vector<double>& distribution() const { return probs_; }
    const std::vector<double>& loss_estimates() const { return estimates_; }

protected:
    virtual void refresh_distribution() = 0;

    std::vector<double> estimates_;
    std::vector<double> probs_;

private:
    std::int64_t horizon_;
    std::int64_t round_ = 0;
    int pending_ = 0;
    CounterRng rng_;
};

class InfLearner final : public BanditLearner {
public:
    InfLearner(int arms, std::int64_t horizon, std::uint64_t seed);

    double eta() const { return eta_; }

protected:
    void refresh_distribution() override;

private:
    double eta_;
};

class Exp3Learner final : public BanditLearner {
public:
    Exp3Learner(int arms, std::int64_t horizon, std::uint64_t seed);

protected:
    void refresh_distribution() override;

private:
    double eta_;
};

enum class LearnerKind { kInf, kExp3 };

std::unique_ptr<BanditLearner> make_learner(LearnerKind kind, int arms, std::int64_t horizon, std::uint64_t seed);
LearnerKind parse_learner_kind(const std::string& name);

} // namespace paging
