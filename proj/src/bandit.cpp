#include "paging/bandit.hpp"

#include "paging/core.hpp"

#include <algorithm>
#include <cmath>

namespace paging {

BanditLearner::BanditLearner(int arms, std::int64_t horizon, std::uint64_t seed)
    : estimates_(static_cast<std::size_t>(std::max(arms, 0)), 0.0)
    , probs_(static_cast<std::size_t>(std::max(arms, 0)), arms > 0 ? 1.0 / arms : 0.0)
    , horizon_(horizon)
    , rng_(seed, "learner")
{
    if (arms < 1)
        throw ValidationError("bandit learner needs at least one arm");
    if (horizon < 1)
        throw ValidationError("bandit learner needs a positive horizon");
}

int BanditLearner::choose()
{
    if (pending_ != 0)
        throw ContractViolation("bandit learner: choose() called twice without update()");
    if (round_ >= horizon_)
        throw ContractViolation("bandit learner: more than " + std::to_string(horizon_) + " rounds");
    const double u = rng_.uniform01();
    double acc = 0.0;
    int arm = arms();
    for (int i = 0; i < arms(); ++i) {
        acc += probs_[static_cast<std::size_t>(i)];
        if (u < acc) {
            arm = i + 1;
            break;
        }
    }
    // Rounding can leave acc slightly below 1; fall back to the last arm with mass.
    while (arm > 1 && probs_[static_cast<std::size_t>(arm - 1)] == 0.0)
        --arm;
    pending_ = arm;
    ++round_;
    return arm;
}

void BanditLearner::update(int arm, double loss)
{
    if (!(loss >= 0.0 && loss <= 1.0))
        throw ValidationError("bandit learner: loss " + std::to_string(loss) + " outside [0, 1]");
    if (pending_ == 0 || arm != pending_)
        throw ContractViolation("bandit learner: update for arm " + std::to_string(arm) +
                                " does not match the chosen arm " + std::to_string(pending_));
    pending_ = 0;
    if (loss == 0.0)
        return;
    const auto idx = static_cast<std::size_t>(arm - 1);
    estimates_[idx] += loss / probs_[idx];
    refresh_distribution();
}

InfLearner::InfLearner(int arms, std::int64_t horizon, std::uint64_t seed)
    : BanditLearner(arms, horizon, seed)
    , eta_(2.0 / std::sqrt(static_cast<double>(horizon)))
{
}

void InfLearner::refresh_distribution()
{
    const double lowest = *std::min_element(estimates_.begin(), estimates_.end());
    const double inv_eta2 = 1.0 / (eta_ * eta_);
    double lambda = lowest - 1.0 / eta_;
    for (int iter = 0; iter < 100; ++iter) {
        double sum = 0.0;
        double slope = 0.0;
        for (double l : estimates_) {
            const double gap = l - lambda;
            const double w = inv_eta2 / (gap * gap);
            sum += w;
            slope += 2.0 * w / gap;
        }
        const double excess = sum - 1.0;
        if (std::abs(excess) < 1e-13)
            break;
        lambda -= excess / slope;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < estimates_.size(); ++i) {
        const double gap = estimates_[i] - lambda;
        probs_[i] = inv_eta2 / (gap * gap);
        total += probs_[i];
    }
    for (double& p : probs_)
        p /= total;
}

Exp3Learner::Exp3Learner(int arms, std::int64_t horizon, std::uint64_t seed)
    : BanditLearner(arms, horizon, seed)
    , eta_(arms > 1 ? std::sqrt(2.0 * std::log(static_cast<double>(arms)) / (arms * static_cast<double>(horizon)))
                    : 0.0)
{
}

void Exp3Learner::refresh_distribution()
{
    const double lowest = *std::min_element(estimates_.begin(), estimates_.end());
    double total = 0.0;
    for (std::size_t i = 0; i < estimates_.size(); ++i) {
        probs_[i] = std::exp(-eta_ * (estimates_[i] - lowest));
        total += probs_[i];
    }
    for (double& p : probs_)
        p /= total;
}

std::unique_ptr<BanditLearner> make_learner(LearnerKind kind, int arms, std::int64_t horizon, std::uint64_t seed)
{
    if (kind == LearnerKind::kExp3)
        return std::make_unique<Exp3Learner>(arms, horizon, seed);
    return std::make_unique<InfLearner>(arms, horizon, seed);
}

LearnerKind parse_learner_kind(const std::string& name)
{
    if (name == "inf")
        return LearnerKind::kInf;
    if (name == "exp3")
        return LearnerKind::kExp3;
    throw ValidationError("unknown learner '" + name + "'");
}

} // namespace paging
