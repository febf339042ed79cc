#include "paging/predictors.hpp"

#include "paging/rng.hpp"

#include <algorithm>

namespace paging {

NatPredictionStream::NatPredictionStream(std::vector<Round> predictions, Round limit)
    : predictions_(std::move(predictions))
    , limit_(limit)
{
    for (std::size_t idx = 0; idx < predictions_.size(); ++idx) {
        const Round t = static_cast<Round>(idx) + 1;
        const Round p = predictions_[idx];
        if (p <= t || p > limit_)
            throw ValidationError("prediction " + std::to_string(p) + " at round " + std::to_string(t) +
                                  " outside (t, " + std::to_string(limit_) + "]");
    }
}

NatPredictionStream perfect_nat(const RequestTrace& trace, const NatTable& nat)
{
    std::vector<Round> p(static_cast<std::size_t>(trace.horizon()));
    for (Round t = 1; t <= trace.horizon(); ++t)
        p[static_cast<std::size_t>(t - 1)] = nat.next_of_request(t);
    return NatPredictionStream(std::move(p), trace.augmented_length());
}

NatPredictionStream derive_consistent_nat(const ExplicitPredictionStream& explicit_stream, const RequestTrace& trace)
{
    if (explicit_stream.horizon() != trace.horizon() || explicit_stream.universe() != trace.universe())
        throw ValidationError("explicit stream and trace disagree on T or n");
    const RequestTrace& pi = explicit_stream.augmented();
    std::vector<Round> upcoming(static_cast<std::size_t>(trace.universe()) + 1, 0);
    std::vector<Round> p(static_cast<std::size_t>(trace.horizon()));
    for (Round t = pi.augmented_length(); t >= 1; --t) {
        if (t <= trace.horizon())
            p[static_cast<std::size_t>(t - 1)] = upcoming[static_cast<std::size_t>(trace.at(t))];
        upcoming[static_cast<std::size_t>(pi.at(t))] = t;
    }
    return NatPredictionStream(std::move(p), trace.augmented_length());
}

std::string to_string(InjectionModel model)
{
    switch (model) {
    case InjectionModel::kOffset:
        return "offset";
    case InjectionModel::kUniformResample:
        return "uniform";
    case InjectionModel::kAdversarialSwap:
        return "adversarial-swap";
    }
    return "unknown";
}

InjectionModel parse_injection_model(const std::string& name)
{
    if (name == "offset")
        return InjectionModel::kOffset;
    if (name == "uniform" || name == "uniform-resample")
        return InjectionModel::kUniformResample;
    if (name == "adversarial-swap" || name == "swap")
        return InjectionModel::kAdversarialSwap;
    throw ValidationError("unknown injection model '" + name + "'");
}

NatPredictionStream inject_errors(const NatPredictionStream& clean, const ErrorInjection& cfg,
                                  const RequestTrace& trace, const NatTable& nat)
{
    if (clean.horizon() != trace.horizon())
        throw ValidationError("inject_errors: stream length differs from the trace horizon");
    if (!(cfg.rate >= 0.0 && cfg.rate <= 1.0))
        throw ValidationError("inject_errors: rate must lie in [0, 1]");

    const Round limit = trace.augmented_length();
    CounterRng rng(cfg.seed, "inject");
    std::vector<Round> out = clean.values();
    for (Round t = 1; t <= clean.horizon(); ++t) {
        if (!rng.bernoulli(cfg.rate))
            continue;
        Round& p = out[static_cast<std::size_t>(t - 1)];
        switch (cfg.model) {
        case InjectionModel::kOffset:
            p = p + cfg.shift;
            break;
        case InjectionModel::kUniformResample:
            p = rng.between(t + 1, limit);
            break;
        case InjectionModel::kAdversarialSwap: {
            // Reflect across the span of true next arrivals at round t so that
            // the nearest and furthest arrivals trade places.
            Round lo = limit;
            Round hi = t + 1;
            for (Page i = 1; i <= trace.universe(); ++i) {
                const Round a = nat.next_arrival(t, i);
                lo = std::min(lo, a);
                hi = std::max(hi, a);
            }
            p = lo + hi - p;
            break;
        }
        }
        p = std::clamp(p, t + 1, limit);
    }
    return NatPredictionStream(std::move(out), limit);
}

std::string to_string(AccessMode mode)
{
    return mode == AccessMode::kBandit ? "bandit" : "full-information";
}

AccessMode parse_access_mode(const std::string& name)
{
    if (name == "bandit")
        return AccessMode::kBandit;
    if (name == "full-information" || name == "full")
        return AccessMode::kFullInformation;
    throw ValidationError("unknown access mode '" + name + "'");
}

PredictorPool::PredictorPool(std::vector<NatPredictionStream> streams, AccessMode mode)
    : streams_(std::move(streams))
    , mode_(mode)
{
    if (streams_.empty())
        throw ValidationError("predictor pool needs at least one stream");
    horizon_ = streams_.front().horizon();
    for (const auto& s : streams_)
        if (s.horizon() != horizon_ || s.limit() != streams_.front().limit())
            throw ValidationError("predictor streams disagree on horizon");
}

Round PredictorPool::query(int predictor, Round t)
{
    if (predictor < 1 || predictor > size())
        throw ContractViolation("predictor " + std::to_string(predictor) + " outside [1, " + std::to_string(size()) + "]");
    if (t < 1 || t > horizon_)
        throw ContractViolation("query round " + std::to_string(t) + " outside [1, T]");
    if (t < clock_)
        throw AccessViolation("query for past round " + std::to_string(t) + " after round " + std::to_string(clock_));
    if (mode_ == AccessMode::kBandit && !log_.empty() && log_.back().round == t)
        throw AccessViolation("bandit access: second query in round " + std::to_string(t));
    clock_ = t;
    log_.push_back({predictor, t});
    return streams_[static_cast<std::size_t>(predictor - 1)].at(t);
}

const NatPredictionStream& PredictorPool::stream(int predictor) const
{
    if (predictor < 1 || predictor > size())
        throw ContractViolation("predictor " + std::to_string(predictor) + " outside [1, " + std::to_string(size()) + "]");
    return streams_[static_cast<std::size_t>(predictor - 1)];
}

} // namespace paging
