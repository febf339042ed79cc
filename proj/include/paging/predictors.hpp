#pragma once

// Prediction streams. A NAT stream carries, for each round t, a predicted next
// arrival time p_t in (t, T + n] of the page requested at t. An explicit stream
// predicts the page sequence itself and can be turned into a consistent NAT
// stream. All access by online algorithms goes through PredictorPool, which
// enforces the full-information or bandit access model.

#include "paging/core.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace paging {

class NatPredictionStream {
public:
    NatPredictionStream() = default;
    // Validates p_t in (t, limit] for every t. limit is T + n.
    NatPredictionStream(std::vector<Round> predictions, Round limit);

    Round horizon() const { return static_cast<Round>(predictions_.size()); }
    Round limit() const { return limit_; }
    Round at(Round t) const { return predictions_[static_cast<std::size_t>(t - 1)]; }
    const std::vector<Round>& values() const { return predictions_; }

    friend bool operator==(const NatPredictionStream&, const NatPredictionStream&) = default;

private:
    std::vector<Round> predictions_;
    Round limit_ = 0;
};

// Predicted page sequence; shares the suffix law of RequestTrace.
class ExplicitPredictionStream {
public:
    ExplicitPredictionStream(std::span<const Page> raw, Page n)
        : pages_(augment_sequence(raw, n))
    {
    }

    Round horizon() const { return pages_.horizon(); }
    Page universe() const { return pages_.universe(); }
    Page at(Round t) const { return pages_.at(t); }
    const RequestTrace& augmented() const { return pages_; }

private:
    RequestTrace pages_;
};

NatPredictionStream perfect_nat(const RequestTrace& trace, const NatTable& nat);

// p_t = min{t' > t : pi_{t'} = sigma_t} over the augmented explicit stream.
NatPredictionStream derive_consistent_nat(const ExplicitPredictionStream& explicit_stream, const RequestTrace& trace);

enum class InjectionModel { kOffset, kUniformResample, kAdversarialSwap };

struct ErrorInjection {
    InjectionModel model = InjectionModel::kUniformResample;
    double rate = 0.0;
    std::uint64_t seed = 0;
    // Signed shift for the offset model.
    Round shift = 0;
};

std::string to_string(InjectionModel model);
InjectionModel parse_injection_model(const std::string& name);

// Each round is corrupted independently with probability cfg.rate; corrupted
// values are regenerated by the model and clamped into (t, T + n].
NatPredictionStream inject_errors(const NatPredictionStream& clean, const ErrorInjection& cfg,
                                  const RequestTrace& trace, const NatTable& nat);

enum class AccessMode { kFullInformation, kBandit };

std::string to_string(AccessMode mode);
AccessMode parse_access_mode(const std::string& name);

struct QueryRecord {
    int predictor = 0;
    Round round = 0;
};

class PredictorPool {
public:
    PredictorPool(std::vector<NatPredictionStream> streams, AccessMode mode);

    // p_t of predictor j (1-based). Rounds must be non-decreasing across calls;
    // in bandit mode a second query within the same round is an AccessViolation.
    Round query(int predictor, Round t);

    int size() const { return static_cast<int>(streams_.size()); }
    AccessMode mode() const { return mode_; }
    Round horizon() const { return horizon_; }
    const std::vector<QueryRecord>& query_log() const { return log_; }

    // Offline (test and harness) view of a stream; not for online algorithms.
    const NatPredictionStream& stream(int predictor) const;

private:
    std::vector<NatPredictionStream> streams_;
    AccessMode mode_;
    Round horizon_ = 0;
    Round clock_ = 0;
    std::vector<QueryRecord> log_;
};

} // namespace paging
