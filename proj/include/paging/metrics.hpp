#pragma once

// Prediction-accuracy measures for a NAT stream against the true trace.
//
// A pair of rounds {t, t'} is inverted when the round with the strictly smaller
// true next arrival does not get a strictly smaller prediction:
//   A(t, sigma_t) < A(t', sigma_t')  and  p_t >= p_t'.
// True next arrivals of distinct rounds are distinct positions of the augmented
// trace, so the role assignment is always unambiguous.

#include "paging/core.hpp"
#include "paging/predictors.hpp"

#include <cstdint>

namespace paging {

struct MetricsReport {
    std::int64_t error_rounds = 0;     // rounds with p_t != A(t, sigma_t)
    std::int64_t inverted_pairs = 0;
    std::int64_t inverted_rounds = 0;  // rounds in at least one inverted pair
    std::int64_t eta_refined = 0;      // erroneous rounds that are also inverted rounds
    std::int64_t l1 = 0;               // sum |p_t - A(t, sigma_t)|

    friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

// O(T log T).
MetricsReport compute_metrics(const RequestTrace& trace, const NatTable& nat, const NatPredictionStream& stream);

// |{t in [1, T] : pi_t != sigma_t}|
std::int64_t compute_explicit_error(const ExplicitPredictionStream& explicit_stream, const RequestTrace& trace);

} // namespace paging
