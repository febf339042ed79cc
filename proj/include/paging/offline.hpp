#pragma once

// Offline optimum (furthest-in-the-future eviction) plus an exhaustive dynamic
// program over cache configurations that serves as its correctness oracle, and
// the predictor-free least-recently-used baseline.

#include "paging/core.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace paging {

class InstanceTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OptReport {
    std::int64_t cost = 0;
    // Eviction schedule (kNoPage on hits); only filled by the FitF route.
    std::optional<std::vector<Page>> witness;
};

// On every miss evicts the cached page with the largest A(t, .); ties go to the
// smallest page id.
RunReport fitf_run(const RequestTrace& trace, const NatTable& nat, const CacheState& initial);
OptReport fitf_opt(const RequestTrace& trace, const NatTable& nat, const CacheState& initial);

// Guard for dp_opt: C(n, k) * T must not exceed this.
inline constexpr std::uint64_t kDpStateBudget = 10'000'000;

// Exact minimum miss count over all lazy schedules. Throws InstanceTooLarge
// when the guard fails (or n > 62, the bitmask width).
OptReport dp_opt(const RequestTrace& trace, const CacheState& initial);

// Replays an eviction schedule from the initial cache; returns its miss count.
// Throws ContractViolation if the schedule is not lazy-feasible.
std::int64_t replay_schedule(const RequestTrace& trace, const CacheState& initial, const std::vector<Page>& evictions);

RunReport lru_run(const RequestTrace& trace, const CacheState& initial);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

} // namespace paging
