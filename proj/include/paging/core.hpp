#pragma once

// Core domain types for trace-driven paging: pages, request traces with their
// virtual suffix, next-arrival-time lookup, and a fixed-capacity cache.
//
// Indexing is 1-based throughout: pages live in [1, n] and rounds in [1, T].
// A trace of horizon T is always stored together with n virtual requests
// (round T + i requests page i), so every page has a finite next arrival.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace paging {

using Page = std::int32_t;
using Round = std::int64_t;

inline constexpr Page kNoPage = 0;

// Malformed user input (out-of-range ids, bad parameters, unreadable files).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A caller broke an operation's precondition (e.g. evicting an absent page).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A predictor was read outside what the access model allows.
class AccessViolation : public ContractViolation {
public:
    using ContractViolation::ContractViolation;
};

class RequestTrace {
public:
    RequestTrace() = default;

    Page universe() const { return n_; }
    Round horizon() const { return horizon_; }
    Round augmented_length() const { return static_cast<Round>(requests_.size()); }

    // Page requested at round t, t in [1, T + n].
    Page at(Round t) const { return requests_[static_cast<std::size_t>(t - 1)]; }

    // The T real requests, without the suffix.
    std::span<const Page> body() const { return {requests_.data(), static_cast<std::size_t>(horizon_)}; }
    std::span<const Page> requests() const { return requests_; }

    friend RequestTrace augment_sequence(std::span<const Page> raw, Page n);

private:
    Page n_ = 0;
    Round horizon_ = 0;
    std::vector<Page> requests_;
};

// Appends the virtual suffix 1, 2, ..., n. Throws ValidationError when n < 2
// or an entry falls outside [1, n].
RequestTrace augment_sequence(std::span<const Page> raw, Page n);

// Next-arrival-time lookup A(t, i): the first round after t requesting page i.
class NatTable {
public:
    explicit NatTable(const RequestTrace& trace);

    // A(t, i) for t in [0, T]. A(0, i) is the first request of i.
    Round next_arrival(Round t, Page page) const;

    // A(t, sigma_t) for t in [1, T]; constant time.
    Round next_of_request(Round t) const { return next_same_[static_cast<std::size_t>(t - 1)]; }

    Round horizon() const { return horizon_; }
    Page universe() const { return n_; }

private:
    Page n_ = 0;
    Round horizon_ = 0;
    std::vector<Round> next_same_;
    std::vector<std::vector<Round>> occurrences_;
};

inline NatTable build_nat_table(const RequestTrace& trace) { return NatTable(trace); }

// Exactly k distinct pages out of [1, n], k < n.
class CacheState {
public:
    CacheState() = default;
    CacheState(Page n, std::span<const Page> pages);

    // {1, ..., k}
    static CacheState first_pages(Page n, int k);

    bool contains(Page page) const
    {
        return page >= 1 && page <= n_ && slot_[static_cast<std::size_t>(page)] >= 0;
    }
    int capacity() const { return static_cast<int>(members_.size()); }
    Page universe() const { return n_; }

    // Unordered view of the cached pages.
    std::span<const Page> members() const { return members_; }
    std::vector<Page> sorted_pages() const;

    // Lazy serve in place. On a hit evict must be empty; on a miss it must name
    // a cached page. Returns whether the request missed.
    bool serve(Page page, std::optional<Page> evict);

    // Unchecked replacement used by algorithms that already know `out` is cached
    // and `in` is not.
    void replace(Page out, Page in);

    friend bool operator==(const CacheState& a, const CacheState& b);

private:
    Page n_ = 0;
    std::vector<Page> members_;
    std::vector<int> slot_;
};

struct ServeOutcome {
    bool miss = false;
    CacheState cache;
};

// Value-semantics form of CacheState::serve.
ServeOutcome serve(const CacheState& cache, Page page, std::optional<Page> evict);

struct RunReport {
    std::int64_t cost = 0;
    // evictions[t - 1] is the page evicted at round t, or kNoPage.
    std::vector<Page> evictions;
    std::vector<std::uint8_t> per_round_miss;
    // Extra fetches charged outside the per-round serve (cache adoption on a
    // switch between followed algorithms). Zero for single-policy runs.
    std::int64_t sync_fetches = 0;
    CacheState final_cache;

    std::int64_t miss_count() const;
};

// Accumulates a RunReport round by round.
class RunRecorder {
public:
    explicit RunRecorder(Round horizon);
    void record(Round t, bool miss, Page evicted);
    void charge_sync(std::int64_t fetches) { report_.sync_fetches += fetches; }
    RunReport finish(CacheState final_cache) &&;

private:
    RunReport report_;
};

} // namespace paging
