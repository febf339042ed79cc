#include "paging/core.hpp"

#include <algorithm>
#include <numeric>

namespace paging {

RequestTrace augment_sequence(std::span<const Page> raw, Page n)
{
    if (n < 2)
        throw ValidationError("page universe must have at least 2 pages, got " + std::to_string(n));
    RequestTrace trace;
    trace.n_ = n;
    trace.horizon_ = static_cast<Round>(raw.size());
    trace.requests_.reserve(raw.size() + static_cast<std::size_t>(n));
    for (std::size_t idx = 0; idx < raw.size(); ++idx) {
        const Page p = raw[idx];
        if (p < 1 || p > n)
            throw ValidationError("page " + std::to_string(p) + " at round " + std::to_string(idx + 1) +
                                  " outside [1, " + std::to_string(n) + "]");
        trace.requests_.push_back(p);
    }
    for (Page i = 1; i <= n; ++i)
        trace.requests_.push_back(i);
    return trace;
}

NatTable::NatTable(const RequestTrace& trace)
    : n_(trace.universe())
    , horizon_(trace.horizon())
    , next_same_(static_cast<std::size_t>(trace.horizon()))
    , occurrences_(static_cast<std::size_t>(trace.universe()) + 1)
{
    const Round len = trace.augmented_length();
    std::vector<Round> upcoming(static_cast<std::size_t>(n_) + 1, 0);
    for (Round t = len; t >= 1; --t) {
        const auto page = static_cast<std::size_t>(trace.at(t));
        if (t <= horizon_)
            next_same_[static_cast<std::size_t>(t - 1)] = upcoming[page];
        upcoming[page] = t;
    }
    for (Round t = 1; t <= len; ++t)
        occurrences_[static_cast<std::size_t>(trace.at(t))].push_back(t);
}

Round NatTable::next_arrival(Round t, Page page) const
{
    if (t < 0 || t > horizon_)
        throw ContractViolation("next_arrival: round " + std::to_string(t) + " outside [0, T]");
    if (page < 1 || page > n_)
        throw ContractViolation("next_arrival: page " + std::to_string(page) + " outside [1, n]");
    const auto& occ = occurrences_[static_cast<std::size_t>(page)];
    return *std::upper_bound(occ.begin(), occ.end(), t);
}

CacheState::CacheState(Page n, std::span<const Page> pages)
    : n_(n)
    , slot_(static_cast<std::size_t>(n) + 1, -1)
{
    const auto k = static_cast<Page>(pages.size());
    if (k < 1 || k >= n)
        throw ValidationError("cache capacity " + std::to_string(k) + " must lie in [1, n-1] for n=" +
                              std::to_string(n));
    members_.reserve(pages.size());
    for (Page p : pages) {
        if (p < 1 || p > n)
            throw ValidationError("cached page " + std::to_string(p) + " outside [1, " + std::to_string(n) + "]");
        if (slot_[static_cast<std::size_t>(p)] >= 0)
            throw ValidationError("cached page " + std::to_string(p) + " listed twice");
        slot_[static_cast<std::size_t>(p)] = static_cast<int>(members_.size());
        members_.push_back(p);
    }
}

CacheState CacheState::first_pages(Page n, int k)
{
    std::vector<Page> pages(static_cast<std::size_t>(std::max(k, 0)));
    std::iota(pages.begin(), pages.end(), Page{1});
    return CacheState(n, pages);
}

std::vector<Page> CacheState::sorted_pages() const
{
    std::vector<Page> out = members_;
    std::sort(out.begin(), out.end());
    return out;
}

bool CacheState::serve(Page page, std::optional<Page> evict)
{
    if (page < 1 || page > n_)
        throw ContractViolation("serve: page " + std::to_string(page) + " outside [1, n]");
    if (contains(page)) {
        if (evict)
            throw ContractViolation("serve: eviction supplied on a hit for page " + std::to_string(page));
        return false;
    }
    if (!evict)
        throw ContractViolation("serve: miss on page " + std::to_string(page) + " without an eviction");
    if (!contains(*evict))
        throw ContractViolation("serve: evicted page " + std::to_string(*evict) + " is not cached");
    replace(*evict, page);
    return true;
}

void CacheState::replace(Page out, Page in)
{
    const int s = slot_[static_cast<std::size_t>(out)];
    slot_[static_cast<std::size_t>(out)] = -1;
    slot_[static_cast<std::size_t>(in)] = s;
    members_[static_cast<std::size_t>(s)] = in;
}

bool operator==(const CacheState& a, const CacheState& b)
{
    return a.n_ == b.n_ && a.sorted_pages() == b.sorted_pages();
}

ServeOutcome serve(const CacheState& cache, Page page, std::optional<Page> evict)
{
    ServeOutcome out{false, cache};
    out.miss = out.cache.serve(page, evict);
    return out;
}

std::int64_t RunReport::miss_count() const
{
    return std::count(per_round_miss.begin(), per_round_miss.end(), std::uint8_t{1});
}

RunRecorder::RunRecorder(Round horizon)
{
    report_.evictions.assign(static_cast<std::size_t>(horizon), kNoPage);
    report_.per_round_miss.assign(static_cast<std::size_t>(horizon), 0);
}

void RunRecorder::record(Round t, bool miss, Page evicted)
{
    const auto idx = static_cast<std::size_t>(t - 1);
    report_.per_round_miss[idx] = miss ? 1 : 0;
    report_.evictions[idx] = miss ? evicted : kNoPage;
}

RunReport RunRecorder::finish(CacheState final_cache) &&
{
    report_.cost = report_.miss_count() + report_.sync_fetches;
    report_.final_cache = std::move(final_cache);
    return std::move(report_);
}

} // namespace paging
