#include "paging/offline.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <list>
#include <set>
#include <string>
#include <unordered_map>

namespace paging {

namespace {

// Orders (next arrival, page) so that begin() is the FitF victim: furthest
// arrival first, smaller page id first among equals.
struct FurthestFirst {
    bool operator()(const std::pair<Round, Page>& a, const std::pair<Round, Page>& b) const
    {
        if (a.first != b.first)
            return a.first > b.first;
        return a.second < b.second;
    }
};

} // namespace

RunReport fitf_run(const RequestTrace& trace, const NatTable& nat, const CacheState& initial)
{
    if (initial.universe() != trace.universe())
        throw ValidationError("fitf_run: initial cache universe does not match the trace");

    const Page n = trace.universe();
    CacheState cache = initial;
    std::vector<Round> key(static_cast<std::size_t>(n) + 1, 0);
    std::set<std::pair<Round, Page>, FurthestFirst> order;
    for (Page p : cache.members()) {
        key[static_cast<std::size_t>(p)] = nat.next_arrival(0, p);
        order.emplace(key[static_cast<std::size_t>(p)], p);
    }

    RunRecorder rec(trace.horizon());
    for (Round t = 1; t <= trace.horizon(); ++t) {
        const Page p = trace.at(t);
        const auto pi = static_cast<std::size_t>(p);
        if (cache.contains(p)) {
            order.erase({key[pi], p});
            rec.record(t, false, kNoPage);
        } else {
            const Page victim = order.begin()->second;
            order.erase(order.begin());
            cache.replace(victim, p);
            rec.record(t, true, victim);
        }
        key[pi] = nat.next_of_request(t);
        order.emplace(key[pi], p);
    }
    return std::move(rec).finish(std::move(cache));
}

OptReport fitf_opt(const RequestTrace& trace, const NatTable& nat, const CacheState& initial)
{
    RunReport run = fitf_run(trace, nat, initial);
    return OptReport{run.cost, std::move(run.evictions)};
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // r * (n - k + i) / i stays exact; saturate instead of overflowing.
        if (r > std::numeric_limits<std::uint64_t>::max() / (n - k + i))
            return std::numeric_limits<std::uint64_t>::max();
        r = r * (n - k + i) / i;
    }
    return r;
}

OptReport dp_opt(const RequestTrace& trace, const CacheState& initial)
{
    const Page n = trace.universe();
    const auto k = static_cast<std::uint64_t>(initial.capacity());
    if (n > 62)
        throw InstanceTooLarge("dp_opt: n=" + std::to_string(n) + " exceeds the 62-page bitmask limit");
    const std::uint64_t states = binomial(static_cast<std::uint64_t>(n), k);
    const auto horizon = static_cast<std::uint64_t>(std::max<Round>(trace.horizon(), 1));
    if (states > kDpStateBudget || states * horizon > kDpStateBudget)
        throw InstanceTooLarge("dp_opt: C(n,k)*T exceeds " + std::to_string(kDpStateBudget));

    using Mask = std::uint64_t;
    Mask start = 0;
    for (Page p : initial.members())
        start |= Mask{1} << p;

    std::unordered_map<Mask, std::int64_t> frontier{{start, 0}};
    std::unordered_map<Mask, std::int64_t> next;
    for (Round t = 1; t <= trace.horizon(); ++t) {
        const Mask want = Mask{1} << trace.at(t);
        next.clear();
        auto relax = [&next](Mask m, std::int64_t c) {
            auto [it, inserted] = next.try_emplace(m, c);
            if (!inserted && c < it->second)
                it->second = c;
        };
        for (const auto& [mask, cost] : frontier) {
            if (mask & want) {
                relax(mask, cost);
                continue;
            }
            for (Mask rest = mask; rest != 0; rest &= rest - 1) {
                const Mask victim = rest & (~rest + 1);
                relax((mask & ~victim) | want, cost + 1);
            }
        }
        frontier.swap(next);
    }

    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& [mask, cost] : frontier)
        best = std::min(best, cost);
    return OptReport{best, std::nullopt};
}

std::int64_t replay_schedule(const RequestTrace& trace, const CacheState& initial, const std::vector<Page>& evictions)
{
    if (static_cast<Round>(evictions.size()) != trace.horizon())
        throw ContractViolation("replay_schedule: schedule length differs from the horizon");
    CacheState cache = initial;
    std::int64_t misses = 0;
    for (Round t = 1; t <= trace.horizon(); ++t) {
        const Page e = evictions[static_cast<std::size_t>(t - 1)];
        if (cache.serve(trace.at(t), e == kNoPage ? std::nullopt : std::optional<Page>(e)))
            ++misses;
    }
    return misses;
}

RunReport lru_run(const RequestTrace& trace, const CacheState& initial)
{
    const Page n = trace.universe();
    CacheState cache = initial;
    // Front is least recently used. Initial pages count as used in ascending id order.
    std::list<Page> recency;
    std::vector<std::list<Page>::iterator> where(static_cast<std::size_t>(n) + 1, recency.end());
    for (Page p : cache.sorted_pages())
        where[static_cast<std::size_t>(p)] = recency.insert(recency.end(), p);

    RunRecorder rec(trace.horizon());
    for (Round t = 1; t <= trace.horizon(); ++t) {
        const Page p = trace.at(t);
        const auto pi = static_cast<std::size_t>(p);
        if (cache.contains(p)) {
            recency.splice(recency.end(), recency, where[pi]);
            rec.record(t, false, kNoPage);
            continue;
        }
        const Page victim = recency.front();
        recency.pop_front();
        where[static_cast<std::size_t>(victim)] = recency.end();
        cache.replace(victim, p);
        where[pi] = recency.insert(recency.end(), p);
        rec.record(t, true, victim);
    }
    return std::move(rec).finish(std::move(cache));
}

} // namespace paging
