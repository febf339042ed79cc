#include "paging/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace paging {

namespace {

class Fenwick {
public:
    explicit Fenwick(std::size_t n)
        : tree_(n + 1, 0)
    {
    }
    void add(std::size_t i)
    {
        for (++i; i < tree_.size(); i += i & (~i + 1))
            ++tree_[i];
    }
    // Count of inserted positions < i.
    std::int64_t prefix(std::size_t i) const
    {
        std::int64_t s = 0;
        for (; i > 0; i -= i & (~i + 1))
            s += tree_[i];
        return s;
    }

private:
    std::vector<std::int64_t> tree_;
};

} // namespace

MetricsReport compute_metrics(const RequestTrace& trace, const NatTable& nat, const NatPredictionStream& stream)
{
    if (stream.horizon() != trace.horizon())
        throw ValidationError("compute_metrics: stream length differs from the trace horizon");
    const auto T = static_cast<std::size_t>(trace.horizon());
    MetricsReport m;
    if (T == 0)
        return m;

    std::vector<Round> truth(T);
    std::vector<std::uint8_t> wrong(T, 0);
    for (std::size_t r = 0; r < T; ++r) {
        const Round t = static_cast<Round>(r) + 1;
        truth[r] = nat.next_of_request(t);
        const Round p = stream.at(t);
        if (p != truth[r]) {
            wrong[r] = 1;
            ++m.error_rounds;
            m.l1 += p > truth[r] ? p - truth[r] : truth[r] - p;
        }
    }

    // Rounds ordered by true next arrival (all distinct).
    std::vector<std::size_t> order(T);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return truth[a] < truth[b]; });
    std::vector<Round> q(T);
    for (std::size_t j = 0; j < T; ++j)
        q[j] = stream.at(static_cast<Round>(order[j]) + 1);

    // Inverted pairs: i < j in true order with q_i >= q_j.
    std::vector<Round> ranks = q;
    std::sort(ranks.begin(), ranks.end());
    ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
    Fenwick seen(ranks.size());
    for (std::size_t j = 0; j < T; ++j) {
        const auto rank = static_cast<std::size_t>(std::lower_bound(ranks.begin(), ranks.end(), q[j]) - ranks.begin());
        m.inverted_pairs += static_cast<std::int64_t>(j) - seen.prefix(rank);
        seen.add(rank);
    }

    std::vector<Round> suffix_min(T + 1, std::numeric_limits<Round>::max());
    for (std::size_t j = T; j-- > 0;)
        suffix_min[j] = std::min(suffix_min[j + 1], q[j]);
    Round prefix_max = std::numeric_limits<Round>::min();
    for (std::size_t j = 0; j < T; ++j) {
        const bool inverted = prefix_max >= q[j] || suffix_min[j + 1] <= q[j];
        if (inverted) {
            ++m.inverted_rounds;
            if (wrong[order[j]])
                ++m.eta_refined;
        }
        prefix_max = std::max(prefix_max, q[j]);
    }
    return m;
}

std::int64_t compute_explicit_error(const ExplicitPredictionStream& explicit_stream, const RequestTrace& trace)
{
    if (explicit_stream.horizon() != trace.horizon())
        throw ValidationError("compute_explicit_error: horizons differ");
    std::int64_t count = 0;
    for (Round t = 1; t <= trace.horizon(); ++t)
        count += explicit_stream.at(t) != trace.at(t) ? 1 : 0;
    return count;
}

} // namespace paging
