#pragma once

// Sim: furthest-in-the-future eviction driven by remedy predictions instead of
// true next arrivals.
//
// The remedy table keeps one surrogate next arrival per page. Writing Z for the
// sentinel (T + n + 1):
//   * a page never requested during the table's lifetime holds Z + 1;
//   * the requested page takes the round's prediction;
//   * a page i != sigma_t whose remedy has expired (<= t) and does not exceed
//     the requested page's previous remedy (itself < Z) is promoted to Z;
//   * everything else carries over.
// Expired pages are therefore kept behind pages still believed to be needed,
// and never-seen pages are evicted first.

#include "paging/core.hpp"
#include "paging/predictors.hpp"

#include <functional>
#include <vector>

namespace paging {

enum class PromotionRule {
    kAtMost, // remedy <= t (default)
    kExact,  // remedy == t
};

class RemedyTable {
public:
    RemedyTable(Page n, Round sentinel);

    // Sentinel for a table over a trace: Z = T + n + 1.
    static Round sentinel_for(const RequestTrace& trace) { return trace.augmented_length() + 1; }

    // One round of the update. On a fresh table (or after restart()) this is the
    // initial-round case and t may be any round; otherwise t must equal round() + 1.
    // Returns the requested page's remedy before the update.
    Round step(Round t, Page requested, Round prediction, PromotionRule rule = PromotionRule::kAtMost);

    // Forget everything; the next step() re-initialises every page to Z + 1.
    void restart() { fresh_ = true; }

    Round value(Page page) const { return values_[static_cast<std::size_t>(page)]; }
    Round sentinel() const { return sentinel_; }
    Round unseen() const { return sentinel_ + 1; }
    Round round() const { return round_; }
    bool fresh() const { return fresh_; }
    Page universe() const { return static_cast<Page>(values_.size()) - 1; }

private:
    std::vector<Round> values_;
    Round sentinel_;
    Round round_ = 0;
    bool fresh_ = true;
};

// Incremental Sim over one trace: remedy update, then lazy eviction of the
// cached page with the largest remedy (smallest page id among ties). The
// round-t prediction only touches sigma_t, which is never an eviction
// candidate in round t.
class SimPolicy {
public:
    SimPolicy(const RequestTrace& trace, CacheState initial, PromotionRule rule = PromotionRule::kAtMost);

    struct Step {
        bool miss = false;
        Page evicted = kNoPage;
        // p-hat_{t-1}(sigma_t): the requested page's remedy before the update.
        Round prior_remedy = 0;
    };

    Step serve(Round t, Round prediction);

    // Next serve() starts a fresh remedy table (the cache is kept).
    void restart_remedies() { remedies_.restart(); }

    // Cached page other than `skip` with the largest remedy; kNoPage if none.
    Page argmax_remedy(Page skip) const;

    const CacheState& cache() const { return cache_; }
    const RemedyTable& remedies() const { return remedies_; }

private:
    const RequestTrace* trace_;
    CacheState cache_;
    RemedyTable remedies_;
    PromotionRule rule_;
};

struct SimRoundView {
    Round t;
    Page request;
    bool miss;
    Page evicted;
    Page argmax_page;
    const RemedyTable& remedies;
};

struct SimOptions {
    PromotionRule rule = PromotionRule::kAtMost;
    // Called after every round; used for dumps and instrumentation.
    std::function<void(const SimRoundView&)> observer;
};

RunReport sim_run(const RequestTrace& trace, const NatPredictionStream& stream, const CacheState& initial,
                  const SimOptions& options = {});

// Same, reading one prediction per round of predictor j through the pool.
RunReport sim_run(const RequestTrace& trace, PredictorPool& pool, int predictor, const CacheState& initial,
                  const SimOptions& options = {});

} // namespace paging
