#include "paging/experiment.hpp"

#include "paging/metrics.hpp"
#include "paging/offline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>

namespace paging {

std::string to_string(Algorithm algo)
{
    switch (algo) {
    case Algorithm::kFitf:
        return "fitf";
    case Algorithm::kDpOpt:
        return "dp-opt";
    case Algorithm::kLru:
        return "lru";
    case Algorithm::kSim:
        return "sim";
    case Algorithm::kScs:
        return "scs";
    case Algorithm::kMultiplexer:
        return "multiplexer";
    }
    return "unknown";
}

Algorithm parse_algorithm(const std::string& name)
{
    for (Algorithm a : {Algorithm::kFitf, Algorithm::kDpOpt, Algorithm::kLru, Algorithm::kSim, Algorithm::kScs,
                        Algorithm::kMultiplexer})
        if (to_string(a) == name)
            return a;
    throw ValidationError("unknown algorithm '" + name + "'");
}

AlgorithmOutcome run_algorithm(const RequestTrace& trace, const NatTable& nat,
                               const std::vector<NatPredictionStream>& streams, const CacheState& initial,
                               const AlgorithmSettings& settings)
{
    AlgorithmOutcome out;
    switch (settings.algorithm) {
    case Algorithm::kFitf:
        out.report = fitf_run(trace, nat, initial);
        break;
    case Algorithm::kDpOpt: {
        // The DP has no schedule; report the optimum as the cost only.
        const OptReport opt = dp_opt(trace, initial);
        out.report.cost = opt.cost;
        out.report.final_cache = initial;
        break;
    }
    case Algorithm::kLru:
        out.report = lru_run(trace, initial);
        break;
    case Algorithm::kSim: {
        PredictorPool pool(streams, AccessMode::kBandit);
        out.report = sim_run(trace, pool, settings.predictor, initial, SimOptions{settings.rule, {}});
        break;
    }
    case Algorithm::kScs: {
        PredictorPool pool(streams, AccessMode::kBandit);
        ScsResult r = scs_run(trace, pool, initial, ScsOptions{settings.tau, settings.seed, settings.learner, settings.rule});
        out.report = std::move(r.report);
        out.epochs = std::move(r.epochs);
        break;
    }
    case Algorithm::kMultiplexer: {
        PredictorPool pool(streams, AccessMode::kFullInformation);
        out.report =
            multiplexer_run(trace, pool, initial, MultiplexerOptions{settings.epsilon, settings.seed, settings.rule});
        break;
    }
    }
    return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text)
{
    auto number = [&text](std::string_view s) {
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
            throw ValidationError("bad seed list '" + text + "'");
        return v;
    };
    std::vector<std::uint64_t> seeds;
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        const auto dots = item.find("..");
        if (dots == std::string_view::npos) {
            seeds.push_back(number(item));
            continue;
        }
        const std::uint64_t lo = number(item.substr(0, dots));
        const std::uint64_t hi = number(item.substr(dots + 2));
        if (hi < lo)
            throw ValidationError("bad seed range '" + std::string(item) + "'");
        for (std::uint64_t s = lo; s <= hi; ++s)
            seeds.push_back(s);
    }
    if (seeds.empty())
        throw ValidationError("seed list is empty");
    return seeds;
}

namespace {

class ConfigReader {
public:
    ConfigReader(const KeyValues& kv, std::string origin)
        : kv_(kv)
        , origin_(std::move(origin))
    {
    }

    std::optional<std::string> text(const std::string& key)
    {
        const auto it = kv_.find(key);
        if (it == kv_.end())
            return std::nullopt;
        used_.push_back(key);
        return it->second;
    }

    template <class Int>
    std::optional<Int> integer(const std::string& key)
    {
        const auto s = text(key);
        if (!s)
            return std::nullopt;
        long long v = 0;
        const auto [ptr, ec] = std::from_chars(s->data(), s->data() + s->size(), v);
        if (ec != std::errc() || ptr != s->data() + s->size())
            throw ValidationError(origin_ + ": '" + key + "' must be an integer, got '" + *s + "'");
        return static_cast<Int>(v);
    }

    std::optional<double> real(const std::string& key)
    {
        const auto s = text(key);
        if (!s)
            return std::nullopt;
        try {
            std::size_t used = 0;
            const double v = std::stod(*s, &used);
            if (used != s->size())
                throw std::invalid_argument(*s);
            return v;
        } catch (const std::exception&) {
            throw ValidationError(origin_ + ": '" + key + "' must be a number, got '" + *s + "'");
        }
    }

    void reject_unknown() const
    {
        for (const auto& [key, value] : kv_)
            if (std::find(used_.begin(), used_.end(), key) == used_.end())
                throw ValidationError(origin_ + ": unknown key '" + key + "'");
    }

private:
    const KeyValues& kv_;
    std::string origin_;
    std::vector<std::string> used_;
};

} // namespace

ExperimentConfig parse_experiment_config(const KeyValues& kv, const std::string& origin)
{
    ConfigReader r(kv, origin);
    ExperimentConfig c;
    if (auto v = r.text("trace.kind"))
        c.trace.kind = parse_trace_kind(*v);
    c.trace.n = r.integer<Page>("trace.n").value_or(c.trace.n);
    c.trace.horizon = r.integer<Round>("trace.T").value_or(0);
    c.trace.cycle = r.integer<Page>("trace.cycle").value_or(0);
    c.trace.zipf_exponent = r.real("trace.zipf_exponent").value_or(1.0);
    c.trace.phase_length = r.integer<Round>("trace.phase_length").value_or(0);
    c.k = r.integer<int>("k").value_or(1);

    c.predictors.count = r.integer<int>("predictors.M").value_or(1);
    c.predictors.good = r.integer<int>("predictors.good").value_or(1);
    if (auto v = r.text("predictors.model"))
        c.predictors.injection.model = parse_injection_model(*v);
    c.predictors.injection.rate = r.real("predictors.rate").value_or(1.0);
    c.predictors.injection.shift = r.integer<Round>("predictors.shift").value_or(0);
    if (auto v = r.text("predictors.good_model"))
        c.predictors.good_injection.model = parse_injection_model(*v);
    c.predictors.good_injection.rate = r.real("predictors.good_rate").value_or(0.0);
    c.predictors.good_injection.shift = r.integer<Round>("predictors.good_shift").value_or(0);

    c.algorithm.algorithm = parse_algorithm(r.text("algorithm").value_or("fitf"));
    c.algorithm.predictor = r.integer<int>("predictor").value_or(std::max(c.predictors.good, 1));
    c.algorithm.tau = r.integer<Round>("tau").value_or(0);
    c.algorithm.epsilon = r.real("epsilon");
    if (auto v = r.text("learner"))
        c.algorithm.learner = parse_learner_kind(*v);
    if (auto v = r.text("promotion")) {
        if (*v == "at-most")
            c.algorithm.rule = PromotionRule::kAtMost;
        else if (*v == "exact")
            c.algorithm.rule = PromotionRule::kExact;
        else
            throw ValidationError(origin + ": promotion must be 'at-most' or 'exact'");
    }
    c.seeds = parse_seed_list(r.text("seeds").value_or("1"));
    c.output = r.text("output").value_or("");
    if (auto v = r.text("timings"))
        c.timings = *v == "true" || *v == "1" || *v == "yes";
    r.reject_unknown();

    if (c.trace.n < 2)
        throw ValidationError(origin + ": trace.n must be at least 2");
    if (c.k < 1 || c.k >= c.trace.n)
        throw ValidationError(origin + ": k must lie in [1, n-1]");
    if (c.predictors.count < 1)
        throw ValidationError(origin + ": predictors.M must be at least 1");
    if (c.algorithm.predictor < 1 || c.algorithm.predictor > c.predictors.count)
        throw ValidationError(origin + ": predictor must lie in [1, M]");
    return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path)
{
    return parse_experiment_config(parse_key_values(read_file(path), path.string()), path.string());
}

ResultRow run_seed(const ExperimentConfig& config, std::uint64_t seed)
{
    const auto started = std::chrono::steady_clock::now();
    TraceSpec spec = config.trace;
    spec.seed = seed;
    const RequestTrace trace = gen_trace(spec);
    const NatTable nat(trace);
    PredictorBundleSpec bundle = config.predictors;
    bundle.seed = seed;
    const auto streams = gen_predictors(bundle, trace, nat);
    const CacheState initial = CacheState::first_pages(trace.universe(), config.k);

    AlgorithmSettings settings = config.algorithm;
    settings.seed = seed;
    const AlgorithmOutcome outcome = run_algorithm(trace, nat, streams, initial, settings);
    const RunReport opt = fitf_run(trace, nat, initial);

    ResultRow row;
    row.seed = seed;
    row.algorithm = to_string(settings.algorithm);
    row.horizon = trace.horizon();
    row.k = config.k;
    row.predictors = static_cast<int>(streams.size());
    row.cost = outcome.report.cost;
    row.opt = opt.cost;
    row.regret = row.cost - row.opt;
    row.eta_min = -1;
    for (const auto& s : streams) {
        const std::int64_t eta = compute_metrics(trace, nat, s).eta_refined;
        row.eta_min = row.eta_min < 0 ? eta : std::min(row.eta_min, eta);
    }
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return row;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config)
{
    std::vector<ResultRow> rows;
    rows.reserve(config.seeds.size());
    for (std::uint64_t seed : config.seeds)
        rows.push_back(run_seed(config, seed));
    if (!config.output.empty()) {
        write_file_atomic(config.output, format_results_csv(rows));
        if (config.timings) {
            std::filesystem::path timings = config.output;
            timings += ".timings.csv";
            write_file_atomic(timings, format_timings_csv(rows));
        }
    }
    return rows;
}

std::string format_results_csv(const std::vector<ResultRow>& rows)
{
    std::string out = "seed,algorithm,T,k,M,cost,opt,regret,eta_min\n";
    for (const ResultRow& r : rows) {
        out += std::to_string(r.seed) + "," + r.algorithm + "," + std::to_string(r.horizon) + "," +
               std::to_string(r.k) + "," + std::to_string(r.predictors) + "," + std::to_string(r.cost) + "," +
               std::to_string(r.opt) + "," + std::to_string(r.regret) + "," + std::to_string(r.eta_min) + "\n";
    }
    return out;
}

std::string format_timings_csv(const std::vector<ResultRow>& rows)
{
    std::string out = "seed,wall_seconds\n";
    for (const ResultRow& r : rows)
        out += std::to_string(r.seed) + "," + format_real(r.wall_seconds) + "\n";
    return out;
}

std::string format_epochs_csv(const std::vector<EpochCostRecord>& epochs)
{
    std::string out = "epoch,predictor,f,F,evictions\n";
    for (const auto& e : epochs)
        out += std::to_string(e.epoch) + "," + std::to_string(e.predictor) + "," + std::to_string(e.f) + "," +
               format_real(e.F) + "," + std::to_string(e.evictions) + "\n";
    return out;
}

} // namespace paging
