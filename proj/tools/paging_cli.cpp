// paging: command-line front end for the simulator.
//
// Exit status: 0 on success, 2 on invalid input, 1 on internal errors.

#include "paging/combiners.hpp"
#include "paging/experiment.hpp"
#include "paging/generators.hpp"
#include "paging/io.hpp"
#include "paging/metrics.hpp"
#include "paging/offline.hpp"
#include "paging/sim.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace paging;

namespace {

struct Globals {
    std::uint64_t seed = 1;
    std::string out;
    std::optional<Page> n;
    std::optional<int> k;
    Round tau = 0;
    std::optional<double> epsilon;
    std::string dump_rounds;
};

void emit(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_file_atomic(path, text);
}

std::vector<Page> parse_page_list(const std::string& text)
{
    std::vector<Page> pages;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size())
                throw std::invalid_argument(item);
            pages.push_back(v);
        } catch (const std::logic_error&) {
            throw ValidationError("bad page list '" + text + "'");
        }
    }
    return pages;
}

CacheState initial_cache(Page n, const std::optional<int>& k, const std::string& listed)
{
    if (!listed.empty()) {
        const auto pages = parse_page_list(listed);
        if (k && static_cast<int>(pages.size()) != *k)
            throw ValidationError("--initial lists " + std::to_string(pages.size()) + " pages but --k is " +
                                  std::to_string(*k));
        return CacheState(n, pages);
    }
    if (!k)
        throw ValidationError("--k is required");
    if (*k < 1 || *k >= n)
        throw ValidationError("--k must lie in [1, n-1]");
    return CacheState::first_pages(n, *k);
}

std::string metrics_row(const std::string& label, const MetricsReport& m)
{
    return label + "," + std::to_string(m.error_rounds) + "," + std::to_string(m.inverted_pairs) + "," +
           std::to_string(m.inverted_rounds) + "," + std::to_string(m.eta_refined) + "," + std::to_string(m.l1);
}

struct RoundDump {
    std::vector<Page> argmax;
    bool have_argmax = false;
};

std::string format_rounds(const RequestTrace& trace, const RunReport& report, const RoundDump& dump)
{
    std::string out = "t,request,miss,evicted,argmax_remedy\n";
    for (Round t = 1; t <= trace.horizon(); ++t) {
        const auto i = static_cast<std::size_t>(t - 1);
        out += std::to_string(t) + "," + std::to_string(trace.at(t)) + "," + std::to_string(report.per_round_miss[i]) + ",";
        if (report.evictions[i] != kNoPage)
            out += std::to_string(report.evictions[i]);
        out += ",";
        if (dump.have_argmax && dump.argmax[i] != kNoPage)
            out += std::to_string(dump.argmax[i]);
        out += "\n";
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Online paging with next-arrival-time predictors"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "random seed")->capture_default_str();
    app.add_option("--out", g.out, "output file (stdout when omitted); a directory for gen-predictors");
    app.add_option("--n", g.n, "page universe size");
    app.add_option("--k", g.k, "cache size");
    app.add_option("--tau", g.tau, "S-C&S epoch length (0 = floor(T^(1/3)))");
    app.add_option("--epsilon", g.epsilon, "multiplexer epsilon in (0, 1/4)");
    app.add_option("--dump-rounds", g.dump_rounds, "per-round CSV t,request,miss,evicted,argmax_remedy");

    // gen-trace
    auto* gen_trace_cmd = app.add_subcommand("gen-trace", "generate a synthetic request trace");
    std::string trace_kind = "uniform";
    Round horizon = 0;
    Page cycle = 0;
    double zipf_exponent = 1.0;
    Round phase_length = 0;
    gen_trace_cmd->add_option("--kind", trace_kind, "uniform | cyclic | zipf | phased-adversarial")->capture_default_str();
    gen_trace_cmd->add_option("--T", horizon, "number of requests")->required();
    gen_trace_cmd->add_option("--cycle", cycle, "cyclic period, or working-set size for phased-adversarial");
    gen_trace_cmd->add_option("--zipf-exponent", zipf_exponent)->capture_default_str();
    gen_trace_cmd->add_option("--phase-length", phase_length, "rounds per phase for phased-adversarial");

    // gen-predictors
    auto* gen_pred_cmd = app.add_subcommand("gen-predictors", "generate a NAT predictor bundle for a trace");
    std::string trace_path;
    int bundle_size = 1;
    int good = 1;
    std::string model = "uniform";
    double rate = 1.0;
    Round shift = 0;
    std::string good_model = "uniform";
    double good_rate = 0.0;
    Round good_shift = 0;
    std::string mode = "full-information";
    gen_pred_cmd->add_option("--trace", trace_path, "trace CSV")->required();
    gen_pred_cmd->add_option("--M", bundle_size, "number of predictors")->capture_default_str();
    gen_pred_cmd->add_option("--good", good, "index of the accurate predictor (0 for none)")->capture_default_str();
    gen_pred_cmd->add_option("--model", model, "offset | uniform | adversarial-swap")->capture_default_str();
    gen_pred_cmd->add_option("--rate", rate, "corruption rate of the other predictors")->capture_default_str();
    gen_pred_cmd->add_option("--shift", shift, "offset shift")->capture_default_str();
    gen_pred_cmd->add_option("--good-model", good_model)->capture_default_str();
    gen_pred_cmd->add_option("--good-rate", good_rate)->capture_default_str();
    gen_pred_cmd->add_option("--good-shift", good_shift)->capture_default_str();
    gen_pred_cmd->add_option("--mode", mode, "full-information | bandit")->capture_default_str();

    // metrics
    auto* metrics_cmd = app.add_subcommand("metrics", "prediction-error metrics of NAT or explicit predictors");
    std::string predictions_path;
    std::string bundle_path;
    std::string explicit_path;
    metrics_cmd->add_option("--trace", trace_path, "trace CSV")->required();
    auto* metrics_pred = metrics_cmd->add_option("--predictions", predictions_path, "NAT predictor CSV");
    auto* metrics_bundle = metrics_cmd->add_option("--bundle", bundle_path, "predictor bundle directory");
    auto* metrics_explicit = metrics_cmd->add_option("--explicit", explicit_path, "explicit predictor CSV");
    metrics_pred->excludes(metrics_bundle)->excludes(metrics_explicit);
    metrics_bundle->excludes(metrics_explicit);

    // run
    auto* run_cmd = app.add_subcommand("run", "run one algorithm on a trace");
    std::string algo_name;
    int predictor = 1;
    std::string learner = "inf";
    std::string promotion = "at-most";
    std::string initial_list;
    std::string dump_epochs;
    run_cmd->add_option("--algo", algo_name, "fitf | dp-opt | lru | sim | scs | multiplexer")->required();
    run_cmd->add_option("--trace", trace_path, "trace CSV")->required();
    auto* run_bundle = run_cmd->add_option("--bundle", bundle_path, "predictor bundle directory");
    auto* run_pred = run_cmd->add_option("--predictions", predictions_path, "single NAT predictor CSV");
    run_bundle->excludes(run_pred);
    run_cmd->add_option("--predictor", predictor, "predictor used by sim (1-based)")->capture_default_str();
    run_cmd->add_option("--learner", learner, "inf | exp3")->capture_default_str();
    run_cmd->add_option("--promotion", promotion, "at-most | exact")->capture_default_str();
    run_cmd->add_option("--initial", initial_list, "initial cache pages, comma separated (default 1..k)");
    run_cmd->add_option("--dump-epochs", dump_epochs, "S-C&S epoch CSV epoch,predictor,f,F,evictions");

    // lower-bound
    auto* lb_cmd = app.add_subcommand("lower-bound", "FitF versus LRU on uniform traces over k+1 pages");
    std::string seed_list = "1";
    lb_cmd->add_option("--T", horizon, "number of requests")->required();
    lb_cmd->add_option("--seeds", seed_list, "seed list, e.g. 1..10")->capture_default_str();

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "run a configured sweep over seeds");
    std::string config_path;
    exp_cmd->add_option("--config", config_path, "key = value config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen_trace_cmd) {
            if (!g.n)
                throw ValidationError("--n is required");
            TraceSpec spec;
            spec.kind = parse_trace_kind(trace_kind);
            spec.n = *g.n;
            spec.horizon = horizon;
            spec.seed = g.seed;
            spec.cycle = cycle;
            spec.zipf_exponent = zipf_exponent;
            spec.phase_length = phase_length;
            emit(g.out, format_trace(gen_trace(spec)));
        } else if (*gen_pred_cmd) {
            if (g.out.empty())
                throw ValidationError("gen-predictors needs --out <directory>");
            const RequestTrace trace = load_trace(trace_path, g.n);
            const NatTable nat(trace);
            PredictorBundleSpec spec;
            spec.count = bundle_size;
            spec.good = good;
            spec.seed = g.seed;
            spec.injection = {parse_injection_model(model), rate, 0, shift};
            spec.good_injection = {parse_injection_model(good_model), good_rate, 0, good_shift};
            write_bundle(g.out, PredictorBundle{parse_access_mode(mode), gen_predictors(spec, trace, nat)});
        } else if (*metrics_cmd) {
            const RequestTrace trace = load_trace(trace_path, g.n);
            const NatTable nat(trace);
            std::string csv = "predictor,error_rounds,inverted_pairs,inverted_rounds,eta_refined,l1";
            if (!explicit_path.empty()) {
                const ExplicitPredictionStream pi(parse_explicit_stream(read_file(explicit_path), explicit_path),
                                                  trace.universe());
                csv += ",explicit_error\n";
                csv += metrics_row("1", compute_metrics(trace, nat, derive_consistent_nat(pi, trace))) + "," +
                       std::to_string(compute_explicit_error(pi, trace)) + "\n";
            } else if (!predictions_path.empty()) {
                csv += "\n" + metrics_row("1", compute_metrics(trace, nat,
                                                               parse_nat_stream(read_file(predictions_path),
                                                                                trace.augmented_length(), predictions_path))) +
                       "\n";
            } else if (!bundle_path.empty()) {
                csv += "\n";
                const auto bundle = read_bundle(bundle_path, trace.augmented_length());
                for (std::size_t j = 0; j < bundle.streams.size(); ++j)
                    csv += metrics_row(std::to_string(j + 1), compute_metrics(trace, nat, bundle.streams[j])) + "\n";
            } else {
                throw ValidationError("metrics needs --predictions, --bundle or --explicit");
            }
            emit(g.out, csv);
        } else if (*run_cmd) {
            const RequestTrace trace = load_trace(trace_path, g.n);
            const NatTable nat(trace);
            const CacheState initial = initial_cache(trace.universe(), g.k, initial_list);

            AlgorithmSettings settings;
            settings.algorithm = parse_algorithm(algo_name);
            settings.predictor = predictor;
            settings.tau = g.tau;
            settings.epsilon = g.epsilon;
            settings.seed = g.seed;
            settings.learner = parse_learner_kind(learner);
            if (promotion == "exact")
                settings.rule = PromotionRule::kExact;
            else if (promotion != "at-most")
                throw ValidationError("--promotion must be 'at-most' or 'exact'");
            if (g.tau < 0)
                throw ValidationError("--tau must be non-negative");

            std::vector<NatPredictionStream> streams;
            if (!bundle_path.empty())
                streams = read_bundle(bundle_path, trace.augmented_length()).streams;
            else if (!predictions_path.empty())
                streams.push_back(parse_nat_stream(read_file(predictions_path), trace.augmented_length(), predictions_path));
            const bool needs_predictors = settings.algorithm == Algorithm::kSim || settings.algorithm == Algorithm::kScs ||
                                          settings.algorithm == Algorithm::kMultiplexer;
            if (needs_predictors && streams.empty())
                throw ValidationError("--algo " + algo_name + " needs --bundle or --predictions");
            if (settings.algorithm == Algorithm::kSim && (predictor < 1 || predictor > static_cast<int>(streams.size())))
                throw ValidationError("--predictor must lie in [1, " + std::to_string(streams.size()) + "]");
            if (settings.algorithm == Algorithm::kDpOpt && !g.dump_rounds.empty())
                throw ValidationError("dp-opt reports only the optimal cost; --dump-rounds is not available");

            AlgorithmOutcome outcome;
            RoundDump dump;
            if (settings.algorithm == Algorithm::kSim && !g.dump_rounds.empty()) {
                dump.have_argmax = true;
                dump.argmax.assign(static_cast<std::size_t>(trace.horizon()), kNoPage);
                SimOptions opts{settings.rule, [&dump](const SimRoundView& v) {
                                    dump.argmax[static_cast<std::size_t>(v.t - 1)] = v.argmax_page;
                                }};
                PredictorPool pool(streams, AccessMode::kBandit);
                outcome.report = sim_run(trace, pool, predictor, initial, opts);
            } else {
                outcome = run_algorithm(trace, nat, streams, initial, settings);
            }

            const std::int64_t opt = fitf_run(trace, nat, initial).cost;
            std::string csv = "algorithm,T,k,M,cost,misses,sync_fetches,opt,regret\n";
            csv += to_string(settings.algorithm) + "," + std::to_string(trace.horizon()) + "," +
                   std::to_string(initial.capacity()) + "," + std::to_string(streams.size()) + "," +
                   std::to_string(outcome.report.cost) + "," +
                   std::to_string(outcome.report.cost - outcome.report.sync_fetches) + "," +
                   std::to_string(outcome.report.sync_fetches) + "," + std::to_string(opt) + "," +
                   std::to_string(outcome.report.cost - opt) + "\n";
            emit(g.out, csv);
            if (!g.dump_rounds.empty())
                write_file_atomic(g.dump_rounds, format_rounds(trace, outcome.report, dump));
            if (!dump_epochs.empty()) {
                if (settings.algorithm != Algorithm::kScs)
                    throw ValidationError("--dump-epochs applies to --algo scs only");
                write_file_atomic(dump_epochs, format_epochs_csv(outcome.epochs));
            }
        } else if (*lb_cmd) {
            if (!g.k)
                throw ValidationError("--k is required");
            const auto s = lower_bound_experiment(*g.k, horizon, parse_seed_list(seed_list));
            std::string csv = "seed,complete_phases,mean_phase_length,max_fitf_misses_per_phase,fitf_cost,lru_cost\n";
            for (const auto& r : s.seeds)
                csv += std::to_string(r.seed) + "," + std::to_string(r.complete_phases) + "," +
                       format_real(r.mean_phase_length) + "," + std::to_string(r.max_fitf_misses_per_phase) + "," +
                       std::to_string(r.fitf_cost) + "," + std::to_string(r.lru_cost) + "\n";
            std::int64_t phases = 0;
            for (const auto& r : s.seeds)
                phases += r.complete_phases;
            csv += "all," + std::to_string(phases) + "," + format_real(s.mean_phase_length) + "," +
                   std::to_string(s.max_fitf_misses_per_phase) + "," + format_real(s.mean_fitf_cost) + "," +
                   format_real(s.mean_lru_cost) + "\n";
            emit(g.out, csv);
            std::cerr << "n*H_n = " << format_real(s.coupon_expectation) << "\n";
        } else if (*exp_cmd) {
            ExperimentConfig config = load_experiment_config(config_path);
            if (!g.out.empty())
                config.output = g.out;
            const auto rows = run_experiment(config);
            if (config.output.empty())
                std::cout << format_results_csv(rows);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InstanceTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
