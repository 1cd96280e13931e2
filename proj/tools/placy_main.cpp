// placy: power-law spectral causal discovery for multivariate time series.
//
// Subcommands: discover, baseline, gen, bench, select-window.
// Exit codes: 0 success, 1 usage error, 2 file/io error, 3 parse error,
// 4 computation error (degenerate designs, short series, bad parameters),
// 5 unexpected internal error.

#include "placy/placy.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace placy;

namespace {

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case errc::io_error: return 2;
        case errc::parse_error: return 3;
        default: return 4;
    }
}

unsigned resolve_cli_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PLACY_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0) return static_cast<unsigned>(parsed);
    }
    return resolve_threads(0);
}

std::vector<std::uint64_t> parse_seed_list(const std::string& seeds, std::uint64_t base) {
    std::vector<std::uint64_t> out;
    if (seeds.find(',') != std::string::npos) {
        std::size_t begin = 0;
        while (begin <= seeds.size()) {
            const std::size_t end = seeds.find(',', begin);
            const std::string token =
                seeds.substr(begin, end == std::string::npos ? std::string::npos : end - begin);
            if (!token.empty()) out.push_back(std::strtoull(token.c_str(), nullptr, 10));
            if (end == std::string::npos) break;
            begin = end + 1;
        }
    } else {
        const std::uint64_t count = std::strtoull(seeds.c_str(), nullptr, 10);
        if (count == 0) throw Error(errc::invalid_input, "--seeds must name at least one seed");
        for (std::uint64_t s = 0; s < count; ++s) out.push_back(base + s);
    }
    if (out.empty()) throw Error(errc::invalid_input, "--seeds must name at least one seed");
    return out;
}

struct SampleArgs {
    bool enabled = false;
    std::size_t length = 500; // block length once sample mode is active
    std::size_t index = 0;
};

TimeSeriesSet load_input(const std::string& input, bool interpolate, const SampleArgs& sample,
                         std::map<std::string, std::string>& metadata) {
    if (!fs::exists(input))
        throw Error(errc::io_error, "input file does not exist: " + input);
    CsvLoadResult loaded = load_csv(input, interpolate);
    metadata["input"] = input;
    std::size_t total_missing = 0;
    for (std::size_t m : loaded.missing_counts) total_missing += m;
    metadata["missing_cells"] = std::to_string(total_missing);
    if (!sample.enabled) return std::move(loaded.data);
    if (sample.length == 0) throw Error(errc::invalid_input, "--sample-length must be positive");

    // Disjoint consecutive blocks of --sample-length rows.
    const std::size_t start = sample.index * sample.length;
    if (start + sample.length > loaded.data.length())
        throw Error(errc::invalid_input,
                    "sample block " + std::to_string(sample.index) + " of length " +
                        std::to_string(sample.length) + " exceeds the series (length " +
                        std::to_string(loaded.data.length()) + ")");
    TimeSeriesSet block;
    block.names = loaded.data.names;
    block.values = loaded.data.values.middleRows(static_cast<Eigen::Index>(start),
                                                 static_cast<Eigen::Index>(sample.length));
    metadata["sample_length"] = std::to_string(sample.length);
    metadata["sample_index"] = std::to_string(sample.index);
    metadata["sample_start"] = std::to_string(start);
    return block;
}

fs::path derive_pvalues_path(const std::string& out) {
    fs::path p(out);
    p.replace_extension();
    return p.string() + "_pvalues.csv";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"PLaCy: causal discovery on time-evolving power-law spectral parameters"};
    app.require_subcommand(1);

    // ---- discover ----
    auto* discover_cmd = app.add_subcommand(
        "discover", "Run feature-domain causal discovery on a CSV dataset");
    struct {
        std::string input, out, pvalues_out;
        std::size_t window = 50, stride = 1;
        int max_lag = 10;
        double alpha = 0.05;
        bool auto_window = false;
        std::vector<std::size_t> candidates{50, 100, 150, 200};
        bool no_interpolate = false;
        SampleArgs sample;
        unsigned threads = 0;
    } dis;
    discover_cmd->add_option("--input", dis.input, "input CSV file")->required();
    discover_cmd->add_option("--out", dis.out, "output graph JSON")->required();
    discover_cmd->add_option("--pvalues-out", dis.pvalues_out,
                             "output p-value CSV (default: <out>_pvalues.csv)");
    discover_cmd->add_option("--window", dis.window, "window length l")->capture_default_str();
    discover_cmd->add_option("--stride", dis.stride, "window stride s")->capture_default_str();
    discover_cmd->add_option("--max-lag", dis.max_lag, "VAR lag order T")->capture_default_str();
    discover_cmd->add_option("--alpha", dis.alpha, "significance level")->capture_default_str();
    discover_cmd->add_flag("--auto-window", dis.auto_window,
                           "select the window length from the data first");
    discover_cmd->add_option("--window-candidates", dis.candidates,
                             "candidate lengths for --auto-window")
        ->delimiter(',');
    discover_cmd->add_flag("--no-interpolate", dis.no_interpolate,
                           "keep missing cells as NaN instead of interpolating");
    auto* dis_sample_len = discover_cmd->add_option(
        "--sample-length", dis.sample.length,
        "sample mode: analyze one disjoint block of this many rows");
    auto* dis_sample_idx =
        discover_cmd->add_option("--sample-index", dis.sample.index, "which block to analyze");
    discover_cmd->add_option("--threads", dis.threads,
                             "worker threads (0 = PLACY_THREADS or all cores)");

    // ---- baseline ----
    auto* baseline_cmd = app.add_subcommand(
        "baseline", "Run the raw-series multivariate Granger baseline on a CSV dataset");
    struct {
        std::string input, out, pvalues_out;
        int max_lag = 10;
        double alpha = 0.05;
        bool no_interpolate = false;
        SampleArgs sample;
        unsigned threads = 0;
    } base;
    baseline_cmd->add_option("--input", base.input, "input CSV file")->required();
    baseline_cmd->add_option("--out", base.out, "output graph JSON")->required();
    baseline_cmd->add_option("--pvalues-out", base.pvalues_out,
                             "output p-value CSV (default: <out>_pvalues.csv)");
    baseline_cmd->add_option("--max-lag", base.max_lag, "VAR lag order T")->capture_default_str();
    baseline_cmd->add_option("--alpha", base.alpha, "significance level")->capture_default_str();
    baseline_cmd->add_flag("--no-interpolate", base.no_interpolate,
                           "keep missing cells as NaN instead of interpolating");
    auto* base_sample_len = baseline_cmd->add_option(
        "--sample-length", base.sample.length,
        "sample mode: analyze one disjoint block of this many rows");
    auto* base_sample_idx =
        baseline_cmd->add_option("--sample-index", base.sample.index, "which block to analyze");
    baseline_cmd->add_option("--threads", base.threads,
                             "worker threads (0 = PLACY_THREADS or all cores)");

    // ---- gen ----
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic OU benchmark dataset");
    struct {
        std::string scenario = "ou";
        std::size_t n_vars = 5;
        std::size_t length = 5000;
        double causal_strength = 0.5;
        std::size_t lag_tau = 5;
        double edge_prob = 0.3;
        double sigma_b = 0.5, sigma_ga = 1.0, sigma_gm = 1.0;
        std::uint64_t seed = 0;
        std::string out, truth_out;
    } gen;
    gen_cmd->add_option("--scenario", gen.scenario, "ou, ou-mult, ouhat or ouhat-mult")
        ->capture_default_str();
    gen_cmd->add_option("--n-vars", gen.n_vars, "number of variables N")->capture_default_str();
    gen_cmd->add_option("--length", gen.length, "series length L")->capture_default_str();
    gen_cmd->add_option("--causal-strength", gen.causal_strength, "injection strength C")
        ->capture_default_str();
    gen_cmd->add_option("--lag-tau", gen.lag_tau, "injection lag tau")->capture_default_str();
    gen_cmd->add_option("--edge-prob", gen.edge_prob, "DAG edge probability")
        ->capture_default_str();
    gen_cmd->add_option("--sigma-b", gen.sigma_b, "Brownian volatility")->capture_default_str();
    gen_cmd->add_option("--sigma-ga", gen.sigma_ga, "additive Gaussian volatility")
        ->capture_default_str();
    gen_cmd->add_option("--sigma-gm", gen.sigma_gm,
                        "multiplicative Gaussian volatility (mult scenarios)")
        ->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "master seed")->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "output dataset CSV")->required();
    gen_cmd->add_option("--truth-out", gen.truth_out,
                        "output ground-truth JSON (default: <out>_truth.json)");

    // ---- bench ----
    auto* bench_cmd = app.add_subcommand(
        "bench", "Run the multi-seed synthetic benchmark grid and score both methods");
    struct {
        std::string spec_file;
        std::vector<std::string> scenarios{"ou-mult"};
        std::vector<double> sigma_b{0.0, 0.1, 0.5, 1.0};
        std::vector<double> sigma_ga{0.5, 1.0};
        std::vector<std::size_t> n_vars{5, 10};
        double sigma_gm = 1.0;
        std::size_t length = 5000;
        double causal_strength = 0.5;
        std::size_t lag_tau = 5;
        double edge_prob = 0.3;
        std::string seeds = "20";
        std::uint64_t seed = 0;
        std::vector<std::string> methods{"placy", "granger"};
        std::size_t window = 50, stride = 1;
        int max_lag = 10;
        double alpha = 0.05;
        std::string out = "bench";
        unsigned threads = 0;
    } ben;
    bench_cmd->add_option("--spec", ben.spec_file, "benchmark spec JSON (overrides grid flags)");
    bench_cmd->add_option("--scenario", ben.scenarios, "scenario kinds")->delimiter(',');
    bench_cmd->add_option("--sigma-b", ben.sigma_b, "sigma_b grid")->delimiter(',');
    bench_cmd->add_option("--sigma-ga", ben.sigma_ga, "sigma_ga grid")->delimiter(',');
    bench_cmd->add_option("--n-vars", ben.n_vars, "variable-count grid")->delimiter(',');
    bench_cmd->add_option("--sigma-gm", ben.sigma_gm, "multiplicative volatility")
        ->capture_default_str();
    bench_cmd->add_option("--length", ben.length, "series length L")->capture_default_str();
    bench_cmd->add_option("--causal-strength", ben.causal_strength, "injection strength C")
        ->capture_default_str();
    bench_cmd->add_option("--lag-tau", ben.lag_tau, "injection lag tau")->capture_default_str();
    bench_cmd->add_option("--edge-prob", ben.edge_prob, "DAG edge probability")
        ->capture_default_str();
    bench_cmd->add_option("--seeds", ben.seeds, "seed count or comma-separated seed list")
        ->capture_default_str();
    bench_cmd->add_option("--seed", ben.seed, "base seed when --seeds is a count")
        ->capture_default_str();
    bench_cmd->add_option("--methods", ben.methods, "methods to run")->delimiter(',');
    bench_cmd->add_option("--window", ben.window, "window length l")->capture_default_str();
    bench_cmd->add_option("--stride", ben.stride, "window stride s")->capture_default_str();
    bench_cmd->add_option("--max-lag", ben.max_lag, "VAR lag order T")->capture_default_str();
    bench_cmd->add_option("--alpha", ben.alpha, "significance level")->capture_default_str();
    bench_cmd->add_option("--out", ben.out, "output prefix")->capture_default_str();
    bench_cmd->add_option("--threads", ben.threads,
                          "worker threads (0 = PLACY_THREADS or all cores)");

    // ---- select-window ----
    auto* select_cmd = app.add_subcommand(
        "select-window", "Pick the shortest significant window length per variable");
    struct {
        std::string input, out;
        std::vector<std::size_t> candidates{50, 100, 150, 200};
        double alpha = 0.05;
        bool no_interpolate = false;
        unsigned threads = 0;
    } sel;
    select_cmd->add_option("--input", sel.input, "input CSV file")->required();
    select_cmd->add_option("--out", sel.out, "optional output JSON (default: stdout only)");
    select_cmd->add_option("--candidates", sel.candidates, "candidate window lengths")
        ->delimiter(',');
    select_cmd->add_option("--alpha", sel.alpha, "significance level")->capture_default_str();
    select_cmd->add_flag("--no-interpolate", sel.no_interpolate,
                         "keep missing cells as NaN instead of interpolating");
    select_cmd->add_option("--threads", sel.threads,
                           "worker threads (0 = PLACY_THREADS or all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1; // every usage problem maps to one code
    }

    dis.sample.enabled = dis_sample_len->count() > 0 || dis_sample_idx->count() > 0;
    base.sample.enabled = base_sample_len->count() > 0 || base_sample_idx->count() > 0;

    try {
        if (*discover_cmd) {
            std::map<std::string, std::string> metadata;
            const TimeSeriesSet data =
                load_input(dis.input, !dis.no_interpolate, dis.sample, metadata);
            DiscoveryConfig config;
            config.plan = WindowPlan{dis.window, dis.stride};
            config.max_lag = dis.max_lag;
            config.alpha = dis.alpha;
            config.auto_window = dis.auto_window;
            config.window_candidates = dis.candidates;
            CausalGraph graph = discover(data, config, resolve_cli_threads(dis.threads));
            graph.metadata.insert(metadata.begin(), metadata.end());
            write_graph_json(dis.out, graph);
            const fs::path pvalues =
                dis.pvalues_out.empty() ? derive_pvalues_path(dis.out) : fs::path(dis.pvalues_out);
            write_pvalues_csv(pvalues, graph);
            std::printf("wrote %s and %s\n", dis.out.c_str(), pvalues.string().c_str());
        } else if (*baseline_cmd) {
            std::map<std::string, std::string> metadata;
            const TimeSeriesSet data =
                load_input(base.input, !base.no_interpolate, base.sample, metadata);
            CausalGraph graph =
                granger_baseline(data, base.max_lag, base.alpha, resolve_cli_threads(base.threads));
            graph.metadata.insert(metadata.begin(), metadata.end());
            write_graph_json(base.out, graph);
            const fs::path pvalues = base.pvalues_out.empty() ? derive_pvalues_path(base.out)
                                                              : fs::path(base.pvalues_out);
            write_pvalues_csv(pvalues, graph);
            std::printf("wrote %s and %s\n", base.out.c_str(), pvalues.string().c_str());
        } else if (*gen_cmd) {
            ScenarioSpec spec;
            spec.kind = scenario_from_name(gen.scenario);
            spec.n_vars = gen.n_vars;
            spec.length = gen.length;
            spec.ou.sigma_b = gen.sigma_b;
            spec.ou.sigma_ga = gen.sigma_ga;
            spec.ou.sigma_gm = scenario_is_mult(spec.kind) ? gen.sigma_gm : 0.0;
            spec.edge_prob = gen.edge_prob;
            spec.causal_strength = gen.causal_strength;
            spec.lag_tau = gen.lag_tau;
            spec.seed = gen.seed;
            const Scenario scenario = make_scenario(spec);
            write_csv(gen.out, scenario.data);
            fs::path truth_path(gen.truth_out);
            if (gen.truth_out.empty()) {
                truth_path = fs::path(gen.out);
                truth_path.replace_extension();
                truth_path += "_truth.json";
            }
            write_truth_json(truth_path, scenario.truth, spec);
            std::printf("wrote %s and %s\n", gen.out.c_str(), truth_path.string().c_str());
        } else if (*bench_cmd) {
            BenchmarkSpec spec;
            if (!ben.spec_file.empty()) {
                spec = load_bench_spec_json(ben.spec_file);
            } else {
                spec.scenarios.clear();
                for (const auto& name : ben.scenarios)
                    spec.scenarios.push_back(scenario_from_name(name));
                spec.sigma_b = ben.sigma_b;
                spec.sigma_ga = ben.sigma_ga;
                spec.n_vars = ben.n_vars;
                spec.sigma_gm = ben.sigma_gm;
                spec.length = ben.length;
                spec.causal_strength = ben.causal_strength;
                spec.lag_tau = ben.lag_tau;
                spec.edge_prob = ben.edge_prob;
                spec.seeds = parse_seed_list(ben.seeds, ben.seed);
                spec.methods.clear();
                for (const auto& name : ben.methods)
                    spec.methods.push_back(method_from_name(name));
                spec.discovery.plan = WindowPlan{ben.window, ben.stride};
                spec.discovery.max_lag = ben.max_lag;
                spec.discovery.alpha = ben.alpha;
            }
            const BenchResult result = run_bench(spec, resolve_cli_threads(ben.threads));
            write_bench_raw_csv(ben.out + "_raw.csv", result);
            write_bench_summary_csv(ben.out + "_summary.csv", result);
            write_bench_summary_json(ben.out + "_summary.json", result);
            std::printf("wrote %s_raw.csv, %s_summary.csv and %s_summary.json\n", ben.out.c_str(),
                        ben.out.c_str(), ben.out.c_str());
        } else if (*select_cmd) {
            if (!fs::exists(sel.input))
                throw Error(errc::io_error, "input file does not exist: " + sel.input);
            const CsvLoadResult loaded = load_csv(sel.input, !sel.no_interpolate);
            const unsigned threads = resolve_cli_threads(sel.threads);
            std::size_t overall = 0;
            bool all_significant = true;
            std::string report = "{\n  \"per_variable\": [\n";
            for (std::size_t v = 0; v < loaded.data.n_vars(); ++v) {
                const Eigen::VectorXd col = loaded.data.values.col(static_cast<Eigen::Index>(v));
                const WindowSelection selection = select_window_length(
                    std::span<const double>(col.data(), static_cast<std::size_t>(col.size())),
                    sel.candidates, sel.alpha, threads);
                overall = std::max(overall, selection.length);
                all_significant = all_significant && selection.significant;
                std::printf("%s: %zu%s\n", loaded.data.names[v].c_str(), selection.length,
                            selection.significant ? "" : " (not significant)");
                report += "    {\"name\": \"" + loaded.data.names[v] +
                          "\", \"length\": " + std::to_string(selection.length) +
                          ", \"significant\": " + (selection.significant ? "true" : "false") +
                          "}";
                report += v + 1 < loaded.data.n_vars() ? ",\n" : "\n";
            }
            report += "  ],\n  \"selected\": " + std::to_string(overall) +
                      ",\n  \"all_significant\": " + (all_significant ? "true" : "false") + "\n}\n";
            std::printf("selected window length: %zu\n", overall);
            if (!sel.out.empty()) {
                std::FILE* f = std::fopen(sel.out.c_str(), "wb");
                if (!f) throw Error(errc::io_error, "cannot open " + sel.out + " for writing");
                std::fputs(report.c_str(), f);
                std::fclose(f);
            }
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "placy: %s\n", e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "placy: internal error: %s\n", e.what());
        return 5;
    }
    return 0;
}
