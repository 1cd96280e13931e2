#pragma once

#include "placy/discovery.hpp"
#include "placy/metrics.hpp"
#include "placy/synth.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace placy {

enum class Method { placy, granger };

const char* method_name(Method m) noexcept;
Method method_from_name(const std::string& name);

/// Experiment grid: every combination of scenario kind, sigma_b, sigma_ga and
/// n_vars forms one cell; every cell runs every seed with every method.
struct BenchmarkSpec {
    std::vector<ScenarioKind> scenarios{ScenarioKind::OU_MULT};
    std::vector<double> sigma_b{0.0, 0.1, 0.5, 1.0};
    std::vector<double> sigma_ga{0.5, 1.0};
    std::vector<std::size_t> n_vars{5, 10};
    double sigma_gm = 1.0; // applied to *_MULT kinds only
    std::size_t length = 5000;
    double causal_strength = 0.5;
    std::size_t lag_tau = 5;
    double edge_prob = 0.3;
    std::vector<std::uint64_t> seeds;
    std::vector<Method> methods{Method::placy, Method::granger};
    DiscoveryConfig discovery{};
};

struct BenchRow {
    ScenarioKind kind;
    std::size_t n_vars;
    std::size_t length;
    double sigma_b, sigma_ga, sigma_gm;
    double causal_strength;
    std::size_t lag_tau;
    double edge_prob;
    std::uint64_t seed;
    Method method;
    bool ok = false;
    std::string error; // empty when ok
    EvalReport report;
};

struct BenchSummaryRow {
    ScenarioKind kind;
    std::size_t n_vars;
    double sigma_b, sigma_ga;
    Method method;
    std::size_t n_ok = 0;
    std::size_t n_failed = 0;
    double f1_mean = 0.0, f1_std = 0.0;
    double tnr_mean = 0.0, tnr_std = 0.0;
};

struct BenchResult {
    BenchmarkSpec spec;
    std::vector<BenchRow> rows; // sorted by (cell, seed, method)
};

/// Runs the full grid. Cells run in a work pool; a failing run is recorded in
/// its row and does not stop the sweep. Output rows depend only on the spec,
/// never on the thread count.
BenchResult run_bench(const BenchmarkSpec& spec, unsigned n_threads = 1);

std::vector<BenchSummaryRow> summarize(const BenchResult& result);

void write_bench_raw_csv(const std::filesystem::path& path, const BenchResult& result);
void write_bench_summary_csv(const std::filesystem::path& path, const BenchResult& result);
void write_bench_summary_json(const std::filesystem::path& path, const BenchResult& result);

BenchmarkSpec load_bench_spec_json(const std::filesystem::path& path);
void write_bench_spec_json(const std::filesystem::path& path, const BenchmarkSpec& spec);

} // namespace placy
