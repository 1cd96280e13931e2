#include "placy/bench.hpp"

#include "placy/error.hpp"
#include "placy/io.hpp"
#include "placy/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace placy {

Method method_from_name(const std::string& name) {
    if (name == "placy") return Method::placy;
    if (name == "granger") return Method::granger;
    throw Error(errc::invalid_input, "unknown method '" + name + "' (expected placy or granger)");
}

namespace {

using nlohmann::json;

struct Cell {
    ScenarioKind kind;
    double sigma_b;
    double sigma_ga;
    std::size_t n_vars;
};

std::vector<Cell> grid_cells(const BenchmarkSpec& spec) {
    std::vector<Cell> cells;
    for (ScenarioKind kind : spec.scenarios)
        for (double sb : spec.sigma_b)
            for (double sga : spec.sigma_ga)
                for (std::size_t n : spec.n_vars) cells.push_back({kind, sb, sga, n});
    return cells;
}

void mean_std(const std::vector<double>& values, double& mean, double& stddev) {
    mean = 0.0;
    stddev = 0.0;
    if (values.empty()) return;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    if (values.size() < 2) return;
    double sum_sq = 0.0;
    for (double v : values) sum_sq += (v - mean) * (v - mean);
    stddev = std::sqrt(sum_sq / static_cast<double>(values.size() - 1));
}

} // namespace

const char* method_name(Method m) noexcept {
    return m == Method::placy ? "placy" : "granger";
}

BenchResult run_bench(const BenchmarkSpec& spec, unsigned n_threads) {
    if (spec.seeds.empty()) throw Error(errc::invalid_input, "benchmark needs a nonempty seed list");
    if (spec.scenarios.empty()) throw Error(errc::invalid_input, "benchmark needs scenarios");
    if (spec.methods.empty()) throw Error(errc::invalid_input, "benchmark needs methods");
    for (double v : spec.sigma_b)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw Error(errc::invalid_input, "sigma_b values must be finite and >= 0");
    for (double v : spec.sigma_ga)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw Error(errc::invalid_input, "sigma_ga values must be finite and >= 0");

    const std::vector<Cell> cells = grid_cells(spec);
    const std::size_t n_rows = cells.size() * spec.seeds.size() * spec.methods.size();

    BenchResult result;
    result.spec = spec;
    result.rows.resize(n_rows);

    // One task per (cell, seed); the scenario is generated once and every
    // method scores it. Row order is fixed by index arithmetic, so the output
    // cannot depend on scheduling.
    const std::size_t n_tasks = cells.size() * spec.seeds.size();
    parallel_for(n_tasks, n_threads, [&](std::size_t task) {
        const std::size_t cell_index = task / spec.seeds.size();
        const std::size_t seed_index = task % spec.seeds.size();
        const Cell& cell = cells[cell_index];

        ScenarioSpec scenario_spec;
        scenario_spec.kind = cell.kind;
        scenario_spec.n_vars = cell.n_vars;
        scenario_spec.length = spec.length;
        scenario_spec.ou.sigma_b = cell.sigma_b;
        scenario_spec.ou.sigma_ga = cell.sigma_ga;
        scenario_spec.ou.sigma_gm = scenario_is_mult(cell.kind) ? spec.sigma_gm : 0.0;
        scenario_spec.edge_prob = spec.edge_prob;
        scenario_spec.causal_strength = spec.causal_strength;
        scenario_spec.lag_tau = spec.lag_tau;
        scenario_spec.seed = spec.seeds[seed_index];

        std::string scenario_error;
        Scenario scenario;
        bool have_scenario = false;
        try {
            scenario = make_scenario(scenario_spec);
            have_scenario = true;
        } catch (const std::exception& e) {
            scenario_error = e.what();
        }

        for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
            const std::size_t row_index =
                (cell_index * spec.seeds.size() + seed_index) * spec.methods.size() + mi;
            BenchRow& row = result.rows[row_index];
            row.kind = cell.kind;
            row.n_vars = cell.n_vars;
            row.length = spec.length;
            row.sigma_b = cell.sigma_b;
            row.sigma_ga = cell.sigma_ga;
            row.sigma_gm = scenario_spec.ou.sigma_gm;
            row.causal_strength = spec.causal_strength;
            row.lag_tau = spec.lag_tau;
            row.edge_prob = spec.edge_prob;
            row.seed = spec.seeds[seed_index];
            row.method = spec.methods[mi];
            if (!have_scenario) {
                row.ok = false;
                row.error = scenario_error;
                continue;
            }
            try {
                CausalGraph graph;
                if (row.method == Method::placy) {
                    graph = discover(scenario.data, spec.discovery, 1);
                } else {
                    graph = granger_baseline(scenario.data, spec.discovery.max_lag,
                                             spec.discovery.alpha, 1);
                }
                row.report = evaluate(graph, scenario.truth);
                row.ok = true;
            } catch (const std::exception& e) {
                row.ok = false;
                row.error = e.what();
            }
        }
    });
    return result;
}

std::vector<BenchSummaryRow> summarize(const BenchResult& result) {
    const std::vector<Cell> cells = grid_cells(result.spec);
    std::vector<BenchSummaryRow> summary;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        for (Method method : result.spec.methods) {
            BenchSummaryRow row;
            row.kind = cells[ci].kind;
            row.n_vars = cells[ci].n_vars;
            row.sigma_b = cells[ci].sigma_b;
            row.sigma_ga = cells[ci].sigma_ga;
            row.method = method;
            std::vector<double> f1s, tnrs;
            for (const BenchRow& raw : result.rows) {
                if (raw.method != method || raw.kind != cells[ci].kind ||
                    raw.n_vars != cells[ci].n_vars || raw.sigma_b != cells[ci].sigma_b ||
                    raw.sigma_ga != cells[ci].sigma_ga)
                    continue;
                if (!raw.ok) {
                    ++row.n_failed;
                    continue;
                }
                ++row.n_ok;
                f1s.push_back(raw.report.f1);
                tnrs.push_back(raw.report.tnr);
            }
            mean_std(f1s, row.f1_mean, row.f1_std);
            mean_std(tnrs, row.tnr_mean, row.tnr_std);
            summary.push_back(row);
        }
    }
    return summary;
}

void write_bench_raw_csv(const std::filesystem::path& path, const BenchResult& result) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::io_error, "cannot open " + path.string() + " for writing");
    out << "scenario,n_vars,length,sigma_b,sigma_ga,sigma_gm,causal_strength,lag_tau,edge_prob,"
           "seed,method,status,error,tp,fp,tn,fn,f1,precision,recall,tnr\n";
    for (const BenchRow& row : result.rows) {
        out << scenario_name(row.kind) << ',' << row.n_vars << ',' << row.length << ','
            << format_double(row.sigma_b) << ',' << format_double(row.sigma_ga) << ','
            << format_double(row.sigma_gm) << ',' << format_double(row.causal_strength) << ','
            << row.lag_tau << ',' << format_double(row.edge_prob) << ',' << row.seed << ','
            << method_name(row.method) << ',';
        if (row.ok) {
            out << "ok,," << row.report.tp << ',' << row.report.fp << ',' << row.report.tn << ','
                << row.report.fn << ',' << format_double(row.report.f1) << ','
                << format_double(row.report.precision) << ',' << format_double(row.report.recall)
                << ',' << format_double(row.report.tnr) << '\n';
        } else {
            std::string sanitized = row.error;
            std::replace(sanitized.begin(), sanitized.end(), ',', ';');
            std::replace(sanitized.begin(), sanitized.end(), '\n', ' ');
            out << "error," << sanitized << ",,,,,,,,\n";
        }
    }
    if (!out) throw Error(errc::io_error, "failed writing " + path.string());
}

void write_bench_summary_csv(const std::filesystem::path& path, const BenchResult& result) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::io_error, "cannot open " + path.string() + " for writing");
    out << "scenario,n_vars,sigma_b,sigma_ga,method,n_ok,n_failed,f1_mean,f1_std,tnr_mean,tnr_std\n";
    for (const BenchSummaryRow& row : summarize(result)) {
        out << scenario_name(row.kind) << ',' << row.n_vars << ',' << format_double(row.sigma_b)
            << ',' << format_double(row.sigma_ga) << ',' << method_name(row.method) << ','
            << row.n_ok << ',' << row.n_failed << ',' << format_double(row.f1_mean) << ','
            << format_double(row.f1_std) << ',' << format_double(row.tnr_mean) << ','
            << format_double(row.tnr_std) << '\n';
    }
    if (!out) throw Error(errc::io_error, "failed writing " + path.string());
}

void write_bench_summary_json(const std::filesystem::path& path, const BenchResult& result) {
    json doc = json::array();
    for (const BenchSummaryRow& row : summarize(result)) {
        json entry;
        entry["scenario"] = scenario_name(row.kind);
        entry["n_vars"] = row.n_vars;
        entry["sigma_b"] = row.sigma_b;
        entry["sigma_ga"] = row.sigma_ga;
        entry["method"] = method_name(row.method);
        entry["n_ok"] = row.n_ok;
        entry["n_failed"] = row.n_failed;
        entry["f1_mean"] = row.f1_mean;
        entry["f1_std"] = row.f1_std;
        entry["tnr_mean"] = row.tnr_mean;
        entry["tnr_std"] = row.tnr_std;
        doc.push_back(std::move(entry));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::io_error, "cannot open " + path.string() + " for writing");
    out << doc.dump(2) << "\n";
    if (!out) throw Error(errc::io_error, "failed writing " + path.string());
}

BenchmarkSpec load_bench_spec_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io_error, "cannot open " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw Error(errc::parse_error, path.string() + ": " + e.what());
    }

    BenchmarkSpec spec;
    try {
        spec.scenarios.clear();
        for (const auto& name : doc.at("scenarios"))
            spec.scenarios.push_back(scenario_from_name(name.get<std::string>()));
        spec.sigma_b = doc.at("sigma_b").get<std::vector<double>>();
        spec.sigma_ga = doc.at("sigma_ga").get<std::vector<double>>();
        spec.n_vars = doc.at("n_vars").get<std::vector<std::size_t>>();
        spec.sigma_gm = doc.value("sigma_gm", spec.sigma_gm);
        spec.length = doc.value("length", spec.length);
        spec.causal_strength = doc.value("causal_strength", spec.causal_strength);
        spec.lag_tau = doc.value("lag_tau", spec.lag_tau);
        spec.edge_prob = doc.value("edge_prob", spec.edge_prob);
        spec.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
        spec.methods.clear();
        for (const auto& name : doc.at("methods"))
            spec.methods.push_back(method_from_name(name.get<std::string>()));
        spec.discovery.alpha = doc.value("alpha", spec.discovery.alpha);
        spec.discovery.max_lag = doc.value("max_lag", spec.discovery.max_lag);
        spec.discovery.plan.length = doc.value("window", spec.discovery.plan.length);
        spec.discovery.plan.stride = doc.value("stride", spec.discovery.plan.stride);
        spec.discovery.auto_window = doc.value("auto_window", spec.discovery.auto_window);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(errc::parse_error, path.string() + ": " + e.what());
    }
    return spec;
}

void write_bench_spec_json(const std::filesystem::path& path, const BenchmarkSpec& spec) {
    json doc;
    json scenarios = json::array();
    for (ScenarioKind kind : spec.scenarios) scenarios.push_back(scenario_name(kind));
    doc["scenarios"] = std::move(scenarios);
    doc["sigma_b"] = spec.sigma_b;
    doc["sigma_ga"] = spec.sigma_ga;
    doc["n_vars"] = spec.n_vars;
    doc["sigma_gm"] = spec.sigma_gm;
    doc["length"] = spec.length;
    doc["causal_strength"] = spec.causal_strength;
    doc["lag_tau"] = spec.lag_tau;
    doc["edge_prob"] = spec.edge_prob;
    doc["seeds"] = spec.seeds;
    json methods = json::array();
    for (Method m : spec.methods) methods.push_back(method_name(m));
    doc["methods"] = std::move(methods);
    doc["alpha"] = spec.discovery.alpha;
    doc["max_lag"] = spec.discovery.max_lag;
    doc["window"] = spec.discovery.plan.length;
    doc["stride"] = spec.discovery.plan.stride;
    doc["auto_window"] = spec.discovery.auto_window;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::io_error, "cannot open " + path.string() + " for writing");
    out << doc.dump(2) << "\n";
    if (!out) throw Error(errc::io_error, "failed writing " + path.string());
}

} // namespace placy
