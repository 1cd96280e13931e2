#include "placy/discovery.hpp"

#include "placy/error.hpp"
#include "placy/granger.hpp"
#include "placy/parallel.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace placy {

namespace {

CausalGraph empty_graph(const TimeSeriesSet& data, double alpha) {
    CausalGraph graph;
    graph.n_vars = data.n_vars();
    graph.names = data.names;
    graph.alpha = alpha;
    graph.adjacency.assign(graph.n_vars * graph.n_vars, 0);
    graph.p_values = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(graph.n_vars),
                                               static_cast<Eigen::Index>(graph.n_vars),
                                               std::numeric_limits<double>::quiet_NaN());
    return graph;
}

void threshold_edges(CausalGraph& graph) {
    for (std::size_t i = 0; i < graph.n_vars; ++i) {
        for (std::size_t j = 0; j < graph.n_vars; ++j) {
            if (i == j) continue;
            const double p = graph.p_values(static_cast<Eigen::Index>(i),
                                            static_cast<Eigen::Index>(j));
            graph.adjacency[i * graph.n_vars + j] = p < graph.alpha ? 1 : 0;
        }
    }
}

struct PairIndex {
    std::size_t i, j;
};

std::vector<PairIndex> ordered_pairs(std::size_t d) {
    std::vector<PairIndex> pairs;
    pairs.reserve(d * (d - 1));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (i != j) pairs.push_back({i, j});
    return pairs;
}

} // namespace

namespace {

void validate_names(const TimeSeriesSet& data) {
    if (data.names.size() != data.n_vars())
        throw Error(errc::dimension_mismatch,
                    "data has " + std::to_string(data.n_vars()) + " columns but " +
                        std::to_string(data.names.size()) + " names");
}

} // namespace

CausalGraph discover(const TimeSeriesSet& data, const DiscoveryConfig& config,
                     unsigned n_threads) {
    if (!(config.alpha > 0.0 && config.alpha < 1.0))
        throw Error(errc::invalid_input, "alpha must lie in (0,1)");
    validate_names(data);
    const std::size_t d = data.n_vars();
    if (d < 1) throw Error(errc::invalid_input, "no variables");
    const std::size_t length = data.length();
    n_threads = resolve_threads(n_threads);

    WindowPlan plan = config.plan;
    bool window_significant = true;
    if (config.auto_window) {
        // One shared plan keeps the feature series of all variables aligned;
        // the per-variable selections are reconciled by taking the maximum.
        std::size_t chosen = 0;
        bool all_significant = true;
        for (std::size_t v = 0; v < d; ++v) {
            const Eigen::VectorXd col = data.values.col(static_cast<Eigen::Index>(v));
            const WindowSelection sel = select_window_length(
                std::span<const double>(col.data(), static_cast<std::size_t>(col.size())),
                config.window_candidates, config.alpha, n_threads);
            chosen = std::max(chosen, sel.length);
            all_significant = all_significant && sel.significant;
        }
        plan.length = chosen;
        window_significant = all_significant;
    }

    // Feature count must leave room for the VAR on (lambda_j | lambda_i, a_i).
    const std::size_t var_params = 1 + static_cast<std::size_t>(config.max_lag) * 3;
    const std::size_t min_features = static_cast<std::size_t>(config.max_lag) + var_params + 1;
    const std::size_t min_length = plan.length + plan.stride * (min_features - 1);
    if (length < min_length)
        throw Error(errc::series_too_short,
                    "need at least " + std::to_string(min_length) + " samples for window " +
                        std::to_string(plan.length) + " and max_lag " +
                        std::to_string(config.max_lag) + ", got " + std::to_string(length));

    CausalGraph graph = empty_graph(data, config.alpha);
    graph.plan = plan;
    graph.max_lag = config.max_lag;
    graph.metadata["method"] = "placy";
    graph.metadata["auto_window"] = config.auto_window ? "true" : "false";
    if (config.auto_window) {
        graph.metadata["selected_window"] = std::to_string(plan.length);
        graph.metadata["window_significant"] = window_significant ? "true" : "false";
    }
    if (d == 1) return graph;

    std::vector<FeatureSeries> features(d);
    parallel_for(d, n_threads, [&](std::size_t v) {
        const Eigen::VectorXd col = data.values.col(static_cast<Eigen::Index>(v));
        try {
            features[v] = extract_features(
                std::span<const double>(col.data(), static_cast<std::size_t>(col.size())), plan, 1);
        } catch (const Error& e) {
            throw Error(e.code(), "variable " + data.names[v] + ": " + e.what());
        }
    });

    const std::size_t n_features = features[0].size();
    const std::vector<PairIndex> pairs = ordered_pairs(d);
    std::vector<double> pair_p(pairs.size());
    parallel_for(pairs.size(), n_threads, [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        Eigen::MatrixXd block(static_cast<Eigen::Index>(n_features), 3);
        for (std::size_t t = 0; t < n_features; ++t) {
            block(static_cast<Eigen::Index>(t), 0) = features[j].lambda_series[t]; // caused
            block(static_cast<Eigen::Index>(t), 1) = features[i].lambda_series[t];
            block(static_cast<Eigen::Index>(t), 2) = features[i].a_series[t];
        }
        VarSpec spec;
        spec.max_lag = config.max_lag;
        spec.caused = 0;
        spec.causing = {1, 2}; // {lambda_i, a_i} jointly tested
        try {
            pair_p[k] = wald_granger_test(block, spec).p_value;
        } catch (const Error& e) {
            throw Error(e.code(), "pair " + data.names[i] + " -> " + data.names[j] + ": " + e.what());
        }
    });

    for (std::size_t k = 0; k < pairs.size(); ++k)
        graph.p_values(static_cast<Eigen::Index>(pairs[k].i),
                       static_cast<Eigen::Index>(pairs[k].j)) = pair_p[k];
    threshold_edges(graph);
    return graph;
}

CausalGraph granger_baseline(const TimeSeriesSet& data, int max_lag, double alpha,
                             unsigned n_threads) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Error(errc::invalid_input, "alpha must lie in (0,1)");
    if (max_lag < 1) throw Error(errc::invalid_input, "max_lag must be >= 1");
    validate_names(data);
    const std::size_t d = data.n_vars();
    if (d < 1) throw Error(errc::invalid_input, "no variables");

    CausalGraph graph = empty_graph(data, alpha);
    graph.plan.reset();
    graph.max_lag = max_lag;
    graph.metadata["method"] = "granger";
    if (d == 1) return graph;

    const std::vector<PairIndex> pairs = ordered_pairs(d);
    std::vector<double> pair_p(pairs.size());
    parallel_for(pairs.size(), resolve_threads(n_threads), [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        VarSpec spec;
        spec.max_lag = max_lag;
        spec.caused = j;
        spec.causing = {i};
        spec.covariates.reserve(d - 2);
        for (std::size_t v = 0; v < d; ++v)
            if (v != i && v != j) spec.covariates.push_back(v);
        try {
            pair_p[k] = wald_granger_test(data.values, spec).p_value;
        } catch (const Error& e) {
            throw Error(e.code(), "pair " + data.names[i] + " -> " + data.names[j] + ": " + e.what());
        }
    });

    for (std::size_t k = 0; k < pairs.size(); ++k)
        graph.p_values(static_cast<Eigen::Index>(pairs[k].i),
                       static_cast<Eigen::Index>(pairs[k].j)) = pair_p[k];
    threshold_edges(graph);
    return graph;
}

} // namespace placy
