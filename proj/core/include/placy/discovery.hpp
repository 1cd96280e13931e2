#pragma once

#include "placy/spectral.hpp"
#include "placy/types.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace placy {

struct DiscoveryConfig {
    WindowPlan plan{};                 // l=50, s=1
    int max_lag = 10;
    double alpha = 0.05;
    bool auto_window = false;          // run select_window_length first
    std::vector<std::size_t> window_candidates{50, 100, 150, 200};
};

/// Directed causal graph over d variables. adjacency(i,j) records the edge
/// i -> j and always equals p_values(i,j) < alpha for the alpha stored here.
/// The diagonal carries no edge and a NaN p-value.
struct CausalGraph {
    std::size_t n_vars = 0;
    std::vector<std::string> names;
    double alpha = 0.05;
    std::vector<std::uint8_t> adjacency; // row-major d*d, 0/1
    Eigen::MatrixXd p_values;            // NaN on the diagonal
    std::optional<WindowPlan> plan;      // empty for the raw-series baseline
    int max_lag = 10;
    std::map<std::string, std::string> metadata;

    bool edge(std::size_t i, std::size_t j) const { return adjacency[i * n_vars + j] != 0; }
};

/// Full feature-domain discovery: extracts (a, lambda) per variable, then for
/// every ordered pair i != j tests {lambda_i, a_i} -> lambda_j and keeps the
/// edge when p < alpha. Identical output for any thread count.
CausalGraph discover(const TimeSeriesSet& data, const DiscoveryConfig& config,
                     unsigned n_threads = 1);

/// Raw-series Granger baseline: for every ordered pair i != j tests
/// x_i -> x_j conditioning on the lags of all remaining variables.
CausalGraph granger_baseline(const TimeSeriesSet& data, int max_lag, double alpha,
                             unsigned n_threads = 1);

} // namespace placy
