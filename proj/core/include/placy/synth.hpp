#pragma once

#include "placy/rng.hpp"
#include "placy/types.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace placy {

/// Parameters of the generalized Ornstein-Uhlenbeck update
///   x(t+dt) = x(t) + (dt/tau_c)(mu - x(t))
///             + (sigma_b eps_b(t) + sigma_ga eps_ga(t) + sigma_gm eps_gm(t) x(t)) sqrt(dt)
/// with eps_ga, eps_gm i.i.d. standard normal per step and eps_b a Brownian
/// path (cumulative N(0, dt) increments, eps_b(0) = 0).
struct OUParams {
    double dt = 0.01;
    double tau_c = 0.5;
    double mu = 1.0;
    double sigma_b = 0.0;
    double sigma_ga = 0.0;
    double sigma_gm = 0.0;
    double x0 = 1.0;
};

/// Strictly upper-triangular DAG adjacency with the injection parameters.
struct GroundTruth {
    std::size_t n_vars = 0;
    std::vector<std::uint8_t> adjacency; // row-major n*n, 1 above the diagonal only
    double causal_strength = 0.5;        // C
    std::size_t lag = 5;                 // tau, in samples

    bool edge(std::size_t i, std::size_t j) const { return adjacency[i * n_vars + j] != 0; }
    std::size_t edge_count() const;
};

enum class ScenarioKind { OU_NOMULT, OU_MULT, OUHAT_NOMULT, OUHAT_MULT };

const char* scenario_name(ScenarioKind kind) noexcept;
ScenarioKind scenario_from_name(const std::string& name); // accepts the CLI spellings
bool scenario_is_mult(ScenarioKind kind) noexcept;
bool scenario_is_transient(ScenarioKind kind) noexcept; // x0 = 100 variants

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::OU_NOMULT;
    std::size_t n_vars = 5;
    std::size_t length = 5000;
    OUParams ou{};           // x0 is overridden by the kind (1 or 100)
    double edge_prob = 0.3;
    double causal_strength = 0.5;
    std::size_t lag_tau = 5;
    std::uint64_t seed = 0;
};

struct InjectionResult {
    Eigen::MatrixXd values;
    std::vector<std::size_t> rescale_skipped; // modified columns with zero-width original range
};

struct Scenario {
    TimeSeriesSet data;
    GroundTruth truth;
    std::vector<std::size_t> rescale_skipped;
};

/// Euler path of `length` samples starting at params.x0.
std::vector<double> generate_ou(const OUParams& params, std::size_t length, Rng& rng);

/// Strictly upper-triangular adjacency; each slot (i, j), i < j, is set
/// independently with probability edge_prob (row-major draw order).
std::vector<std::uint8_t> generate_dag(std::size_t n, double edge_prob, Rng& rng);

/// Adds C * x_i(t - tau) into column j for every edge (i, j), reading cause
/// values from a pre-injection snapshot, then min-max rescales each modified
/// column back to its original range. Columns whose original range has zero
/// width are left unscaled and flagged.
InjectionResult inject_causality(const Eigen::MatrixXd& series_set, const GroundTruth& truth);

/// N independent OU paths (one substream per variable), a fresh DAG, and the
/// causal injection. A pure function of the spec, including its seed.
Scenario make_scenario(const ScenarioSpec& spec);

} // namespace placy
