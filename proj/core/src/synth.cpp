#include "placy/synth.hpp"

#include "placy/error.hpp"

#include <cmath>
#include <string>

namespace placy {

std::size_t GroundTruth::edge_count() const {
    std::size_t count = 0;
    for (std::uint8_t v : adjacency) count += v;
    return count;
}

const char* scenario_name(ScenarioKind kind) noexcept {
    switch (kind) {
        case ScenarioKind::OU_NOMULT: return "ou";
        case ScenarioKind::OU_MULT: return "ou-mult";
        case ScenarioKind::OUHAT_NOMULT: return "ouhat";
        case ScenarioKind::OUHAT_MULT: return "ouhat-mult";
    }
    return "?";
}

ScenarioKind scenario_from_name(const std::string& name) {
    if (name == "ou") return ScenarioKind::OU_NOMULT;
    if (name == "ou-mult") return ScenarioKind::OU_MULT;
    if (name == "ouhat") return ScenarioKind::OUHAT_NOMULT;
    if (name == "ouhat-mult") return ScenarioKind::OUHAT_MULT;
    throw Error(errc::invalid_input,
                "unknown scenario '" + name + "' (expected ou, ou-mult, ouhat or ouhat-mult)");
}

bool scenario_is_mult(ScenarioKind kind) noexcept {
    return kind == ScenarioKind::OU_MULT || kind == ScenarioKind::OUHAT_MULT;
}

bool scenario_is_transient(ScenarioKind kind) noexcept {
    return kind == ScenarioKind::OUHAT_NOMULT || kind == ScenarioKind::OUHAT_MULT;
}

namespace {

void validate_ou(const OUParams& params) {
    if (!(params.dt > 0.0)) throw Error(errc::invalid_input, "dt must be positive");
    if (!(params.tau_c > 0.0)) throw Error(errc::invalid_input, "tau_c must be positive");
    if (params.sigma_b < 0.0 || params.sigma_ga < 0.0 || params.sigma_gm < 0.0)
        throw Error(errc::invalid_input, "volatilities must be nonnegative");
}

} // namespace

std::vector<double> generate_ou(const OUParams& params, std::size_t length, Rng& rng) {
    validate_ou(params);
    if (length < 1) throw Error(errc::invalid_input, "length must be >= 1");

    std::vector<double> path(length);
    path[0] = params.x0;
    const double sqrt_dt = std::sqrt(params.dt);
    double x = params.x0;
    double brownian = 0.0; // eps_b(0) = 0; advances after each step
    for (std::size_t n = 0; n + 1 < length; ++n) {
        const double eta_b = rng.normal();
        const double eta_a = rng.normal();
        const double eta_m = rng.normal();
        const double drift = params.dt / params.tau_c * (params.mu - x);
        const double noise =
            (params.sigma_b * brownian + params.sigma_ga * eta_a + params.sigma_gm * eta_m * x) *
            sqrt_dt;
        x += drift + noise;
        path[n + 1] = x;
        brownian += sqrt_dt * eta_b; // N(0, dt) increment
    }
    return path;
}

std::vector<std::uint8_t> generate_dag(std::size_t n, double edge_prob, Rng& rng) {
    if (n < 1) throw Error(errc::invalid_input, "need at least one variable");
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0))
        throw Error(errc::invalid_input, "edge probability must lie in [0,1]");

    std::vector<std::uint8_t> adjacency(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            adjacency[i * n + j] = rng.uniform() < edge_prob ? 1 : 0;
        }
    }
    return adjacency;
}

InjectionResult inject_causality(const Eigen::MatrixXd& series_set, const GroundTruth& truth) {
    const std::size_t n = truth.n_vars;
    if (static_cast<std::size_t>(series_set.cols()) != n)
        throw Error(errc::dimension_mismatch,
                    "series set has " + std::to_string(series_set.cols()) +
                        " columns, ground truth expects " + std::to_string(n));
    if (truth.adjacency.size() != n * n)
        throw Error(errc::dimension_mismatch, "adjacency size does not match n_vars");
    const std::size_t length = static_cast<std::size_t>(series_set.rows());
    const std::size_t tau = truth.lag;
    if (length <= tau)
        throw Error(errc::series_too_short, "need more than lag=" + std::to_string(tau) +
                                                " samples, got " + std::to_string(length));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (truth.adjacency[i * n + j] != 0)
                throw Error(errc::invalid_input, "adjacency must be strictly upper triangular");

    InjectionResult out;
    out.values = series_set; // cause values are read from the snapshot below
    const Eigen::MatrixXd& snapshot = series_set;

    std::vector<bool> modified(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!truth.edge(i, j)) continue;
            modified[j] = true;
            for (std::size_t t = tau; t < length; ++t) {
                out.values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) +=
                    truth.causal_strength *
                    snapshot(static_cast<Eigen::Index>(t - tau), static_cast<Eigen::Index>(i));
            }
        }
    }

    // Min-max rescale each modified column back to its original range.
    for (std::size_t j = 0; j < n; ++j) {
        if (!modified[j]) continue;
        const auto col = out.values.col(static_cast<Eigen::Index>(j));
        const double old_min = snapshot.col(static_cast<Eigen::Index>(j)).minCoeff();
        const double old_max = snapshot.col(static_cast<Eigen::Index>(j)).maxCoeff();
        if (old_max == old_min) {
            out.rescale_skipped.push_back(j);
            continue;
        }
        const double new_min = col.minCoeff();
        const double new_max = col.maxCoeff();
        if (new_min == old_min && new_max == old_max) continue; // map would be the identity
        if (new_max == new_min) {
            // Injection collapsed the column to a constant; park it at the
            // original minimum rather than divide by zero.
            out.values.col(static_cast<Eigen::Index>(j)).setConstant(old_min);
            out.rescale_skipped.push_back(j);
            continue;
        }
        const double scale = (old_max - old_min) / (new_max - new_min);
        out.values.col(static_cast<Eigen::Index>(j)) =
            ((col.array() - new_min) * scale + old_min).matrix();
    }
    return out;
}

Scenario make_scenario(const ScenarioSpec& spec) {
    if (spec.n_vars < 1) throw Error(errc::invalid_input, "scenario needs at least one variable");
    if (spec.length <= spec.lag_tau)
        throw Error(errc::series_too_short, "length must exceed lag_tau");

    OUParams params = spec.ou;
    params.x0 = scenario_is_transient(spec.kind) ? 100.0 : 1.0;
    if (scenario_is_mult(spec.kind)) {
        if (!(params.sigma_gm > 0.0))
            throw Error(errc::invalid_input, "multiplicative scenarios require sigma_gm > 0");
    } else {
        params.sigma_gm = 0.0;
    }

    Scenario scenario;
    scenario.data.values.resize(static_cast<Eigen::Index>(spec.length),
                                static_cast<Eigen::Index>(spec.n_vars));
    scenario.data.names.resize(spec.n_vars);
    for (std::size_t v = 0; v < spec.n_vars; ++v) {
        Rng rng = make_stream(spec.seed, stream_role::path_noise, v);
        const std::vector<double> path = generate_ou(params, spec.length, rng);
        for (std::size_t t = 0; t < spec.length; ++t)
            scenario.data.values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(v)) =
                path[t];
        scenario.data.names[v] = "x" + std::to_string(v + 1);
    }

    Rng dag_rng = make_stream(spec.seed, stream_role::dag_draw);
    scenario.truth.n_vars = spec.n_vars;
    scenario.truth.adjacency = generate_dag(spec.n_vars, spec.edge_prob, dag_rng);
    scenario.truth.causal_strength = spec.causal_strength;
    scenario.truth.lag = spec.lag_tau;

    InjectionResult injected = inject_causality(scenario.data.values, scenario.truth);
    scenario.data.values = std::move(injected.values);
    scenario.rescale_skipped = std::move(injected.rescale_skipped);
    return scenario;
}

} // namespace placy
