#include "placy/granger.hpp"

#include "placy/error.hpp"
#include "placy/numerics.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>
#include <vector>

namespace placy {

LaggedDesign build_lagged_design(const std::vector<Eigen::VectorXd>& series, int max_lag) {
    if (series.empty()) throw Error(errc::invalid_input, "no series given");
    if (max_lag < 1) throw Error(errc::invalid_input, "max_lag must be >= 1");

    const Eigen::Index length = series[0].size();
    for (const auto& s : series) {
        if (s.size() != length)
            throw Error(errc::dimension_mismatch, "lagged design requires equal-length series");
    }

    const Eigen::Index t_lags = max_lag;
    const Eigen::Index m = static_cast<Eigen::Index>(series.size());
    const Eigen::Index p = 1 + t_lags * m;
    const Eigen::Index n = length - t_lags;
    if (n < 1)
        throw Error(errc::insufficient_samples,
                    "series length " + std::to_string(length) + " leaves no rows after max_lag " +
                        std::to_string(max_lag) + "; need at least " + std::to_string(t_lags + 1) +
                        " samples");

    LaggedDesign out;
    out.design.resize(n, p);
    out.target.resize(n);
    for (Eigen::Index row = 0; row < n; ++row) {
        const Eigen::Index t = row + t_lags;
        out.target(row) = series[0](t);
        out.design(row, 0) = 1.0;
        Eigen::Index col = 1;
        for (Eigen::Index s = 0; s < m; ++s) {
            for (Eigen::Index lag = 1; lag <= t_lags; ++lag) {
                out.design(row, col++) = series[static_cast<std::size_t>(s)](t - lag);
            }
        }
    }
    return out;
}

WaldResult wald_granger_test(const Eigen::MatrixXd& data, const VarSpec& spec) {
    if (spec.causing.empty()) throw Error(errc::invalid_input, "causing set is empty");
    const std::size_t n_cols = static_cast<std::size_t>(data.cols());
    auto check_index = [&](std::size_t idx) {
        if (idx >= n_cols)
            throw Error(errc::invalid_input, "series index " + std::to_string(idx) +
                                                 " out of range for " + std::to_string(n_cols) +
                                                 " columns");
    };
    check_index(spec.caused);
    std::vector<std::size_t> seen{spec.caused};
    auto check_disjoint = [&seen](std::size_t idx, const char* role) {
        for (std::size_t other : seen)
            if (idx == other)
                throw Error(errc::invalid_input, std::string("series index ") +
                                                     std::to_string(idx) + " repeats in the " +
                                                     role + " set");
        seen.push_back(idx);
    };
    for (std::size_t idx : spec.causing) {
        check_index(idx);
        check_disjoint(idx, "caused/causing");
    }
    for (std::size_t idx : spec.covariates) {
        check_index(idx);
        check_disjoint(idx, "causing/covariate");
    }

    // Ordered block: caused, causing..., covariates...
    std::vector<Eigen::VectorXd> block;
    block.reserve(1 + spec.causing.size() + spec.covariates.size());
    block.push_back(data.col(static_cast<Eigen::Index>(spec.caused)));
    for (std::size_t idx : spec.causing) block.push_back(data.col(static_cast<Eigen::Index>(idx)));
    for (std::size_t idx : spec.covariates)
        block.push_back(data.col(static_cast<Eigen::Index>(idx)));

    const Eigen::Index length = data.rows();
    const Eigen::Index n_params =
        1 + static_cast<Eigen::Index>(spec.max_lag) * static_cast<Eigen::Index>(block.size());
    if (length - spec.max_lag <= n_params)
        throw Error(errc::insufficient_samples,
                    "series length " + std::to_string(length) + " too short for max_lag " +
                        std::to_string(spec.max_lag) + " with " + std::to_string(block.size()) +
                        " series; need at least " +
                        std::to_string(spec.max_lag + n_params + 1) + " samples");

    const LaggedDesign lagged = build_lagged_design(block, spec.max_lag);
    const LeastSquaresFit fit = solve_least_squares(lagged.design, lagged.target);

    // Restriction: every lag coefficient of the causing block. Those columns
    // sit right after the intercept and the caused series' own lags.
    const Eigen::Index t_lags = spec.max_lag;
    const Eigen::Index q = t_lags * static_cast<Eigen::Index>(spec.causing.size());
    const Eigen::Index offset = 1 + t_lags;

    const Eigen::VectorXd restricted_coeffs = fit.coeffs.segment(offset, q);
    const Eigen::MatrixXd restricted_cov = fit.coeff_covariance.block(offset, offset, q, q);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigensolver(restricted_cov);
    if (eigensolver.info() != Eigen::Success)
        throw Error(errc::singular_restriction, "restriction covariance eigendecomposition failed");
    const auto& eigenvalues = eigensolver.eigenvalues();
    const double max_eig = eigenvalues(q - 1);
    const double min_eig = eigenvalues(0);
    if (!(max_eig > 0.0) || min_eig <= max_eig * 1e-13)
        throw Error(errc::singular_restriction,
                    "restriction covariance is numerically singular (statistic undefined)");

    const Eigen::VectorXd solved = eigensolver.eigenvectors() *
                                   (eigensolver.eigenvectors().transpose() * restricted_coeffs)
                                       .cwiseQuotient(eigenvalues);
    double statistic = restricted_coeffs.dot(solved);
    if (!std::isfinite(statistic))
        throw Error(errc::singular_restriction, "Wald statistic is non-finite");
    if (statistic < 0.0) statistic = 0.0;

    WaldResult result;
    result.statistic = statistic;
    result.df = static_cast<int>(q);
    result.p_value = chi2_sf(statistic, result.df);
    result.n_effective = static_cast<std::size_t>(lagged.design.rows());
    return result;
}

} // namespace placy
