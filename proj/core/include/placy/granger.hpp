#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace placy {

/// One directed Granger hypothesis over a block of aligned series, addressed
/// by column index. The joint Wald test restricts every lag coefficient of
/// every `causing` column; `covariates` enter both models unrestricted.
struct VarSpec {
    int max_lag = 10;
    std::size_t caused = 0;
    std::vector<std::size_t> causing;
    std::vector<std::size_t> covariates;
};

struct WaldResult {
    double statistic = 0.0;
    int df = 0;                 // max_lag * |causing|
    double p_value = 1.0;       // chi2_sf(statistic, df) by construction
    std::size_t n_effective = 0; // rows of the lagged design, L' - max_lag
};

struct LaggedDesign {
    Eigen::MatrixXd design; // (L'-T) x (1 + T*m): intercept, then T lags per series
    Eigen::VectorXd target; // caused series at times T..L'-1
};

/// series[0] is the caused series; the remaining entries follow in declared
/// order (causing blocks first, then covariates). All must share one length
/// L' with L' - max_lag > 1 + max_lag * series.size().
LaggedDesign build_lagged_design(const std::vector<Eigen::VectorXd>& series, int max_lag);

/// Fits the unrestricted VAR row by OLS and evaluates
/// W = (R b)^T (R V R^T)^{-1} (R b) for the restriction that all causing-lag
/// coefficients vanish, referred to chi^2 with max_lag * |causing| degrees of
/// freedom. `data` holds one series per column.
WaldResult wald_granger_test(const Eigen::MatrixXd& data, const VarSpec& spec);

} // namespace placy
