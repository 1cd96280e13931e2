#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace placy {

/// A multivariate time series: L samples of d variables, column j holds the
/// series named names[j].
struct TimeSeriesSet {
    Eigen::MatrixXd values; // L x d
    std::vector<std::string> names;

    std::size_t length() const { return static_cast<std::size_t>(values.rows()); }
    std::size_t n_vars() const { return static_cast<std::size_t>(values.cols()); }
};

} // namespace placy
