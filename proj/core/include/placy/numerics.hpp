#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace placy {

/// Amplitude spectrum of a real window of length l: freqs[k] = k/l and
/// amps[k] = |sum_t x(t) e^{-i 2 pi k t / l}| for k = 0..l-1. No
/// normalization factor is applied. For real input the amplitudes satisfy
/// amps[k] == amps[l-k].
struct Spectrum {
    std::vector<double> freqs;
    std::vector<double> amps;

    std::size_t size() const { return amps.size(); }
};

/// Ordinary least squares fit with the statistics the Wald machinery needs.
struct LeastSquaresFit {
    Eigen::VectorXd coeffs;          // beta-hat
    double residual_variance = 0.0;  // RSS / (n - p)
    Eigen::MatrixXd coeff_covariance; // residual_variance * (X^T X)^{-1}
    Eigen::Index n_obs = 0;
    Eigen::Index n_params = 0;
};

/// Full amplitude spectrum of `window` (length >= 2, all entries finite).
/// Matches the direct O(l^2) summation to better than 1e-9 relative error.
Spectrum dft_amplitudes(std::span<const double> window);

/// OLS via Householder QR. Requires n > p and a full-column-rank design
/// (smallest/largest singular value >= 1e-10); throws underdetermined or
/// degenerate_design otherwise.
LeastSquaresFit solve_least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& targets);

/// Upper tail P[chi^2_df > x] via the regularized upper incomplete gamma
/// function Q(df/2, x/2): series expansion below the a+1 crossover, continued
/// fraction above. Absolute accuracy better than 1e-10.
double chi2_sf(double x, int df);

} // namespace placy
