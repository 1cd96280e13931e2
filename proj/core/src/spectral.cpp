#include "placy/spectral.hpp"

#include "placy/error.hpp"
#include "placy/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace placy {

namespace {

void validate_plan(const WindowPlan& plan) {
    if (plan.length < kMinWindowLength)
        throw Error(errc::invalid_input,
                    "window length must be >= " + std::to_string(kMinWindowLength) + ", got " +
                        std::to_string(plan.length));
    if (plan.stride < 1 || plan.stride >= plan.length)
        throw Error(errc::invalid_input, "stride must satisfy 1 <= s < l, got s=" +
                                             std::to_string(plan.stride) +
                                             ", l=" + std::to_string(plan.length));
}

double median(std::vector<double> values) {
    const std::size_t n = values.size();
    auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(values.begin(), mid, values.end());
    if (n % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(values.begin(), mid);
    return 0.5 * (lower + upper);
}

} // namespace

SpectralFit fit_power_law(const Spectrum& spectrum) {
    const std::size_t l = spectrum.size();
    if (spectrum.freqs.size() != l)
        throw Error(errc::dimension_mismatch, "spectrum freqs/amps length mismatch");
    if (l < 2) throw Error(errc::invalid_input, "spectrum too small");

    // Positive-frequency half only: 0 < f <= 1/2, which for a DFT spectrum is
    // exactly k = 1..floor(l/2). DC has log f undefined and the upper half
    // mirrors the lower for real signals.
    std::vector<double> log_f;
    std::vector<double> log_a;
    bool any_candidate_bin = false;
    bool any_positive_amp = false;
    for (std::size_t k = 0; k < l; ++k) {
        const double freq = spectrum.freqs[k];
        if (!(freq > 0.0) || freq > 0.5) continue;
        any_candidate_bin = true;
        const double amp = spectrum.amps[k];
        if (amp > 0.0) {
            any_positive_amp = true;
            log_f.push_back(std::log(freq));
            log_a.push_back(std::log(amp));
        }
    }
    if (any_candidate_bin && !any_positive_amp)
        throw Error(errc::degenerate_spectrum, "every positive-frequency amplitude is zero");
    if (log_f.size() < 3)
        throw Error(errc::insufficient_spectrum, "only " + std::to_string(log_f.size()) +
                                                     " usable spectrum points, need at least 3");

    const Eigen::Index n = static_cast<Eigen::Index>(log_f.size());
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd target(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = log_f[static_cast<std::size_t>(i)];
        target(i) = log_a[static_cast<std::size_t>(i)];
    }

    // A flat spectrum is an exact lambda = 0 law; the OLS path would report a
    // rounding-noise slope with a rounding-noise standard error.
    const double mean_log_amp = target.mean();
    const double total_ss = (target.array() - mean_log_amp).matrix().squaredNorm();
    const double amp_scale = std::max(1.0, target.cwiseAbs().maxCoeff());
    if (total_ss <= static_cast<double>(n) * (1e-13 * amp_scale) * (1e-13 * amp_scale)) {
        SpectralFit flat;
        flat.intercept = mean_log_amp;
        flat.slope = 0.0;
        flat.slope_p_value = 1.0;
        flat.r_squared = 1.0;
        return flat;
    }

    const LeastSquaresFit ols = solve_least_squares(design, target);

    SpectralFit fit;
    fit.intercept = ols.coeffs(0);
    fit.slope = -ols.coeffs(1); // log A = a - lambda log f

    const double slope_var = ols.coeff_covariance(1, 1);
    if (slope_var > 0.0) {
        const double t_squared = ols.coeffs(1) * ols.coeffs(1) / slope_var;
        fit.slope_p_value = chi2_sf(t_squared, 1);
    } else {
        // Exact fit: an exactly zero slope carries no evidence, a nonzero one
        // is infinitely significant.
        fit.slope_p_value = ols.coeffs(1) == 0.0 ? 1.0 : 0.0;
    }

    const double rss = (target - design * ols.coeffs).squaredNorm();
    fit.r_squared = std::clamp(1.0 - rss / total_ss, 0.0, 1.0);
    return fit;
}

std::vector<SpectralFit> extract_fits(std::span<const double> series, const WindowPlan& plan,
                                      unsigned n_threads) {
    validate_plan(plan);
    const std::size_t length = series.size();
    if (length < plan.length)
        throw Error(errc::series_too_short, "series has " + std::to_string(length) +
                                                " samples, window needs " +
                                                std::to_string(plan.length));

    const std::size_t n_windows = (length - plan.length) / plan.stride + 1;
    std::vector<SpectralFit> fits(n_windows);
    parallel_for(n_windows, n_threads, [&](std::size_t k) {
        const std::size_t start = k * plan.stride;
        std::vector<double> window(series.begin() + static_cast<std::ptrdiff_t>(start),
                                   series.begin() + static_cast<std::ptrdiff_t>(start + plan.length));
        double mean = 0.0;
        for (double v : window) mean += v;
        mean /= static_cast<double>(window.size());
        for (double& v : window) v -= mean;
        try {
            fits[k] = fit_power_law(dft_amplitudes(window));
        } catch (const Error& e) {
            throw Error(e.code(), "window " + std::to_string(k) + ": " + e.what());
        }
    });
    return fits;
}

FeatureSeries extract_features(std::span<const double> series, const WindowPlan& plan,
                               unsigned n_threads) {
    const std::vector<SpectralFit> fits = extract_fits(series, plan, n_threads);
    FeatureSeries features;
    features.plan = plan;
    features.a_series.resize(fits.size());
    features.lambda_series.resize(fits.size());
    for (std::size_t k = 0; k < fits.size(); ++k) {
        features.a_series[k] = fits[k].intercept;
        features.lambda_series[k] = fits[k].slope;
    }
    return features;
}

WindowSelection select_window_length(std::span<const double> series,
                                     std::span<const std::size_t> candidates, double alpha,
                                     unsigned n_threads) {
    if (candidates.empty()) throw Error(errc::invalid_input, "no window-length candidates");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Error(errc::invalid_input, "alpha must lie in (0,1), got " + std::to_string(alpha));
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (candidates[i] < kMinSelectableWindow)
            throw Error(errc::invalid_input,
                        "candidate " + std::to_string(candidates[i]) + " is below the floor of " +
                            std::to_string(kMinSelectableWindow));
        if (candidates[i] > series.size())
            throw Error(errc::invalid_input, "candidate " + std::to_string(candidates[i]) +
                                                 " exceeds the series length " +
                                                 std::to_string(series.size()));
        if (i > 0 && candidates[i] <= candidates[i - 1])
            throw Error(errc::invalid_input, "candidates must be strictly ascending");
    }

    WindowSelection selection;
    selection.median_p_values.reserve(candidates.size());
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
        const WindowPlan plan{candidates[ci], 1};
        const std::vector<SpectralFit> fits = extract_fits(series, plan, n_threads);
        std::vector<double> p_values(fits.size());
        for (std::size_t k = 0; k < fits.size(); ++k) p_values[k] = fits[k].slope_p_value;
        const double med = median(std::move(p_values));
        selection.median_p_values.push_back(med);
        if (!selection.significant && med <= alpha) {
            selection.length = candidates[ci];
            selection.significant = true;
        }
    }
    if (!selection.significant) selection.length = candidates.back();
    return selection;
}

} // namespace placy
