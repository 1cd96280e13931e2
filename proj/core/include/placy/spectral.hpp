#pragma once

#include "placy/numerics.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace placy {

/// Sliding-window geometry. A series of length L yields
/// floor((L - length) / stride) + 1 windows.
struct WindowPlan {
    std::size_t length = 50;
    std::size_t stride = 1;
};

inline constexpr std::size_t kMinWindowLength = 8;        // floor for a usable fit
inline constexpr std::size_t kMinSelectableWindow = 50;   // floor for window selection

/// Power-law fit log A(f) = intercept - slope * log f over the positive
/// half-spectrum. `slope` is the spectral exponent lambda (positive for
/// decaying spectra); the raw OLS slope is its negation.
struct SpectralFit {
    double intercept = 0.0;     // a
    double slope = 0.0;         // lambda
    double slope_p_value = 1.0; // Wald p-value for H0: log-log slope == 0
    double r_squared = 0.0;
};

/// The (a_k, lambda_k) sequences extracted from one series.
struct FeatureSeries {
    std::vector<double> a_series;
    std::vector<double> lambda_series;
    WindowPlan plan;

    std::size_t size() const { return a_series.size(); }
};

struct WindowSelection {
    std::size_t length = 0;
    bool significant = false;            // false: no candidate met alpha, largest returned
    std::vector<double> median_p_values; // one per candidate, in input order
};

/// Fits the log-log line over bins k = 1..floor(l/2). The DC bin and the
/// mirrored upper half are excluded; zero-amplitude bins are skipped. Throws
/// degenerate_spectrum when every usable amplitude is zero and
/// insufficient_spectrum when fewer than 3 usable points remain.
SpectralFit fit_power_law(const Spectrum& spectrum);

/// Runs dft_amplitudes + fit_power_law on every window of the plan. The
/// window mean is subtracted before the transform. Window-level failures are
/// rethrown with the window index attached. Results are identical for any
/// thread count.
std::vector<SpectralFit> extract_fits(std::span<const double> series, const WindowPlan& plan,
                                      unsigned n_threads = 1);

/// extract_fits reduced to the (a, lambda) feature sequences.
FeatureSeries extract_features(std::span<const double> series, const WindowPlan& plan,
                               unsigned n_threads = 1);

/// Smallest candidate window length whose median per-window slope p-value
/// (stride 1) is <= alpha; falls back to the largest candidate with
/// significant == false. Candidates must be ascending, within [50, L].
WindowSelection select_window_length(std::span<const double> series,
                                     std::span<const std::size_t> candidates, double alpha,
                                     unsigned n_threads = 1);

} // namespace placy
