#include "placy/numerics.hpp"

#include "placy/error.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace placy {

const char* errc_name(errc code) noexcept {
    switch (code) {
        case errc::invalid_input: return "invalid input";
        case errc::underdetermined: return "underdetermined system";
        case errc::degenerate_design: return "degenerate design";
        case errc::singular_restriction: return "singular restriction";
        case errc::insufficient_spectrum: return "insufficient spectrum";
        case errc::degenerate_spectrum: return "degenerate spectrum";
        case errc::series_too_short: return "series too short";
        case errc::insufficient_samples: return "insufficient samples";
        case errc::dimension_mismatch: return "dimension mismatch";
        case errc::unusable_column: return "unusable column";
        case errc::parse_error: return "parse error";
        case errc::io_error: return "io error";
    }
    return "unknown error";
}

Spectrum dft_amplitudes(std::span<const double> window) {
    const std::size_t l = window.size();
    if (l < 2) throw Error(errc::invalid_input, "window needs at least 2 samples, got " + std::to_string(l));
    for (std::size_t t = 0; t < l; ++t) {
        if (!std::isfinite(window[t]))
            throw Error(errc::invalid_input, "non-finite sample at index " + std::to_string(t));
    }

    // Twiddle table: W(k, t) = exp(-i 2 pi k t / l) = twiddle[(k * t) mod l].
    // The modular index keeps every factor an exactly reduced angle, so the
    // only error left is summation rounding.
    std::vector<std::complex<double>> twiddle(l);
    constexpr double two_pi = 2.0 * 3.14159265358979323846;
    for (std::size_t j = 0; j < l; ++j) {
        const double angle = -two_pi * static_cast<double>(j) / static_cast<double>(l);
        twiddle[j] = {std::cos(angle), std::sin(angle)};
    }

    Spectrum spectrum;
    spectrum.freqs.resize(l);
    spectrum.amps.resize(l);
    for (std::size_t k = 0; k < l; ++k) {
        std::complex<double> acc{0.0, 0.0};
        std::size_t idx = 0;
        for (std::size_t t = 0; t < l; ++t) {
            acc += window[t] * twiddle[idx];
            idx += k;
            if (idx >= l) idx -= l;
        }
        spectrum.freqs[k] = static_cast<double>(k) / static_cast<double>(l);
        spectrum.amps[k] = std::abs(acc);
    }
    return spectrum;
}

LeastSquaresFit solve_least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& targets) {
    const Eigen::Index n = design.rows();
    const Eigen::Index p = design.cols();
    if (targets.size() != n)
        throw Error(errc::dimension_mismatch, "design has " + std::to_string(n) + " rows but " +
                                                  std::to_string(targets.size()) + " targets");
    if (p < 1) throw Error(errc::invalid_input, "design has no columns");
    if (n <= p)
        throw Error(errc::underdetermined,
                    "need more observations than parameters: n=" + std::to_string(n) +
                        ", p=" + std::to_string(p));

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(design);
    const Eigen::MatrixXd r_factor =
        qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();

    // sigma(design) == sigma(R), and R is only p x p.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(r_factor);
    const auto& sigma = svd.singularValues();
    const double sigma_max = sigma(0);
    const double sigma_min = sigma(sigma.size() - 1);
    if (!(sigma_max > 0.0) || sigma_min / sigma_max < 1e-10)
        throw Error(errc::degenerate_design,
                    "design is rank deficient (singular value ratio " +
                        std::to_string(sigma_max > 0.0 ? sigma_min / sigma_max : 0.0) + ")");

    LeastSquaresFit fit;
    fit.coeffs = qr.solve(targets);
    fit.n_obs = n;
    fit.n_params = p;

    const double rss = (targets - design * fit.coeffs).squaredNorm();
    fit.residual_variance = rss / static_cast<double>(n - p);

    const Eigen::MatrixXd r_inv =
        r_factor.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
    Eigen::MatrixXd xtx_inv = r_inv * r_inv.transpose();
    xtx_inv = 0.5 * (xtx_inv + xtx_inv.transpose()).eval();
    fit.coeff_covariance = fit.residual_variance * xtx_inv;
    return fit;
}

namespace {

// Regularized lower incomplete gamma P(a, x) by power series, for x < a + 1.
double gamma_p_series(double a, double x) {
    if (x <= 0.0) return 0.0;
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int n = 0; n < 1000; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
    }
    const double log_prefix = -x + a * std::log(x) - std::lgamma(a);
    return sum * std::exp(log_prefix);
}

// Regularized upper incomplete gamma Q(a, x) by modified Lentz continued
// fraction, for x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) <= eps) break;
    }
    const double log_prefix = -x + a * std::log(x) - std::lgamma(a);
    return h * std::exp(log_prefix);
}

} // namespace

double chi2_sf(double x, int df) {
    if (df < 1) throw Error(errc::invalid_input, "degrees of freedom must be >= 1, got " + std::to_string(df));
    if (!(x >= 0.0)) throw Error(errc::invalid_input, "chi2_sf requires x >= 0, got " + std::to_string(x));
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;

    const double a = 0.5 * static_cast<double>(df);
    const double half_x = 0.5 * x;
    double q;
    if (half_x < a + 1.0) {
        q = 1.0 - gamma_p_series(a, half_x);
    } else {
        q = gamma_q_continued_fraction(a, half_x);
    }
    if (q < 0.0) q = 0.0;
    if (q > 1.0) q = 1.0;
    return q;
}

} // namespace placy
