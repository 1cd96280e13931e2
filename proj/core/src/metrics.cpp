#include "placy/metrics.hpp"

#include "placy/error.hpp"

#include <string>

namespace placy {

EvalReport evaluate(const CausalGraph& predicted, const GroundTruth& truth) {
    const std::size_t d = predicted.n_vars;
    if (truth.n_vars != d)
        throw Error(errc::dimension_mismatch,
                    "predicted graph has " + std::to_string(d) + " variables, ground truth has " +
                        std::to_string(truth.n_vars));

    EvalReport report;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (i == j) continue;
            const bool pred = predicted.edge(i, j);
            const bool real = truth.edge(i, j);
            if (pred && real) ++report.tp;
            else if (pred && !real) ++report.fp;
            else if (!pred && real) ++report.fn;
            else ++report.tn;
        }
    }

    const double tp = static_cast<double>(report.tp);
    const double fp = static_cast<double>(report.fp);
    const double tn = static_cast<double>(report.tn);
    const double fn = static_cast<double>(report.fn);
    report.precision = (report.tp + report.fp) > 0 ? tp / (tp + fp) : 0.0;
    report.recall = (report.tp + report.fn) > 0 ? tp / (tp + fn) : 0.0;
    report.f1 = (2 * report.tp + report.fp + report.fn) > 0 ? 2.0 * tp / (2.0 * tp + fp + fn) : 0.0;
    report.tnr = (report.tn + report.fp) > 0 ? tn / (tn + fp) : 1.0;
    return report;
}

} // namespace placy
