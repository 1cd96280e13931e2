#pragma once

#include "placy/discovery.hpp"
#include "placy/synth.hpp"

#include <cstddef>

namespace placy {

/// Directed-edge confusion counts over the d*(d-1) off-diagonal slots, with
/// edge-present as the positive class. 0/0 ratios resolve to 0 except TNR,
/// which is vacuously 1 when no true negatives exist.
struct EvalReport {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;
    double f1 = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double tnr = 0.0;
};

EvalReport evaluate(const CausalGraph& predicted, const GroundTruth& truth);

} // namespace placy
