#ifndef LEMON_SCORING_HPP_
#define LEMON_SCORING_HPP_

#include <stdexcept>

#include <lemon/graph.hpp>

namespace lemon {

struct ScoreReport {
    double f1 = 0.0;
    double precision = 0.0;
    double recall = 0.0;
};

/// F1 of a detected community against a ground-truth community. Zero
/// overlap scores 0.
inline ScoreReport f1_score(const VertexSet& detected, const VertexSet& truth) {
    if (detected.empty() || truth.empty())
        throw std::invalid_argument("f1_score requires nonempty sets");
    const auto common = static_cast<double>(detected.intersection_size(truth));
    ScoreReport r;
    r.precision = common / static_cast<double>(detected.size());
    r.recall = common / static_cast<double>(truth.size());
    if (common > 0.0)
        r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
    return r;
}

} // namespace lemon

#endif // LEMON_SCORING_HPP_
