#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "albench/engine.hpp"
#include "albench/errors.hpp"

namespace albench {

double accuracy_plus(const PoolState& pool, const std::map<DocId, Label>& predictions,
                     std::span<const Label> truth) {
    const std::size_t n = pool.n_docs();
    if (truth.size() != n) throw ArgumentError("accuracy+: truth does not cover every document");
    if (predictions.size() != pool.unlabelled.size()) {
        throw ArgumentError("accuracy+: " + std::to_string(predictions.size()) + " predictions for " +
                            std::to_string(pool.unlabelled.size()) + " unlabelled documents");
    }
    std::size_t correct = pool.labelled.size();
    for (const auto& [id, label] : predictions) {
        if (!pool.unlabelled.contains(id)) {
            throw ArgumentError("accuracy+: prediction for document " + std::to_string(id) +
                                " which is not unlabelled");
        }
        if (label == truth[id]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(n);
}

double aulc(const LearningCurve& curve, std::size_t budget) {
    const auto& pts = curve.points;
    if (pts.empty()) throw ArgumentError("aulc: empty curve");
    if (pts.back().labels_spent > budget) throw ArgumentError("aulc: curve extends past the budget");
    if (pts.size() == 1) return pts.front().accuracy_plus;

    double area = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].labels_spent <= pts[i - 1].labels_spent) {
            throw ArgumentError("aulc: labels_spent must be strictly increasing");
        }
        const double width = static_cast<double>(pts[i].labels_spent - pts[i - 1].labels_spent);
        area += 0.5 * (pts[i].accuracy_plus + pts[i - 1].accuracy_plus) * width;
    }
    const double span = static_cast<double>(pts.back().labels_spent - pts.front().labels_spent);
    return area / span;
}

double round_sig6(double value) {
    if (value == 0.0 || !std::isfinite(value)) return value;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return std::strtod(buf, nullptr);
}

}  // namespace albench
