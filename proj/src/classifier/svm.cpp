#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "albench/classifier.hpp"
#include "albench/errors.hpp"
#include "albench/rng.hpp"

namespace albench {

LinearSvmModel train_svm(const DesignMatrix& X, std::span<const DocId> rows, std::span<const int> y,
                         double C, std::uint64_t seed, const SvmOptions& options) {
    if (rows.size() != y.size()) throw ArgumentError("train_svm: rows and labels differ in length");
    if (!(C > 0.0)) throw ArgumentError("train_svm: C must be positive");
    const bool has_pos = std::find(y.begin(), y.end(), 1) != y.end();
    const bool has_neg = std::find(y.begin(), y.end(), -1) != y.end();
    if (rows.size() < 2 || !has_pos || !has_neg) throw TrainingError("train_svm: need both classes");
    for (int label : y) {
        if (label != 1 && label != -1) throw ArgumentError("train_svm: labels must be +1/-1");
    }

    const std::size_t n = rows.size();
    LinearSvmModel model;
    model.C = C;
    model.weights.assign(X.dim(), 0.0);
    double& b = model.bias;

    std::vector<double> alpha(n, 0.0);
    std::vector<double> qd(n);
    for (std::size_t i = 0; i < n; ++i) qd[i] = X.squared_norm(rows[i]) + 1.0;

    std::vector<std::size_t> index(n);
    std::iota(index.begin(), index.end(), 0);
    std::size_t active = n;
    Rng rng(seed);

    constexpr double kInf = std::numeric_limits<double>::infinity();
    double pg_max_old = kInf;
    double pg_min_old = -kInf;

    // Small problems get extra epochs so the cap bounds coordinate updates.
    const std::size_t max_epochs = std::max(options.max_epochs, (options.min_updates + n - 1) / n);
    std::size_t epoch = 0;
    for (; epoch < max_epochs; ++epoch) {
        double pg_max = -kInf;
        double pg_min = kInf;
        rng.shuffle(std::span(index.data(), active));

        for (std::size_t s = 0; s < active; ++s) {
            const std::size_t i = index[s];
            const double yi = y[i];
            const double g = yi * (X.dot(rows[i], model.weights) + b) - 1.0;

            double pg = 0.0;
            if (alpha[i] == 0.0) {
                if (g > pg_max_old) {
                    // Shrink: at the lower bound and unlikely to move.
                    --active;
                    std::swap(index[s], index[active]);
                    --s;
                    continue;
                }
                pg = std::min(g, 0.0);
            } else if (alpha[i] == C) {
                if (g < pg_min_old) {
                    --active;
                    std::swap(index[s], index[active]);
                    --s;
                    continue;
                }
                pg = std::max(g, 0.0);
            } else {
                pg = g;
            }
            pg_max = std::max(pg_max, pg);
            pg_min = std::min(pg_min, pg);

            if (std::abs(pg) > 1e-12) {
                const double old = alpha[i];
                alpha[i] = std::clamp(old - g / qd[i], 0.0, C);
                const double delta = (alpha[i] - old) * yi;
                X.axpy(rows[i], delta, model.weights);
                b += delta;
            }
        }

        if (pg_max - pg_min <= options.tolerance) {
            if (active == n) {
                model.converged = true;
                ++epoch;
                break;
            }
            // Converged on the shrunk set; re-check everything once.
            active = n;
            pg_max_old = kInf;
            pg_min_old = -kInf;
            continue;
        }
        pg_max_old = pg_max > 0.0 ? pg_max : kInf;
        pg_min_old = pg_min < 0.0 ? pg_min : -kInf;
    }
    model.epochs = epoch;

    double w_norm2 = b * b;
    for (double w : model.weights) w_norm2 += w * w;
    model.dual_objective = std::accumulate(alpha.begin(), alpha.end(), 0.0) - 0.5 * w_norm2;
    return model;
}

std::vector<double> decision_values(const LinearSvmModel& model, const DesignMatrix& X,
                                    std::span<const DocId> rows) {
    if (model.dim() != X.dim()) {
        throw ArgumentError("decision_values: model dim " + std::to_string(model.dim()) + " vs matrix dim " +
                            std::to_string(X.dim()));
    }
    std::vector<double> out;
    if (rows.empty()) {
        out.reserve(X.n_docs());
        for (std::size_t r = 0; r < X.n_docs(); ++r) out.push_back(model.decision(X, r));
    } else {
        out.reserve(rows.size());
        for (DocId r : rows) out.push_back(model.decision(X, r));
    }
    return out;
}

}  // namespace albench
