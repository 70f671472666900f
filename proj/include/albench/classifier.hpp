#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "albench/corpus.hpp"
#include "albench/design_matrix.hpp"

namespace albench {

struct SvmOptions {
    // Stopping threshold on the projected-gradient spread.
    double tolerance = 1e-4;
    std::size_t max_epochs = 10000;
    // Raises the epoch cap to min_updates / n on small training sets.
    std::size_t min_updates = 1000000;
};

struct LinearSvmModel {
    std::vector<double> weights;
    double bias = 0.0;
    double C = 1.0;
    std::size_t epochs = 0;
    // Dual objective sum(alpha) - 0.5 * |w_aug|^2 at termination, where
    // w_aug includes the bias as the weight of a constant feature.
    double dual_objective = 0.0;
    bool converged = false;

    std::size_t dim() const { return weights.size(); }
    double decision(const DesignMatrix& X, std::size_t row) const { return X.dot(row, weights) + bias; }
};

/// L2-regularized hinge-loss linear SVM trained by dual coordinate descent.
/// y holds +1/-1, parallel to rows. Deterministic for fixed inputs and seed.
LinearSvmModel train_svm(const DesignMatrix& X, std::span<const DocId> rows, std::span<const int> y,
                         double C, std::uint64_t seed, const SvmOptions& options = {});

/// w.x + b for each of the given rows (all rows when rows is empty).
std::vector<double> decision_values(const LinearSvmModel& model, const DesignMatrix& X,
                                    std::span<const DocId> rows = {});

/// Platt sigmoid p(+|f) = 1 / (1 + exp(A f + B)).
struct CalibrationModel {
    double A = 0.0;
    double B = 0.0;

    double probability(double decision) const;
};

/// Fits the sigmoid by regularized maximum likelihood on the model's own
/// decision values, with the smoothed targets (N+ + 1)/(N+ + 2) and
/// 1/(N- + 2). Newton's method with backtracking.
CalibrationModel fit_calibration(const LinearSvmModel& model, const DesignMatrix& X,
                                 std::span<const DocId> rows, std::span<const int> y, std::uint64_t seed);
CalibrationModel fit_sigmoid(std::span<const double> decisions, std::span<const int> y);

/// Stratified k-fold selection of C. Ties go to the smallest C.
double tune_C(const DesignMatrix& X, std::span<const DocId> rows, std::span<const int> y,
              std::span<const double> grid, std::size_t folds, std::uint64_t seed,
              const SvmOptions& options = {});

/// Cross-validated correct-prediction count for one C; exposed for tests.
std::size_t cross_validated_correct(const DesignMatrix& X, std::span<const DocId> rows, std::span<const int> y,
                                    double C, std::size_t folds, std::uint64_t seed,
                                    const SvmOptions& options = {});

inline const std::vector<double>& default_c_grid() {
    static const std::vector<double> grid = {0.01, 0.1, 1.0, 10.0, 100.0};
    return grid;
}

}  // namespace albench
