#pragma once

#include <map>
#include <span>
#include <vector>

#include "albench/corpus.hpp"
#include "albench/engine.hpp"

// Reference implementations written independently of the library code.
// They are slow and only meant for small inputs.
namespace albench::testing {

struct QpSolution {
    std::vector<double> alpha;
    std::vector<double> w;  // includes the bias weight as the last entry
    double dual_objective;
    double primal_objective;
};

/// Maximizes sum(alpha) - 0.5 alpha' Q alpha over the box [0, C], where
/// Q_ij = y_i y_j (x_i . x_j + 1), by accelerated projected gradient.
/// Points are dense rows of equal length.
QpSolution svm_dual_oracle(const std::vector<std::vector<double>>& x, const std::vector<int>& y, double C,
                           std::size_t iterations = 200000);

/// Two-sided p-value by enumerating all 2^n sign assignments of the
/// mid-ranked non-zero |differences|.
double wilcoxon_enumerated_p(std::span<const double> a, std::span<const double> b);

/// Area of each trapezoid as rectangle plus triangle, summed, over the
/// curve's width.
double aulc_segment_oracle(const std::vector<std::pair<double, double>>& points);

/// Counts correct labels document by document.
double accuracy_plus_counted(const std::vector<Label>& truth, const std::vector<bool>& labelled,
                             const std::vector<Label>& predicted);

}  // namespace albench::testing
