#include <algorithm>

#include "albench/classifier.hpp"
#include "albench/errors.hpp"
#include "albench/rng.hpp"

namespace albench {
namespace {

// Fold index per sample: each class is shuffled and dealt round-robin.
std::vector<std::size_t> stratified_folds(std::span<const int> y, std::size_t folds, std::uint64_t seed) {
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    for (std::size_t i = 0; i < y.size(); ++i) (y[i] > 0 ? pos : neg).push_back(i);
    Rng rng(seed);
    rng.shuffle(std::span(pos));
    rng.shuffle(std::span(neg));
    std::vector<std::size_t> fold(y.size());
    std::size_t next = 0;
    for (const auto* group : {&pos, &neg}) {
        for (std::size_t i : *group) fold[i] = next++ % folds;
    }
    return fold;
}

}  // namespace

std::size_t cross_validated_correct(const DesignMatrix& X, std::span<const DocId> rows, std::span<const int> y,
                                    double C, std::size_t folds, std::uint64_t seed, const SvmOptions& options) {
    if (rows.size() != y.size()) throw ArgumentError("cross-validation: rows and labels differ in length");
    if (folds < 2 || rows.size() < folds) throw ArgumentError("cross-validation: need at least `folds` samples");
    const auto fold = stratified_folds(y, folds, seed);

    std::size_t correct = 0;
    for (std::size_t k = 0; k < folds; ++k) {
        std::vector<DocId> train_rows;
        std::vector<int> train_y;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (fold[i] != k) {
                train_rows.push_back(rows[i]);
                train_y.push_back(y[i]);
            }
        }
        const bool has_pos = std::find(train_y.begin(), train_y.end(), 1) != train_y.end();
        const bool has_neg = std::find(train_y.begin(), train_y.end(), -1) != train_y.end();
        if (has_pos && has_neg) {
            const auto model = train_svm(X, train_rows, train_y, C, seed + k, options);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (fold[i] != k) continue;
                const int pred = model.decision(X, rows[i]) >= 0.0 ? 1 : -1;
                correct += pred == y[i] ? 1 : 0;
            }
        } else {
            // Single-class training split: predict that class.
            const int only = has_pos ? 1 : -1;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (fold[i] == k && y[i] == only) ++correct;
            }
        }
    }
    return correct;
}

double tune_C(const DesignMatrix& X, std::span<const DocId> rows, std::span<const int> y,
              std::span<const double> grid, std::size_t folds, std::uint64_t seed, const SvmOptions& options) {
    if (grid.empty()) throw ArgumentError("tune_C: empty grid");
    if (grid.size() == 1) return grid.front();

    std::vector<double> sorted(grid.begin(), grid.end());
    std::sort(sorted.begin(), sorted.end());
    double best_c = sorted.front();
    std::size_t best = 0;
    bool first = true;
    for (double c : sorted) {
        const std::size_t correct = cross_validated_correct(X, rows, y, c, folds, seed, options);
        if (first || correct > best) {
            best = correct;
            best_c = c;
            first = false;
        }
    }
    return best_c;
}

}  // namespace albench
