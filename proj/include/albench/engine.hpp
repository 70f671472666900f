#pragma once

#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "albench/classifier.hpp"
#include "albench/corpus.hpp"
#include "albench/design_matrix.hpp"
#include "albench/pool.hpp"
#include "albench/similarity.hpp"
#include "albench/strategies.hpp"

namespace albench {

struct ExperimentConfig {
    std::size_t seed_size = 10;
    std::size_t batch_size = 10;
    std::size_t budget = 1000;
    std::size_t repetitions = 10;
    // Rounds between C re-tuning; 0 disables tuning.
    std::size_t tune_every = 10;
    std::size_t cv_folds = 5;
    std::vector<double> c_grid = default_c_grid();
    // C used until the first tuning, or always when tuning is off.
    double initial_c = 1.0;
    StrategyKind strategy = StrategyKind::random;
    std::string representation = "tf";
    std::uint64_t base_seed = 0;
    // Concurrent repetitions inside one cell; 0 = hardware concurrency.
    std::size_t workers = 1;
    SvmOptions svm;

    /// Throws ArgumentError on an invalid combination.
    void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& config);

struct CurvePoint {
    std::size_t labels_spent = 0;
    double accuracy_plus = 0.0;

    bool operator==(const CurvePoint&) const = default;
};

struct LearningCurve {
    std::vector<CurvePoint> points;
    std::uint64_t seed = 0;

    bool operator==(const LearningCurve&) const = default;
};

/// seed_size / 2 documents of each class, drawn uniformly.
PoolState seed_pool(std::span<const Label> truth, std::size_t seed_size, std::uint64_t rng_seed);
PoolState seed_pool(const Corpus& corpus, std::size_t seed_size, std::uint64_t rng_seed);

/// (|L| + correct machine predictions on U) / N. Human labels count as
/// correct. predictions must cover U exactly.
double accuracy_plus(const PoolState& pool, const std::map<DocId, Label>& predictions,
                     std::span<const Label> truth);

/// Trapezoidal area under accuracy+ over labels spent, normalized by the
/// width of the curve. A single point returns its own accuracy.
double aulc(const LearningCurve& curve, std::size_t budget);

/// One simulated run from the seed set to the budget. Similarities are
/// computed here when the strategy needs them and none are passed in.
LearningCurve run_repetition(std::span<const Label> truth, const DesignMatrix& matrix,
                             const ExperimentConfig& config, std::uint64_t rep_seed,
                             const SimilarityCache* sims = nullptr);
LearningCurve run_repetition(const Corpus& corpus, const DesignMatrix& matrix, const ExperimentConfig& config,
                             std::uint64_t rep_seed, const SimilarityCache* sims = nullptr);

struct CellResult {
    std::string dataset;
    ExperimentConfig config;
    std::vector<LearningCurve> curves;
    std::vector<double> aulc;
    double aulc_mean = 0.0;
    // Sample standard deviation; 0 for a single repetition.
    double aulc_std = 0.0;
};

/// Repetition r is seeded with base_seed + r. Similarities are computed here
/// when the strategy needs them and none are passed in.
CellResult run_cell(std::span<const Label> truth, const DesignMatrix& matrix, const ExperimentConfig& config,
                    const SimilarityCache* sims = nullptr, std::string dataset = {});
CellResult run_cell(const Corpus& corpus, const DesignMatrix& matrix, const ExperimentConfig& config,
                    const SimilarityCache* sims = nullptr);

nlohmann::json to_json(const CellResult& result);

/// Rounds to 6 significant digits, the precision used in every output file.
double round_sig6(double value);

}  // namespace albench
