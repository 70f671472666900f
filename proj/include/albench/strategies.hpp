#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "albench/classifier.hpp"
#include "albench/design_matrix.hpp"
#include "albench/pool.hpp"
#include "albench/rng.hpp"
#include "albench/similarity.hpp"

namespace albench {

enum class StrategyKind { random, uncertainty, information_density, qbc, egal };

std::string_view to_string(StrategyKind kind);
/// Accepts random | uncertainty | id | qbc | egal.
StrategyKind parse_strategy(std::string_view name);
const std::vector<StrategyKind>& all_strategies();

inline constexpr std::size_t kCommitteeSize = 5;

/// Everything a strategy may read. Optional members are null when the
/// strategy does not need them.
struct StrategyContext {
    const DesignMatrix* matrix = nullptr;
    const PoolState* pool = nullptr;
    const SimilarityCache* sims = nullptr;
    const LinearSvmModel* model = nullptr;
    const CalibrationModel* calibration = nullptr;
    std::span<const LinearSvmModel> committee;
    Rng* rng = nullptr;
    std::size_t batch_size = 10;
};

struct BatchSelection {
    std::vector<DocId> ids;
    // Parallel to ids; empty for random sampling.
    std::vector<double> scores;
};

BatchSelection select_random(const StrategyContext& ctx);
BatchSelection select_uncertainty(const StrategyContext& ctx);
BatchSelection select_qbc(const StrategyContext& ctx);
BatchSelection select_information_density(const StrategyContext& ctx);
BatchSelection select_egal(const StrategyContext& ctx);
BatchSelection select_batch(StrategyKind kind, const StrategyContext& ctx);

bool needs_calibration(StrategyKind kind);
bool needs_committee(StrategyKind kind);
bool needs_similarities(StrategyKind kind);
/// Random and EGAL never read the model.
bool reads_model(StrategyKind kind);

/// -sum_c (V_c / n) ln(V_c / n) over positive/negative votes.
double vote_entropy(std::size_t positive_votes, std::size_t committee_size);
/// -p ln p - (1-p) ln(1-p).
double binary_entropy(double p);

/// Bagged committee: each member is trained on a bootstrap resample of L of
/// size |L|. Single-class resamples are redrawn up to 100 times; after that
/// one slot is overwritten with a random labelled example of the missing
/// class.
std::vector<LinearSvmModel> build_committee(const DesignMatrix& X, const PoolState& pool, double C, Rng& rng,
                                            std::size_t size = kCommitteeSize, const SvmOptions& options = {});

/// EGAL internals, exposed so tests can check the reconstruction directly.
struct EgalScores {
    double alpha = 0.0;  // neighbourhood similarity threshold
    double beta = 0.0;   // diversity threshold after the batch adjustment
    std::vector<DocId> candidates;
    std::vector<double> density;    // parallel to pool->unlabelled order
    std::vector<double> diversity;  // max similarity to L, parallel as above
};
inline constexpr double kEgalAlphaStdWeight = 0.5;
inline constexpr double kEgalCandidateQuantile = 0.25;
EgalScores egal_scores(const StrategyContext& ctx);

}  // namespace albench
