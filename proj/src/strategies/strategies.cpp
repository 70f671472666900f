#include "albench/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "albench/errors.hpp"

namespace albench {
namespace {

void require_common(const StrategyContext& ctx) {
    if (ctx.pool == nullptr) throw ContractError("strategy context has no pool");
}

std::vector<DocId> pool_ids(const StrategyContext& ctx) {
    return {ctx.pool->unlabelled.begin(), ctx.pool->unlabelled.end()};
}

std::size_t batch_length(const StrategyContext& ctx) {
    return std::min(ctx.batch_size, ctx.pool->unlabelled.size());
}

// Top k by score (descending when `highest`), ties to the smaller id.
BatchSelection top_k(const std::vector<DocId>& ids, const std::vector<double>& scores, std::size_t k,
                     bool highest) {
    std::vector<std::size_t> order(ids.size());
    std::iota(order.begin(), order.end(), 0);
    const auto better = [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return highest ? scores[a] > scores[b] : scores[a] < scores[b];
        return ids[a] < ids[b];
    };
    k = std::min(k, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<long>(k), order.end(), better);
    BatchSelection out;
    out.ids.reserve(k);
    out.scores.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.ids.push_back(ids[order[i]]);
        out.scores.push_back(scores[order[i]]);
    }
    return out;
}

}  // namespace

std::string_view to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::random: return "random";
        case StrategyKind::uncertainty: return "uncertainty";
        case StrategyKind::information_density: return "id";
        case StrategyKind::qbc: return "qbc";
        case StrategyKind::egal: return "egal";
    }
    return "unknown";
}

StrategyKind parse_strategy(std::string_view name) {
    for (auto kind : all_strategies()) {
        if (to_string(kind) == name) return kind;
    }
    throw ArgumentError("unknown strategy '" + std::string(name) + "' (random|uncertainty|id|qbc|egal)");
}

const std::vector<StrategyKind>& all_strategies() {
    static const std::vector<StrategyKind> kinds = {StrategyKind::random, StrategyKind::uncertainty,
                                                    StrategyKind::information_density, StrategyKind::qbc,
                                                    StrategyKind::egal};
    return kinds;
}

bool needs_calibration(StrategyKind kind) { return kind == StrategyKind::information_density; }
bool needs_committee(StrategyKind kind) { return kind == StrategyKind::qbc; }
bool needs_similarities(StrategyKind kind) {
    return kind == StrategyKind::information_density || kind == StrategyKind::egal;
}
bool reads_model(StrategyKind kind) {
    return kind == StrategyKind::uncertainty || kind == StrategyKind::information_density;
}

double vote_entropy(std::size_t positive_votes, std::size_t committee_size) {
    double h = 0.0;
    for (std::size_t v : {positive_votes, committee_size - positive_votes}) {
        if (v == 0) continue;
        const double p = static_cast<double>(v) / static_cast<double>(committee_size);
        h -= p * std::log(p);
    }
    return h;
}

double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * std::log(p);
    if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
    return h;
}

BatchSelection select_random(const StrategyContext& ctx) {
    require_common(ctx);
    if (ctx.rng == nullptr) throw ContractError("random sampling needs an rng");
    auto ids = pool_ids(ctx);
    const std::size_t k = batch_length(ctx);
    // Partial Fisher-Yates: the first k slots form the sample.
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(ctx.rng->below(ids.size() - i));
        std::swap(ids[i], ids[j]);
    }
    ids.resize(k);
    return {std::move(ids), {}};
}

BatchSelection select_uncertainty(const StrategyContext& ctx) {
    require_common(ctx);
    if (ctx.model == nullptr || ctx.matrix == nullptr) throw ContractError("uncertainty sampling needs a model");
    const auto ids = pool_ids(ctx);
    const auto decisions = decision_values(*ctx.model, *ctx.matrix, ids);
    std::vector<double> distance(decisions.size());
    std::transform(decisions.begin(), decisions.end(), distance.begin(), [](double d) { return std::abs(d); });
    return top_k(ids, distance, batch_length(ctx), false);
}

BatchSelection select_qbc(const StrategyContext& ctx) {
    require_common(ctx);
    if (ctx.committee.size() != kCommitteeSize) {
        throw ContractError("QBC needs a committee of " + std::to_string(kCommitteeSize) + " models, got " +
                            std::to_string(ctx.committee.size()));
    }
    if (ctx.matrix == nullptr) throw ContractError("QBC needs the design matrix");
    const auto ids = pool_ids(ctx);
    std::vector<std::size_t> votes(ids.size(), 0);
    for (const auto& member : ctx.committee) {
        const auto d = decision_values(member, *ctx.matrix, ids);
        for (std::size_t i = 0; i < ids.size(); ++i) votes[i] += d[i] >= 0.0 ? 1 : 0;
    }
    std::vector<double> entropy(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) entropy[i] = vote_entropy(votes[i], kCommitteeSize);
    return top_k(ids, entropy, batch_length(ctx), true);
}

BatchSelection select_information_density(const StrategyContext& ctx) {
    require_common(ctx);
    if (ctx.sims == nullptr) throw ContractError("information density needs the similarity cache");
    if (ctx.model == nullptr || ctx.calibration == nullptr || ctx.matrix == nullptr) {
        throw ContractError("information density needs a model and its calibration");
    }
    const auto ids = pool_ids(ctx);
    const auto decisions = decision_values(*ctx.model, *ctx.matrix, ids);
    const auto& sims = *ctx.sims;
    const double inv_u = 1.0 / static_cast<double>(ids.size());

    std::vector<double> scores(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        double sum = 0.0;
        for (DocId u : ids) sum += sims(ids[i], u);
        // Negative mean similarity is clamped so scores stay non-negative.
        const double density = std::max(0.0, sum * inv_u);
        scores[i] = binary_entropy(ctx.calibration->probability(decisions[i])) * density;
    }
    return top_k(ids, scores, batch_length(ctx), true);
}

EgalScores egal_scores(const StrategyContext& ctx) {
    require_common(ctx);
    if (ctx.sims == nullptr) throw ContractError("EGAL needs the similarity cache");
    const auto& sims = *ctx.sims;
    EgalScores out;
    out.alpha = sims.pair_mean() - kEgalAlphaStdWeight * sims.pair_stddev();

    const auto ids = pool_ids(ctx);
    out.density.resize(ids.size());
    out.diversity.resize(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const DocId u = ids[i];
        double density = 0.0;
        for (std::size_t v = 0; v < sims.size(); ++v) {
            if (v == u) continue;
            const double s = sims(u, v);
            if (s >= out.alpha) density += s;
        }
        out.density[i] = density;
        double nearest = -std::numeric_limits<double>::infinity();
        for (const auto& [l, _] : ctx.pool->labelled) nearest = std::max(nearest, sims(u, l));
        out.diversity[i] = nearest;
    }

    if (ids.empty()) return out;
    std::vector<double> sorted = out.diversity;
    std::sort(sorted.begin(), sorted.end());
    // Nearest-rank quantile, then widened until a full batch fits.
    const auto rank = static_cast<std::size_t>(std::ceil(kEgalCandidateQuantile * static_cast<double>(sorted.size())));
    std::size_t pos = rank == 0 ? 0 : rank - 1;
    if (batch_length(ctx) > 0) pos = std::max(pos, batch_length(ctx) - 1);
    out.beta = sorted[std::min(pos, sorted.size() - 1)];
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (out.diversity[i] <= out.beta) out.candidates.push_back(ids[i]);
    }
    return out;
}

BatchSelection select_egal(const StrategyContext& ctx) {
    const auto scores = egal_scores(ctx);
    const auto ids = pool_ids(ctx);
    std::vector<DocId> cand_ids;
    std::vector<double> cand_density;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (scores.diversity[i] <= scores.beta) {
            cand_ids.push_back(ids[i]);
            cand_density.push_back(scores.density[i]);
        }
    }
    return top_k(cand_ids, cand_density, batch_length(ctx), true);
}

BatchSelection select_batch(StrategyKind kind, const StrategyContext& ctx) {
    switch (kind) {
        case StrategyKind::random: return select_random(ctx);
        case StrategyKind::uncertainty: return select_uncertainty(ctx);
        case StrategyKind::information_density: return select_information_density(ctx);
        case StrategyKind::qbc: return select_qbc(ctx);
        case StrategyKind::egal: return select_egal(ctx);
    }
    throw ContractError("unknown strategy");
}

std::vector<LinearSvmModel> build_committee(const DesignMatrix& X, const PoolState& pool, double C, Rng& rng,
                                            std::size_t size, const SvmOptions& options) {
    std::vector<DocId> ids;
    std::vector<int> y;
    for (const auto& [id, label] : pool.labelled) {
        ids.push_back(id);
        y.push_back(label_sign(label));
    }
    const std::size_t n = ids.size();
    constexpr int kMaxRedraws = 100;

    std::vector<LinearSvmModel> committee;
    committee.reserve(size);
    std::vector<DocId> sample_ids(n);
    std::vector<int> sample_y(n);
    for (std::size_t m = 0; m < size; ++m) {
        bool both = false;
        for (int attempt = 0; attempt < kMaxRedraws && !both; ++attempt) {
            bool pos = false;
            bool neg = false;
            for (std::size_t i = 0; i < n; ++i) {
                const auto pick = static_cast<std::size_t>(rng.below(n));
                sample_ids[i] = ids[pick];
                sample_y[i] = y[pick];
                (y[pick] > 0 ? pos : neg) = true;
            }
            both = pos && neg;
        }
        if (!both) {
            const int missing = -sample_y[0];
            std::vector<std::size_t> pool_of_missing;
            for (std::size_t i = 0; i < n; ++i) {
                if (y[i] == missing) pool_of_missing.push_back(i);
            }
            if (pool_of_missing.empty()) throw TrainingError("committee: labelled set has a single class");
            const std::size_t pick = pool_of_missing[rng.below(pool_of_missing.size())];
            const std::size_t slot = static_cast<std::size_t>(rng.below(n));
            sample_ids[slot] = ids[pick];
            sample_y[slot] = y[pick];
        }
        committee.push_back(train_svm(X, sample_ids, sample_y, C, rng.derive_seed(), options));
    }
    return committee;
}

}  // namespace albench
