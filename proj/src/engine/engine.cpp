#include "albench/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "albench/errors.hpp"
#include "albench/rng.hpp"

namespace albench {

void ExperimentConfig::validate() const {
    if (seed_size < 2 || seed_size % 2 != 0) throw ArgumentError("seed_size must be even and at least 2");
    if (budget < seed_size) throw ArgumentError("budget must be at least seed_size");
    if (batch_size < 1) throw ArgumentError("batch_size must be at least 1");
    if (repetitions < 1) throw ArgumentError("repetitions must be at least 1");
    if (c_grid.empty()) throw ArgumentError("C grid is empty");
    for (double c : c_grid) {
        if (!(c > 0.0)) throw ArgumentError("C grid values must be positive");
    }
    if (!(initial_c > 0.0)) throw ArgumentError("initial C must be positive");
    if (tune_every > 0 && cv_folds < 2) throw ArgumentError("cv_folds must be at least 2");
}

nlohmann::json to_json(const ExperimentConfig& c) {
    return {
        {"seed_size", c.seed_size},
        {"batch_size", c.batch_size},
        {"budget", c.budget},
        {"repetitions", c.repetitions},
        {"tune_every", c.tune_every},
        {"cv_folds", c.cv_folds},
        {"c_grid", c.c_grid},
        {"initial_c", c.initial_c},
        {"strategy", std::string(to_string(c.strategy))},
        {"representation", c.representation},
        {"base_seed", c.base_seed},
        {"svm_tolerance", c.svm.tolerance},
        {"svm_max_epochs", c.svm.max_epochs},
        {"svm_min_updates", c.svm.min_updates},
    };
}

PoolState seed_pool(std::span<const Label> truth, std::size_t seed_size, std::uint64_t rng_seed) {
    if (seed_size % 2 != 0) throw ArgumentError("seed_size must be even");
    const std::size_t per_class = seed_size / 2;
    std::vector<DocId> pos;
    std::vector<DocId> neg;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        (truth[i] == Label::positive ? pos : neg).push_back(static_cast<DocId>(i));
    }
    if (pos.size() < per_class || neg.size() < per_class) {
        throw DatasetError("seed_pool: each class needs at least " + std::to_string(per_class) +
                           " documents (positives " + std::to_string(pos.size()) + ", negatives " +
                           std::to_string(neg.size()) + ")");
    }
    Rng rng(rng_seed);
    rng.shuffle(std::span(pos));
    rng.shuffle(std::span(neg));

    PoolState pool;
    for (std::size_t i = 0; i < truth.size(); ++i) pool.unlabelled.insert(static_cast<DocId>(i));
    for (std::size_t i = 0; i < per_class; ++i) {
        pool.reveal(pos[i], Label::positive);
        pool.reveal(neg[i], Label::negative);
    }
    return pool;
}

PoolState seed_pool(const Corpus& corpus, std::size_t seed_size, std::uint64_t rng_seed) {
    const auto truth = corpus.labels();
    return seed_pool(truth, seed_size, rng_seed);
}

LearningCurve run_repetition(std::span<const Label> truth, const DesignMatrix& matrix,
                             const ExperimentConfig& config, std::uint64_t rep_seed, const SimilarityCache* sims) {
    config.validate();
    if (matrix.n_docs() != truth.size()) {
        throw AlignmentError("design matrix has " + std::to_string(matrix.n_docs()) + " rows for " +
                             std::to_string(truth.size()) + " documents");
    }
    const StrategyKind strategy = config.strategy;
    std::optional<SimilarityCache> own_sims;
    if (needs_similarities(strategy) && sims == nullptr) {
        own_sims = cosine_similarity_matrix(matrix);
        sims = &*own_sims;
    }
    if (needs_similarities(strategy) && sims->size() != truth.size()) {
        throw ContractError("strategy '" + std::string(to_string(strategy)) + "' needs an aligned similarity cache");
    }

    Rng rng(rep_seed);
    PoolState pool = seed_pool(truth, config.seed_size, rng.derive_seed());
    LearningCurve curve;
    curve.seed = rep_seed;
    double C = config.initial_c;

    for (;;) {
        if (pool.unlabelled.empty()) {
            curve.points.push_back({pool.labels_spent(), 1.0});
            break;
        }

        std::vector<DocId> l_ids;
        std::vector<int> l_y;
        l_ids.reserve(pool.labelled.size());
        for (const auto& [id, label] : pool.labelled) {
            l_ids.push_back(id);
            l_y.push_back(label_sign(label));
        }

        if (config.tune_every > 0 && pool.round % config.tune_every == 0 && l_ids.size() >= config.cv_folds) {
            C = tune_C(matrix, l_ids, l_y, config.c_grid, config.cv_folds, rng.derive_seed(), config.svm);
        }
        const LinearSvmModel model = train_svm(matrix, l_ids, l_y, C, rng.derive_seed(), config.svm);

        std::map<DocId, Label> predictions;
        for (DocId id : pool.unlabelled) {
            predictions.emplace_hint(predictions.end(), id,
                                     model.decision(matrix, id) >= 0.0 ? Label::positive : Label::negative);
        }
        curve.points.push_back({pool.labels_spent(), accuracy_plus(pool, predictions, truth)});

        if (pool.labels_spent() >= config.budget) break;

        StrategyContext ctx;
        ctx.matrix = &matrix;
        ctx.pool = &pool;
        ctx.rng = &rng;
        ctx.batch_size = std::min(config.batch_size, config.budget - pool.labels_spent());
        if (reads_model(strategy)) ctx.model = &model;
        if (needs_similarities(strategy)) ctx.sims = sims;

        CalibrationModel calibration;
        if (needs_calibration(strategy)) {
            calibration = fit_calibration(model, matrix, l_ids, l_y, rep_seed);
            ctx.calibration = &calibration;
        }
        std::vector<LinearSvmModel> committee;
        if (needs_committee(strategy)) {
            committee = build_committee(matrix, pool, C, rng, kCommitteeSize, config.svm);
            ctx.committee = committee;
        }

        const BatchSelection batch = select_batch(strategy, ctx);
        for (DocId id : batch.ids) pool.reveal(id, truth[id]);
        ++pool.round;
    }
    return curve;
}

LearningCurve run_repetition(const Corpus& corpus, const DesignMatrix& matrix, const ExperimentConfig& config,
                             std::uint64_t rep_seed, const SimilarityCache* sims) {
    const auto truth = corpus.labels();
    return run_repetition(truth, matrix, config, rep_seed, sims);
}

CellResult run_cell(std::span<const Label> truth, const DesignMatrix& matrix, const ExperimentConfig& config,
                    const SimilarityCache* sims, std::string dataset) {
    config.validate();
    SimilarityCache own_sims;
    if (needs_similarities(config.strategy) && sims == nullptr) {
        own_sims = cosine_similarity_matrix(matrix);
        sims = &own_sims;
    }

    CellResult result;
    result.dataset = std::move(dataset);
    result.config = config;
    result.curves.resize(config.repetitions);

    std::size_t workers = config.workers == 0 ? std::thread::hardware_concurrency() : config.workers;
    workers = std::clamp<std::size_t>(workers, 1, config.repetitions);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto work = [&] {
        for (std::size_t r = next++; r < config.repetitions; r = next++) {
            try {
                result.curves[r] = run_repetition(truth, matrix, config, config.base_seed + r, sims);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    for (const auto& curve : result.curves) result.aulc.push_back(aulc(curve, config.budget));
    const double n = static_cast<double>(result.aulc.size());
    double sum = 0.0;
    for (double a : result.aulc) sum += a;
    result.aulc_mean = sum / n;
    if (result.aulc.size() > 1) {
        double ss = 0.0;
        for (double a : result.aulc) ss += (a - result.aulc_mean) * (a - result.aulc_mean);
        result.aulc_std = std::sqrt(ss / (n - 1.0));
    }
    return result;
}

CellResult run_cell(const Corpus& corpus, const DesignMatrix& matrix, const ExperimentConfig& config,
                    const SimilarityCache* sims) {
    const auto truth = corpus.labels();
    return run_cell(truth, matrix, config, sims, corpus.name);
}

nlohmann::json to_json(const CellResult& result) {
    nlohmann::json curves = nlohmann::json::array();
    for (std::size_t r = 0; r < result.curves.size(); ++r) {
        const auto& c = result.curves[r];
        std::vector<std::size_t> labels;
        std::vector<double> acc;
        for (const auto& p : c.points) {
            labels.push_back(p.labels_spent);
            acc.push_back(round_sig6(p.accuracy_plus));
        }
        curves.push_back({{"repetition", r},
                          {"seed", c.seed},
                          {"labels", labels},
                          {"accuracy_plus", acc},
                          {"aulc", round_sig6(result.aulc[r])}});
    }
    return {
        {"dataset", result.dataset},
        {"config", to_json(result.config)},
        {"curves", curves},
        {"aulc_mean", round_sig6(result.aulc_mean)},
        {"aulc_std", round_sig6(result.aulc_std)},
    };
}

}  // namespace albench
