// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "../support/oracles.hpp"
#include "../support/reference_results.hpp"
#include "../support/temp_dir.hpp"
#include "albench/cli/commands.hpp"
#include "albench/classifier.hpp"
#include "albench/embedding_file.hpp"
#include "albench/engine.hpp"
#include "albench/representations.hpp"
#include "albench/stats.hpp"
#include "albench/strategies.hpp"
#include "albench/synthetic.hpp"

using namespace albench;
namespace oracle = albench::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

int failures = 0;

void criterion(const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > limit_seconds) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "runtime %.1fs over the %.0fs limit", seconds, limit_seconds);
        if (out.pass) out.detail = buf;
        out.pass = false;
    }
    std::printf("%s  %-28s %6.2fs  %s\n", out.pass ? "PASS" : "FAIL", name.c_str(), seconds, out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

DesignMatrix dense_rows(const std::vector<std::vector<double>>& rows) {
    std::vector<double> values;
    for (const auto& r : rows) values.insert(values.end(), r.begin(), r.end());
    return DesignMatrix::dense(rows.size(), rows[0].size(), values, RepresentationKind::precomputed);
}

Outcome metric_oracles() {
    Outcome out;
    Rng rng(101);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng.below(300);
        std::vector<Label> truth(n), predicted(n);
        std::vector<bool> labelled(n);
        PoolState pool;
        std::map<DocId, Label> predictions;
        for (DocId i = 0; i < n; ++i) {
            truth[i] = rng.uniform() < 0.5 ? Label::positive : Label::negative;
            predicted[i] = rng.uniform() < 0.5 ? Label::positive : Label::negative;
            labelled[i] = rng.uniform() < 0.3;
            if (labelled[i]) {
                pool.labelled[i] = truth[i];
            } else {
                pool.unlabelled.insert(i);
                predictions[i] = predicted[i];
            }
        }
        const double got = accuracy_plus(pool, predictions, truth);
        const double want = oracle::accuracy_plus_counted(truth, labelled, predicted);
        out.require(got == want, fmt("accuracy+ %.17g vs counted %.17g", got, want));
    }
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        LearningCurve curve;
        std::vector<std::pair<double, double>> pts;
        std::size_t spent = 1 + rng.below(20);
        const std::size_t n_points = 1 + rng.below(120);
        for (std::size_t i = 0; i < n_points; ++i) {
            const double acc = rng.uniform();
            curve.points.push_back({spent, acc});
            pts.emplace_back(static_cast<double>(spent), acc);
            spent += 1 + rng.below(25);
        }
        const double got = aulc(curve, spent);
        const double want = oracle::aulc_segment_oracle(pts);
        worst = std::max(worst, std::abs(got - want));
    }
    out.require(worst <= 1e-12, fmt("aulc off by %.3g", worst));
    if (out.pass) out.detail = fmt("1000 pool states exact; 1000 curves max |diff| %.2g", worst);
    return out;
}

Outcome svm_oracle() {
    Outcome out;
    Rng rng(202);
    double worst_dual = 0.0, worst_margin = 0.0;
    int separable = 0;
    for (int set = 0; set < 50; ++set) {
        const std::size_t n = 4 + rng.below(9);  // 4..12 points
        const bool clean = set % 2 == 0;
        const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double offset = rng.uniform(-0.5, 0.5);
        std::vector<std::vector<double>> x;
        std::vector<int> y;
        while (x.size() < n) {
            const double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
            const double side = std::cos(angle) * a + std::sin(angle) * b - offset;
            if (clean && std::abs(side) < 0.2) continue;
            int label = side >= 0 ? 1 : -1;
            if (!clean && rng.uniform() < 0.2) label = -label;
            x.push_back({a, b});
            y.push_back(label);
        }
        // Both classes present.
        if (std::count(y.begin(), y.end(), 1) == 0) y[0] = 1;
        if (std::count(y.begin(), y.end(), -1) == 0) y[0] = -1;
        const auto X = dense_rows(x);
        std::vector<DocId> rows(n);
        std::iota(rows.begin(), rows.end(), 0);

        const double C = clean ? 1000.0 : std::pow(10.0, -1.0 + static_cast<double>(rng.below(4)));
        const auto want = oracle::svm_dual_oracle(x, y, C);
        const auto model = train_svm(X, rows, y, C, static_cast<std::uint64_t>(set));
        const double dual_gap = std::abs(model.dual_objective - want.dual_objective);
        worst_dual = std::max(worst_dual, dual_gap);
        out.require(dual_gap <= 1e-3, fmt("set %g: dual %.6g vs oracle %.6g", set, model.dual_objective, want.dual_objective));

        // Separable when the oracle's solution has no margin violations.
        bool is_separable = true;
        double oracle_margin = 1e300, model_margin = 1e300;
        const double oracle_norm = std::hypot(want.w[0], want.w[1]);
        const double model_norm = std::hypot(model.weights[0], model.weights[1]);
        for (std::size_t i = 0; i < n; ++i) {
            const double fo = want.w[0] * x[i][0] + want.w[1] * x[i][1] + want.w[2];
            const double fm = model.weights[0] * x[i][0] + model.weights[1] * x[i][1] + model.bias;
            if (y[i] * fo < 1.0 - 1e-6) is_separable = false;
            oracle_margin = std::min(oracle_margin, y[i] * fo / oracle_norm);
            model_margin = std::min(model_margin, y[i] * fm / model_norm);
        }
        if (is_separable) {
            ++separable;
            const double rel = std::abs(model_margin - oracle_margin) / oracle_margin;
            worst_margin = std::max(worst_margin, rel);
            out.require(rel <= 0.05, fmt("set %g: margin %.6g vs oracle %.6g", set, model_margin, oracle_margin));
        }
    }
    out.require(separable >= 20, fmt("only %g separable instances", separable));
    if (out.pass) {
        out.detail = fmt("50 sets, max dual diff %.2g; %g separable, max margin rel diff %.2g", worst_dual, separable,
                         worst_margin);
    }
    return out;
}

Outcome wilcoxon_oracle() {
    Outcome out;
    Rng rng(303);
    double worst = 0.0;
    for (std::size_t n = 5; n <= 10; ++n) {
        for (int s = 0; s < 200; ++s) {
            std::vector<double> a(n), b(n);
            for (std::size_t i = 0; i < n; ++i) {
                // Two decimals, so zero differences and tied |d| occur.
                a[i] = std::round(rng.uniform(0.5, 1.0) * 100.0) / 100.0;
                b[i] = std::round((a[i] + rng.normal(0.0, 0.03)) * 100.0) / 100.0;
            }
            const double got = wilcoxon_signed_rank(a, b).p_value;
            const double want = oracle::wilcoxon_enumerated_p(a, b);
            worst = std::max(worst, std::abs(got - want));
        }
    }
    out.require(worst <= 1e-12, fmt("p-value off by %.3g", worst));

    const auto t = oracle::reference_table();
    const auto find = [&](const std::string& name) {
        return static_cast<std::size_t>(std::find(t.methods.begin(), t.methods.end(), name) - t.methods.begin());
    };
    const auto bert_tf = compare_methods(t, find("BERT+QBC"), find("TF+QBC"));
    const auto ft = compare_methods(t, find("FT+QBC"), find("FT_T+QBC"));
    out.require(bert_tf.wins == 8 && bert_tf.draws == 0 && bert_tf.losses == 0,
                fmt("BERT vs TF = %g/%g/%g", bert_tf.wins, bert_tf.draws, bert_tf.losses));
    out.require(ft.wins == 3 && ft.draws == 1 && ft.losses == 4,
                fmt("FT vs FT_T = %g/%g/%g", ft.wins, ft.draws, ft.losses));
    if (out.pass) {
        out.detail = fmt("1200 samples max |diff| %.2g; BERT/TF 8/0/0 p=%.4f", worst, *bert_tf.p_value) +
                     fmt("; FT/FT_T %g/%g/%g", ft.wins, ft.draws, ft.losses);
    }
    return out;
}

Outcome rank_fixture() {
    Outcome out;
    const auto t = oracle::reference_table();
    const auto avg = average_ranks(t);
    const auto& rows = oracle::reference_rows();
    double worst = 0.0;
    for (std::size_t m = 0; m < rows.size(); ++m) {
        const double diff = std::abs(avg[m] - rows[m].average_rank);
        worst = std::max(worst, diff);
        out.require(diff <= 0.01, t.methods[m] + fmt(": %.4f vs %.2f", avg[m], rows[m].average_rank));
    }
    if (out.pass) out.detail = fmt("30 rows, max |diff| %.4f; BERT+uncertainty %.4f", worst, avg[1]);
    return out;
}

Outcome protocol_shape() {
    Outcome out;
    SyntheticSpec spec;
    spec.n_docs = 1200;
    spec.seed = 404;
    const auto data = make_synthetic(spec);
    std::vector<double> values(data.embeddings.begin(), data.embeddings.end());
    const auto X = DesignMatrix::dense(spec.n_docs, spec.dim, values, RepresentationKind::precomputed);
    std::vector<Label> truth;
    for (const auto& [_, label] : data.records) truth.push_back(label);
    const auto sims = cosine_similarity_matrix(X);
    std::size_t curves = 0;
    for (auto strategy : all_strategies()) {
        ExperimentConfig config;
        config.strategy = strategy;
        config.repetitions = 2;
        config.base_seed = 40;
        const auto cell = run_cell(truth, X, config, &sims);
        for (const auto& curve : cell.curves) {
            ++curves;
            out.require(curve.points.size() == 100, std::string(to_string(strategy)) +
                                                        fmt(": %g points", curve.points.size()));
            for (std::size_t i = 0; i < curve.points.size(); ++i) {
                const auto& p = curve.points[i];
                out.require(p.labels_spent == 10 * (i + 1), fmt("point %g at %g labels", i, p.labels_spent));
                out.require(p.accuracy_plus >= static_cast<double>(p.labels_spent) / 1200.0,
                            fmt("accuracy+ %.4f below %g/1200", p.accuracy_plus, p.labels_spent));
            }
        }
    }
    if (out.pass) out.detail = fmt("N=1200, %g curves x 100 points at 10..1000", curves);
    return out;
}

Outcome qualitative_ordering() {
    Outcome out;
    SyntheticSpec spec;
    spec.seed = 505;
    const auto data = make_synthetic(spec);
    const Corpus corpus = preprocess(make_corpus("synthetic", data.records), PreprocessConfig::with_default_stop_words());
    std::vector<double> values(data.embeddings.begin(), data.embeddings.end());
    const auto emb = DesignMatrix::dense(spec.n_docs, spec.dim, values, RepresentationKind::precomputed);
    const auto tf = build_tf(corpus);

    ExperimentConfig config;
    config.repetitions = 10;
    config.budget = 300;
    config.base_seed = 50;
    const auto mean_aulc = [&](const DesignMatrix& X, StrategyKind s) {
        config.strategy = s;
        return run_cell(corpus, X, config).aulc_mean;
    };
    const double emb_unc = mean_aulc(emb, StrategyKind::uncertainty);
    const double emb_rand = mean_aulc(emb, StrategyKind::random);
    const double tf_unc = mean_aulc(tf, StrategyKind::uncertainty);
    out.require(emb_unc - tf_unc >= 0.02, fmt("precomputed %.4f vs tf %.4f under uncertainty", emb_unc, tf_unc));
    out.require(emb_unc - emb_rand >= 0.01, fmt("uncertainty %.4f vs random %.4f", emb_unc, emb_rand));
    out.detail = fmt("N=1000 budget 300 x10: emb/unc %.4f, tf/unc %.4f, emb/rand %.4f", emb_unc, tf_unc, emb_rand);
    return out;
}

Outcome determinism() {
    Outcome out;
    oracle::TempDir dir;
    std::ostringstream log;
    cli::cmd_synth(dir.path(), 400, 32, 606, log);
    nlohmann::json j = {
        {"datasets", {{{"name", "synthetic"},
                       {"path", (dir / "synthetic.jsonl").string()},
                       {"embeddings", {{"emb", (dir / "synthetic.alemb").string()}}}}}},
        {"representations", {"emb", "tf"}},
        {"strategies", {"random", "uncertainty", "id", "qbc", "egal"}},
        {"experiment", {{"repetitions", 3}, {"budget", 200}, {"base_seed", 60}}},
        {"preprocess", {{"min_count", 5}, {"min_doc_freq", 3}}},
    };
    std::vector<fs::path> outs;
    for (const char* name : {"first", "second"}) {
        j["output_dir"] = (dir / name).string();
        const int code = cli::cmd_run(cli::RunManifest::from_json(j), log);
        out.require(code == cli::kOk, fmt("run exited %g", code));
        outs.push_back(dir / name);
    }
    std::size_t compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(outs[0])) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), outs[0]);
        const auto ext = rel.extension();
        if (ext != ".csv" && ext != ".json") continue;
        ++compared;
        out.require(oracle::read_file(entry.path()) == oracle::read_file(outs[1] / rel), rel.string() + " differs");
    }
    out.require(compared >= 18, fmt("only %g output files", compared));
    if (out.pass) out.detail = fmt("2 reps x 5 strategies x 3 repetitions, %g files identical", compared);
    return out;
}

Outcome strategy_invariants() {
    Outcome out;
    Rng rng(707);
    std::size_t contexts = 0;
    for (auto strategy : all_strategies()) {
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = 12 + rng.below(60);
            const std::size_t dim = 2 + rng.below(8);
            std::vector<double> values(n * dim);
            std::vector<Label> truth(n);
            for (std::size_t i = 0; i < n; ++i) {
                truth[i] = i % 2 ? Label::positive : Label::negative;
                for (std::size_t k = 0; k < dim; ++k) {
                    values[i * dim + k] = rng.normal() + (k == 0 ? 0.8 * label_sign(truth[i]) : 0.0);
                }
            }
            const auto X = DesignMatrix::dense(n, dim, values, RepresentationKind::precomputed);
            const auto sims = cosine_similarity_matrix(X);
            PoolState pool = seed_pool(truth, 4, rng.next_u64());
            const std::size_t extra = rng.below(n / 2);
            for (std::size_t e = 0; e < extra && pool.unlabelled.size() > 1; ++e) {
                auto it = pool.unlabelled.begin();
                std::advance(it, static_cast<long>(rng.below(pool.unlabelled.size())));
                const DocId id = *it;
                pool.reveal(id, truth[id]);
            }
            std::vector<DocId> rows;
            std::vector<int> y;
            for (const auto& [id, label] : pool.labelled) {
                rows.push_back(id);
                y.push_back(label_sign(label));
            }
            const auto model = train_svm(X, rows, y, 1.0, rng.next_u64());
            const auto calibration = fit_calibration(model, X, rows, y, 0);
            Rng committee_rng(rng.next_u64());
            const auto committee = build_committee(X, pool, 1.0, committee_rng);
            Rng select_rng(rng.next_u64());
            StrategyContext ctx{.matrix = &X,
                                .pool = &pool,
                                .sims = &sims,
                                .model = &model,
                                .calibration = &calibration,
                                .committee = committee,
                                .rng = &select_rng,
                                .batch_size = 1 + rng.below(15)};
            const auto sel = select_batch(strategy, ctx);
            ++contexts;
            const std::string tag = std::string(to_string(strategy)) + fmt(" trial %g: ", trial);
            const std::set<DocId> unique(sel.ids.begin(), sel.ids.end());
            out.require(unique.size() == sel.ids.size(), tag + "duplicate ids");
            out.require(sel.ids.size() == std::min(ctx.batch_size, pool.unlabelled.size()), tag + "wrong batch size");
            for (DocId id : sel.ids) out.require(pool.unlabelled.contains(id), tag + "id outside U");

            if (strategy == StrategyKind::uncertainty) {
                auto scaled = model;
                const double c = std::exp(rng.uniform(std::log(0.01), std::log(100.0)));
                for (auto& w : scaled.weights) w *= c;
                scaled.bias *= c;
                StrategyContext sctx = ctx;
                sctx.model = &scaled;
                out.require(select_uncertainty(sctx).ids == sel.ids, tag + "not scale invariant");
            }
            if (strategy == StrategyKind::egal) {
                StrategyContext bare = ctx;
                bare.model = nullptr;
                bare.calibration = nullptr;
                bare.committee = {};
                out.require(select_egal(bare).ids == sel.ids, tag + "depends on the model");
            }
            if (strategy == StrategyKind::qbc) {
                for (double s : sel.scores) out.require(s >= 0.0 && s <= std::log(2.0) + 1e-15, tag + "entropy out of range");
            }
        }
    }
    if (out.pass) out.detail = fmt("%g contexts (100 per strategy)", contexts);
    return out;
}

}  // namespace

int main() {
    criterion("metric-oracles", 5, metric_oracles);
    criterion("svm-oracle", 30, svm_oracle);
    criterion("wilcoxon-oracle", 10, wilcoxon_oracle);
    criterion("rank-fixture", 10, rank_fixture);
    criterion("protocol-shape", 300, protocol_shape);
    criterion("qualitative-ordering", 300, qualitative_ordering);
    criterion("determinism", 600, determinism);
    criterion("strategy-invariants", 60, strategy_invariants);
    std::printf("%s: %d failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
