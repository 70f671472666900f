#include "albench/lda.hpp"

#include <string>

#include "albench/errors.hpp"
#include "albench/rng.hpp"

namespace albench {

LdaModel fit_lda(const Corpus& corpus, const LdaOptions& options) {
    if (!corpus.preprocessed()) throw ArgumentError("corpus must be preprocessed first");
    if (options.n_topics < 2) throw ArgumentError("LDA needs at least 2 topics");
    if (options.iterations < 1) throw ArgumentError("LDA needs at least 1 iteration");
    if (corpus.vocabulary.size() == 0) throw DatasetError("LDA: empty vocabulary");

    const std::size_t K = options.n_topics;
    const std::size_t V = corpus.vocabulary.size();
    const std::size_t D = corpus.size();

    LdaModel m;
    m.n_topics = K;
    m.vocab_size = V;
    m.alpha = options.alpha.value_or(50.0 / static_cast<double>(K));
    m.beta = options.beta;
    m.seed = options.seed;
    m.iterations = options.iterations;
    m.topic_term.assign(K * V, 0);
    m.topic_total.assign(K, 0);
    m.doc_topic.assign(D * K, 0);
    m.doc_length.assign(D, 0);

    std::vector<std::vector<std::uint32_t>> words(D);
    std::vector<std::vector<std::uint32_t>> topics(D);
    Rng rng(options.seed);

    for (const auto& doc : corpus.documents) {
        auto& w = words[doc.id];
        for (const auto& tok : doc.tokens) {
            if (auto idx = corpus.vocabulary.find(tok)) w.push_back(*idx);
        }
        auto& z = topics[doc.id];
        z.resize(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            const auto k = static_cast<std::uint32_t>(rng.below(K));
            z[i] = k;
            ++m.topic_term[k * V + w[i]];
            ++m.topic_total[k];
            ++m.doc_topic[doc.id * K + k];
        }
        m.doc_length[doc.id] = static_cast<std::uint32_t>(w.size());
    }

    const double v_beta = static_cast<double>(V) * m.beta;
    std::vector<double> cumulative(K);
    for (std::size_t it = 0; it < options.iterations; ++it) {
        for (std::size_t d = 0; d < D; ++d) {
            auto* nd = m.doc_topic.data() + d * K;
            for (std::size_t i = 0; i < words[d].size(); ++i) {
                const std::uint32_t w = words[d][i];
                std::uint32_t k = topics[d][i];
                --m.topic_term[k * V + w];
                --m.topic_total[k];
                --nd[k];

                double total = 0.0;
                for (std::size_t t = 0; t < K; ++t) {
                    total += (nd[t] + m.alpha) * (m.topic_term[t * V + w] + m.beta) /
                             (m.topic_total[t] + v_beta);
                    cumulative[t] = total;
                }
                const double u = rng.uniform() * total;
                k = 0;
                while (k + 1 < K && cumulative[k] <= u) ++k;

                topics[d][i] = k;
                ++m.topic_term[k * V + w];
                ++m.topic_total[k];
                ++nd[k];
            }
        }
    }
    return m;
}

DesignMatrix lda_to_matrix(const LdaModel& model) {
    const std::size_t K = model.n_topics;
    const std::size_t D = model.n_docs();
    std::vector<double> values(D * K);
    const double k_alpha = static_cast<double>(K) * model.alpha;
    for (std::size_t d = 0; d < D; ++d) {
        const double denom = model.doc_length[d] + k_alpha;
        for (std::size_t k = 0; k < K; ++k) {
            values[d * K + k] = (model.doc_topic[d * K + k] + model.alpha) / denom;
        }
    }
    return DesignMatrix::dense(D, K, std::move(values), RepresentationKind::lda,
                               "lda;gibbs;K=" + std::to_string(K) + ";alpha=" + std::to_string(model.alpha) +
                                   ";beta=" + std::to_string(model.beta) + ";iters=" +
                                   std::to_string(model.iterations) + ";seed=" + std::to_string(model.seed));
}

}  // namespace albench
