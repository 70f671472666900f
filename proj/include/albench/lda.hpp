#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "albench/corpus.hpp"
#include "albench/design_matrix.hpp"

namespace albench {

struct LdaOptions {
    std::size_t n_topics = 300;
    std::size_t iterations = 1000;
    std::uint64_t seed = 0;
    // Defaults to 50 / n_topics when unset.
    std::optional<double> alpha;
    double beta = 0.01;
};

/// Collapsed-Gibbs LDA state after the final sweep.
struct LdaModel {
    std::size_t n_topics = 0;
    std::size_t vocab_size = 0;
    double alpha = 0.0;
    double beta = 0.0;
    std::uint64_t seed = 0;
    std::size_t iterations = 0;
    // topic_term[k * vocab_size + w]
    std::vector<std::uint32_t> topic_term;
    std::vector<std::uint32_t> topic_total;
    // doc_topic[d * n_topics + k]
    std::vector<std::uint32_t> doc_topic;
    std::vector<std::uint32_t> doc_length;

    std::size_t n_docs() const { return doc_length.size(); }
};

LdaModel fit_lda(const Corpus& corpus, const LdaOptions& options);

/// Smoothed document-topic proportions (count + alpha) / (length + K alpha).
DesignMatrix lda_to_matrix(const LdaModel& model);

}  // namespace albench
