#include "albench/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "albench/errors.hpp"

namespace albench {

void SimilarityCache::finalize_stats() {
    // Population statistics over pairs i < j.
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 1; i < n_; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const double s = packed_[i * (i + 1) / 2 + j];
            sum += s;
            sum_sq += s * s;
            ++count;
        }
    }
    if (count == 0) {
        pair_mean_ = 0.0;
        pair_stddev_ = 0.0;
        return;
    }
    pair_mean_ = sum / static_cast<double>(count);
    pair_stddev_ = std::sqrt(std::max(0.0, sum_sq / static_cast<double>(count) - pair_mean_ * pair_mean_));
}

SimilarityCache SimilarityCache::from_dense(std::size_t n, std::span<const double> values) {
    if (values.size() != n * n) throw ArgumentError("similarity matrix must be n x n");
    SimilarityCache cache;
    cache.n_ = n;
    cache.packed_.resize(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            if (values[i * n + j] != values[j * n + i]) throw ArgumentError("similarity matrix must be symmetric");
            cache.packed_[i * (i + 1) / 2 + j] = values[i * n + j];
        }
    }
    cache.finalize_stats();
    return cache;
}

SimilarityCache cosine_similarity_matrix(const DesignMatrix& m) {
    const std::size_t n = m.n_docs();
    SimilarityCache cache;
    cache.n_ = n;
    cache.packed_.assign(n * (n + 1) / 2, 0.0);

    std::vector<double> norms(n);
    for (std::size_t i = 0; i < n; ++i) norms[i] = std::sqrt(m.squared_norm(i));

    // Sparse rows: scatter row i once, then walk each earlier row.
    std::vector<double> scratch(m.is_sparse() ? m.dim() : 0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double* out = cache.packed_.data() + i * (i + 1) / 2;
        if (norms[i] == 0.0) continue;
        if (m.is_sparse()) {
            for (const auto& e : m.sparse_row(i)) scratch[e.col] = e.value;
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (norms[j] == 0.0) continue;
            double dot = 0.0;
            if (m.is_sparse()) {
                for (const auto& e : m.sparse_row(j)) dot += e.value * scratch[e.col];
            } else {
                dot = m.row_dot(i, j);
            }
            out[j] = std::clamp(dot / (norms[i] * norms[j]), -1.0, 1.0);
        }
        out[i] = 1.0;
        if (m.is_sparse()) {
            for (const auto& e : m.sparse_row(i)) scratch[e.col] = 0.0;
        }
    }
    cache.finalize_stats();
    return cache;
}

}  // namespace albench
