#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "albench/design_matrix.hpp"

namespace albench {

/// Symmetric cosine-similarity matrix over all documents, stored as a packed
/// lower triangle. Zero rows have similarity 0 with everything, themselves
/// included. Also keeps the mean and standard deviation of the off-diagonal
/// entries, which the exploration-guided strategy needs.
class SimilarityCache {
public:
    SimilarityCache() = default;

    /// From an explicit square matrix (row-major); used for hand-built cases.
    static SimilarityCache from_dense(std::size_t n, std::span<const double> values);

    std::size_t size() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const {
        return i >= j ? packed_[i * (i + 1) / 2 + j] : packed_[j * (j + 1) / 2 + i];
    }

    double pair_mean() const { return pair_mean_; }
    double pair_stddev() const { return pair_stddev_; }

private:
    friend SimilarityCache cosine_similarity_matrix(const DesignMatrix& m);
    void finalize_stats();

    std::size_t n_ = 0;
    std::vector<double> packed_;
    double pair_mean_ = 0.0;
    double pair_stddev_ = 0.0;
};

SimilarityCache cosine_similarity_matrix(const DesignMatrix& m);

}  // namespace albench
