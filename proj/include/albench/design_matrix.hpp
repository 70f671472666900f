#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace albench {

enum class RepresentationKind { tf, tfidf, lda, wordvec_avg, precomputed };

std::string_view to_string(RepresentationKind kind);

/// One row per document, aligned by document id. Rows are stored either in
/// CSR form (bag-of-words) or densely row-major (topics, embeddings); all
/// numeric access goes through the row-level kernels below so callers do
/// not care which.
class DesignMatrix {
public:
    struct SparseEntry {
        std::uint32_t col;
        double value;
    };

    DesignMatrix() = default;

    static DesignMatrix dense(std::size_t n_rows, std::size_t dim, std::vector<double> values,
                              RepresentationKind kind, std::string source_meta = {});
    static DesignMatrix sparse(std::size_t dim, std::vector<std::vector<SparseEntry>> rows,
                               RepresentationKind kind, std::string source_meta = {});

    std::size_t n_docs() const { return n_rows_; }
    std::size_t dim() const { return dim_; }
    bool is_sparse() const { return sparse_; }
    RepresentationKind kind() const { return kind_; }
    const std::string& source_meta() const { return source_meta_; }

    double dot(std::size_t row, std::span<const double> w) const;
    /// w += a * row
    void axpy(std::size_t row, double a, std::span<double> w) const;
    double squared_norm(std::size_t row) const;
    double row_dot(std::size_t i, std::size_t j) const;

    /// Dense copy of one row; mostly for tests and reporting.
    std::vector<double> row(std::size_t r) const;
    double at(std::size_t r, std::size_t c) const;

    std::span<const double> dense_row(std::size_t r) const;
    std::span<const SparseEntry> sparse_row(std::size_t r) const;

    bool all_finite() const;

private:
    std::size_t n_rows_ = 0;
    std::size_t dim_ = 0;
    bool sparse_ = false;
    RepresentationKind kind_ = RepresentationKind::precomputed;
    std::string source_meta_;
    std::vector<double> dense_;
    std::vector<std::size_t> row_ptr_;
    std::vector<SparseEntry> entries_;
};

}  // namespace albench
