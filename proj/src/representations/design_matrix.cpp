#include "albench/design_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "albench/errors.hpp"

namespace albench {

std::string_view to_string(RepresentationKind kind) {
    switch (kind) {
        case RepresentationKind::tf: return "tf";
        case RepresentationKind::tfidf: return "tfidf";
        case RepresentationKind::lda: return "lda";
        case RepresentationKind::wordvec_avg: return "wordvec_avg";
        case RepresentationKind::precomputed: return "precomputed";
    }
    return "unknown";
}

DesignMatrix DesignMatrix::dense(std::size_t n_rows, std::size_t dim, std::vector<double> values,
                                 RepresentationKind kind, std::string source_meta) {
    if (values.size() != n_rows * dim) {
        throw ArgumentError("dense matrix: expected " + std::to_string(n_rows * dim) +
                            " values, got " + std::to_string(values.size()));
    }
    DesignMatrix m;
    m.n_rows_ = n_rows;
    m.dim_ = dim;
    m.sparse_ = false;
    m.kind_ = kind;
    m.source_meta_ = std::move(source_meta);
    m.dense_ = std::move(values);
    return m;
}

DesignMatrix DesignMatrix::sparse(std::size_t dim, std::vector<std::vector<SparseEntry>> rows,
                                  RepresentationKind kind, std::string source_meta) {
    DesignMatrix m;
    m.n_rows_ = rows.size();
    m.dim_ = dim;
    m.sparse_ = true;
    m.kind_ = kind;
    m.source_meta_ = std::move(source_meta);
    m.row_ptr_.reserve(rows.size() + 1);
    m.row_ptr_.push_back(0);
    for (auto& r : rows) {
        std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.col < b.col; });
        for (const auto& e : r) {
            if (e.col >= dim) throw ArgumentError("sparse matrix: column out of range");
            if (e.value != 0.0) m.entries_.push_back(e);
        }
        m.row_ptr_.push_back(m.entries_.size());
    }
    return m;
}

std::span<const double> DesignMatrix::dense_row(std::size_t r) const {
    return std::span<const double>(dense_).subspan(r * dim_, dim_);
}

std::span<const DesignMatrix::SparseEntry> DesignMatrix::sparse_row(std::size_t r) const {
    return std::span<const SparseEntry>(entries_).subspan(row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]);
}

double DesignMatrix::dot(std::size_t row, std::span<const double> w) const {
    double s = 0.0;
    if (sparse_) {
        for (const auto& e : sparse_row(row)) s += e.value * w[e.col];
    } else {
        const auto x = dense_row(row);
        for (std::size_t c = 0; c < dim_; ++c) s += x[c] * w[c];
    }
    return s;
}

void DesignMatrix::axpy(std::size_t row, double a, std::span<double> w) const {
    if (sparse_) {
        for (const auto& e : sparse_row(row)) w[e.col] += a * e.value;
    } else {
        const auto x = dense_row(row);
        for (std::size_t c = 0; c < dim_; ++c) w[c] += a * x[c];
    }
}

double DesignMatrix::squared_norm(std::size_t row) const {
    double s = 0.0;
    if (sparse_) {
        for (const auto& e : sparse_row(row)) s += e.value * e.value;
    } else {
        for (double v : dense_row(row)) s += v * v;
    }
    return s;
}

double DesignMatrix::row_dot(std::size_t i, std::size_t j) const {
    double s = 0.0;
    if (sparse_) {
        const auto a = sparse_row(i);
        const auto b = sparse_row(j);
        std::size_t p = 0;
        std::size_t q = 0;
        while (p < a.size() && q < b.size()) {
            if (a[p].col == b[q].col) {
                s += a[p++].value * b[q++].value;
            } else if (a[p].col < b[q].col) {
                ++p;
            } else {
                ++q;
            }
        }
    } else {
        const auto a = dense_row(i);
        const auto b = dense_row(j);
        for (std::size_t c = 0; c < dim_; ++c) s += a[c] * b[c];
    }
    return s;
}

std::vector<double> DesignMatrix::row(std::size_t r) const {
    if (!sparse_) {
        const auto x = dense_row(r);
        return {x.begin(), x.end()};
    }
    std::vector<double> out(dim_, 0.0);
    for (const auto& e : sparse_row(r)) out[e.col] = e.value;
    return out;
}

double DesignMatrix::at(std::size_t r, std::size_t c) const {
    if (!sparse_) return dense_[r * dim_ + c];
    for (const auto& e : sparse_row(r)) {
        if (e.col == c) return e.value;
    }
    return 0.0;
}

bool DesignMatrix::all_finite() const {
    const auto finite = [](double v) { return std::isfinite(v); };
    if (sparse_) {
        return std::all_of(entries_.begin(), entries_.end(), [&](const auto& e) { return finite(e.value); });
    }
    return std::all_of(dense_.begin(), dense_.end(), finite);
}

}  // namespace albench
