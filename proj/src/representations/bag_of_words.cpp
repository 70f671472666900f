#include <cmath>
#include <map>

#include "albench/errors.hpp"
#include "albench/representations.hpp"

namespace albench {
namespace {

std::map<std::uint32_t, double> term_counts(const Document& doc, const Vocabulary& vocab) {
    std::map<std::uint32_t, double> counts;
    for (const auto& tok : doc.tokens) {
        if (auto idx = vocab.find(tok)) counts[*idx] += 1.0;
    }
    return counts;
}

void require_preprocessed(const Corpus& corpus) {
    if (!corpus.preprocessed()) throw ArgumentError("corpus must be preprocessed first");
}

}  // namespace

DesignMatrix build_tf(const Corpus& corpus) {
    require_preprocessed(corpus);
    std::vector<std::vector<DesignMatrix::SparseEntry>> rows;
    rows.reserve(corpus.size());
    for (const auto& doc : corpus.documents) {
        auto counts = term_counts(doc, corpus.vocabulary);
        double total = 0.0;
        for (const auto& [_, c] : counts) total += c;
        std::vector<DesignMatrix::SparseEntry> row;
        row.reserve(counts.size());
        for (const auto& [col, c] : counts) row.push_back({col, c / total});
        rows.push_back(std::move(row));
    }
    return DesignMatrix::sparse(corpus.vocabulary.size(), std::move(rows), RepresentationKind::tf,
                                "tf;tokenizer=" + std::string(kTokenizerId));
}

DesignMatrix build_tfidf(const Corpus& corpus) {
    require_preprocessed(corpus);
    const double n = static_cast<double>(corpus.size());
    std::vector<double> idf(corpus.vocabulary.size());
    for (std::size_t t = 0; t < idf.size(); ++t) {
        idf[t] = std::log((1.0 + n) / (1.0 + corpus.vocabulary.doc_freq[t])) + 1.0;
    }

    std::vector<std::vector<DesignMatrix::SparseEntry>> rows;
    rows.reserve(corpus.size());
    for (const auto& doc : corpus.documents) {
        auto counts = term_counts(doc, corpus.vocabulary);
        double total = 0.0;
        for (const auto& [_, c] : counts) total += c;
        std::vector<DesignMatrix::SparseEntry> row;
        double norm2 = 0.0;
        for (const auto& [col, c] : counts) {
            const double w = (c / total) * idf[col];
            row.push_back({col, w});
            norm2 += w * w;
        }
        if (norm2 > 0.0) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (auto& e : row) e.value *= inv;
        }
        rows.push_back(std::move(row));
    }
    return DesignMatrix::sparse(corpus.vocabulary.size(), std::move(rows), RepresentationKind::tfidf,
                                "tfidf;idf=smooth;norm=l2;tokenizer=" + std::string(kTokenizerId));
}

}  // namespace albench
