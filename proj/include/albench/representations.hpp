#pragma once

#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "albench/corpus.hpp"
#include "albench/design_matrix.hpp"

namespace albench {

/// Row = term counts divided by the document's retained token count.
DesignMatrix build_tf(const Corpus& corpus);

/// Row = tf * (ln((1+N)/(1+df)) + 1), then L2-normalized.
DesignMatrix build_tfidf(const Corpus& corpus);

struct WordVectorTable {
    std::size_t dim = 0;
    std::unordered_map<std::string, std::vector<double>> vectors;

    const std::vector<double>* find(const std::string& word) const {
        const auto it = vectors.find(word);
        return it == vectors.end() ? nullptr : &it->second;
    }
};

/// Reads the usual pretrained-vector text layout: an optional "count dim"
/// header, then "token v1 ... vdim" per line. Duplicate tokens keep the
/// first occurrence.
WordVectorTable load_word_vectors(const std::filesystem::path& path);
WordVectorTable parse_word_vectors(const std::string& text);

/// Mean over the unpruned token stream of the vectors that exist in the
/// table; a word occurring twice counts twice. Zero row if none is found.
DesignMatrix build_wordvec_avg(const Corpus& corpus, const WordVectorTable& vectors);

}  // namespace albench
