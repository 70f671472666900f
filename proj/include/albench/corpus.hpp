#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace albench {

using DocId = std::uint32_t;

enum class Label : std::uint8_t { negative = 0, positive = 1 };

inline int label_sign(Label l) { return l == Label::positive ? 1 : -1; }

struct Document {
    DocId id = 0;
    std::string raw_text;
    // Lowercased, stop-words removed, restricted to the vocabulary. Feeds the
    // bag-of-words and topic representations.
    std::vector<std::string> tokens;
    // Lowercased, stop-words removed, no rarity pruning. Feeds word-vector
    // averaging.
    std::vector<std::string> full_tokens;
    Label label = Label::negative;

    bool operator==(const Document&) const = default;
};

struct Vocabulary {
    std::map<std::string, std::uint32_t, std::less<>> index;
    // Indexed by term index.
    std::vector<std::string> terms;
    std::vector<std::uint64_t> corpus_count;
    std::vector<std::uint32_t> doc_freq;

    std::size_t size() const { return terms.size(); }
    std::optional<std::uint32_t> find(std::string_view term) const;

    bool operator==(const Vocabulary&) const = default;
};

struct PreprocessConfig {
    std::unordered_set<std::string> stop_words;
    std::uint64_t min_count = 10;
    std::uint32_t min_doc_freq = 5;

    static PreprocessConfig with_default_stop_words();
};

struct ClassCounts {
    std::size_t positive = 0;
    std::size_t negative = 0;

    std::size_t total() const { return positive + negative; }
    std::size_t smaller() const { return positive < negative ? positive : negative; }
    bool operator==(const ClassCounts&) const = default;
};

struct Corpus {
    std::string name;
    std::vector<Document> documents;
    Vocabulary vocabulary;
    ClassCounts class_counts;
    // Set once preprocess() has run; subsample() re-applies it.
    std::optional<PreprocessConfig> preprocessing;

    std::size_t size() const { return documents.size(); }
    bool preprocessed() const { return preprocessing.has_value(); }
    std::vector<Label> labels() const;

    bool operator==(const Corpus& other) const {
        return name == other.name && documents == other.documents &&
               vocabulary == other.vocabulary && class_counts == other.class_counts;
    }
};

enum class CorpusFormat { csv, jsonl };

/// Identifier of the tokenization pipeline; recorded in provenance strings so
/// that embedding exports and the core agree on it.
inline constexpr std::string_view kTokenizerId = "unicode-alnum-lower-v1";

/// Splits on any code point that is not a letter or digit and lowercases.
/// Invalid UTF-8 bytes are treated as separators.
std::vector<std::string> tokenize(std::string_view text);

/// The bundled English stop-word list (one snapshot, never edited in place).
const std::vector<std::string>& default_stop_words();
std::unordered_set<std::string> load_stop_words(const std::filesystem::path& path);

CorpusFormat corpus_format_from_path(const std::filesystem::path& path);
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format);
/// Builds a corpus from in-memory records; same validation as load_corpus.
Corpus make_corpus(std::string name, std::vector<std::pair<std::string, Label>> records);

Corpus preprocess(const Corpus& corpus, const PreprocessConfig& config);

/// Balanced, seeded sample of n_per_class documents per class. Ids are
/// re-densified in original file order.
Corpus subsample(const Corpus& corpus, std::size_t n_per_class, std::uint64_t seed);

}  // namespace albench
