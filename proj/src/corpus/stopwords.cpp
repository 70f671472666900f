#include "albench/corpus.hpp"
#include "albench/errors.hpp"

#include <fstream>

namespace albench {

// English stop-word snapshot, v1. Append-only: changing it changes every
// vocabulary downstream.
const std::vector<std::string>& default_stop_words() {
    static const std::vector<std::string> words = {
        "a",          "about",     "above",   "after",   "again",    "against",  "ain",
        "all",        "am",        "an",      "and",     "any",      "are",      "aren",
        "as",         "at",        "be",      "because", "been",     "before",   "being",
        "below",      "between",   "both",    "but",     "by",       "can",      "couldn",
        "d",          "did",       "didn",    "do",      "does",     "doesn",    "doing",
        "don",        "down",      "during",  "each",    "few",      "for",      "from",
        "further",    "had",       "hadn",    "has",     "hasn",     "have",     "haven",
        "having",     "he",        "her",     "here",    "hers",     "herself",  "him",
        "himself",    "his",       "how",     "i",       "if",       "in",       "into",
        "is",         "isn",       "it",      "its",     "itself",   "just",     "ll",
        "m",          "ma",        "me",      "mightn",  "more",     "most",     "mustn",
        "my",         "myself",    "needn",   "no",      "nor",      "not",      "now",
        "o",          "of",        "off",     "on",      "once",     "only",     "or",
        "other",      "our",       "ours",    "ourselves", "out",    "over",     "own",
        "re",         "s",         "same",    "shan",    "she",      "should",   "shouldn",
        "so",         "some",      "such",    "t",       "than",     "that",     "the",
        "their",      "theirs",    "them",    "themselves", "then",  "there",    "these",
        "they",       "this",      "those",   "through", "to",       "too",      "under",
        "until",      "up",        "ve",      "very",    "was",      "wasn",     "we",
        "were",       "weren",     "what",    "when",    "where",    "which",    "while",
        "who",        "whom",      "why",     "will",    "with",     "won",      "wouldn",
        "y",          "you",       "your",    "yours",   "yourself", "yourselves",
    };
    return words;
}

std::unordered_set<std::string> load_stop_words(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open stop-word list: " + path.string());
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        // Entries go through the tokenizer so they match tokens exactly.
        for (auto& t : tokenize(line)) words.insert(std::move(t));
    }
    return words;
}

PreprocessConfig PreprocessConfig::with_default_stop_words() {
    PreprocessConfig config;
    config.stop_words.insert(default_stop_words().begin(), default_stop_words().end());
    return config;
}

}  // namespace albench
