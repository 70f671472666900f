#pragma once

#include <filesystem>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "albench/engine.hpp"
#include "albench/lda.hpp"

namespace albench::cli {

struct DatasetSpec {
    std::string name;
    std::filesystem::path path;
    std::optional<CorpusFormat> format;
    // Representation label -> embedding file, for precomputed rows.
    std::map<std::string, std::filesystem::path> embeddings;
    std::optional<std::filesystem::path> word_vectors;
    std::optional<std::size_t> subsample_per_class;
    std::uint64_t subsample_seed = 0;
};

struct PreprocessSpec {
    std::optional<std::filesystem::path> stop_words;
    std::uint64_t min_count = 10;
    std::uint32_t min_doc_freq = 5;
};

/// Declarative description of an experiment grid: datasets x
/// representations x strategies, all sharing one ExperimentConfig.
struct RunManifest {
    std::vector<DatasetSpec> datasets;
    // Built-in: tf, tfidf, lda, wordvec. Any other label is looked up in
    // each dataset's embeddings map.
    std::vector<std::string> representations;
    std::vector<StrategyKind> strategies;
    ExperimentConfig config;
    LdaOptions lda{.n_topics = 300, .iterations = 1000, .seed = 0, .alpha = std::nullopt, .beta = 0.01};
    PreprocessSpec preprocess;
    std::filesystem::path output_dir = "albench-out";
    // Cells run concurrently on this many workers.
    std::size_t workers = 1;

    /// Relative paths inside a manifest file resolve against its directory.
    static RunManifest from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
    static RunManifest from_file(const std::filesystem::path& path);
    nlohmann::json to_json() const;

    /// Every referenced file must exist; returns the list of problems.
    std::vector<std::string> problems() const;
};

bool is_builtin_representation(const std::string& label);

}  // namespace albench::cli
