#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "albench/corpus.hpp"
#include "albench/design_matrix.hpp"

namespace albench {

// Binary layout, little-endian:
//   "ALEMB1\0"          7 bytes
//   u32 n_docs, u32 dim
//   n_docs * dim float32, row-major
//   u64 FNV-1a over the float32 payload bytes
inline constexpr std::string_view kEmbeddingMagic{"ALEMB1\0", 7};

std::uint64_t fnv1a64(std::span<const std::byte> bytes);

void write_embedding_file(const std::filesystem::path& path, std::size_t n_docs, std::size_t dim,
                          std::span<const float> values);
/// Writes the JSONL fallback layout: {"id": i, "vec": [...]} per line.
void write_embedding_jsonl(const std::filesystem::path& path, std::size_t n_docs, std::size_t dim,
                           std::span<const float> values);

enum class EmbeddingIssueKind { io, magic, header, truncated, trailing, checksum, row_count, nonfinite, format };

std::string_view to_string(EmbeddingIssueKind kind);

struct EmbeddingIssue {
    EmbeddingIssueKind kind;
    std::string message;
    long row = -1;
};

struct EmbeddingReport {
    bool binary = true;
    std::size_t n_docs = 0;
    std::size_t dim = 0;
    std::uint64_t stored_checksum = 0;
    std::uint64_t computed_checksum = 0;
    std::vector<EmbeddingIssue> issues;
    std::vector<float> values;

    bool ok() const { return issues.empty(); }
};

/// Reads either layout and collects every integrity problem instead of
/// stopping at the first. expected_rows, when given, is checked against the
/// header.
EmbeddingReport inspect_embedding_file(const std::filesystem::path& path,
                                       std::optional<std::size_t> expected_rows = std::nullopt);

/// Loads an embedding file as a dense design matrix aligned with corpus.
/// Throws AlignmentError, IntegrityError or FormatError.
DesignMatrix load_precomputed(const std::filesystem::path& path, const Corpus& corpus);
DesignMatrix load_precomputed(const std::filesystem::path& path, std::size_t expected_rows);

}  // namespace albench
