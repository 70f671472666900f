#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "albench/cli/manifest.hpp"

namespace albench::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kDataError = 2, kRuntimeFailure = 3 };

/// Runs every cell of the grid and writes, under manifest.output_dir:
///   cells/<dataset>__<rep>__<strategy>.json
///   curves.csv, aulc_summary.csv, aulc_means.csv
///   ranks.{csv,json}, pairwise.{csv,json}, manifest.json, status.json
int cmd_run(const RunManifest& manifest, std::ostream& log);

int cmd_validate_embeddings(const std::filesystem::path& path, const std::filesystem::path& corpus_path,
                            std::ostream& out);

/// group_by is "strategy" or "representation".
int cmd_plotdata(const std::filesystem::path& curves_csv, const std::string& group_by,
                 const std::filesystem::path& out_dir, bool svg, std::ostream& log);

/// Ranks and pairwise tests over a "method,<dataset>..." table. When
/// method_filter is set only methods containing it take part.
int cmd_stats(const std::filesystem::path& table_csv, const std::filesystem::path& out_dir,
              const std::optional<std::string>& method_filter, std::ostream& log);

/// Writes a synthetic corpus (JSONL) and its dense embedding file.
int cmd_synth(const std::filesystem::path& out_dir, std::size_t n_docs, std::size_t dim, std::uint64_t seed,
              std::ostream& log);

}  // namespace albench::cli
