#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace albench {

/// Mean AULC per method (rows) and dataset (columns).
struct ResultTable {
    std::vector<std::string> methods;
    std::vector<std::string> datasets;
    std::vector<std::vector<double>> aulc;

    /// Throws ArgumentError on missing cells or values outside [0, 1].
    void validate() const;
};

/// ranks[m][d]: rank of method m on dataset d, 1 = highest AULC, ties share
/// the mid-rank.
std::vector<std::vector<double>> dataset_ranks(const ResultTable& table);
/// Mean of dataset_ranks over datasets, parallel to table.methods.
std::vector<double> average_ranks(const ResultTable& table);

/// Ranks of values in ascending order, ties mid-ranked (1-based).
std::vector<double> mid_ranks(std::span<const double> values);

struct WilcoxonResult {
    double p_value = 1.0;
    // Sum of ranks of positive differences a - b.
    double w_plus = 0.0;
    std::size_t n_used = 0;
    bool exact = true;
    // Every difference was zero.
    bool degenerate = false;
};

inline constexpr std::size_t kWilcoxonExactMaxN = 25;

/// Two-sided signed-rank test on paired samples. Zero differences are
/// dropped and tied |differences| mid-ranked. Exact null distribution for
/// up to 25 non-zero differences, normal approximation with continuity
/// correction beyond.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

struct PairwiseComparison {
    std::string method_a;
    std::string method_b;
    std::size_t wins = 0;
    std::size_t draws = 0;
    std::size_t losses = 0;
    // Absent when fewer than 5 datasets are available for the test.
    std::optional<double> p_value;
    bool degenerate = false;
};

/// Win/draw/loss compares values rounded to 3 decimals; the p-value uses the
/// unrounded vectors.
PairwiseComparison compare_methods(const ResultTable& table, std::size_t a, std::size_t b);
/// Every unordered pair (a before b in table order).
std::vector<PairwiseComparison> pairwise_table(const ResultTable& table);

std::string ranks_csv(const ResultTable& table);
std::string pairwise_csv(std::span<const PairwiseComparison> rows);
nlohmann::json ranks_json(const ResultTable& table);
nlohmann::json pairwise_json(std::span<const PairwiseComparison> rows);

/// Reads "method,<dataset>,..." CSV (lines starting with '#' are skipped).
ResultTable read_result_table_csv(const std::filesystem::path& path);
std::string result_table_csv(const ResultTable& table);

}  // namespace albench
