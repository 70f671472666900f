#pragma once

#include <array>
#include <string>
#include <vector>

#include "albench/stats.hpp"

namespace albench::testing {

struct ReferenceCell {
    double mean;
    double std;
    double rank;
};

/// One published row: representation, strategy, 8 datasets, average rank.
struct ReferenceRow {
    std::string rep;
    std::string strategy;
    std::array<ReferenceCell, 8> cells;
    double average_rank;
};

const std::vector<std::string>& reference_datasets();
const std::vector<ReferenceRow>& reference_rows();

/// Method names are "<rep>+<strategy>". With restore_order, ties among the
/// rounded values are broken to match the published per-dataset ranks.
ResultTable reference_table(bool restore_order = true);

}  // namespace albench::testing
