#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "albench/corpus.hpp"

namespace albench {

/// Two-class synthetic dataset rendered twice: as dense Gaussian-cluster
/// embeddings, and as bag-of-words text whose terms only weakly follow the
/// label.
struct SyntheticSpec {
    std::size_t n_docs = 1000;
    std::size_t dim = 64;
    // Distance between the two cluster means, in units of the per-axis
    // standard deviation.
    double separation = 4.0;
    std::size_t vocab_size = 2000;
    std::size_t tokens_per_doc = 40;
    // Probability that a token is drawn from the label's half of the
    // vocabulary rather than uniformly.
    double informative_rate = 0.15;
    std::uint64_t seed = 1;
};

struct SyntheticDataset {
    std::vector<std::pair<std::string, Label>> records;
    std::size_t dim = 0;
    std::vector<float> embeddings;  // n_docs x dim, row-major
};

SyntheticDataset make_synthetic(const SyntheticSpec& spec);

}  // namespace albench
