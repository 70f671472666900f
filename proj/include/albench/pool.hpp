#pragma once

#include <cstddef>
#include <map>
#include <set>

#include "albench/corpus.hpp"

namespace albench {

/// Partition of the corpus into the labelled set L and the unlabelled pool U.
struct PoolState {
    std::map<DocId, Label> labelled;
    std::set<DocId> unlabelled;
    std::size_t round = 0;

    std::size_t labels_spent() const { return labelled.size(); }
    std::size_t n_docs() const { return labelled.size() + unlabelled.size(); }

    /// Moves id from U to L with its ground-truth label.
    void reveal(DocId id, Label truth);

    bool operator==(const PoolState&) const = default;
};

}  // namespace albench
