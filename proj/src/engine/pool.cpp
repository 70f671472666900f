#include "albench/pool.hpp"

#include "albench/errors.hpp"

namespace albench {

void PoolState::reveal(DocId id, Label truth) {
    if (unlabelled.erase(id) != 1) throw ArgumentError("reveal: id " + std::to_string(id) + " is not unlabelled");
    labelled.emplace(id, truth);
}

}  // namespace albench
