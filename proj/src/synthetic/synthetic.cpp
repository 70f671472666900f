#include "albench/synthetic.hpp"

#include <cmath>

#include "albench/errors.hpp"
#include "albench/rng.hpp"

namespace albench {

SyntheticDataset make_synthetic(const SyntheticSpec& spec) {
    if (spec.n_docs < 2 || spec.dim == 0 || spec.vocab_size < 2) throw ArgumentError("synthetic: degenerate spec");
    Rng rng(spec.seed);

    std::vector<double> direction(spec.dim);
    double norm = 0.0;
    for (auto& v : direction) {
        v = rng.normal();
        norm += v * v;
    }
    norm = std::sqrt(norm);
    for (auto& v : direction) v /= norm;

    SyntheticDataset out;
    out.dim = spec.dim;
    out.embeddings.reserve(spec.n_docs * spec.dim);
    out.records.reserve(spec.n_docs);
    const std::size_t half = spec.vocab_size / 2;
    for (std::size_t i = 0; i < spec.n_docs; ++i) {
        // Alternate labels so both classes are always present and balanced.
        const Label label = i % 2 == 0 ? Label::positive : Label::negative;
        const double shift = (label == Label::positive ? 0.5 : -0.5) * spec.separation;
        for (std::size_t k = 0; k < spec.dim; ++k) {
            out.embeddings.push_back(static_cast<float>(shift * direction[k] + rng.normal()));
        }

        std::string text;
        for (std::size_t t = 0; t < spec.tokens_per_doc; ++t) {
            std::size_t term;
            if (rng.uniform() < spec.informative_rate) {
                term = (label == Label::positive ? 0 : half) + rng.below(half);
            } else {
                term = rng.below(spec.vocab_size);
            }
            if (!text.empty()) text.push_back(' ');
            text += "w" + std::to_string(term);
        }
        out.records.emplace_back(std::move(text), label);
    }
    return out;
}

}  // namespace albench
