#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "albench/errors.hpp"
#include "albench/representations.hpp"

namespace albench {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> parts;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) parts.push_back(line.substr(start, i - start));
    }
    return parts;
}

bool parse_double(std::string_view s, double& out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_size(std::string_view s, std::size_t& out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

WordVectorTable parse_word_vectors(const std::string& text) {
    WordVectorTable table;
    std::istringstream in(text);
    std::string line;
    long line_no = -1;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        const auto parts = split_ws(line);
        if (parts.empty()) continue;
        if (first) {
            first = false;
            std::size_t count = 0;
            std::size_t dim = 0;
            if (parts.size() == 2 && parse_size(parts[0], count) && parse_size(parts[1], dim)) {
                table.dim = dim;
                continue;
            }
        }
        const std::size_t dim = parts.size() - 1;
        if (dim == 0) throw FormatError("word-vector line has no values", line_no);
        if (table.dim == 0) table.dim = dim;
        if (dim != table.dim) {
            throw FormatError("word-vector dimension mismatch: expected " + std::to_string(table.dim) +
                                  ", got " + std::to_string(dim),
                              line_no);
        }
        std::vector<double> vec(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            if (!parse_double(parts[k + 1], vec[k]) || !std::isfinite(vec[k])) {
                throw FormatError("bad word-vector value '" + std::string(parts[k + 1]) + "'", line_no);
            }
        }
        table.vectors.try_emplace(std::string(parts[0]), std::move(vec));
    }
    return table;
}

WordVectorTable load_word_vectors(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open word-vector file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_word_vectors(ss.str());
}

DesignMatrix build_wordvec_avg(const Corpus& corpus, const WordVectorTable& vectors) {
    if (!corpus.preprocessed()) throw ArgumentError("corpus must be preprocessed first");
    const std::size_t dim = vectors.dim;
    std::vector<double> values(corpus.size() * dim, 0.0);
    for (const auto& doc : corpus.documents) {
        double* row = values.data() + static_cast<std::size_t>(doc.id) * dim;
        std::size_t hits = 0;
        for (const auto& tok : doc.full_tokens) {
            const auto* v = vectors.find(tok);
            if (v == nullptr) continue;
            for (std::size_t k = 0; k < dim; ++k) row[k] += (*v)[k];
            ++hits;
        }
        if (hits > 0) {
            for (std::size_t k = 0; k < dim; ++k) row[k] /= static_cast<double>(hits);
        }
    }
    return DesignMatrix::dense(corpus.size(), dim, std::move(values), RepresentationKind::wordvec_avg,
                               "wordvec_avg;weighting=token;tokenizer=" + std::string(kTokenizerId));
}

}  // namespace albench
