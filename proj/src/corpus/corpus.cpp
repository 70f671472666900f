#include "albench/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numeric>
#include <sstream>

#include "albench/errors.hpp"
#include "albench/rng.hpp"

namespace albench {
namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open corpus file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string_view trim(std::string_view s) {
    const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && ws(s.front())) s.remove_prefix(1);
    while (!s.empty() && ws(s.back())) s.remove_suffix(1);
    return s;
}

// RFC 4180 records: quoted fields may contain separators, newlines and
// doubled quotes.
std::vector<std::vector<std::string>> parse_csv(const std::string& data) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool row_has_content = false;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const char c = data[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < data.size() && data[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                quoted = true;
                row_has_content = true;
                break;
            case ',':
                row.push_back(std::move(field));
                field.clear();
                row_has_content = true;
                break;
            case '\r':
                break;
            case '\n':
                if (row_has_content || !field.empty()) {
                    row.push_back(std::move(field));
                    records.push_back(std::move(row));
                }
                row.clear();
                field.clear();
                row_has_content = false;
                break;
            default:
                field.push_back(c);
                row_has_content = true;
        }
    }
    if (quoted) throw FormatError("unterminated quoted field", static_cast<long>(records.size()) - 1);
    if (row_has_content || !field.empty()) {
        row.push_back(std::move(field));
        records.push_back(std::move(row));
    }
    return records;
}

Label parse_label(std::string_view s, long record) {
    s = trim(s);
    if (s == "1") return Label::positive;
    if (s == "0") return Label::negative;
    throw FormatError("label must be 0 or 1, got '" + std::string(s) + "'", record);
}

std::vector<std::pair<std::string, Label>> read_csv_records(const std::string& data) {
    auto rows = parse_csv(data);
    if (rows.empty()) return {};
    const auto& header = rows.front();
    long text_col = -1;
    long label_col = -1;
    for (std::size_t c = 0; c < header.size(); ++c) {
        const auto name = trim(header[c]);
        if (name == "text") {
            text_col = static_cast<long>(c);
        } else if (name == "label") {
            label_col = static_cast<long>(c);
        } else {
            throw FormatError("unexpected CSV column '" + std::string(name) + "'");
        }
    }
    if (text_col < 0 || label_col < 0) throw FormatError("CSV header must name columns text,label");

    std::vector<std::pair<std::string, Label>> records;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const long index = static_cast<long>(r - 1);
        const auto& row = rows[r];
        if (row.size() < header.size()) throw FormatError("missing field", index);
        if (row.size() > header.size()) throw FormatError("extra field", index);
        records.emplace_back(row[static_cast<std::size_t>(text_col)],
                             parse_label(row[static_cast<std::size_t>(label_col)], index));
    }
    return records;
}

std::vector<std::pair<std::string, Label>> read_jsonl_records(const std::string& data) {
    std::vector<std::pair<std::string, Label>> records;
    std::istringstream in(data);
    std::string line;
    long index = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw FormatError(std::string("invalid JSON: ") + e.what(), index);
        }
        if (!obj.is_object()) throw FormatError("record is not an object", index);
        for (const auto& [key, _] : obj.items()) {
            if (key != "text" && key != "label") throw FormatError("extra field '" + key + "'", index);
        }
        if (!obj.contains("text") || !obj["text"].is_string()) {
            throw FormatError("missing string field 'text'", index);
        }
        if (!obj.contains("label")) throw FormatError("missing field 'label'", index);
        const auto& lab = obj["label"];
        Label label;
        if (lab.is_number_integer()) {
            const auto v = lab.get<long long>();
            if (v != 0 && v != 1) throw FormatError("label must be 0 or 1", index);
            label = v == 1 ? Label::positive : Label::negative;
        } else if (lab.is_string()) {
            label = parse_label(lab.get<std::string>(), index);
        } else {
            throw FormatError("label must be 0 or 1", index);
        }
        records.emplace_back(obj["text"].get<std::string>(), label);
        ++index;
    }
    return records;
}

ClassCounts count_classes(const std::vector<Document>& docs) {
    ClassCounts counts;
    for (const auto& d : docs) {
        (d.label == Label::positive ? counts.positive : counts.negative) += 1;
    }
    return counts;
}

}  // namespace

std::optional<std::uint32_t> Vocabulary::find(std::string_view term) const {
    const auto it = index.find(term);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

std::vector<Label> Corpus::labels() const {
    std::vector<Label> out;
    out.reserve(documents.size());
    for (const auto& d : documents) out.push_back(d.label);
    return out;
}

CorpusFormat corpus_format_from_path(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".csv") return CorpusFormat::csv;
    if (ext == ".jsonl" || ext == ".json" || ext == ".ndjson") return CorpusFormat::jsonl;
    throw ArgumentError("cannot infer corpus format from extension: " + path.string());
}

Corpus make_corpus(std::string name, std::vector<std::pair<std::string, Label>> records) {
    if (records.empty()) throw DatasetError("empty dataset");
    Corpus corpus;
    corpus.name = std::move(name);
    corpus.documents.reserve(records.size());
    for (auto& [text, label] : records) {
        Document d;
        d.id = static_cast<DocId>(corpus.documents.size());
        d.raw_text = std::move(text);
        d.label = label;
        corpus.documents.push_back(std::move(d));
    }
    corpus.class_counts = count_classes(corpus.documents);
    if (corpus.class_counts.positive == 0 || corpus.class_counts.negative == 0) {
        throw DatasetError("single class: binary task needs both labels");
    }
    return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
    const std::string data = read_file(path);
    auto records = format == CorpusFormat::csv ? read_csv_records(data) : read_jsonl_records(data);
    return make_corpus(path.stem().string(), std::move(records));
}

Corpus preprocess(const Corpus& corpus, const PreprocessConfig& config) {
    Corpus out;
    out.name = corpus.name;
    out.class_counts = corpus.class_counts;
    out.preprocessing = config;
    out.documents.reserve(corpus.size());

    // Stage 1: tokenize and drop stop words, always from raw text so that the
    // operation is idempotent.
    std::map<std::string, std::pair<std::uint64_t, std::uint32_t>, std::less<>> stats;
    for (const auto& src : corpus.documents) {
        Document d;
        d.id = src.id;
        d.raw_text = src.raw_text;
        d.label = src.label;
        for (auto& tok : tokenize(src.raw_text)) {
            if (!config.stop_words.contains(tok)) d.full_tokens.push_back(std::move(tok));
        }
        std::vector<std::string_view> seen;
        for (const auto& tok : d.full_tokens) {
            ++stats[tok].first;
            seen.push_back(tok);
        }
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        for (auto term : seen) stats.find(term)->second.second += 1;
        out.documents.push_back(std::move(d));
    }

    // Stage 2: a term survives only if both thresholds hold. Indices follow
    // lexicographic term order.
    for (const auto& [term, s] : stats) {
        if (s.first < config.min_count || s.second < config.min_doc_freq) continue;
        const auto idx = static_cast<std::uint32_t>(out.vocabulary.terms.size());
        out.vocabulary.index.emplace(term, idx);
        out.vocabulary.terms.push_back(term);
        out.vocabulary.corpus_count.push_back(s.first);
        out.vocabulary.doc_freq.push_back(s.second);
    }

    for (auto& d : out.documents) {
        for (const auto& tok : d.full_tokens) {
            if (out.vocabulary.index.contains(tok)) d.tokens.push_back(tok);
        }
    }
    return out;
}

Corpus subsample(const Corpus& corpus, std::size_t n_per_class, std::uint64_t seed) {
    if (n_per_class == 0 || n_per_class > corpus.class_counts.smaller()) {
        throw ArgumentError("subsample: n_per_class=" + std::to_string(n_per_class) +
                            " exceeds the smaller class (" +
                            std::to_string(corpus.class_counts.smaller()) + ")");
    }
    std::vector<DocId> pos;
    std::vector<DocId> neg;
    for (const auto& d : corpus.documents) {
        (d.label == Label::positive ? pos : neg).push_back(d.id);
    }
    Rng rng(seed);
    rng.shuffle(std::span(pos));
    rng.shuffle(std::span(neg));
    std::vector<DocId> keep(pos.begin(), pos.begin() + static_cast<long>(n_per_class));
    keep.insert(keep.end(), neg.begin(), neg.begin() + static_cast<long>(n_per_class));
    std::sort(keep.begin(), keep.end());

    std::vector<std::pair<std::string, Label>> records;
    records.reserve(keep.size());
    for (DocId id : keep) records.emplace_back(corpus.documents[id].raw_text, corpus.documents[id].label);
    Corpus out = make_corpus(corpus.name, std::move(records));
    if (corpus.preprocessing) return preprocess(out, *corpus.preprocessing);
    return out;
}

}  // namespace albench
