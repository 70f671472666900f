#include "albench/embedding_file.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <nlohmann/json.hpp>
#include <sstream>

#include "albench/errors.hpp"

namespace albench {
namespace {

static_assert(std::endian::native == std::endian::little, "embedding files assume a little-endian host");

template <typename T>
void put(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(const std::vector<char>& buf, std::size_t offset) {
    T value;
    std::memcpy(&value, buf.data() + offset, sizeof(T));
    return value;
}

void check_rows(EmbeddingReport& report) {
    for (std::size_t r = 0; r < report.n_docs; ++r) {
        for (std::size_t c = 0; c < report.dim; ++c) {
            const float v = report.values[r * report.dim + c];
            if (!std::isfinite(v)) {
                report.issues.push_back({EmbeddingIssueKind::nonfinite,
                                         "non-finite value at row " + std::to_string(r) + ", column " +
                                             std::to_string(c),
                                         static_cast<long>(r)});
                break;
            }
        }
    }
}

void inspect_binary(const std::vector<char>& buf, EmbeddingReport& report) {
    constexpr std::size_t kHeader = kEmbeddingMagic.size() + 8;
    if (buf.size() < kHeader) {
        report.issues.push_back({EmbeddingIssueKind::truncated, "file shorter than header"});
        return;
    }
    report.n_docs = get<std::uint32_t>(buf, kEmbeddingMagic.size());
    report.dim = get<std::uint32_t>(buf, kEmbeddingMagic.size() + 4);
    if (report.dim == 0) report.issues.push_back({EmbeddingIssueKind::header, "header declares dim 0"});

    const std::size_t payload = report.n_docs * report.dim * sizeof(float);
    const std::size_t expected_size = kHeader + payload + sizeof(std::uint64_t);
    if (buf.size() < expected_size) {
        report.issues.push_back({EmbeddingIssueKind::truncated,
                                 "expected " + std::to_string(expected_size) + " bytes, found " +
                                     std::to_string(buf.size())});
        return;
    }
    if (buf.size() > expected_size) {
        report.issues.push_back({EmbeddingIssueKind::trailing,
                                 std::to_string(buf.size() - expected_size) + " unexpected trailing bytes"});
    }
    report.values.resize(report.n_docs * report.dim);
    std::memcpy(report.values.data(), buf.data() + kHeader, payload);
    report.stored_checksum = get<std::uint64_t>(buf, kHeader + payload);
    report.computed_checksum =
        fnv1a64(std::as_bytes(std::span<const char>(buf.data() + kHeader, payload)));
    if (report.stored_checksum != report.computed_checksum) {
        report.issues.push_back({EmbeddingIssueKind::checksum, "checksum mismatch over payload"});
    }
    check_rows(report);
}

void inspect_jsonl(const std::vector<char>& buf, EmbeddingReport& report) {
    report.binary = false;
    std::istringstream in(std::string(buf.begin(), buf.end()));
    std::string line;
    std::vector<std::vector<float>> rows;
    std::vector<bool> present;
    long line_no = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto obj = nlohmann::json::parse(line);
            const auto id = obj.at("id").get<long long>();
            const auto& vec = obj.at("vec");
            if (id < 0) throw FormatError("negative id");
            if (!vec.is_array()) throw FormatError("vec is not an array");
            const auto idx = static_cast<std::size_t>(id);
            if (idx >= rows.size()) {
                rows.resize(idx + 1);
                present.resize(idx + 1, false);
            }
            if (present[idx]) throw FormatError("duplicate id " + std::to_string(id));
            present[idx] = true;
            auto& row = rows[idx];
            for (const auto& v : vec) {
                // JSON has no NaN literal; null stands in for a missing value.
                row.push_back(v.is_null() ? NAN : v.get<float>());
            }
            if (report.dim == 0) report.dim = row.size();
            if (row.size() != report.dim) throw FormatError("row length differs from first row");
        } catch (const std::exception& e) {
            report.issues.push_back({EmbeddingIssueKind::format,
                                     "line " + std::to_string(line_no) + ": " + e.what(), line_no});
            return;
        }
    }
    report.n_docs = rows.size();
    for (std::size_t i = 0; i < present.size(); ++i) {
        if (!present[i]) {
            report.issues.push_back({EmbeddingIssueKind::format, "missing id " + std::to_string(i),
                                     static_cast<long>(i)});
            return;
        }
    }
    report.values.reserve(report.n_docs * report.dim);
    for (const auto& r : rows) report.values.insert(report.values.end(), r.begin(), r.end());
    check_rows(report);
}

}  // namespace

std::string_view to_string(EmbeddingIssueKind kind) {
    switch (kind) {
        case EmbeddingIssueKind::io: return "io";
        case EmbeddingIssueKind::magic: return "magic";
        case EmbeddingIssueKind::header: return "header";
        case EmbeddingIssueKind::truncated: return "truncated";
        case EmbeddingIssueKind::trailing: return "trailing";
        case EmbeddingIssueKind::checksum: return "checksum";
        case EmbeddingIssueKind::row_count: return "row_count";
        case EmbeddingIssueKind::nonfinite: return "nonfinite";
        case EmbeddingIssueKind::format: return "format";
    }
    return "unknown";
}

std::uint64_t fnv1a64(std::span<const std::byte> bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (std::byte b : bytes) {
        h ^= static_cast<std::uint64_t>(b);
        h *= 1099511628211ULL;
    }
    return h;
}

void write_embedding_file(const std::filesystem::path& path, std::size_t n_docs, std::size_t dim,
                          std::span<const float> values) {
    if (values.size() != n_docs * dim) throw ArgumentError("embedding payload size does not match header");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ArgumentError("cannot write embedding file: " + path.string());
    out.write(kEmbeddingMagic.data(), static_cast<std::streamsize>(kEmbeddingMagic.size()));
    put(out, static_cast<std::uint32_t>(n_docs));
    put(out, static_cast<std::uint32_t>(dim));
    const auto bytes = std::as_bytes(values);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    put(out, fnv1a64(bytes));
}

void write_embedding_jsonl(const std::filesystem::path& path, std::size_t n_docs, std::size_t dim,
                           std::span<const float> values) {
    if (values.size() != n_docs * dim) throw ArgumentError("embedding payload size does not match header");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ArgumentError("cannot write embedding file: " + path.string());
    for (std::size_t r = 0; r < n_docs; ++r) {
        nlohmann::json row = {{"id", r}, {"vec", std::vector<float>(values.begin() + r * dim,
                                                                   values.begin() + (r + 1) * dim)}};
        out << row.dump() << '\n';
    }
}

EmbeddingReport inspect_embedding_file(const std::filesystem::path& path,
                                       std::optional<std::size_t> expected_rows) {
    EmbeddingReport report;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        report.issues.push_back({EmbeddingIssueKind::io, "cannot open " + path.string()});
        return report;
    }
    const std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    const bool has_magic = buf.size() >= kEmbeddingMagic.size() &&
                           std::string_view(buf.data(), kEmbeddingMagic.size()) == kEmbeddingMagic;
    const auto first = std::find_if(buf.begin(), buf.end(), [](char c) { return !std::isspace(static_cast<unsigned char>(c)); });
    if (has_magic) {
        inspect_binary(buf, report);
    } else if (first != buf.end() && *first == '{') {
        inspect_jsonl(buf, report);
    } else {
        report.issues.push_back({EmbeddingIssueKind::magic, "missing ALEMB1 magic and not JSONL"});
        return report;
    }
    if (expected_rows && report.n_docs != *expected_rows) {
        report.issues.push_back({EmbeddingIssueKind::row_count,
                                 "file has " + std::to_string(report.n_docs) + " rows but corpus has " +
                                     std::to_string(*expected_rows) + " documents"});
    }
    return report;
}

DesignMatrix load_precomputed(const std::filesystem::path& path, std::size_t expected_rows) {
    auto report = inspect_embedding_file(path, expected_rows);
    const auto has = [&](std::initializer_list<EmbeddingIssueKind> kinds) -> const EmbeddingIssue* {
        for (const auto& issue : report.issues) {
            if (std::find(kinds.begin(), kinds.end(), issue.kind) != kinds.end()) return &issue;
        }
        return nullptr;
    };
    using K = EmbeddingIssueKind;
    if (const auto* i = has({K::io})) throw ArgumentError(i->message);
    if (const auto* i = has({K::magic, K::header, K::truncated, K::trailing, K::format})) {
        throw FormatError(i->message);
    }
    if (const auto* i = has({K::row_count})) throw AlignmentError(i->message);
    if (const auto* i = has({K::checksum, K::nonfinite})) throw IntegrityError(i->message);
    std::vector<double> values(report.values.begin(), report.values.end());
    return DesignMatrix::dense(report.n_docs, report.dim, std::move(values), RepresentationKind::precomputed,
                               "precomputed;file=" + path.filename().string() + ";dim=" +
                                   std::to_string(report.dim));
}

DesignMatrix load_precomputed(const std::filesystem::path& path, const Corpus& corpus) {
    return load_precomputed(path, corpus.size());
}

}  // namespace albench
