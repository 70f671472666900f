#include "albench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "albench/errors.hpp"

namespace albench {
namespace {

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

long long round3(double v) { return std::llround(v * 1000.0); }

}  // namespace

void ResultTable::validate() const {
    if (aulc.size() != methods.size()) throw ArgumentError("result table: row count differs from methods");
    for (const auto& row : aulc) {
        if (row.size() != datasets.size()) throw ArgumentError("result table: missing cell");
        for (double v : row) {
            if (!(v >= 0.0 && v <= 1.0)) throw ArgumentError("result table: AULC outside [0, 1]");
        }
    }
}

std::vector<double> mid_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double mid = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
        i = j + 1;
    }
    return ranks;
}

std::vector<std::vector<double>> dataset_ranks(const ResultTable& table) {
    table.validate();
    const std::size_t m = table.methods.size();
    std::vector<std::vector<double>> ranks(m, std::vector<double>(table.datasets.size()));
    std::vector<double> column(m);
    for (std::size_t d = 0; d < table.datasets.size(); ++d) {
        // Negate so that the highest AULC gets rank 1.
        for (std::size_t i = 0; i < m; ++i) column[i] = -table.aulc[i][d];
        const auto r = mid_ranks(column);
        for (std::size_t i = 0; i < m; ++i) ranks[i][d] = r[i];
    }
    return ranks;
}

std::vector<double> average_ranks(const ResultTable& table) {
    const auto ranks = dataset_ranks(table);
    std::vector<double> out;
    out.reserve(ranks.size());
    for (const auto& row : ranks) {
        out.push_back(row.empty() ? 0.0 : std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(row.size()));
    }
    return out;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ArgumentError("wilcoxon: samples differ in length");
    if (a.size() < 5) throw ArgumentError("wilcoxon: need at least 5 paired samples");

    std::vector<double> diffs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0) diffs.push_back(d);
    }
    WilcoxonResult result;
    result.n_used = diffs.size();
    if (diffs.empty()) {
        result.degenerate = true;
        result.p_value = 1.0;
        return result;
    }

    const std::size_t n = diffs.size();
    std::vector<double> magnitude(n);
    for (std::size_t i = 0; i < n; ++i) magnitude[i] = std::abs(diffs[i]);
    const auto ranks = mid_ranks(magnitude);

    // Doubled ranks are integers even with mid-ranks.
    std::vector<long> rank2(n);
    long total2 = 0;
    long w2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        rank2[i] = std::lround(2.0 * ranks[i]);
        total2 += rank2[i];
        if (diffs[i] > 0.0) w2 += rank2[i];
    }
    result.w_plus = 0.5 * static_cast<double>(w2);

    if (n <= kWilcoxonExactMaxN) {
        // counts[s] = number of sign assignments whose doubled W+ equals s.
        std::vector<double> counts(static_cast<std::size_t>(total2) + 1, 0.0);
        counts[0] = 1.0;
        long reach = 0;
        for (long r : rank2) {
            for (long s = reach; s >= 0; --s) {
                if (counts[static_cast<std::size_t>(s)] != 0.0) {
                    counts[static_cast<std::size_t>(s + r)] += counts[static_cast<std::size_t>(s)];
                }
            }
            reach += r;
        }
        const long observed = std::labs(2 * w2 - total2);
        double extreme = 0.0;
        for (long s = 0; s <= total2; ++s) {
            if (std::labs(2 * s - total2) >= observed) extreme += counts[static_cast<std::size_t>(s)];
        }
        result.p_value = std::min(1.0, extreme / std::ldexp(1.0, static_cast<int>(n)));
        result.exact = true;
        return result;
    }

    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0;
    std::vector<double> sorted = magnitude;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && sorted[j] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i);
        var -= (t * t * t - t) / 48.0;
        i = j;
    }
    const double z = std::max(0.0, std::abs(result.w_plus - mean) - 0.5) / std::sqrt(var);
    result.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    result.exact = false;
    return result;
}

PairwiseComparison compare_methods(const ResultTable& table, std::size_t a, std::size_t b) {
    PairwiseComparison cmp;
    cmp.method_a = table.methods.at(a);
    cmp.method_b = table.methods.at(b);
    const auto& va = table.aulc.at(a);
    const auto& vb = table.aulc.at(b);
    for (std::size_t d = 0; d < va.size(); ++d) {
        const auto ra = round3(va[d]);
        const auto rb = round3(vb[d]);
        if (ra > rb) {
            ++cmp.wins;
        } else if (ra == rb) {
            ++cmp.draws;
        } else {
            ++cmp.losses;
        }
    }
    if (va.size() >= 5) {
        const auto w = wilcoxon_signed_rank(va, vb);
        cmp.p_value = w.p_value;
        cmp.degenerate = w.degenerate;
    }
    return cmp;
}

std::vector<PairwiseComparison> pairwise_table(const ResultTable& table) {
    table.validate();
    if (table.methods.size() < 2) throw ArgumentError("pairwise table needs at least 2 methods");
    std::vector<PairwiseComparison> out;
    for (std::size_t a = 0; a < table.methods.size(); ++a) {
        for (std::size_t b = a + 1; b < table.methods.size(); ++b) out.push_back(compare_methods(table, a, b));
    }
    return out;
}

std::string ranks_csv(const ResultTable& table) {
    const auto ranks = dataset_ranks(table);
    const auto avg = average_ranks(table);
    std::ostringstream out;
    out << "method";
    for (const auto& d : table.datasets) out << ',' << csv_field(d);
    out << ",average_rank\n";
    for (std::size_t m = 0; m < table.methods.size(); ++m) {
        out << csv_field(table.methods[m]);
        for (double r : ranks[m]) out << ',' << fmt6(r);
        out << ',' << fmt6(avg[m]) << '\n';
    }
    return out.str();
}

std::string pairwise_csv(std::span<const PairwiseComparison> rows) {
    std::ostringstream out;
    out << "method_a,method_b,wins,draws,losses,p_value\n";
    for (const auto& r : rows) {
        out << csv_field(r.method_a) << ',' << csv_field(r.method_b) << ',' << r.wins << ',' << r.draws << ','
            << r.losses << ',' << (r.p_value ? fmt6(*r.p_value) : std::string()) << '\n';
    }
    return out.str();
}

nlohmann::json ranks_json(const ResultTable& table) {
    const auto ranks = dataset_ranks(table);
    const auto avg = average_ranks(table);
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t m = 0; m < table.methods.size(); ++m) {
        nlohmann::json per = nlohmann::json::object();
        for (std::size_t d = 0; d < table.datasets.size(); ++d) per[table.datasets[d]] = ranks[m][d];
        out.push_back({{"method", table.methods[m]},
                       {"ranks", per},
                       {"average_rank", std::stod(fmt6(avg[m]))}});
    }
    return out;
}

nlohmann::json pairwise_json(std::span<const PairwiseComparison> rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row = {{"method_a", r.method_a}, {"method_b", r.method_b}, {"wins", r.wins},
                              {"draws", r.draws},       {"losses", r.losses},     {"degenerate", r.degenerate}};
        row["p_value"] = r.p_value ? nlohmann::json(std::stod(fmt6(*r.p_value))) : nlohmann::json(nullptr);
        out.push_back(std::move(row));
    }
    return out;
}

ResultTable read_result_table_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open result table: " + path.string());
    ResultTable table;
    std::string line;
    bool header = true;
    long record = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (header) {
            if (cells.size() < 2 || cells[0] != "method") throw FormatError("result table header must start with 'method'");
            table.datasets.assign(cells.begin() + 1, cells.end());
            header = false;
            continue;
        }
        if (cells.size() != table.datasets.size() + 1) throw FormatError("result table row has wrong width", record);
        table.methods.push_back(cells[0]);
        std::vector<double> row;
        for (std::size_t i = 1; i < cells.size(); ++i) {
            try {
                row.push_back(std::stod(cells[i]));
            } catch (const std::exception&) {
                throw FormatError("bad number '" + cells[i] + "'", record);
            }
        }
        table.aulc.push_back(std::move(row));
        ++record;
    }
    if (header) throw FormatError("result table is empty");
    table.validate();
    return table;
}

std::string result_table_csv(const ResultTable& table) {
    std::ostringstream out;
    out << "method";
    for (const auto& d : table.datasets) out << ',' << csv_field(d);
    out << '\n';
    for (std::size_t m = 0; m < table.methods.size(); ++m) {
        out << csv_field(table.methods[m]);
        for (double v : table.aulc[m]) out << ',' << fmt6(v);
        out << '\n';
    }
    return out.str();
}

}  // namespace albench
