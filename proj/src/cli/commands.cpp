#include "albench/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "albench/embedding_file.hpp"
#include "albench/errors.hpp"
#include "albench/lda.hpp"
#include "albench/representations.hpp"
#include "albench/stats.hpp"
#include "albench/synthetic.hpp"

namespace albench::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fixed(double v, int decimals) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ArgumentError("cannot write " + path.string());
    out << content;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cell.push_back('"');
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cell.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else if (c != '\r') {
            cell.push_back(c);
        }
    }
    cells.push_back(std::move(cell));
    return cells;
}

struct CellKey {
    std::size_t dataset;
    std::size_t rep;
    std::size_t strategy;
};

struct CellOutcome {
    std::optional<CellResult> result;
    std::string error;
    bool data_error = false;
};

struct PreparedDataset {
    std::vector<Label> truth;
    std::vector<std::optional<DesignMatrix>> matrices;
    std::vector<std::optional<SimilarityCache>> sims;
    std::vector<std::string> errors;  // per representation
};

DesignMatrix build_representation(const std::string& rep, const Corpus& corpus, const DatasetSpec& spec,
                                  const RunManifest& manifest) {
    if (rep == "tf") return build_tf(corpus);
    if (rep == "tfidf") return build_tfidf(corpus);
    if (rep == "lda") return lda_to_matrix(fit_lda(corpus, manifest.lda));
    if (rep == "wordvec") return build_wordvec_avg(corpus, load_word_vectors(*spec.word_vectors));
    return load_precomputed(spec.embeddings.at(rep), corpus);
}

PreprocessConfig preprocess_config(const RunManifest& manifest) {
    PreprocessConfig config = manifest.preprocess.stop_words
                                  ? PreprocessConfig{load_stop_words(*manifest.preprocess.stop_words)}
                                  : PreprocessConfig::with_default_stop_words();
    config.min_count = manifest.preprocess.min_count;
    config.min_doc_freq = manifest.preprocess.min_doc_freq;
    return config;
}

std::string method_name(const std::string& rep, StrategyKind s) { return rep + "+" + std::string(to_string(s)); }

std::string cell_file_name(const std::string& dataset, const std::string& rep, StrategyKind s) {
    std::string name = dataset + "__" + rep + "__" + std::string(to_string(s)) + ".json";
    for (char& c : name) {
        if (c == '/' || c == '\\' || c == ' ') c = '_';
    }
    return name;
}

}  // namespace

int cmd_run(const RunManifest& manifest, std::ostream& log) {
    const auto problems = manifest.problems();
    if (!problems.empty()) {
        for (const auto& p : problems) log << "config error: " << p << '\n';
        return kConfigError;
    }
    json echo = manifest.to_json();
    // Neither affects results; leaving them out keeps outputs comparable across directories.
    echo.erase("output_dir");
    echo.erase("workers");
    const std::string echo_line = "# manifest: " + echo.dump() + "\n";
    fs::create_directories(manifest.output_dir / "cells");

    const std::size_t n_data = manifest.datasets.size();
    const std::size_t n_rep = manifest.representations.size();
    const std::size_t n_strat = manifest.strategies.size();
    std::vector<CellOutcome> outcomes(n_data * n_rep * n_strat);
    const auto slot = [&](std::size_t d, std::size_t r, std::size_t s) -> CellOutcome& {
        return outcomes[(d * n_rep + r) * n_strat + s];
    };
    const bool any_sims = std::any_of(manifest.strategies.begin(), manifest.strategies.end(), needs_similarities);

    for (std::size_t d = 0; d < n_data; ++d) {
        const auto& spec = manifest.datasets[d];
        log << "dataset " << spec.name << '\n';
        PreparedDataset prepared;
        prepared.matrices.resize(n_rep);
        prepared.sims.resize(n_rep);
        prepared.errors.resize(n_rep);
        try {
            Corpus corpus = load_corpus(spec.path, spec.format.value_or(corpus_format_from_path(spec.path)));
            corpus.name = spec.name;
            corpus = preprocess(corpus, preprocess_config(manifest));
            if (spec.subsample_per_class) corpus = subsample(corpus, *spec.subsample_per_class, spec.subsample_seed);
            prepared.truth = corpus.labels();
            for (std::size_t r = 0; r < n_rep; ++r) {
                try {
                    prepared.matrices[r] = build_representation(manifest.representations[r], corpus, spec, manifest);
                    if (any_sims) prepared.sims[r] = cosine_similarity_matrix(*prepared.matrices[r]);
                } catch (const Error& e) {
                    prepared.errors[r] = e.what();
                }
            }
        } catch (const Error& e) {
            for (auto& err : prepared.errors) err = e.what();
        }

        std::vector<CellKey> jobs;
        for (std::size_t r = 0; r < n_rep; ++r) {
            for (std::size_t s = 0; s < n_strat; ++s) {
                if (!prepared.errors[r].empty()) {
                    slot(d, r, s).error = prepared.errors[r];
                    slot(d, r, s).data_error = true;
                } else {
                    jobs.push_back({d, r, s});
                }
            }
        }

        std::atomic<std::size_t> next{0};
        std::mutex log_mutex;
        const auto work = [&] {
            for (std::size_t j = next++; j < jobs.size(); j = next++) {
                const auto key = jobs[j];
                ExperimentConfig config = manifest.config;
                config.strategy = manifest.strategies[key.strategy];
                config.representation = manifest.representations[key.rep];
                config.workers = 1;
                auto& out = slot(key.dataset, key.rep, key.strategy);
                try {
                    const auto& sims = prepared.sims[key.rep];
                    out.result = run_cell(prepared.truth, *prepared.matrices[key.rep], config,
                                          sims ? &*sims : nullptr, spec.name);
                    std::lock_guard lock(log_mutex);
                    log << "  " << config.representation << " / " << to_string(config.strategy)
                        << ": AULC " << fixed(out.result->aulc_mean, 3) << " +- " << fixed(out.result->aulc_std, 3)
                        << '\n';
                } catch (const std::exception& e) {
                    out.error = e.what();
                    std::lock_guard lock(log_mutex);
                    log << "  " << config.representation << " / " << to_string(config.strategy)
                        << ": FAILED " << e.what() << '\n';
                }
            }
        };
        const std::size_t workers = std::clamp<std::size_t>(manifest.workers, 1, std::max<std::size_t>(1, jobs.size()));
        if (workers == 1) {
            work();
        } else {
            std::vector<std::jthread> threads;
            for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work);
        }
    }

    // Single writer, fixed order.
    std::ostringstream curves;
    curves << echo_line << "dataset,rep,strategy,repetition,labels,accuracy_plus\n";
    json failures = json::array();
    bool data_error = false;
    bool complete = true;
    for (std::size_t d = 0; d < n_data; ++d) {
        for (std::size_t r = 0; r < n_rep; ++r) {
            for (std::size_t s = 0; s < n_strat; ++s) {
                const auto& out = slot(d, r, s);
                const auto& dataset = manifest.datasets[d].name;
                const auto& rep = manifest.representations[r];
                const auto strategy = manifest.strategies[s];
                if (!out.result) {
                    complete = false;
                    data_error = data_error || out.data_error;
                    failures.push_back({{"dataset", dataset},
                                        {"rep", rep},
                                        {"strategy", std::string(to_string(strategy))},
                                        {"error", out.error}});
                    continue;
                }
                json cell = to_json(*out.result);
                cell["manifest"] = echo;
                write_text(manifest.output_dir / "cells" / cell_file_name(dataset, rep, strategy), cell.dump(2) + "\n");
                for (std::size_t k = 0; k < out.result->curves.size(); ++k) {
                    for (const auto& p : out.result->curves[k].points) {
                        curves << csv_field(dataset) << ',' << csv_field(rep) << ',' << to_string(strategy) << ','
                               << k << ',' << p.labels_spent << ',' << fmt6(p.accuracy_plus) << '\n';
                    }
                }
            }
        }
    }
    write_text(manifest.output_dir / "curves.csv", curves.str());
    write_text(manifest.output_dir / "manifest.json", echo.dump(2) + "\n");

    if (complete) {
        ResultTable table;
        for (const auto& d : manifest.datasets) table.datasets.push_back(d.name);
        std::vector<std::vector<double>> stds;
        for (std::size_t r = 0; r < n_rep; ++r) {
            for (std::size_t s = 0; s < n_strat; ++s) {
                table.methods.push_back(method_name(manifest.representations[r], manifest.strategies[s]));
                std::vector<double> means;
                std::vector<double> sd;
                for (std::size_t d = 0; d < n_data; ++d) {
                    means.push_back(slot(d, r, s).result->aulc_mean);
                    sd.push_back(slot(d, r, s).result->aulc_std);
                }
                table.aulc.push_back(std::move(means));
                stds.push_back(std::move(sd));
            }
        }
        const auto ranks = dataset_ranks(table);
        const auto avg = average_ranks(table);

        std::ostringstream summary;
        summary << echo_line << "rep,strategy";
        for (const auto& d : table.datasets) summary << ',' << csv_field(d);
        summary << ",rank\n";
        for (std::size_t m = 0; m < table.methods.size(); ++m) {
            summary << csv_field(manifest.representations[m / n_strat]) << ','
                    << to_string(manifest.strategies[m % n_strat]);
            for (std::size_t d = 0; d < n_data; ++d) {
                summary << ',' << fixed(table.aulc[m][d], 3) << "±" << fixed(stds[m][d], 3) << '('
                        << fixed(ranks[m][d], 1) << ')';
            }
            summary << ',' << fixed(avg[m], 2) << '\n';
        }
        write_text(manifest.output_dir / "aulc_summary.csv", summary.str());
        write_text(manifest.output_dir / "aulc_means.csv", echo_line + result_table_csv(table));
        write_text(manifest.output_dir / "ranks.csv", echo_line + ranks_csv(table));
        write_text(manifest.output_dir / "ranks.json",
                   json{{"manifest", echo}, {"ranks", ranks_json(table)}}.dump(2) + "\n");
        if (table.methods.size() >= 2) {
            const auto pairs = pairwise_table(table);
            write_text(manifest.output_dir / "pairwise.csv", echo_line + pairwise_csv(pairs));
            write_text(manifest.output_dir / "pairwise.json",
                       json{{"manifest", echo}, {"pairwise", pairwise_json(pairs)}}.dump(2) + "\n");
        }
    }

    const json status = {{"status", failures.empty() ? "ok" : "failed"},
                         {"cells_total", outcomes.size()},
                         {"cells_failed", failures.size()},
                         {"partial", !failures.empty()},
                         {"failures", failures},
                         {"manifest", echo}};
    write_text(manifest.output_dir / "status.json", status.dump(2) + "\n");
    if (failures.empty()) return kOk;
    return data_error ? kDataError : kRuntimeFailure;
}

int cmd_validate_embeddings(const fs::path& path, const fs::path& corpus_path, std::ostream& out) {
    std::size_t n_docs = 0;
    try {
        n_docs = load_corpus(corpus_path, corpus_format_from_path(corpus_path)).size();
    } catch (const Error& e) {
        out << "corpus: " << e.what() << '\n';
        return kDataError;
    }
    const auto report = inspect_embedding_file(path, n_docs);
    out << "file: " << path.string() << '\n'
        << "format: " << (report.binary ? "binary" : "jsonl") << '\n'
        << "n_docs: " << report.n_docs << '\n'
        << "dim: " << report.dim << '\n';
    if (report.binary) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "checksum: stored %016llx computed %016llx\n",
                      static_cast<unsigned long long>(report.stored_checksum),
                      static_cast<unsigned long long>(report.computed_checksum));
        out << buf;
    }
    for (const auto& issue : report.issues) {
        out << "error [" << to_string(issue.kind) << "]";
        if (issue.row >= 0) out << " row " << issue.row;
        out << ": " << issue.message << '\n';
    }
    out << (report.ok() ? "OK" : "INVALID") << '\n';
    return report.ok() ? kOk : kDataError;
}

int cmd_plotdata(const fs::path& curves_csv, const std::string& group_by, const fs::path& out_dir, bool svg,
                 std::ostream& log) {
    std::size_t group_col;
    if (group_by == "strategy") {
        group_col = 2;
    } else if (group_by == "representation" || group_by == "rep") {
        group_col = 1;
    } else {
        throw ArgumentError("unknown group key '" + group_by + "' (strategy|representation)");
    }
    std::ifstream in(curves_csv);
    if (!in) throw ArgumentError("cannot open curves file: " + curves_csv.string());

    using SeriesKey = std::tuple<std::string, std::string, std::string>;
    // group -> series -> labels -> (sum, count)
    std::map<std::string, std::map<SeriesKey, std::map<std::size_t, std::pair<double, std::size_t>>>> groups;
    std::string comment;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (comment.empty()) comment = line + "\n";
            continue;
        }
        const auto cells = split_csv_line(line);
        if (!header_seen) {
            if (cells != std::vector<std::string>{"dataset", "rep", "strategy", "repetition", "labels", "accuracy_plus"}) {
                throw FormatError("curves CSV header must be dataset,rep,strategy,repetition,labels,accuracy_plus");
            }
            header_seen = true;
            continue;
        }
        if (cells.size() != 6) throw FormatError("curves CSV row has " + std::to_string(cells.size()) + " fields");
        auto& point = groups[cells[group_col]][{cells[0], cells[1], cells[2]}][std::stoull(cells[4])];
        point.first += std::stod(cells[5]);
        point.second += 1;
    }
    if (groups.empty()) throw ArgumentError("no curves in " + curves_csv.string());

    fs::create_directories(out_dir);
    const std::string prefix = group_col == 2 ? "strategy_" : "representation_";
    for (const auto& [group, series] : groups) {
        std::ostringstream csv;
        csv << comment << "dataset,rep,strategy,labels,mean_accuracy_plus,repetitions\n";
        for (const auto& [key, points] : series) {
            for (const auto& [labels, acc] : points) {
                csv << csv_field(std::get<0>(key)) << ',' << csv_field(std::get<1>(key)) << ','
                    << csv_field(std::get<2>(key)) << ',' << labels << ','
                    << fmt6(acc.first / static_cast<double>(acc.second)) << ',' << acc.second << '\n';
            }
        }
        write_text(out_dir / (prefix + group + ".csv"), csv.str());
        log << "wrote " << (out_dir / (prefix + group + ".csv")).string() << '\n';

        if (!svg) continue;
        double x_min = 1e300, x_max = -1e300, y_min = 1.0;
        for (const auto& [_, points] : series) {
            for (const auto& [labels, acc] : points) {
                x_min = std::min(x_min, static_cast<double>(labels));
                x_max = std::max(x_max, static_cast<double>(labels));
                y_min = std::min(y_min, acc.first / static_cast<double>(acc.second));
            }
        }
        if (x_max <= x_min) x_max = x_min + 1.0;
        y_min = std::max(0.0, std::min(y_min, 0.99) - 0.01);
        constexpr double W = 640, H = 400, L = 60, R = 180, T = 30, B = 50;
        const auto px = [&](double x) { return L + (x - x_min) / (x_max - x_min) * (W - L - R); };
        const auto py = [&](double y) { return T + (1.0 - (y - y_min) / (1.0 - y_min)) * (H - T - B); };
        static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
        std::ostringstream doc;
        doc << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << "<text x=\"" << L << "\" y=\"20\" font-size=\"14\">" << group_by << ": " << group << "</text>\n"
            << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
            << "\" stroke=\"black\"/>\n"
            << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10 << "\" font-size=\"12\">labels</text>\n"
            << "<text x=\"5\" y=\"" << T + 10 << "\" font-size=\"12\">accuracy+</text>\n"
            << "<text x=\"" << L - 5 << "\" y=\"" << H - B << "\" font-size=\"10\" text-anchor=\"end\">"
            << fixed(y_min, 2) << "</text>\n"
            << "<text x=\"" << L - 5 << "\" y=\"" << T + 4 << "\" font-size=\"10\" text-anchor=\"end\">1.00</text>\n"
            << "<text x=\"" << L << "\" y=\"" << H - B + 14 << "\" font-size=\"10\">" << x_min << "</text>\n"
            << "<text x=\"" << W - R << "\" y=\"" << H - B + 14 << "\" font-size=\"10\" text-anchor=\"end\">" << x_max
            << "</text>\n";
        std::size_t colour = 0;
        for (const auto& [key, points] : series) {
            const char* c = palette[colour % 10];
            doc << "<polyline fill=\"none\" stroke=\"" << c << "\" points=\"";
            for (const auto& [labels, acc] : points) {
                doc << fixed(px(static_cast<double>(labels)), 2) << ','
                    << fixed(py(acc.first / static_cast<double>(acc.second)), 2) << ' ';
            }
            doc << "\"/>\n<text x=\"" << W - R + 10 << "\" y=\"" << T + 16 * (colour + 1) << "\" font-size=\"11\" fill=\""
                << c << "\">" << std::get<0>(key) << ' ' << std::get<1>(key) << ' ' << std::get<2>(key) << "</text>\n";
            ++colour;
        }
        doc << "</svg>\n";
        write_text(out_dir / (prefix + group + ".svg"), doc.str());
    }
    return kOk;
}

int cmd_stats(const fs::path& table_csv, const fs::path& out_dir, const std::optional<std::string>& method_filter,
              std::ostream& log) {
    ResultTable table = read_result_table_csv(table_csv);
    if (method_filter) {
        ResultTable filtered;
        filtered.datasets = table.datasets;
        for (std::size_t m = 0; m < table.methods.size(); ++m) {
            if (table.methods[m].find(*method_filter) != std::string::npos) {
                filtered.methods.push_back(table.methods[m]);
                filtered.aulc.push_back(table.aulc[m]);
            }
        }
        table = std::move(filtered);
    }
    if (table.methods.empty()) throw ArgumentError("no methods left after filtering");
    fs::create_directories(out_dir);
    write_text(out_dir / "ranks.csv", ranks_csv(table));
    write_text(out_dir / "ranks.json", ranks_json(table).dump(2) + "\n");
    const auto avg = average_ranks(table);
    for (std::size_t m = 0; m < table.methods.size(); ++m) {
        log << table.methods[m] << ": average rank " << fixed(avg[m], 2) << '\n';
    }
    if (table.methods.size() >= 2) {
        const auto pairs = pairwise_table(table);
        write_text(out_dir / "pairwise.csv", pairwise_csv(pairs));
        write_text(out_dir / "pairwise.json", pairwise_json(pairs).dump(2) + "\n");
        for (const auto& p : pairs) {
            log << p.method_a << " vs " << p.method_b << ": " << p.wins << '/' << p.draws << '/' << p.losses;
            if (p.p_value) log << "  p=" << fmt6(*p.p_value);
            log << '\n';
        }
    }
    return kOk;
}

int cmd_synth(const fs::path& out_dir, std::size_t n_docs, std::size_t dim, std::uint64_t seed, std::ostream& log) {
    SyntheticSpec spec;
    spec.n_docs = n_docs;
    spec.dim = dim;
    spec.seed = seed;
    const auto data = make_synthetic(spec);
    fs::create_directories(out_dir);
    std::ostringstream jsonl;
    for (const auto& [text, label] : data.records) {
        jsonl << json{{"text", text}, {"label", label == Label::positive ? 1 : 0}}.dump() << '\n';
    }
    write_text(out_dir / "synthetic.jsonl", jsonl.str());
    write_embedding_file(out_dir / "synthetic.alemb", n_docs, dim, data.embeddings);
    log << "wrote " << (out_dir / "synthetic.jsonl").string() << " and " << (out_dir / "synthetic.alemb").string()
        << '\n';
    return kOk;
}

}  // namespace albench::cli
