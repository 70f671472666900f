#include "albench/cli/manifest.hpp"

#include <fstream>
#include <set>

#include "albench/errors.hpp"

namespace albench::cli {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ArgumentError(where + " must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) throw ArgumentError("unknown key '" + key + "' in " + where);
    }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    if (path.is_relative() && !base.empty()) return base / path;
    return path;
}

template <typename T>
void read_opt(const json& obj, const char* key, T& out) {
    if (obj.contains(key)) out = obj.at(key).get<T>();
}

std::string format_name(CorpusFormat f) { return f == CorpusFormat::csv ? "csv" : "jsonl"; }

}  // namespace

bool is_builtin_representation(const std::string& label) {
    return label == "tf" || label == "tfidf" || label == "lda" || label == "wordvec";
}

RunManifest RunManifest::from_json(const json& j, const std::filesystem::path& base_dir) {
    check_keys(j, {"datasets", "representations", "strategies", "experiment", "lda", "preprocess", "output_dir",
                   "workers"},
               "manifest");
    RunManifest m;
    try {
        if (j.contains("datasets")) {
            for (const auto& d : j.at("datasets")) {
                check_keys(d, {"name", "path", "format", "embeddings", "word_vectors", "subsample_per_class",
                               "subsample_seed"},
                           "dataset entry");
                DatasetSpec spec;
                spec.path = resolve(base_dir, d.at("path").get<std::string>());
                spec.name = d.contains("name") ? d.at("name").get<std::string>() : spec.path.stem().string();
                if (d.contains("format")) {
                    const auto f = d.at("format").get<std::string>();
                    if (f == "csv") {
                        spec.format = CorpusFormat::csv;
                    } else if (f == "jsonl") {
                        spec.format = CorpusFormat::jsonl;
                    } else {
                        throw ArgumentError("dataset format must be csv or jsonl");
                    }
                }
                if (d.contains("embeddings")) {
                    for (const auto& [label, p] : d.at("embeddings").items()) {
                        spec.embeddings[label] = resolve(base_dir, p.get<std::string>());
                    }
                }
                if (d.contains("word_vectors")) {
                    spec.word_vectors = resolve(base_dir, d.at("word_vectors").get<std::string>());
                }
                if (d.contains("subsample_per_class")) spec.subsample_per_class = d.at("subsample_per_class").get<std::size_t>();
                read_opt(d, "subsample_seed", spec.subsample_seed);
                m.datasets.push_back(std::move(spec));
            }
        }
        read_opt(j, "representations", m.representations);
        if (j.contains("strategies")) {
            for (const auto& s : j.at("strategies")) m.strategies.push_back(parse_strategy(s.get<std::string>()));
        }
        if (j.contains("experiment")) {
            const auto& e = j.at("experiment");
            check_keys(e, {"seed_size", "batch_size", "budget", "repetitions", "tune_every", "cv_folds", "c_grid",
                           "initial_c", "base_seed", "svm_tolerance", "svm_max_epochs", "svm_min_updates"},
                       "experiment");
            auto& c = m.config;
            read_opt(e, "seed_size", c.seed_size);
            read_opt(e, "batch_size", c.batch_size);
            read_opt(e, "budget", c.budget);
            read_opt(e, "repetitions", c.repetitions);
            read_opt(e, "tune_every", c.tune_every);
            read_opt(e, "cv_folds", c.cv_folds);
            read_opt(e, "c_grid", c.c_grid);
            read_opt(e, "initial_c", c.initial_c);
            read_opt(e, "base_seed", c.base_seed);
            read_opt(e, "svm_tolerance", c.svm.tolerance);
            read_opt(e, "svm_max_epochs", c.svm.max_epochs);
            read_opt(e, "svm_min_updates", c.svm.min_updates);
        }
        if (j.contains("lda")) {
            const auto& l = j.at("lda");
            check_keys(l, {"topics", "iterations", "seed", "alpha", "beta"}, "lda");
            read_opt(l, "topics", m.lda.n_topics);
            read_opt(l, "iterations", m.lda.iterations);
            read_opt(l, "seed", m.lda.seed);
            if (l.contains("alpha")) m.lda.alpha = l.at("alpha").get<double>();
            read_opt(l, "beta", m.lda.beta);
        }
        if (j.contains("preprocess")) {
            const auto& p = j.at("preprocess");
            check_keys(p, {"stop_words", "min_count", "min_doc_freq"}, "preprocess");
            if (p.contains("stop_words")) m.preprocess.stop_words = resolve(base_dir, p.at("stop_words").get<std::string>());
            read_opt(p, "min_count", m.preprocess.min_count);
            read_opt(p, "min_doc_freq", m.preprocess.min_doc_freq);
        }
        if (j.contains("output_dir")) m.output_dir = resolve(base_dir, j.at("output_dir").get<std::string>());
        read_opt(j, "workers", m.workers);
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("manifest: ") + e.what());
    }
    return m;
}

RunManifest RunManifest::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open manifest: " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ArgumentError(std::string("manifest is not valid JSON: ") + e.what());
    }
    return from_json(j, path.parent_path());
}

json RunManifest::to_json() const {
    json ds = json::array();
    for (const auto& d : datasets) {
        json e = {{"name", d.name}, {"path", d.path.generic_string()}};
        if (d.format) e["format"] = format_name(*d.format);
        if (!d.embeddings.empty()) {
            json emb = json::object();
            for (const auto& [label, p] : d.embeddings) emb[label] = p.generic_string();
            e["embeddings"] = emb;
        }
        if (d.word_vectors) e["word_vectors"] = d.word_vectors->generic_string();
        if (d.subsample_per_class) {
            e["subsample_per_class"] = *d.subsample_per_class;
            e["subsample_seed"] = d.subsample_seed;
        }
        ds.push_back(std::move(e));
    }
    json strategies_json = json::array();
    for (auto s : strategies) strategies_json.push_back(std::string(to_string(s)));
    json experiment = albench::to_json(config);
    experiment.erase("strategy");
    experiment.erase("representation");
    json lda_json = {{"topics", lda.n_topics}, {"iterations", lda.iterations}, {"seed", lda.seed}, {"beta", lda.beta}};
    if (lda.alpha) lda_json["alpha"] = *lda.alpha;
    json pre = {{"min_count", preprocess.min_count}, {"min_doc_freq", preprocess.min_doc_freq}};
    if (preprocess.stop_words) pre["stop_words"] = preprocess.stop_words->generic_string();
    return {{"datasets", ds},         {"representations", representations}, {"strategies", strategies_json},
            {"experiment", experiment}, {"lda", lda_json},                    {"preprocess", pre},
            {"output_dir", output_dir.generic_string()}, {"workers", workers}};
}

std::vector<std::string> RunManifest::problems() const {
    std::vector<std::string> out;
    if (datasets.empty()) out.push_back("no datasets");
    if (representations.empty()) out.push_back("no representations");
    if (strategies.empty()) out.push_back("no strategies");
    std::set<std::string> names;
    for (const auto& d : datasets) {
        if (!names.insert(d.name).second) out.push_back("duplicate dataset name '" + d.name + "'");
        if (!std::filesystem::exists(d.path)) out.push_back("dataset file missing: " + d.path.string());
        for (const auto& rep : representations) {
            if (rep == "wordvec") {
                if (!d.word_vectors) {
                    out.push_back("dataset '" + d.name + "' has no word_vectors for representation 'wordvec'");
                } else if (!std::filesystem::exists(*d.word_vectors)) {
                    out.push_back("word-vector file missing: " + d.word_vectors->string());
                }
            } else if (!is_builtin_representation(rep)) {
                const auto it = d.embeddings.find(rep);
                if (it == d.embeddings.end()) {
                    out.push_back("dataset '" + d.name + "' names no embedding file for '" + rep + "'");
                } else if (!std::filesystem::exists(it->second)) {
                    out.push_back("embedding file missing: " + it->second.string());
                }
            }
        }
    }
    if (preprocess.stop_words && !std::filesystem::exists(*preprocess.stop_words)) {
        out.push_back("stop-word file missing: " + preprocess.stop_words->string());
    }
    try {
        config.validate();
    } catch (const Error& e) {
        out.push_back(e.what());
    }
    return out;
}

}  // namespace albench::cli
