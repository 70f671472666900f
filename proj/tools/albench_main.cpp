#include <CLI11.hpp>
#include <iostream>

#include "albench/cli/commands.hpp"
#include "albench/errors.hpp"

namespace {

using namespace albench;
using namespace albench::cli;

DatasetSpec parse_dataset_flag(const std::string& value) {
    DatasetSpec spec;
    const auto eq = value.find('=');
    if (eq == std::string::npos) {
        spec.path = value;
        spec.name = spec.path.stem().string();
    } else {
        spec.name = value.substr(0, eq);
        spec.path = value.substr(eq + 1);
    }
    return spec;
}

// Splits "label=path" for --embedding flags.
std::pair<std::string, std::string> split_pair(const std::string& value) {
    const auto eq = value.find('=');
    if (eq == std::string::npos) throw ArgumentError("expected LABEL=PATH, got '" + value + "'");
    return {value.substr(0, eq), value.substr(eq + 1)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pool-based active learning benchmark"};
    app.require_subcommand(1);

    struct {
        std::string manifest;
        std::vector<std::string> datasets;
        std::vector<std::string> embeddings;
        std::vector<std::string> reps;
        std::vector<std::string> strategies;
        std::optional<std::size_t> budget, batch, reps_count, workers;
        std::optional<std::uint64_t> seed;
        std::optional<std::string> out;
    } run;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment grid");
    run_cmd->add_option("--manifest", run.manifest, "JSON manifest file");
    run_cmd->add_option("--dataset", run.datasets, "Dataset as [NAME=]PATH (replaces manifest datasets)");
    run_cmd->add_option("--embedding", run.embeddings, "Precomputed embeddings as LABEL=PATH for every dataset");
    run_cmd->add_option("--rep", run.reps, "Representation (replaces manifest list)");
    run_cmd->add_option("--strategy", run.strategies, "Strategy (replaces manifest list)");
    run_cmd->add_option("--budget", run.budget, "Label budget");
    run_cmd->add_option("--batch", run.batch, "Batch size");
    run_cmd->add_option("--reps", run.reps_count, "Repetitions per cell");
    run_cmd->add_option("--seed", run.seed, "Base seed");
    run_cmd->add_option("--out", run.out, "Output directory");
    run_cmd->add_option("--workers", run.workers, "Concurrent cells");

    std::string emb_path, emb_corpus;
    auto* val_cmd = app.add_subcommand("validate-embeddings", "Check an embedding file against a corpus");
    val_cmd->add_option("path", emb_path, "Embedding file")->required();
    val_cmd->add_option("--corpus", emb_corpus, "Corpus file")->required();

    std::string curves, group_by = "strategy", plot_out = "plots";
    bool svg = false;
    auto* plot_cmd = app.add_subcommand("plotdata", "Mean learning curves per group");
    plot_cmd->add_option("curves", curves, "curves.csv from a run")->required();
    plot_cmd->add_option("--group-by", group_by, "strategy or representation");
    plot_cmd->add_option("--out", plot_out, "Output directory");
    plot_cmd->add_flag("--svg", svg, "Also write SVG charts");

    std::string table, stats_out = "stats";
    std::optional<std::string> filter;
    auto* stats_cmd = app.add_subcommand("stats", "Ranks and pairwise tests over an AULC table");
    stats_cmd->add_option("table", table, "CSV with header method,<dataset>...")->required();
    stats_cmd->add_option("--out", stats_out, "Output directory");
    stats_cmd->add_option("--filter", filter, "Keep methods containing this substring");

    std::string synth_out = "synthetic";
    std::size_t synth_n = 1000, synth_dim = 64;
    std::uint64_t synth_seed = 1;
    auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic corpus and embedding file");
    synth_cmd->add_option("--out", synth_out, "Output directory");
    synth_cmd->add_option("--docs", synth_n, "Number of documents");
    synth_cmd->add_option("--dim", synth_dim, "Embedding dimension");
    synth_cmd->add_option("--seed", synth_seed, "Generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*run_cmd) {
            RunManifest manifest = run.manifest.empty() ? RunManifest{} : RunManifest::from_file(run.manifest);
            if (!run.datasets.empty()) {
                manifest.datasets.clear();
                for (const auto& d : run.datasets) manifest.datasets.push_back(parse_dataset_flag(d));
            }
            for (const auto& e : run.embeddings) {
                const auto [label, path] = split_pair(e);
                for (auto& d : manifest.datasets) d.embeddings[label] = path;
            }
            if (!run.reps.empty()) manifest.representations = run.reps;
            if (!run.strategies.empty()) {
                manifest.strategies.clear();
                for (const auto& s : run.strategies) manifest.strategies.push_back(parse_strategy(s));
            }
            if (run.budget) manifest.config.budget = *run.budget;
            if (run.batch) manifest.config.batch_size = *run.batch;
            if (run.reps_count) manifest.config.repetitions = *run.reps_count;
            if (run.seed) manifest.config.base_seed = *run.seed;
            if (run.out) manifest.output_dir = *run.out;
            if (run.workers) manifest.workers = *run.workers;
            return cmd_run(manifest, std::cerr);
        }
        if (*val_cmd) return cmd_validate_embeddings(emb_path, emb_corpus, std::cout);
        if (*plot_cmd) return cmd_plotdata(curves, group_by, plot_out, svg, std::cerr);
        if (*stats_cmd) return cmd_stats(table, stats_out, filter, std::cerr);
        if (*synth_cmd) return cmd_synth(synth_out, synth_n, synth_dim, synth_seed, std::cerr);
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeFailure;
    }
    return kOk;
}
