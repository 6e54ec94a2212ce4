#include "blinkbench/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI/CLI.hpp>
#include <nlohmann/json.hpp>

#include "blinkbench/bench.hpp"
#include "blinkbench/connectivity.hpp"
#include "blinkbench/epochs.hpp"
#include "blinkbench/errors.hpp"
#include "blinkbench/grid_search.hpp"
#include "blinkbench/ingest.hpp"
#include "blinkbench/preprocess.hpp"
#include "blinkbench/selection.hpp"
#include "blinkbench/synth.hpp"
#include "blinkbench/util.hpp"

namespace blinkbench {
namespace {

using nlohmann::json;

namespace fs = std::filesystem;

std::string basename_of(const std::string& path) {
    return fs::path(path).filename().string();
}

// The input is recorded by basename and the output directory is left out on
// purpose: headers must not make otherwise identical artifacts differ just
// because the run happened in a different directory.
std::string input_field(const RunConfig& cfg) {
    if (!cfg.report_inputs.empty()) {
        std::string joined;
        for (const std::string& p : cfg.report_inputs) {
            if (!joined.empty()) joined += ',';
            joined += basename_of(p);
        }
        return joined;
    }
    return basename_of(cfg.input);
}

std::string run_line(const RunConfig& cfg, const std::string& command) {
    std::ostringstream out;
    out << "command=" << command << " input=" << input_field(cfg)
        << " format=" << cfg.format << " factor=" << format_double(cfg.factor)
        << " window_len=" << cfg.window_len
        << " window_count=" << cfg.window_count << " n_select=" << cfg.n_select
        << " bins=" << cfg.bins << " folds=" << cfg.folds << " seed=" << cfg.seed
        << " repeats=" << cfg.repeats << " rate=" << cfg.rate;
    if (command == "graph") out << " tau=" << format_double(cfg.tau) << " state=" << cfg.state;
    if (command == "synth") out << " rows=" << cfg.rows;
    if (command == "bench") {
        out << " experiment=" << cfg.experiment;
        if (!cfg.base_report.empty()) out << " base_report=" << basename_of(cfg.base_report);
    }
    return out.str();
}

json run_json(const RunConfig& cfg, const std::string& command) {
    json j{{"command", command},
           {"input", input_field(cfg)},
           {"format", cfg.format},
           {"factor", cfg.factor},
           {"window_len", cfg.window_len},
           {"window_count", cfg.window_count},
           {"n_select", cfg.n_select},
           {"bins", cfg.bins},
           {"folds", cfg.folds},
           {"seed", cfg.seed},
           {"repeats", cfg.repeats},
           {"rate", cfg.rate}};
    if (command == "graph") {
        j["tau"] = cfg.tau;
        j["state"] = cfg.state;
    }
    if (command == "synth") j["rows"] = cfg.rows;
    if (command == "bench") {
        j["experiment"] = cfg.experiment;
        if (!cfg.base_report.empty()) j["base_report"] = basename_of(cfg.base_report);
    }
    return j;
}

// Re-emits a module's JSON artifact with the run config stitched in.
std::string with_run(const std::string& text, const RunConfig& cfg,
                     const std::string& command) {
    json j = json::parse(text);
    j["run"] = run_json(cfg, command);
    return j.dump(2) + "\n";
}

std::string csv_header(const RunConfig& cfg, const std::string& command) {
    return "# run: " + run_line(cfg, command) + "\n";
}

void write_out(const RunConfig& cfg, const std::string& name,
               std::string_view content) {
    const fs::path path = fs::path(cfg.out_dir) / name;
    write_file(path.string(), content);
    std::cout << "wrote " << path.string() << "\n";
}

bool looks_like_arff(const std::string& path, std::string_view text) {
    const std::string ext = to_lower(fs::path(path).extension().string());
    if (ext == ".arff") return true;
    if (ext == ".csv") return false;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '%' || t[0] == '#') continue;
        return t[0] == '@';
    }
    return false;
}

Recording load_recording(const RunConfig& cfg) {
    const std::string text = read_file(cfg.input);
    const bool arff = cfg.format == "arff" ||
                      (cfg.format == "auto" && looks_like_arff(cfg.input, text));
    Recording rec = arff ? parse_arff(text, cfg.rate)
                         : parse_csv(text, csv_has_header(text), cfg.rate);
    rec.validate();
    return rec;
}

// Shared front of every pipeline stage: ingest, drop outlier rows, center.
Recording preprocessed(const RunConfig& cfg, OutlierReport* report = nullptr) {
    const Recording raw = load_recording(cfg);
    auto cleaned = remove_outliers(raw, cfg.factor);
    if (report) *report = cleaned.second;
    return center(cleaned.first);
}

int cmd_synth(const RunConfig& cfg) {
    SynthConfig sc;
    sc.rows = cfg.rows;
    sc.sample_rate_hz = cfg.rate;
    sc.seed = cfg.seed;
    const std::string arff =
        "% run: " + run_line(cfg, "synth") + "\n" + synthetic_arff(sc);
    write_out(cfg, "synthetic.arff", arff);
    std::cout << "synthetic recording: " << sc.rows << " rows at " << sc.sample_rate_hz
              << " Hz, seed " << sc.seed << "\n";
    return exit_ok;
}

int cmd_summarize(const RunConfig& cfg) {
    const Recording rec = load_recording(cfg);
    const SummaryStats s = summarize(rec);
    write_out(cfg, "summary.json", with_run(summary_to_json(s), cfg, "summarize"));
    write_out(cfg, "label_counts.csv",
              csv_header(cfg, "summarize") + summary_label_csv(s));
    std::cout << rec.channel_count() << " channels x " << rec.length() << " rows, "
              << s.label_count[0] << " open / " << s.label_count[1] << " blink, "
              << s.transition_count << " transitions\n";
    return exit_ok;
}

int cmd_preprocess(const RunConfig& cfg) {
    OutlierReport report;
    const Recording rec = preprocessed(cfg, &report);
    write_out(cfg, "preprocessed.csv", csv_header(cfg, "preprocess") + write_csv(rec));
    write_out(cfg, "outlier_report.json",
              with_run(outlier_report_to_json(report), cfg, "preprocess"));
    std::cout << "removed " << report.removed_indices.size() << " outlier rows at factor "
              << format_double(report.factor) << "; " << rec.length() << " rows remain, centered\n";
    return exit_ok;
}

int cmd_graph(const RunConfig& cfg) {
    const Recording rec = preprocessed(cfg);
    const CorrMatrix corr = correlation_matrix(rec, parse_state_filter(cfg.state));
    const ChannelGraph g = adjacency(corr, cfg.tau);
    const std::vector<std::size_t> order = cluster_order(corr);
    write_out(cfg, "correlation.csv",
              csv_header(cfg, "graph") + corr_to_csv(corr, &order));
    write_out(cfg, "graph.dot",
              "// run: " + run_line(cfg, "graph") + "\n" + export_graph(g, GraphFormat::dot));
    write_out(cfg, "edges.txt",
              csv_header(cfg, "graph") + export_graph(g, GraphFormat::edge_list));
    json stats{{"tau", g.tau},
               {"state", to_string(g.eye_state)},
               {"edge_count", g.edge_count()},
               {"average_degree", average_degree(g)},
               {"sample_count", corr.sample_count},
               {"cluster_order", order},
               {"run", run_json(cfg, "graph")}};
    write_out(cfg, "graph_stats.json", stats.dump(2) + "\n");
    std::cout << "state " << to_string(g.eye_state) << ", tau " << format_double(g.tau)
              << ": " << g.edge_count() << " edges, average degree "
              << format_double(average_degree(g)) << "\n";
    return exit_ok;
}

int cmd_select(const RunConfig& cfg) {
    const Recording rec = preprocessed(cfg);
    const HistogramConfig hc{cfg.bins};
    const SelectionRanking ranking = mrmr_rank(rec, hc, cfg.n_select);
    write_out(cfg, "selection.json", with_run(ranking_to_json(ranking), cfg, "select"));
    write_out(cfg, "selection.csv", csv_header(cfg, "select") + ranking_to_csv(ranking));
    std::cout << "mRMR order:";
    for (std::size_t step = 0; step < ranking.order.size(); ++step) {
        std::cout << (step == 0 ? " " : ", ")
                  << ranking.channel_names[ranking.order[step]] << " ("
                  << format_double(ranking.scores[step]) << ")";
    }
    std::cout << "\n";
    return exit_ok;
}

int cmd_epoch(const RunConfig& cfg) {
    const Recording rec = preprocessed(cfg);
    const EpochSet epochs =
        slice_windows(rec, cfg.window_len, cfg.window_count, cfg.seed);
    write_out(cfg, "epochs.csv", csv_header(cfg, "epoch") + epochs_to_csv(epochs));
    write_out(cfg, "epoch_manifest.json",
              with_run(epochs_manifest_json(epochs), cfg, "epoch"));
    write_out(cfg, "window_plot.csv",
              csv_header(cfg, "epoch") + window_plot_csv(epochs, 0, rec.sample_rate_hz));
    std::cout << epochs.windows.size() << " windows x " << epochs.window_len
              << " rows = " << epochs.row_count() << " epoch rows\n";
    return exit_ok;
}

std::string grid_to_json(const GridResult& grid, const RunConfig& cfg) {
    json cells = json::array();
    for (const GridCell& cell : grid.cells) {
        json jc{{"params", cell.params},
                {"fold_f1", cell.fold_f1},
                {"mean_f1", cell.mean_f1},
                {"failed", cell.failed}};
        if (cell.failed) jc["error"] = cell.error;
        cells.push_back(jc);
    }
    json j{{"kind", to_string(grid.kind)},
           {"cells", cells},
           {"best_index", grid.best_index},
           {"best_params", grid.best().params},
           {"run", run_json(cfg, "bench")}};
    return j.dump(2) + "\n";
}

void write_experiment(const RunConfig& cfg, const ExperimentReport& report) {
    const std::string id = to_string(report.id);
    write_out(cfg, "bench_" + id + ".json",
              with_run(report_to_json(report, false), cfg, "bench"));
    write_out(cfg, "bench_" + id + "_folds.csv",
              csv_header(cfg, "bench") + report_fold_csv(report));
    write_out(cfg, "bench_" + id + "_timing.json",
              with_run(report_to_json(report, true), cfg, "bench"));
    write_out(cfg, "bench_" + id + "_table.md",
              "<!-- run: " + run_line(cfg, "bench") + " -->\n\n" + report_markdown(report));
    std::cout << "\nexperiment " << id << "\n" << report_markdown(report) << "\n";
}

ExperimentReport load_base_report(const RunConfig& cfg, ExperimentConfig& ec) {
    const ExperimentReport base = report_from_json(read_file(cfg.base_report));
    if (base.id != ExperimentId::base) {
        throw DataError("base report " + cfg.base_report + " holds experiment " +
                        to_string(base.id) + ", not base");
    }
    if (base.folds != ec.folds || base.seed != ec.seed || base.repeats != ec.repeats) {
        throw DataError("base report " + cfg.base_report +
                        " was produced with different folds/seed/repeats");
    }
    for (const ClassifierRecord& c : base.classifiers) {
        if (c.wall_seconds <= 0.0) {
            throw DataError("base report " + cfg.base_report +
                            " lacks timing; pass the bench_base_timing.json artifact");
        }
        if (c.kind == ModelKind::knn) ec.knn_params = c.params;
    }
    return base;
}

int cmd_bench(const RunConfig& cfg) {
    if (!cfg.base_report.empty() && cfg.experiment == "base") {
        throw std::invalid_argument("--base-report only applies to experiments A, B, C or all");
    }
    const Recording rec = preprocessed(cfg);

    ExperimentConfig ec;
    ec.folds = cfg.folds;
    ec.seed = cfg.seed;
    ec.repeats = cfg.repeats;
    ec.n_select = cfg.n_select;
    ec.window_len = cfg.window_len;
    ec.window_count = cfg.window_count;
    ec.histogram.bin_count = cfg.bins;
    ec.rf_params["seed"] = static_cast<double>(cfg.seed);

    std::vector<ExperimentId> targets;
    if (cfg.experiment == "all") {
        targets = {ExperimentId::A, ExperimentId::B, ExperimentId::C};
    } else {
        const ExperimentId id = parse_experiment_id(cfg.experiment);
        if (id != ExperimentId::base) targets = {id};
    }

    ExperimentReport base;
    if (!cfg.base_report.empty()) {
        base = load_base_report(cfg, ec);
    } else {
        // One k for the whole grid: tuned on the base dataset, reused by every
        // experiment so speed differences come from the data, not the model.
        const Dataset base_data = experiment_dataset(ExperimentId::base, rec, ec);
        std::vector<std::map<std::string, double>> grid;
        for (double k : {1.0, 3.0, 5.0, 7.0, 9.0, 15.0}) grid.push_back({{"k", k}});
        const GridResult gr =
            grid_search(ModelKind::knn, base_data, grid, ec.folds, ec.seed);
        ec.knn_params = gr.best().params;
        write_out(cfg, "knn_grid.json", grid_to_json(gr, cfg));
        std::cout << "knn grid: best k=" << format_double(ec.knn_params.at("k"))
                  << " (mean F1 " << format_double(gr.best().mean_f1) << ")\n";

        base = run_experiment(ExperimentId::base, rec, ec, nullptr);
        write_experiment(cfg, base);
    }

    for (ExperimentId id : targets) {
        const ExperimentReport report = run_experiment(id, rec, ec, &base);
        write_experiment(cfg, report);
    }
    return exit_ok;
}

int cmd_report(RunConfig& cfg) {
    std::string body;
    for (const std::string& path : cfg.report_inputs) {
        const ExperimentReport report = report_from_json(read_file(path));
        body += "## experiment " + to_string(report.id) + "\n\n" +
                report_markdown(report) + "\n";
    }
    write_out(cfg, "report.md",
              "<!-- run: " + run_line(cfg, "report") + " -->\n\n" + body);
    std::cout << body;
    return exit_ok;
}

}  // namespace

int dispatch(const std::string& command, RunConfig config) {
    if (config.out_dir.empty()) {
        const char* env = std::getenv("BLINKBENCH_OUT");
        config.out_dir = (env != nullptr && *env != '\0') ? env : ".";
    }
    fs::create_directories(config.out_dir);

    if (command == "synth") return cmd_synth(config);
    if (command == "summarize") return cmd_summarize(config);
    if (command == "preprocess") return cmd_preprocess(config);
    if (command == "graph") return cmd_graph(config);
    if (command == "select") return cmd_select(config);
    if (command == "epoch") return cmd_epoch(config);
    if (command == "bench") return cmd_bench(config);
    if (command == "report") return cmd_report(config);
    throw std::invalid_argument("unknown subcommand: " + command);
}

int run_cli(int argc, const char* const* argv) {
    RunConfig cfg;
    std::string command;

    CLI::App app{"EEG eye-state reduction pipeline and classifier benchmark"};
    app.require_subcommand(1);

    const auto add_io = [&cfg](CLI::App* cmd) {
        cmd->add_option("-i,--input", cfg.input, "recording file (ARFF or CSV)")
            ->required();
        cmd->add_option("--format", cfg.format, "input format override (auto, arff, csv)")
            ->check(CLI::IsMember({"auto", "arff", "csv"}));
        cmd->add_option("--rate", cfg.rate, "sample rate in Hz")
            ->check(CLI::PositiveNumber);
        cmd->add_option("-o,--out", cfg.out_dir,
                        "output directory (default $BLINKBENCH_OUT or .)");
        cmd->add_option("--seed", cfg.seed, "rng seed recorded in every artifact");
    };
    const auto add_factor = [&cfg](CLI::App* cmd) {
        cmd->add_option("--factor", cfg.factor,
                        "outlier threshold as a multiple of the channel mean |value|")
            ->check(CLI::PositiveNumber);
    };
    const auto add_windows = [&cfg](CLI::App* cmd) {
        cmd->add_option("--window-len", cfg.window_len, "rows per epoch window")
            ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
        cmd->add_option("--window-count", cfg.window_count, "number of epoch windows")
            ->check(CLI::PositiveNumber);
    };
    const auto add_selection = [&cfg](CLI::App* cmd) {
        cmd->add_option("--n-select", cfg.n_select, "channels kept by mRMR")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--bins", cfg.bins, "histogram bins for mutual information")
            ->check(CLI::Range(2, 1 << 16));
    };

    CLI::App* synth = app.add_subcommand("synth", "generate the synthetic eye-state recording");
    synth->add_option("--rows", cfg.rows, "recording length in rows")
        ->check(CLI::Range(std::size_t{2000}, std::size_t{10000000}));
    synth->add_option("--rate", cfg.rate, "sample rate in Hz")->check(CLI::PositiveNumber);
    synth->add_option("--seed", cfg.seed, "generator seed");
    synth->add_option("-o,--out", cfg.out_dir,
                      "output directory (default $BLINKBENCH_OUT or .)");

    CLI::App* summarize_cmd = app.add_subcommand("summarize", "per-channel stats and label counts");
    add_io(summarize_cmd);

    CLI::App* preprocess_cmd = app.add_subcommand("preprocess", "drop outlier rows and zero-center");
    add_io(preprocess_cmd);
    add_factor(preprocess_cmd);

    CLI::App* graph_cmd = app.add_subcommand("graph", "correlation matrix and thresholded channel graph");
    add_io(graph_cmd);
    add_factor(graph_cmd);
    graph_cmd->add_option("--tau", cfg.tau, "adjacency threshold on the correlation")
        ->check(CLI::Range(-1.0, 1.0));
    graph_cmd->add_option("--state", cfg.state, "restrict to an eye state (0, 1, all)")
        ->check(CLI::IsMember({"0", "1", "all"}));

    CLI::App* select_cmd = app.add_subcommand("select", "greedy mRMR channel ranking");
    add_io(select_cmd);
    add_factor(select_cmd);
    add_selection(select_cmd);

    CLI::App* epoch_cmd = app.add_subcommand("epoch", "transition-centered window slicing");
    add_io(epoch_cmd);
    add_factor(epoch_cmd);
    add_windows(epoch_cmd);

    CLI::App* bench_cmd = app.add_subcommand("bench", "k-fold F1 and wall-clock benchmark grid");
    add_io(bench_cmd);
    add_factor(bench_cmd);
    add_windows(bench_cmd);
    add_selection(bench_cmd);
    bench_cmd->add_option("--experiment", cfg.experiment, "base, A, B, C or all")
        ->check(CLI::IsMember({"base", "A", "B", "C", "all"}));
    bench_cmd->add_option("--folds", cfg.folds, "stratified folds")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000}));
    bench_cmd->add_option("--repeats", cfg.repeats, "timing repeats per classifier")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--base-report", cfg.base_report,
                          "bench_base_timing.json from an earlier run; skips the base rerun");

    CLI::App* report_cmd = app.add_subcommand("report", "markdown tables from stored bench reports");
    report_cmd->add_option("inputs", cfg.report_inputs, "bench_*_timing.json files")
        ->required();
    report_cmd->add_option("-o,--out", cfg.out_dir,
                           "output directory (default $BLINKBENCH_OUT or .)");

    for (CLI::App* s : {synth, summarize_cmd, preprocess_cmd, graph_cmd,
                        select_cmd, epoch_cmd, bench_cmd, report_cmd}) {
        s->callback([&command, s] { command = s->get_name(); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        return dispatch(command, cfg);
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    } catch (const std::logic_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("blinkbench");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace blinkbench
