#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest/doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "blinkbench/cli.hpp"
#include "blinkbench/ingest.hpp"
#include "blinkbench/recording.hpp"
#include "blinkbench/rng.hpp"
#include "blinkbench/util.hpp"

using namespace blinkbench;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

// Drives the whole binary surface in-process with captured streams.
CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    std::streambuf* old_out = std::cout.rdbuf(out.rdbuf());
    std::streambuf* old_err = std::cerr.rdbuf(err.rdbuf());
    CliResult r;
    r.code = run_cli(args);
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

struct TempDir {
    fs::path path;

    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("blinkbench_cli_" + tag + "_" + std::to_string(++counter));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }

    std::string file(const std::string& name) const { return (path / name).string(); }
};

// Two informative channels plus two noise channels, labels alternating every
// `period` rows. Small enough that a full bench run stays in test budget.
Recording small_recording(std::size_t rows = 1600, std::size_t period = 80) {
    Rng rng(5);
    Recording rec;
    rec.sample_rate_hz = 128;
    rec.channels.resize(4);
    const char* names[4] = {"c1", "c2", "c3", "c4"};
    for (int c = 0; c < 4; ++c) {
        rec.channels[static_cast<std::size_t>(c)].name = names[c];
        rec.channels[static_cast<std::size_t>(c)].values.reserve(rows);
    }
    rec.labels.reserve(rows);
    for (std::size_t t = 0; t < rows; ++t) {
        const int label = static_cast<int>((t / period) % 2);
        rec.labels.push_back(label);
        rec.channels[0].values.push_back(4200.0 + 30.0 * label + rng.normal(0.0, 5.0));
        rec.channels[1].values.push_back(4300.0 - 25.0 * label + rng.normal(0.0, 5.0));
        rec.channels[2].values.push_back(4250.0 + rng.normal(0.0, 8.0));
        rec.channels[3].values.push_back(4150.0 + rng.normal(0.0, 8.0));
    }
    rec.validate();
    return rec;
}

std::string write_small_csv(const TempDir& dir, const std::string& name = "rec.csv") {
    const std::string path = dir.file(name);
    write_file(path, write_csv(small_recording()));
    return path;
}

}  // namespace

TEST_CASE("usage problems exit 2") {
    CHECK(run({}).code == exit_usage);
    CHECK(run({"fly"}).code == exit_usage);
    CHECK(run({"summarize"}).code == exit_usage);  // --input is required

    TempDir dir("usage");
    const std::string input = write_small_csv(dir);
    const CliResult len0 =
        run({"epoch", "-i", input, "--window-len", "0", "-o", dir.file("out")});
    CHECK(len0.code == exit_usage);
    CHECK(len0.err.find("--window-len") != std::string::npos);

    CHECK(run({"graph", "-i", input, "--state", "2"}).code == exit_usage);
    CHECK(run({"bench", "-i", input, "--experiment", "D"}).code == exit_usage);
    const CliResult combo = run({"bench", "-i", input, "--experiment", "base",
                                 "--base-report", "whatever.json"});
    CHECK(combo.code == exit_usage);
    CHECK(combo.err.find("--base-report") != std::string::npos);
}

TEST_CASE("help exits 0") {
    CHECK(run({"--help"}).code == exit_ok);
    CHECK(run({"bench", "--help"}).code == exit_ok);
}

TEST_CASE("missing input exits 3 and names the path") {
    TempDir dir("missing");
    const CliResult r =
        run({"summarize", "-i", dir.file("absent.arff"), "-o", dir.file("out")});
    CHECK(r.code == exit_data);
    CHECK(r.err.find(dir.file("absent.arff")) != std::string::npos);
}

TEST_CASE("malformed data exits 3") {
    TempDir dir("bad");
    write_file(dir.file("bad.csv"), "a,b,label\n1,2,0\n3,x,1\n");
    CHECK(run({"summarize", "-i", dir.file("bad.csv"), "-o", dir.file("out")}).code ==
          exit_data);

    // constant labels: no transitions to center windows on
    Recording rec = small_recording(400, 80);
    std::fill(rec.labels.begin(), rec.labels.end(), 0);
    write_file(dir.file("flat.csv"), write_csv(rec));
    CHECK(run({"epoch", "-i", dir.file("flat.csv"), "--window-len", "20",
               "--window-count", "2", "-o", dir.file("out")})
              .code == exit_data);
    CHECK(run({"bench", "-i", dir.file("flat.csv"), "--folds", "2", "-o",
               dir.file("out")})
              .code == exit_data);
}

TEST_CASE("synth emits a deterministic parseable recording") {
    TempDir dir("synth");
    const CliResult r1 = run({"synth", "--rows", "2000", "--rate", "16", "--seed",
                              "13", "-o", dir.file("a")});
    REQUIRE(r1.code == exit_ok);
    const std::string text = read_file(dir.file("a/synthetic.arff"));
    CHECK(text.find("% run: command=synth") != std::string::npos);
    CHECK(text.find("seed=13") != std::string::npos);
    const Recording rec = parse_arff(text, 16);
    CHECK(rec.channel_count() == 14);
    CHECK(rec.length() == 2000);

    const CliResult r2 = run({"synth", "--rows", "2000", "--rate", "16", "--seed",
                              "13", "-o", dir.file("b")});
    REQUIRE(r2.code == exit_ok);
    CHECK(read_file(dir.file("b/synthetic.arff")) == text);

    CHECK(run({"synth", "--rows", "100"}).code == exit_usage);  // below range check
    // enough rows for the range check but too short for twenty episodes
    CHECK(run({"synth", "--rows", "2000", "--rate", "128", "-o", dir.file("c")})
              .code == exit_usage);
}

TEST_CASE("summarize writes stats with the run header") {
    TempDir dir("summ");
    const std::string input = write_small_csv(dir);
    const CliResult r = run({"summarize", "-i", input, "--seed", "21", "-o",
                             dir.file("out")});
    REQUIRE(r.code == exit_ok);
    CHECK(r.out.find("4 channels x 1600 rows") != std::string::npos);

    const json summary = json::parse(read_file(dir.file("out/summary.json")));
    CHECK(summary.at("rows") == 1600);
    CHECK(summary.at("run").at("seed") == 21);
    CHECK(summary.at("run").at("command") == "summarize");
    CHECK(summary.at("run").at("input") == "rec.csv");

    const std::string labels = read_file(dir.file("out/label_counts.csv"));
    CHECK(labels.rfind("# run: command=summarize", 0) == 0);
}

TEST_CASE("preprocess output re-ingests cleanly") {
    TempDir dir("prep");
    Recording rec = small_recording(400, 40);
    rec.channels[2].values[37] = 99999.0;  // one spike, one removed row
    write_file(dir.file("rec.csv"), write_csv(rec));

    const CliResult r =
        run({"preprocess", "-i", dir.file("rec.csv"), "-o", dir.file("out")});
    REQUIRE(r.code == exit_ok);

    const json report = json::parse(read_file(dir.file("out/outlier_report.json")));
    CHECK(report.at("removed_count") == 1);
    CHECK(report.at("removed").at(0).at("index") == 37);
    CHECK(report.at("run").at("factor") == 10.0);

    const std::string csv = read_file(dir.file("out/preprocessed.csv"));
    CHECK(csv.rfind("# run: command=preprocess", 0) == 0);
    const Recording back = parse_csv(csv, true);
    CHECK(back.length() == 399);
    CHECK(back.channel_names() == rec.channel_names());

    const CliResult again =
        run({"summarize", "-i", dir.file("out/preprocessed.csv"), "-o", dir.file("out2")});
    CHECK(again.code == exit_ok);
}

TEST_CASE("graph exports matrix, dot, edge list and stats") {
    TempDir dir("graph");
    const std::string input = write_small_csv(dir);
    const CliResult r = run({"graph", "-i", input, "--tau", "0.5", "--state", "1",
                             "-o", dir.file("out")});
    REQUIRE(r.code == exit_ok);

    const json stats = json::parse(read_file(dir.file("out/graph_stats.json")));
    CHECK(stats.at("tau") == 0.5);
    CHECK(stats.at("state") == "1");
    CHECK(stats.at("cluster_order").size() == 4);
    CHECK(stats.at("sample_count") == 800);

    CHECK(read_file(dir.file("out/graph.dot")).rfind("// run: command=graph", 0) == 0);
    const std::string edges = read_file(dir.file("out/edges.txt"));
    CHECK(edges.find("# nodes:") != std::string::npos);
    const std::string corr = read_file(dir.file("out/correlation.csv"));
    CHECK(corr.find("channel") != std::string::npos);
    CHECK(corr.find("tau=0.5") != std::string::npos);
}

TEST_CASE("select ranks the informative channels first") {
    TempDir dir("select");
    const std::string input = write_small_csv(dir);
    const CliResult r = run({"select", "-i", input, "--n-select", "2", "--bins",
                             "12", "-o", dir.file("out")});
    REQUIRE(r.code == exit_ok);

    const json ranking = json::parse(read_file(dir.file("out/selection.json")));
    REQUIRE(ranking.at("order").size() == 2);
    const std::string first = ranking.at("order_names").at(0);
    CHECK((first == "c1" || first == "c2"));
    CHECK(ranking.at("run").at("bins") == 12);
    CHECK(read_file(dir.file("out/selection.csv")).rfind("# run: command=select", 0) == 0);
}

TEST_CASE("epoch manifest matches the requested geometry") {
    TempDir dir("epoch");
    const std::string input = write_small_csv(dir);
    const CliResult r = run({"epoch", "-i", input, "--window-len", "40",
                             "--window-count", "5", "--seed", "3", "-o",
                             dir.file("out")});
    REQUIRE(r.code == exit_ok);
    CHECK(r.out.find("5 windows x 40 rows = 200 epoch rows") != std::string::npos);

    const json manifest = json::parse(read_file(dir.file("out/epoch_manifest.json")));
    CHECK(manifest.at("window_count") == 5);
    CHECK(manifest.at("window_len") == 40);
    CHECK(manifest.at("row_count") == 200);
    CHECK(manifest.at("seed") == 3);
    CHECK(manifest.at("windows").size() == 5);

    const std::string csv = read_file(dir.file("out/epochs.csv"));
    CHECK(csv.find("source_index,c1,c2,c3,c4,label") != std::string::npos);
    CHECK(read_file(dir.file("out/window_plot.csv")).find("time_s") != std::string::npos);
}

TEST_CASE("bench writes lean, timing and fold artifacts") {
    TempDir dir("bench");
    const std::string input = write_small_csv(dir);
    const CliResult r = run({"bench", "-i", input, "--experiment", "A", "--folds",
                             "2", "--repeats", "1", "--n-select", "2",
                             "--window-len", "40", "--window-count", "8", "--seed",
                             "9", "-o", dir.file("out")});
    REQUIRE(r.code == exit_ok);

    CHECK(fs::exists(dir.file("out/knn_grid.json")));
    CHECK(fs::exists(dir.file("out/bench_base.json")));
    CHECK(fs::exists(dir.file("out/bench_base_table.md")));

    const json grid = json::parse(read_file(dir.file("out/knn_grid.json")));
    CHECK(grid.at("cells").size() == 6);
    CHECK(grid.at("kind") == "knn");

    const json lean = json::parse(read_file(dir.file("out/bench_A.json")));
    CHECK(lean.at("experiment") == "A");
    CHECK(lean.at("run").at("seed") == 9);
    CHECK(lean.at("run").at("experiment") == "A");
    REQUIRE(lean.at("classifiers").size() == 4);
    for (const json& c : lean.at("classifiers")) {
        CHECK(c.contains("f1_gain"));
        CHECK(!c.contains("wall_seconds"));
        CHECK(!c.contains("repeat_seconds"));
        CHECK(!c.contains("speedup_gain"));
    }
    // grid winner's k is reused by every experiment
    const json best = grid.at("best_params").at("k");
    CHECK(lean.at("classifiers").at(0).at("params").at("k") == best);

    const json timing = json::parse(read_file(dir.file("out/bench_A_timing.json")));
    for (const json& c : timing.at("classifiers")) {
        CHECK(c.at("wall_seconds").get<double>() > 0.0);
        CHECK(c.contains("speedup_gain"));
    }

    std::istringstream folds(read_file(dir.file("out/bench_A_folds.csv")));
    std::string line;
    std::size_t lines = 0;
    while (std::getline(folds, line)) ++lines;
    CHECK(lines == 2 + 4 * 2);  // run header, column header, 4 classifiers x 2 folds

    const std::string table = read_file(dir.file("out/bench_A_table.md"));
    CHECK(table.find("| Classifier | F1 Score gain | Speed-up gain |") != std::string::npos);

    SUBCASE("a stored base report is reused") {
        const CliResult reuse =
            run({"bench", "-i", input, "--experiment", "B", "--folds", "2",
                 "--repeats", "1", "--n-select", "2", "--window-len", "40",
                 "--window-count", "8", "--seed", "9", "--base-report",
                 dir.file("out/bench_base_timing.json"), "-o", dir.file("reuse")});
        REQUIRE(reuse.code == exit_ok);
        CHECK(!fs::exists(dir.file("reuse/knn_grid.json")));      // no new grid search
        CHECK(!fs::exists(dir.file("reuse/bench_base.json")));    // base not rerun
        CHECK(fs::exists(dir.file("reuse/bench_B.json")));

        // the lean report has no wall-clock, so it cannot anchor speedups
        const CliResult lean_base =
            run({"bench", "-i", input, "--experiment", "B", "--folds", "2",
                 "--repeats", "1", "--seed", "9", "--base-report",
                 dir.file("out/bench_base.json"), "-o", dir.file("reuse2")});
        CHECK(lean_base.code == exit_data);
        CHECK(lean_base.err.find("timing") != std::string::npos);

        // mismatched fold count is rejected
        const CliResult mismatch =
            run({"bench", "-i", input, "--experiment", "B", "--folds", "3",
                 "--repeats", "1", "--seed", "9", "--base-report",
                 dir.file("out/bench_base_timing.json"), "-o", dir.file("reuse3")});
        CHECK(mismatch.code == exit_data);
    }
}

TEST_CASE("same config reruns are byte-identical") {
    TempDir dir("ident");
    const std::string input = write_small_csv(dir);
    const std::vector<std::string> common = {
        "bench", "-i", input, "--experiment", "B", "--folds", "2",
        "--repeats", "1", "--n-select", "2", "--window-len", "40",
        "--window-count", "8", "--seed", "42"};

    std::vector<std::string> first = common;
    first.insert(first.end(), {"-o", dir.file("d1")});
    std::vector<std::string> second = common;
    second.insert(second.end(), {"-o", dir.file("d2")});
    REQUIRE(run(first).code == exit_ok);
    REQUIRE(run(second).code == exit_ok);

    for (const std::string name :
         {"knn_grid.json", "bench_base.json", "bench_base_folds.csv",
          "bench_B.json", "bench_B_folds.csv"}) {
        CAPTURE(name);
        CHECK(read_file(dir.file("d1/" + name)) == read_file(dir.file("d2/" + name)));
    }
}

TEST_CASE("report regenerates markdown tables from stored runs") {
    TempDir dir("report");
    const std::string input = write_small_csv(dir);
    REQUIRE(run({"bench", "-i", input, "--experiment", "base", "--folds", "2",
                 "--repeats", "1", "-o", dir.file("out")})
                .code == exit_ok);
    const CliResult r = run({"report", dir.file("out/bench_base_timing.json"), "-o",
                             dir.file("rep")});
    REQUIRE(r.code == exit_ok);
    const std::string md = read_file(dir.file("rep/report.md"));
    CHECK(md.find("## experiment base") != std::string::npos);
    CHECK(md.find("| KNN | 0.000 | 1.0x |") != std::string::npos);

    CHECK(run({"report", dir.file("out/bench_base_folds.csv")}).code == exit_data);
}

TEST_CASE("format override and content sniffing") {
    TempDir dir("format");
    const Recording rec = small_recording(400, 40);
    write_file(dir.file("data.txt"), write_arff(rec, "small", 4));

    CHECK(run({"summarize", "-i", dir.file("data.txt"), "--format", "arff", "-o",
               dir.file("o1")})
              .code == exit_ok);
    // extensionless ARFF content is sniffed from the leading '@'
    CHECK(run({"summarize", "-i", dir.file("data.txt"), "-o", dir.file("o2")}).code ==
          exit_ok);
    // forcing CSV on an ARFF document is a parse failure
    CHECK(run({"summarize", "-i", dir.file("data.txt"), "--format", "csv", "-o",
               dir.file("o3")})
              .code == exit_data);
}

TEST_CASE("BLINKBENCH_OUT supplies the default output directory") {
    TempDir dir("env");
    const std::string input = write_small_csv(dir);
    setenv("BLINKBENCH_OUT", dir.file("from_env").c_str(), 1);
    const CliResult r = run({"summarize", "-i", input});
    unsetenv("BLINKBENCH_OUT");
    REQUIRE(r.code == exit_ok);
    CHECK(fs::exists(dir.file("from_env/summary.json")));
}

TEST_CASE("dispatch runs a configured subcommand directly") {
    TempDir dir("dispatch");
    RunConfig cfg;
    cfg.input = write_small_csv(dir);
    cfg.out_dir = dir.file("out");
    cfg.window_len = 40;
    cfg.window_count = 5;
    cfg.seed = 2;

    std::ostringstream sink;
    std::streambuf* old = std::cout.rdbuf(sink.rdbuf());
    const int code = dispatch("epoch", cfg);
    std::cout.rdbuf(old);
    CHECK(code == exit_ok);
    CHECK(fs::exists(dir.file("out/epoch_manifest.json")));

    CHECK_THROWS_AS(dispatch("juggle", cfg), std::invalid_argument);
}
