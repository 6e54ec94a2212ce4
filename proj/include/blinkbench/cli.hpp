#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace blinkbench {

// Exit statuses returned by run_cli.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_data = 3;
inline constexpr int exit_runtime = 4;

// Everything a subcommand needs, with the defaults the benchmark was designed
// around. The full config (minus the output directory, and with the input
// reduced to its basename) is embedded in every artifact as a reproducibility
// header, so two runs with the same config from different directories emit
// byte-identical deterministic outputs.
struct RunConfig {
    std::string input;
    std::string format = "auto";  // auto | arff | csv
    double factor = 10.0;
    std::size_t window_len = 384;
    std::size_t window_count = 20;
    std::size_t n_select = 9;
    int bins = 16;
    std::size_t folds = 5;
    std::uint64_t seed = 7;
    std::size_t repeats = 3;
    int rate = 128;
    std::string out_dir;  // empty = $BLINKBENCH_OUT, falling back to "."

    // graph
    double tau = 0.7;
    std::string state = "all";  // "0" | "1" | "all"

    // bench
    std::string experiment = "base";  // base | A | B | C | all
    std::string base_report;          // reuse a stored bench_base_timing.json

    // synth
    std::size_t rows = 14980;

    // report
    std::vector<std::string> report_inputs;
};

// Runs one subcommand (synth, summarize, preprocess, graph, select, epoch,
// bench, report) with an already validated config. Writes artifacts under
// config.out_dir and returns exit_ok; errors propagate as exceptions
// (DataError for bad input data, std::invalid_argument for bad parameters).
int dispatch(const std::string& command, RunConfig config);

// Entry point behind the blinkbench binary, exposed so tests can drive the
// whole command surface in-process. Parses argv, dispatches, and maps errors
// to the exit_* statuses above.
int run_cli(int argc, const char* const* argv);

// Convenience overload; args exclude the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace blinkbench
