#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "blinkbench/dataset.hpp"
#include "blinkbench/folds.hpp"
#include "blinkbench/model.hpp"
#include "blinkbench/recording.hpp"
#include "blinkbench/selection.hpp"

namespace blinkbench {

struct TimedKfold {
    std::vector<double> fold_f1;
    double mean_f1 = 0.0;
    std::vector<double> repeat_seconds;  // train+predict summed over folds
    double median_seconds = 0.0;
    std::size_t repeats = 0;
};

// Trains on k-1 folds and scores the held-out fold, for every fold, repeated
// `repeats` times for timing. Scores are deterministic across repeats; the
// reported wall-clock is the median repeat total. Training runs sequentially
// on the calling thread.
TimedKfold timed_kfold(ModelKind kind, const std::map<std::string, double>& params,
                       const Dataset& data, const FoldPlan& plan,
                       std::size_t repeats);

enum class ExperimentId { base, A, B, C };

ExperimentId parse_experiment_id(const std::string& name);
std::string to_string(ExperimentId id);

struct ClassifierRecord {
    ModelKind kind = ModelKind::knn;
    std::map<std::string, double> params;
    std::vector<double> fold_f1;
    double mean_f1 = 0.0;
    std::vector<double> repeat_seconds;
    double wall_seconds = 0.0;  // median over repeats
    double f1_gain = 0.0;       // mean F1 minus the base run's
    double speedup_gain = 1.0;  // base wall-clock over this wall-clock
    std::string reference;      // published reference gains, informational only

    bool operator==(const ClassifierRecord&) const = default;
};

struct ExperimentConfig {
    std::size_t folds = 5;
    std::uint64_t seed = 0;
    std::size_t repeats = 3;
    std::size_t n_select = 9;
    std::size_t window_len = 384;
    std::size_t window_count = 20;
    HistogramConfig histogram;
    // Hyperparameters per classifier; the bench front-end fills knn.k from a
    // grid search on the base dataset and reuses it everywhere.
    std::map<std::string, double> knn_params = {{"k", 3.0}};
    std::map<std::string, double> logreg_params;
    std::map<std::string, double> svc_params;
    std::map<std::string, double> rf_params;
};

struct ExperimentReport {
    ExperimentId id = ExperimentId::base;
    std::size_t rows = 0;
    std::vector<std::string> channels;
    std::size_t folds = 5;
    std::uint64_t seed = 0;
    std::size_t repeats = 3;
    std::string environment;
    std::vector<ClassifierRecord> classifiers;  // knn, logreg, svc, rf

    bool operator==(const ExperimentReport&) const = default;
};

// Assembles the experiment's dataset from a preprocessed recording and
// evaluates all four classifiers:
//   base: every channel, every row      A: top n_select channels, every row
//   B: top channels, epoch rows only    C: every channel, epoch rows only
// Gains are taken against `base` (required for A/B/C; base compares to
// itself, so its gains are exactly 0 and 1).
ExperimentReport run_experiment(ExperimentId id, const Recording& rec,
                                const ExperimentConfig& config,
                                const ExperimentReport* base = nullptr);

// The dataset each experiment sees (exposed for tests and the CLI).
Dataset experiment_dataset(ExperimentId id, const Recording& rec,
                           const ExperimentConfig& config);

std::string environment_descriptor(std::size_t repeats);

// Emitters. JSON omits wall-clock fields unless include_timing is set, so
// deterministic outputs can be compared byte for byte; the markdown table
// mirrors the three-column layout (classifier, F1 gain, speed-up gain).
std::string report_to_json(const ExperimentReport& report, bool include_timing);
ExperimentReport report_from_json(const std::string& text);
std::string report_fold_csv(const ExperimentReport& report);
std::string report_markdown(const ExperimentReport& report);

}  // namespace blinkbench
