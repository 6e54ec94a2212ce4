// Acceptance suite: eleven binding checks on dataset arithmetic, oracle
// equivalence, directional benchmark properties and reproducibility. Prints
// one PASS/FAIL line per criterion and exits nonzero if any fail.
//
// The recording under test defaults to the bundled synthetic surrogate,
// which reproduces the reference dataset's arithmetic profile: 14 channels,
// 14980 rows, exactly 3 rows beyond ten times the channel mean |value|.
// Point BLINKBENCH_DATASET at a real eye-state ARFF to run against it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "blinkbench/bench.hpp"
#include "blinkbench/cli.hpp"
#include "blinkbench/connectivity.hpp"
#include "blinkbench/dataset.hpp"
#include "blinkbench/epochs.hpp"
#include "blinkbench/forest.hpp"
#include "blinkbench/grid_search.hpp"
#include "blinkbench/ingest.hpp"
#include "blinkbench/logreg.hpp"
#include "blinkbench/preprocess.hpp"
#include "blinkbench/rng.hpp"
#include "blinkbench/selection.hpp"
#include "blinkbench/svc.hpp"
#include "blinkbench/synth.hpp"
#include "blinkbench/util.hpp"
#include "oracles.hpp"

using namespace blinkbench;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

template <typename Body>
void criterion(int number, double budget_seconds, Body&& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        outcome = body();
    } catch (const std::exception& e) {
        outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool pass = outcome.pass;
    std::ostringstream detail;
    detail << outcome.detail;
    if (budget_seconds > 0.0 && elapsed > budget_seconds) {
        pass = false;
        detail << "; over " << budget_seconds << " s budget";
    }
    std::ostringstream time_note;
    time_note.setf(std::ios::fixed);
    time_note.precision(elapsed < 10.0 ? 2 : 0);
    time_note << elapsed << " s";

    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << number << "  ("
              << detail.str() << "; " << time_note.str() << ")" << std::endl;
    if (!pass) ++failures;
}

std::string fmt(double v, int precision = 3) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(precision);
    out << v;
    return out.str();
}

Dataset make_dataset(const std::vector<std::vector<double>>& rows,
                     const std::vector<int>& labels) {
    Dataset data;
    data.n = rows.size();
    data.d = rows.empty() ? 0 : rows[0].size();
    data.y = labels;
    for (const auto& r : rows) data.x.insert(data.x.end(), r.begin(), r.end());
    for (std::size_t j = 0; j < data.d; ++j) {
        data.feature_names.push_back("f" + std::to_string(j));
    }
    return data;
}

Dataset blob_dataset(Rng& rng, std::size_t per_class, std::size_t d, double sep) {
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int cls = 0; cls < 2; ++cls) {
        for (std::size_t i = 0; i < per_class; ++i) {
            std::vector<double> row(d);
            for (std::size_t j = 0; j < d; ++j) {
                row[j] = rng.normal(cls == 0 ? 0.0 : sep, 1.0);
            }
            rows.push_back(std::move(row));
            labels.push_back(cls);
        }
    }
    return make_dataset(rows, labels);
}

std::vector<double> random_stream(Rng& rng, std::size_t n, int mode) {
    std::vector<double> x(n);
    switch (mode) {
        case 0:
            for (double& v : x) v = rng.uniform(-3.0, 3.0);
            break;
        case 1:
            for (double& v : x) v = rng.normal();
            break;
        case 2:  // few distinct values so bins collide
            for (double& v : x) v = std::round(rng.uniform(0.0, 6.0));
            x[0] = 0.0;
            x[1] = 6.0;
            break;
        default:  // binary, exercising the natural two-bin path
            for (double& v : x) v = static_cast<double>(rng.below(2));
            x[0] = 0.0;
            x[1] = 1.0;
            break;
    }
    return x;
}

Recording centered_random_recording(Rng& rng, std::size_t channels, std::size_t n) {
    Recording rec;
    rec.sample_rate_hz = 128;
    rec.labels.assign(n, 0);
    rec.labels[n - 1] = 1;
    rec.channels.resize(channels);
    for (std::size_t c = 0; c < channels; ++c) {
        rec.channels[c].name = "c" + std::to_string(c + 1);
        rec.channels[c].values.resize(n);
        for (double& v : rec.channels[c].values) v = rng.uniform(-5.0, 5.0);
    }
    rec.validate();
    return center(rec);
}

const ClassifierRecord& record_of(const ExperimentReport& report, ModelKind kind) {
    for (const ClassifierRecord& c : report.classifiers) {
        if (c.kind == kind) return c;
    }
    throw std::logic_error("classifier record missing from report");
}

// Silences the pipeline's own stdout while the CLI runs inside criterion 11.
struct QuietCout {
    std::ostringstream sink;
    std::streambuf* old;
    QuietCout() : old(std::cout.rdbuf(sink.rdbuf())) {}
    ~QuietCout() { std::cout.rdbuf(old); }
};

}  // namespace

int main() {
    const char* env_dataset = std::getenv("BLINKBENCH_DATASET");
    std::string dataset_text;
    std::string dataset_path;  // on-disk copy for the CLI runs
    const fs::path work =
        fs::temp_directory_path() /
        ("blinkbench_acceptance_" + std::to_string(static_cast<unsigned>(::getpid())));
    fs::create_directories(work);

    if (env_dataset != nullptr && *env_dataset != '\0') {
        dataset_text = read_file(env_dataset);
        dataset_path = env_dataset;
        std::cout << "dataset: " << env_dataset << " (drop-in)" << std::endl;
    } else {
        dataset_text = synthetic_arff({});
        dataset_path = (work / "dataset.arff").string();
        write_file(dataset_path, dataset_text);
        std::cout << "dataset: bundled synthetic surrogate (seed 7)" << std::endl;
    }

    std::optional<Recording> prep;      // outliers removed, centered
    std::size_t removed_rows = 0;

    // 1. dataset round-trip arithmetic
    criterion(1, 5.0, [&]() -> Outcome {
        const Recording raw = parse_arff(dataset_text);
        const auto cleaned = remove_outliers(raw, 10.0);
        removed_rows = cleaned.second.removed_indices.size();
        const bool pass = raw.channel_count() == 14 && raw.length() == 14980 &&
                          removed_rows == 3 && cleaned.first.length() == 14977;
        if (pass) prep = center(cleaned.first);
        std::ostringstream detail;
        detail << raw.channel_count() << " channels x " << raw.length()
               << " rows, removed " << removed_rows << " -> "
               << cleaned.first.length();
        return {pass, detail.str()};
    });

    // 2. epoch arithmetic with defaults
    criterion(2, 5.0, [&]() -> Outcome {
        if (!prep) return {false, "no dataset (criterion 1 failed)"};
        const EpochSet epochs = slice_windows(*prep, 384, 20, 0);
        bool pass = epochs.windows.size() == 20 && epochs.row_count() == 7680;
        for (const Window& w : epochs.windows) {
            pass = pass && (w.end - w.start == 384) && w.transition > w.start &&
                   w.transition < w.end;
        }
        for (std::size_t i = 0; i + 1 < epochs.windows.size(); ++i) {
            pass = pass && epochs.windows[i].end <= epochs.windows[i + 1].start;
        }
        std::ostringstream detail;
        detail << epochs.windows.size() << " disjoint windows x 384 = "
               << epochs.row_count() << " rows";
        return {pass, detail.str()};
    });

    // 3. histogram MI against a brute-force joint histogram
    criterion(3, 10.0, [&]() -> Outcome {
        Rng rng(101);
        double worst_pair = 0.0;
        double worst_self = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = 30 + rng.below(100);
            const int bins = 2 + static_cast<int>(rng.below(11));
            const std::vector<double> x =
                random_stream(rng, n, static_cast<int>(rng.below(4)));
            const std::vector<double> y =
                random_stream(rng, n, static_cast<int>(rng.below(4)));
            const HistogramConfig cfg{bins};

            const double lib = mutual_information(x, y, cfg).nats;
            worst_pair = std::max(worst_pair, std::abs(lib - oracle::mi(x, y, bins)));

            const double self = mutual_information(x, x, cfg).nats;
            worst_self =
                std::max(worst_self, std::abs(self - oracle::entropy(x, bins)));
        }
        const bool pass = worst_pair < 1e-12 && worst_self < 1e-12;
        return {pass, "100 trials, max |dMI| " + fmt(worst_pair, 16) +
                          ", max |MI(x,x)-H| " + fmt(worst_self, 16)};
    });

    // 4. greedy mRMR against exhaustive per-step argmax
    criterion(4, 30.0, [&]() -> Outcome {
        Rng rng(202);
        int order_mismatches = 0;
        double worst_score = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t d = 2 + rng.below(4);  // up to 5 features
            const std::size_t n = 40 + rng.below(100);
            std::vector<int> labels(n);
            for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(rng.below(2));
            labels[0] = 0;
            labels[1] = 1;
            std::vector<std::vector<double>> features;
            for (std::size_t f = 0; f < d; ++f) {
                std::vector<double> stream(n);
                for (std::size_t i = 0; i < n; ++i) {
                    stream[i] = labels[i] * rng.uniform(0.0, 3.0) + rng.uniform(-2.0, 2.0);
                }
                features.push_back(std::move(stream));
            }

            Recording rec;
            rec.sample_rate_hz = 128;
            rec.labels = labels;
            rec.channels.resize(d);
            for (std::size_t f = 0; f < d; ++f) {
                rec.channels[f].name = "f" + std::to_string(f);
                rec.channels[f].values = features[f];
            }
            const SelectionRanking ranking = mrmr_rank(rec, {16}, d);

            std::vector<double> label_stream(labels.begin(), labels.end());
            std::vector<std::size_t> selected;
            for (std::size_t step = 0; step < d; ++step) {
                const oracle::MrmrStep expected =
                    oracle::mrmr_step(features, label_stream, selected, 16);
                if (ranking.order[step] != expected.feature) ++order_mismatches;
                worst_score = std::max(
                    worst_score, std::abs(ranking.scores[step] - expected.score));
                selected.push_back(expected.feature);
            }
        }
        const bool pass = order_mismatches == 0 && worst_score < 1e-12;
        return {pass, "50 trials, " + std::to_string(order_mismatches) +
                          " order mismatches, max |dscore| " + fmt(worst_score, 16)};
    });

    // 5. correlation vs textbook Pearson; adjacency monotone in tau
    criterion(5, 30.0, [&]() -> Outcome {
        Rng rng(303);
        double worst = 0.0;
        bool structure = true;
        for (int trial = 0; trial < 40; ++trial) {
            const Recording rec =
                centered_random_recording(rng, 2 + rng.below(4), 30 + rng.below(90));
            const CorrMatrix corr = correlation_matrix(rec, StateFilter::all);
            const std::size_t c = corr.labels.size();
            for (std::size_t i = 0; i < c; ++i) {
                structure = structure && corr.values[i][i] == 1.0;
                for (std::size_t j = i + 1; j < c; ++j) {
                    structure = structure && corr.values[i][j] == corr.values[j][i];
                    worst = std::max(
                        worst, std::abs(corr.values[i][j] -
                                        oracle::pearson(rec.channels[i].values,
                                                        rec.channels[j].values)));
                }
            }
        }

        bool monotone = true;
        if (prep) {
            const CorrMatrix corr = correlation_matrix(*prep, StateFilter::all);
            const ChannelGraph g06 = adjacency(corr, 0.6);
            const ChannelGraph g07 = adjacency(corr, 0.7);
            const ChannelGraph g08 = adjacency(corr, 0.8);
            for (std::size_t i = 0; i < corr.labels.size(); ++i) {
                for (std::size_t j = 0; j < corr.labels.size(); ++j) {
                    monotone = monotone &&
                               g08.adjacency[i][j] <= g07.adjacency[i][j] &&
                               g07.adjacency[i][j] <= g06.adjacency[i][j];
                }
            }
        } else {
            monotone = false;
        }

        const bool pass = structure && worst < 1e-12 && monotone;
        return {pass, "max |dcorr| " + fmt(worst, 16) +
                          (structure ? ", symmetric unit-diagonal" : ", structure BROKEN") +
                          (monotone ? ", tau-monotone" : ", tau monotonicity BROKEN")};
    });

    // 6. logistic gradient vs central finite differences
    criterion(6, 30.0, [&]() -> Outcome {
        Rng rng(404);
        double worst = 0.0;
        const double l2_grid[3] = {0.0, 1e-4, 0.1};
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t d = 2 + rng.below(4);
            const Dataset data = blob_dataset(rng, 10 + rng.below(25), d, 1.5);
            const double l2 = l2_grid[trial % 3];

            std::vector<double> params(d + 1);
            for (double& p : params) p = rng.normal();
            const std::vector<double> weights(params.begin(), params.end() - 1);
            const double bias = params.back();

            const std::vector<double> analytic = logreg_gradient(data, weights, bias, l2);
            const std::vector<double> fd = oracle::finite_difference(
                [&](const std::vector<double>& p) {
                    const std::vector<double> w(p.begin(), p.end() - 1);
                    return logreg_loss(data, w, p.back(), l2);
                },
                params, 1e-5);

            double diff = 0.0;
            double norm = 0.0;
            for (std::size_t i = 0; i < analytic.size(); ++i) {
                diff += (analytic[i] - fd[i]) * (analytic[i] - fd[i]);
                norm += analytic[i] * analytic[i];
            }
            worst = std::max(worst,
                             std::sqrt(diff) / std::max(1.0, std::sqrt(norm)));
        }
        return {worst < 1e-5, "50 trials, max relative error " + fmt(worst, 10)};
    });

    // 7. SVC duals in the box and KKT residual
    criterion(7, 60.0, [&]() -> Outcome {
        Rng rng(505);
        const Dataset data = blob_dataset(rng, 100, 2, 3.5);  // 200 points
        SvcOptions options;
        options.c = 10.0;
        options.gamma = 0.5;
        const SvcModel model = svc_fit(data, options);

        bool box = true;
        for (double coef : model.dual_coef) {
            const double alpha = std::abs(coef);
            box = box && alpha > 0.0 && alpha <= 10.0 + 1e-9;
        }
        const double residual = svc_kkt_residual(model, data);
        const bool pass = box && residual < 1e-3 && model.converged;
        return {pass, std::to_string(model.support_count()) + " SVs, duals in [0, 10], KKT residual " +
                          fmt(residual, 6)};
    });

    // 8. single-tree forest equals an independent plain decision tree
    criterion(8, 30.0, [&]() -> Outcome {
        Rng rng(606);
        int mismatches = 0;
        for (int trial = 0; trial < 5; ++trial) {
            const std::size_t n = 20 + rng.below(20);
            const std::size_t d = 2 + rng.below(3);
            std::vector<std::vector<double>> rows;
            std::vector<int> labels;
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<double> row(d);
                for (double& v : row) v = rng.uniform(0.0, 10.0);
                int label = row[0] > 5.0 ? 1 : 0;
                if (rng.below(10) == 0) label = 1 - label;
                rows.push_back(std::move(row));
                labels.push_back(label);
            }
            labels[0] = 0;
            labels[1] = 1;
            const Dataset data = make_dataset(rows, labels);

            RfOptions options;
            options.n_trees = 1;
            options.bootstrap = false;
            options.mtry = d;
            options.seed = static_cast<std::uint64_t>(trial);
            const ForestModel forest = rf_fit(data, options);
            const auto plain = oracle::plain_tree_fit(rows, labels);

            for (std::size_t i = 0; i < n; ++i) {
                if (forest.predict_one(data.row(i)) !=
                    oracle::plain_tree_predict(*plain, rows[i])) {
                    ++mismatches;
                }
            }
            for (int probe = 0; probe < 50; ++probe) {
                std::vector<double> row(d);
                for (double& v : row) v = rng.uniform(-1.0, 11.0);
                if (forest.predict_one(row.data()) !=
                    oracle::plain_tree_predict(*plain, row)) {
                    ++mismatches;
                }
            }
        }
        return {mismatches == 0,
                "5 datasets, " + std::to_string(mismatches) + " prediction mismatches"};
    });

    // 9 + 10. the full experiment grid: directional speed-up and bounded F1
    std::optional<ExperimentReport> base_report;
    std::vector<ExperimentReport> reduced;
    criterion(9, 1800.0, [&]() -> Outcome {
        if (!prep) return {false, "no dataset (criterion 1 failed)"};

        ExperimentConfig ec;
        ec.folds = 5;
        ec.seed = 42;
        ec.repeats = 3;
        ec.n_select = 9;
        ec.window_len = 384;
        ec.window_count = 20;
        ec.rf_params["seed"] = 42.0;

        std::vector<std::map<std::string, double>> grid;
        for (double k : {1.0, 3.0, 5.0, 7.0, 9.0, 15.0}) grid.push_back({{"k", k}});
        const GridResult gr = grid_search(
            ModelKind::knn, experiment_dataset(ExperimentId::base, *prep, ec), grid,
            ec.folds, ec.seed);
        ec.knn_params = gr.best().params;

        base_report = run_experiment(ExperimentId::base, *prep, ec, nullptr);
        for (ExperimentId id : {ExperimentId::A, ExperimentId::B, ExperimentId::C}) {
            reduced.push_back(run_experiment(id, *prep, ec, &*base_report));
        }

        std::cout << "  grid: knn k=" << ec.knn_params.at("k") << "\n";
        for (const ExperimentReport* r :
             {&*base_report, &reduced[0], &reduced[1], &reduced[2]}) {
            std::cout << "  " << to_string(r->id) << " (" << r->rows << " rows x "
                      << r->channels.size() << " ch):";
            for (const ClassifierRecord& c : r->classifiers) {
                std::cout << "  " << to_string(c.kind) << " f1=" << fmt(c.mean_f1)
                          << " wall=" << fmt(c.wall_seconds, 2) << "s";
            }
            std::cout << "\n";
        }

        const ExperimentReport& b = reduced[1];
        const double knn_ratio = record_of(*base_report, ModelKind::knn).wall_seconds /
                                 record_of(b, ModelKind::knn).wall_seconds;
        const double svc_ratio = record_of(*base_report, ModelKind::svc).wall_seconds /
                                 record_of(b, ModelKind::svc).wall_seconds;
        const bool pass = knn_ratio > 1.0 && svc_ratio > 1.0;
        return {pass, "experiment B speed-up: knn " + fmt(knn_ratio, 2) + "x, svc " +
                          fmt(svc_ratio, 2) + "x"};
    });

    criterion(10, 0.0, [&]() -> Outcome {
        if (!base_report || reduced.size() != 3) {
            return {false, "no benchmark grid (criterion 9 failed)"};
        }
        double worst_gain = -1.0;
        std::string worst_at = "none";
        for (const ExperimentReport& r : reduced) {
            for (const ClassifierRecord& c : r.classifiers) {
                const double gain =
                    c.mean_f1 - record_of(*base_report, c.kind).mean_f1;
                if (gain > worst_gain) {
                    worst_gain = gain;
                    worst_at = to_string(c.kind) + "@" + to_string(r.id);
                }
            }
        }
        const bool pass = worst_gain <= 0.05;
        return {pass, "max F1 gain " + fmt(worst_gain) + " (" + worst_at +
                          "), bound +0.050"};
    });

    // 11. byte-identical non-timing outputs across reruns
    criterion(11, 0.0, [&]() -> Outcome {
        const fs::path d1 = work / "run1";
        const fs::path d2 = work / "run2";
        int code1 = -1;
        int code2 = -1;
        {
            QuietCout quiet;
            code1 = run_cli({"bench", "-i", dataset_path, "--experiment", "B",
                             "--seed", "42", "-o", d1.string()});
            code2 = run_cli({"bench", "-i", dataset_path, "--experiment", "B",
                             "--seed", "42", "-o", d2.string()});
        }
        if (code1 != 0 || code2 != 0) {
            return {false, "bench runs exited " + std::to_string(code1) + " and " +
                               std::to_string(code2)};
        }
        int differing = 0;
        const char* names[] = {"knn_grid.json", "bench_base.json",
                               "bench_base_folds.csv", "bench_B.json",
                               "bench_B_folds.csv"};
        for (const char* name : names) {
            if (read_file((d1 / name).string()) != read_file((d2 / name).string())) {
                ++differing;
                std::cout << "  differs: " << name << "\n";
            }
        }
        return {differing == 0,
                "5 non-timing artifacts compared, " + std::to_string(differing) +
                    " differ"};
    });

    std::error_code ec;
    fs::remove_all(work, ec);

    if (failures > 0) {
        std::cout << failures << " of 11 criteria failed" << std::endl;
        return 1;
    }
    std::cout << "all 11 criteria passed" << std::endl;
    return 0;
}
