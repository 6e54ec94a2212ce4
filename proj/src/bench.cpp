#include "blinkbench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "blinkbench/epochs.hpp"
#include "blinkbench/errors.hpp"
#include "blinkbench/metrics.hpp"
#include "blinkbench/util.hpp"

namespace blinkbench {

namespace {

using nlohmann::json;

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

const ModelKind kAllKinds[4] = {ModelKind::knn, ModelKind::logreg, ModelKind::svc,
                                ModelKind::rf};

// Published reference gains for the same experiment grid, attached to
// reports as context. Never asserted: they came from different hardware.
std::string reference_annotation(ExperimentId id, ModelKind kind) {
    switch (id) {
        case ExperimentId::base:
            return "";
        case ExperimentId::A:
            switch (kind) {
                case ModelKind::knn: return "-0.2 F1 / 2.1x";
                case ModelKind::logreg: return "-0.36 F1 / 2x";
                case ModelKind::svc: return "-0.3 F1 / 3x";
                case ModelKind::rf: return "-0.5 F1 / 0.3x";
            }
            break;
        case ExperimentId::B:
            switch (kind) {
                case ModelKind::knn: return "-0.4 F1 / 4.3x";
                case ModelKind::logreg: return "-0.6 F1 / 2.5x";
                case ModelKind::svc: return "-0.7 F1 / 5.6x";
                case ModelKind::rf: return "-0.7 F1 / 3x";
            }
            break;
        case ExperimentId::C:
            switch (kind) {
                case ModelKind::knn: return "-0.1 F1 / not observed";
                case ModelKind::logreg: return "-0.17 F1 / 2.3x";
                case ModelKind::svc: return "-0.3 F1 / 1.9x";
                case ModelKind::rf: return "-0.63 F1 / 3x";
            }
            break;
    }
    return "";
}

std::string display_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::knn: return "KNN";
        case ModelKind::logreg: return "Logistic Regression";
        case ModelKind::svc: return "SVC";
        case ModelKind::rf: return "Random Forest";
    }
    return "?";
}

}  // namespace

TimedKfold timed_kfold(ModelKind kind, const std::map<std::string, double>& params,
                       const Dataset& data, const FoldPlan& plan,
                       std::size_t repeats) {
    if (repeats == 0) throw std::invalid_argument("timed_kfold: repeats must be >= 1");
    if (plan.assignments.size() != data.n) {
        throw std::invalid_argument("timed_kfold: fold plan does not match dataset");
    }

    // Fold subsets are assembled once, outside the timed region; the clock
    // covers training and prediction only.
    std::vector<Dataset> train_sets;
    std::vector<Dataset> test_sets;
    train_sets.reserve(plan.k);
    test_sets.reserve(plan.k);
    for (std::size_t fold = 0; fold < plan.k; ++fold) {
        train_sets.push_back(dataset_subset(data, plan.train_rows(fold)));
        test_sets.push_back(dataset_subset(data, plan.test_rows(fold)));
    }

    TimedKfold result;
    result.repeats = repeats;
    for (std::size_t rep = 0; rep < repeats; ++rep) {
        double total = 0.0;
        for (std::size_t fold = 0; fold < plan.k; ++fold) {
            const auto start = std::chrono::steady_clock::now();
            const TrainedModel model = train_model(kind, train_sets[fold], params);
            const std::vector<int> predicted = predict(model, test_sets[fold]);
            const auto stop = std::chrono::steady_clock::now();
            total += std::chrono::duration<double>(stop - start).count();
            if (rep == 0) {
                result.fold_f1.push_back(f1_score(predicted, test_sets[fold].y));
            }
        }
        result.repeat_seconds.push_back(total);
    }
    result.mean_f1 = neumaier_sum(result.fold_f1) / static_cast<double>(plan.k);
    result.median_seconds = median(result.repeat_seconds);
    return result;
}

ExperimentId parse_experiment_id(const std::string& name) {
    if (name == "base") return ExperimentId::base;
    if (name == "A" || name == "a") return ExperimentId::A;
    if (name == "B" || name == "b") return ExperimentId::B;
    if (name == "C" || name == "c") return ExperimentId::C;
    throw ParseError("unknown experiment '" + name + "' (expected base, A, B or C)");
}

std::string to_string(ExperimentId id) {
    switch (id) {
        case ExperimentId::base: return "base";
        case ExperimentId::A: return "A";
        case ExperimentId::B: return "B";
        case ExperimentId::C: return "C";
    }
    throw std::logic_error("unreachable experiment id");
}

Dataset experiment_dataset(ExperimentId id, const Recording& rec,
                           const ExperimentConfig& config) {
    std::vector<std::string> top;
    if (id == ExperimentId::A || id == ExperimentId::B) {
        const SelectionRanking ranking =
            mrmr_rank(rec, config.histogram, config.n_select);
        for (std::size_t idx : ranking.order) {
            top.push_back(ranking.channel_names[idx]);
        }
    }
    switch (id) {
        case ExperimentId::base:
            return dataset_from_recording(rec);
        case ExperimentId::A:
            return dataset_from_recording(rec, top);
        case ExperimentId::B: {
            const EpochSet epochs =
                slice_windows(rec, config.window_len, config.window_count, config.seed);
            return dataset_from_epochs(epochs, top);
        }
        case ExperimentId::C: {
            const EpochSet epochs =
                slice_windows(rec, config.window_len, config.window_count, config.seed);
            return dataset_from_epochs(epochs);
        }
    }
    throw std::logic_error("unreachable experiment id");
}

std::string environment_descriptor(std::size_t repeats) {
    std::string cpu = "unknown cpu";
    std::ifstream info("/proc/cpuinfo");
    std::string line;
    while (std::getline(info, line)) {
        if (line.rfind("model name", 0) == 0) {
            const std::size_t colon = line.find(':');
            if (colon != std::string::npos) {
                cpu = trim(line.substr(colon + 1));
            }
            break;
        }
    }
    std::ostringstream out;
    out << cpu << ", " << std::thread::hardware_concurrency() << " logical cores, "
        << repeats << " timing repeats";
    return out.str();
}

ExperimentReport run_experiment(ExperimentId id, const Recording& rec,
                                const ExperimentConfig& config,
                                const ExperimentReport* base) {
    if (id != ExperimentId::base && base == nullptr) {
        throw std::invalid_argument(
            "run_experiment: experiments A, B and C need the base report for gains");
    }

    const Dataset data = experiment_dataset(id, rec, config);
    const FoldPlan plan = make_folds(data.y, config.folds, config.seed);

    ExperimentReport report;
    report.id = id;
    report.rows = data.n;
    report.channels = data.feature_names;
    report.folds = config.folds;
    report.seed = config.seed;
    report.repeats = config.repeats;
    report.environment = environment_descriptor(config.repeats);

    for (ModelKind kind : kAllKinds) {
        const std::map<std::string, double>* params = nullptr;
        switch (kind) {
            case ModelKind::knn: params = &config.knn_params; break;
            case ModelKind::logreg: params = &config.logreg_params; break;
            case ModelKind::svc: params = &config.svc_params; break;
            case ModelKind::rf: params = &config.rf_params; break;
        }
        const TimedKfold timed = timed_kfold(kind, *params, data, plan, config.repeats);

        ClassifierRecord record;
        record.kind = kind;
        record.params = *params;
        record.fold_f1 = timed.fold_f1;
        record.mean_f1 = timed.mean_f1;
        record.repeat_seconds = timed.repeat_seconds;
        record.wall_seconds = timed.median_seconds;
        record.reference = reference_annotation(id, kind);
        if (id == ExperimentId::base) {
            record.f1_gain = 0.0;
            record.speedup_gain = 1.0;
        } else {
            const ClassifierRecord* base_record = nullptr;
            for (const ClassifierRecord& r : base->classifiers) {
                if (r.kind == kind) base_record = &r;
            }
            if (base_record == nullptr) {
                throw std::invalid_argument(
                    "run_experiment: base report lacks classifier " + to_string(kind));
            }
            record.f1_gain = record.mean_f1 - base_record->mean_f1;
            record.speedup_gain = base_record->wall_seconds / record.wall_seconds;
        }
        report.classifiers.push_back(std::move(record));
    }
    return report;
}

std::string report_to_json(const ExperimentReport& report, bool include_timing) {
    json j;
    j["schema_version"] = 1;
    j["experiment"] = to_string(report.id);
    j["rows"] = report.rows;
    j["channels"] = report.channels;
    j["folds"] = report.folds;
    j["seed"] = report.seed;
    j["repeats"] = report.repeats;
    j["environment"] = report.environment;
    json classifiers = json::array();
    for (const ClassifierRecord& r : report.classifiers) {
        json c;
        c["kind"] = to_string(r.kind);
        c["params"] = r.params;
        c["fold_f1"] = r.fold_f1;
        c["mean_f1"] = r.mean_f1;
        c["f1_gain"] = r.f1_gain;
        c["reference"] = r.reference;
        if (include_timing) {
            c["repeat_seconds"] = r.repeat_seconds;
            c["wall_seconds"] = r.wall_seconds;
            c["speedup_gain"] = r.speedup_gain;
        }
        classifiers.push_back(std::move(c));
    }
    j["classifiers"] = std::move(classifiers);
    return j.dump(2) + "\n";
}

namespace {

ExperimentReport report_from_parsed_json(const json& j) {
    if (j.at("schema_version").get<int>() != 1) {
        throw ParseError("report json: unsupported schema version");
    }
    ExperimentReport report;
    report.id = parse_experiment_id(j.at("experiment").get<std::string>());
    report.rows = j.at("rows").get<std::size_t>();
    report.channels = j.at("channels").get<std::vector<std::string>>();
    report.folds = j.at("folds").get<std::size_t>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.repeats = j.at("repeats").get<std::size_t>();
    report.environment = j.at("environment").get<std::string>();
    for (const json& c : j.at("classifiers")) {
        ClassifierRecord r;
        r.kind = parse_model_kind(c.at("kind").get<std::string>());
        r.params = c.at("params").get<std::map<std::string, double>>();
        r.fold_f1 = c.at("fold_f1").get<std::vector<double>>();
        r.mean_f1 = c.at("mean_f1").get<double>();
        r.f1_gain = c.at("f1_gain").get<double>();
        r.reference = c.at("reference").get<std::string>();
        if (c.contains("wall_seconds")) {
            r.repeat_seconds = c.at("repeat_seconds").get<std::vector<double>>();
            r.wall_seconds = c.at("wall_seconds").get<double>();
            r.speedup_gain = c.at("speedup_gain").get<double>();
        }
        report.classifiers.push_back(std::move(r));
    }
    return report;
}

}  // namespace

ExperimentReport report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("report json: ") + e.what());
    }
    try {
        return report_from_parsed_json(j);
    } catch (const json::exception& e) {
        throw ParseError(std::string("report json: ") + e.what());
    }
}

std::string report_fold_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "experiment,classifier,fold,f1\n";
    for (const ClassifierRecord& r : report.classifiers) {
        for (std::size_t fold = 0; fold < r.fold_f1.size(); ++fold) {
            out << to_string(report.id) << ',' << to_string(r.kind) << ',' << fold
                << ',' << format_double(r.fold_f1[fold]) << '\n';
        }
    }
    return out.str();
}

std::string report_markdown(const ExperimentReport& report) {
    std::ostringstream out;
    out << "| Classifier | F1 Score gain | Speed-up gain |\n";
    out << "| --- | --- | --- |\n";
    char buf[64];
    for (const ClassifierRecord& r : report.classifiers) {
        std::snprintf(buf, sizeof(buf), "%.3f", r.f1_gain);
        out << "| " << display_name(r.kind) << " | " << buf << " | ";
        std::snprintf(buf, sizeof(buf), "%.1fx", r.speedup_gain);
        out << buf << " |\n";
    }
    return out.str();
}

}  // namespace blinkbench
