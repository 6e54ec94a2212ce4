#include "blinkbench/preprocess.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "blinkbench/errors.hpp"
#include "blinkbench/util.hpp"

namespace blinkbench {

std::pair<Recording, OutlierReport> remove_outliers(const Recording& rec, double factor) {
    rec.validate();
    if (factor <= 1.0) {
        throw std::invalid_argument("outlier factor must be > 1, got " + std::to_string(factor));
    }

    const std::size_t c = rec.channel_count();
    const std::size_t len = rec.length();

    std::vector<double> thresholds(c);
    for (std::size_t j = 0; j < c; ++j) {
        std::vector<double> abs_values(len);
        for (std::size_t t = 0; t < len; ++t) abs_values[t] = std::abs(rec.channels[j].values[t]);
        thresholds[j] = factor * mean(abs_values);
    }

    OutlierReport report;
    report.factor = factor;
    report.passes = 1;
    std::vector<bool> keep(len, true);
    for (std::size_t t = 0; t < len; ++t) {
        for (std::size_t j = 0; j < c; ++j) {
            if (std::abs(rec.channels[j].values[t]) > thresholds[j]) {
                keep[t] = false;
                report.removed_indices.push_back(t);
                report.trigger_channels.push_back(rec.channels[j].name);
                break;
            }
        }
    }

    Recording out;
    out.sample_rate_hz = rec.sample_rate_hz;
    out.channels.resize(c);
    const std::size_t kept = len - report.removed_indices.size();
    for (std::size_t j = 0; j < c; ++j) {
        out.channels[j].name = rec.channels[j].name;
        out.channels[j].values.reserve(kept);
    }
    out.labels.reserve(kept);
    for (std::size_t t = 0; t < len; ++t) {
        if (!keep[t]) continue;
        for (std::size_t j = 0; j < c; ++j) {
            out.channels[j].values.push_back(rec.channels[j].values[t]);
        }
        out.labels.push_back(rec.labels[t]);
    }
    return {std::move(out), std::move(report)};
}

Recording center(const Recording& rec) {
    rec.validate();
    Recording out = rec;
    for (auto& ch : out.channels) {
        const double m = mean(ch.values);
        for (double& v : ch.values) v -= m;
    }
    return out;
}

std::string outlier_report_to_json(const OutlierReport& report) {
    nlohmann::json j;
    j["factor"] = report.factor;
    j["passes"] = report.passes;
    j["removed_count"] = report.removed_indices.size();
    j["removed"] = nlohmann::json::array();
    for (std::size_t i = 0; i < report.removed_indices.size(); ++i) {
        j["removed"].push_back({{"index", report.removed_indices[i]},
                                {"trigger_channel", report.trigger_channels[i]}});
    }
    return j.dump(2);
}

}  // namespace blinkbench
