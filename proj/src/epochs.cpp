#include "blinkbench/epochs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "blinkbench/errors.hpp"
#include "blinkbench/util.hpp"

namespace blinkbench {

std::vector<std::size_t> find_transitions(const std::vector<int>& labels) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < labels.size(); ++i) {
        if (labels[i] != labels[i - 1]) out.push_back(i);
    }
    return out;
}

namespace {

// Centers a window on the transition and clamps it into [0, len). Returns
// false when clamping pushed the transition onto the boundary.
bool place_window(std::size_t transition, std::size_t window_len, std::size_t len,
                  Window& w) {
    std::size_t start = transition > window_len / 2 ? transition - window_len / 2 : 0;
    if (start + window_len > len) start = len - window_len;
    const std::size_t end = start + window_len;
    if (!(start < transition && transition < end)) return false;
    w = Window{start, end, transition};
    return true;
}

bool overlaps(const Window& a, const Window& b) {
    return a.start < b.end && b.start < a.end;
}

}  // namespace

EpochSet slice_windows(const Recording& rec, std::size_t window_len, std::size_t count,
                       std::uint64_t seed) {
    rec.validate();
    const std::size_t len = rec.length();
    if (window_len < 2 || window_len >= len) {
        throw std::invalid_argument("window_len must lie in [2, recording length), got " +
                                    std::to_string(window_len));
    }
    if (count < 1) {
        throw std::invalid_argument("window count must be >= 1");
    }

    const std::vector<std::size_t> transitions = find_transitions(rec.labels);
    if (transitions.size() < count) {
        throw InsufficientTransitions("recording has " + std::to_string(transitions.size()) +
                                      " transitions, need " + std::to_string(count));
    }

    // Evenly spaced targets over the transition list; ties in the spacing
    // arithmetic resolve by rounding half up, so the choice is deterministic
    // and the seed is pure provenance.
    const std::size_t t_count = transitions.size();
    std::vector<std::size_t> targets(count);
    if (count == 1) {
        targets[0] = (t_count - 1) / 2;
    } else {
        for (std::size_t j = 0; j < count; ++j) {
            const double pos = static_cast<double>(j) * static_cast<double>(t_count - 1) /
                               static_cast<double>(count - 1);
            targets[j] = static_cast<std::size_t>(std::floor(pos + 0.5));
        }
    }

    std::vector<bool> used(t_count, false);
    std::vector<Window> accepted;
    for (std::size_t target : targets) {
        bool placed = false;
        for (std::size_t cand = target; cand < t_count; ++cand) {
            if (used[cand]) continue;
            Window w;
            if (!place_window(transitions[cand], window_len, len, w)) {
                used[cand] = true;
                continue;
            }
            const bool clash = std::any_of(accepted.begin(), accepted.end(),
                                           [&](const Window& a) { return overlaps(a, w); });
            if (clash) continue;
            used[cand] = true;
            accepted.push_back(w);
            placed = true;
            break;
        }
        if (!placed) {
            throw InsufficientTransitions(
                "could not place " + std::to_string(count) + " disjoint windows of " +
                std::to_string(window_len) + " timepoints (placed " +
                std::to_string(accepted.size()) + ")");
        }
    }

    std::sort(accepted.begin(), accepted.end(),
              [](const Window& a, const Window& b) { return a.start < b.start; });

    EpochSet out;
    out.windows = accepted;
    out.channel_names = rec.channel_names();
    out.window_len = window_len;
    out.source_length = len;
    out.seed = seed;
    const std::size_t c = rec.channel_count();
    out.rows.reserve(accepted.size() * window_len * c);
    out.labels.reserve(accepted.size() * window_len);
    out.source_index.reserve(accepted.size() * window_len);
    for (const Window& w : accepted) {
        for (std::size_t t = w.start; t < w.end; ++t) {
            for (std::size_t j = 0; j < c; ++j) {
                out.rows.push_back(rec.channels[j].values[t]);
            }
            out.labels.push_back(rec.labels[t]);
            out.source_index.push_back(t);
        }
    }
    return out;
}

std::string epochs_to_csv(const EpochSet& epochs) {
    std::ostringstream out;
    out << "source_index";
    for (const auto& name : epochs.channel_names) out << ',' << name;
    out << ",label\n";
    const std::size_t c = epochs.channel_count();
    for (std::size_t r = 0; r < epochs.row_count(); ++r) {
        out << epochs.source_index[r];
        for (std::size_t j = 0; j < c; ++j) {
            out << ',' << format_double(epochs.rows[r * c + j]);
        }
        out << ',' << epochs.labels[r] << '\n';
    }
    return out.str();
}

std::string epochs_manifest_json(const EpochSet& epochs) {
    nlohmann::json j;
    j["window_len"] = epochs.window_len;
    j["window_count"] = epochs.windows.size();
    j["row_count"] = epochs.row_count();
    j["source_length"] = epochs.source_length;
    j["seed"] = epochs.seed;
    j["windows"] = nlohmann::json::array();
    for (const auto& w : epochs.windows) {
        j["windows"].push_back(
            {{"start", w.start}, {"end", w.end}, {"transition", w.transition}});
    }
    return j.dump(2);
}

std::string window_plot_csv(const EpochSet& epochs, std::size_t window_index,
                            int sample_rate_hz) {
    if (window_index >= epochs.windows.size()) {
        throw std::invalid_argument("window index " + std::to_string(window_index) +
                                    " out of range");
    }
    if (sample_rate_hz <= 0) {
        throw std::invalid_argument("sample rate must be positive");
    }
    std::ostringstream out;
    out << "time_s";
    for (const auto& name : epochs.channel_names) out << ',' << name;
    out << ",label\n";
    const std::size_t c = epochs.channel_count();
    const std::size_t first = window_index * epochs.window_len;
    for (std::size_t r = first; r < first + epochs.window_len; ++r) {
        const double t = static_cast<double>(epochs.source_index[r]) /
                         static_cast<double>(sample_rate_hz);
        out << format_double(t);
        for (std::size_t j = 0; j < c; ++j) {
            out << ',' << format_double(epochs.rows[r * c + j]);
        }
        out << ',' << epochs.labels[r] << '\n';
    }
    return out.str();
}

Recording window_recording(const EpochSet& epochs, std::size_t window_index,
                           int sample_rate_hz) {
    if (window_index >= epochs.windows.size()) {
        throw std::invalid_argument("window index " + std::to_string(window_index) +
                                    " out of range");
    }
    Recording rec;
    rec.sample_rate_hz = sample_rate_hz;
    const std::size_t c = epochs.channel_count();
    rec.channels.resize(c);
    for (std::size_t j = 0; j < c; ++j) {
        rec.channels[j].name = epochs.channel_names[j];
        rec.channels[j].values.reserve(epochs.window_len);
    }
    const std::size_t first = window_index * epochs.window_len;
    for (std::size_t r = first; r < first + epochs.window_len; ++r) {
        for (std::size_t j = 0; j < c; ++j) {
            rec.channels[j].values.push_back(epochs.rows[r * c + j]);
        }
        rec.labels.push_back(epochs.labels[r]);
    }
    return rec;
}

}  // namespace blinkbench
