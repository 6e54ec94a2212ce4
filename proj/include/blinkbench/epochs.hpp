#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "blinkbench/recording.hpp"

namespace blinkbench {

struct Window {
    std::size_t start = 0;       // inclusive
    std::size_t end = 0;         // exclusive; end - start == window_len
    std::size_t transition = 0;  // strictly inside (start, end)
};

// Concatenated rows of transition-centered windows. Rows are verbatim copies
// of the parent recording; source_index keeps the original timepoint per row.
struct EpochSet {
    std::vector<Window> windows;
    std::vector<std::string> channel_names;
    std::vector<double> rows;                // row-major, row_count() x C
    std::vector<int> labels;                 // per row
    std::vector<std::size_t> source_index;   // original timepoint per row
    std::size_t window_len = 0;
    std::size_t source_length = 0;
    std::uint64_t seed = 0;

    std::size_t row_count() const { return labels.size(); }
    std::size_t channel_count() const { return channel_names.size(); }
};

// Indices i with labels[i] != labels[i-1], ascending.
std::vector<std::size_t> find_transitions(const std::vector<int>& labels);

// Picks `count` transitions evenly spaced through the transition list, centers
// a window of window_len on each (clamped at the recording edges), and keeps
// windows pairwise disjoint by skipping to the next transition on overlap.
EpochSet slice_windows(const Recording& rec, std::size_t window_len = 384,
                       std::size_t count = 20, std::uint64_t seed = 0);

// Rows as CSV (source_index, channels..., label).
std::string epochs_to_csv(const EpochSet& epochs);

// Window manifest as JSON.
std::string epochs_manifest_json(const EpochSet& epochs);

// Plot data for one window: time in seconds, per-channel value, label.
std::string window_plot_csv(const EpochSet& epochs, std::size_t window_index,
                            int sample_rate_hz);

// The rows of one window as a standalone Recording (used for per-slice mRMR).
Recording window_recording(const EpochSet& epochs, std::size_t window_index,
                           int sample_rate_hz);

}  // namespace blinkbench
