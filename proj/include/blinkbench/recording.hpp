#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace blinkbench {

// One electrode's voltage series, in microvolts.
struct ChannelSeries {
    std::string name;
    std::vector<double> values;

    bool operator==(const ChannelSeries&) const = default;
};

// Channel-major voltage matrix plus the per-timepoint eye-state labels
// (0 = eyes open, 1 = eye blink). Treated as immutable once validated;
// pipeline stages return fresh copies instead of mutating.
struct Recording {
    std::vector<ChannelSeries> channels;
    std::vector<int> labels;
    int sample_rate_hz = 128;

    std::size_t channel_count() const { return channels.size(); }
    std::size_t length() const { return labels.size(); }

    std::vector<std::string> channel_names() const;
    std::size_t channel_index(std::string_view name) const;  // throws DataError if absent

    // Enforces the structural invariants: equal channel lengths matching
    // labels, binary labels, finite values, unique nonempty names,
    // sample_rate_hz > 0, at least two channels.
    void validate() const;

    bool operator==(const Recording&) const = default;
};

}  // namespace blinkbench
