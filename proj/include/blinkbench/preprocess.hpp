#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "blinkbench/recording.hpp"

namespace blinkbench {

struct OutlierReport {
    std::vector<std::size_t> removed_indices;     // strictly increasing
    std::vector<std::string> trigger_channels;    // one per removed index
    double factor = 10.0;
    int passes = 1;
};

// Drops every timepoint where, in any channel, |value| exceeds
// factor x mean(|values|) of that channel. Channel means are taken over the
// full series before any removal; a single pass. When several channels trip
// the same timepoint the first in declaration order is reported as trigger.
std::pair<Recording, OutlierReport> remove_outliers(const Recording& rec, double factor = 10.0);

// Subtracts each channel's arithmetic mean (compensated summation, so the
// residual mean stays below 1e-9 for recording-scale data).
Recording center(const Recording& rec);

std::string outlier_report_to_json(const OutlierReport& report);

}  // namespace blinkbench
