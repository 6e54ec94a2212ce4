#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "blinkbench/epochs.hpp"
#include "blinkbench/recording.hpp"

namespace blinkbench {

// Flat row-major feature matrix with binary labels, the common input for
// every classifier in this library.
struct Dataset {
    std::vector<double> x;  // n * d, row-major
    std::vector<int> y;     // n entries, each 0 or 1
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<std::string> feature_names;

    const double* row(std::size_t i) const { return x.data() + i * d; }

    // Throws DataError subclasses on shape or label problems.
    void validate() const;
};

// One row per timepoint, one feature per channel. An empty channel list
// keeps every channel; otherwise channels are taken in the given order.
Dataset dataset_from_recording(const Recording& rec,
                               const std::vector<std::string>& channels = {});

// Same, over the concatenated rows of an epoch set.
Dataset dataset_from_epochs(const EpochSet& epochs,
                            const std::vector<std::string>& channels = {});

// Row subset in the given index order. Indices must be in range.
Dataset dataset_subset(const Dataset& data, const std::vector<std::size_t>& rows);

}  // namespace blinkbench
