#pragma once

#include <cstddef>
#include <vector>

#include "blinkbench/dataset.hpp"

namespace blinkbench {

// k-nearest-neighbor classifier with Euclidean distance. Training stores the
// data verbatim. At query time the vote includes every point tied with the
// k-th smallest distance, and a tied vote resolves to label 0.
struct KnnModel {
    std::size_t k = 3;
    Dataset train;

    int predict_one(const double* row) const;
    std::vector<int> predict(const Dataset& test) const;
};

KnnModel knn_fit(const Dataset& train, std::size_t k);

}  // namespace blinkbench
