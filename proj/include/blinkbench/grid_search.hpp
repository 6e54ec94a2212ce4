#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "blinkbench/dataset.hpp"
#include "blinkbench/model.hpp"

namespace blinkbench {

struct GridCell {
    std::map<std::string, double> params;
    std::vector<double> fold_f1;
    double mean_f1 = 0.0;
    bool failed = false;
    std::string error;
};

struct GridResult {
    ModelKind kind = ModelKind::knn;
    std::vector<GridCell> cells;  // in declaration order
    std::size_t best_index = 0;

    const GridCell& best() const { return cells[best_index]; }
};

// Exhaustive k-fold F1 over every grid cell. Best is the highest mean F1;
// exact ties keep the earliest declared cell. A cell whose training throws
// is marked failed and the search continues.
GridResult grid_search(ModelKind kind, const Dataset& data,
                       const std::vector<std::map<std::string, double>>& grid,
                       std::size_t folds, std::uint64_t seed);

}  // namespace blinkbench
