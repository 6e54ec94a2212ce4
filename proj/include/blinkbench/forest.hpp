#pragma once

#include <cstdint>
#include <vector>

#include "blinkbench/dataset.hpp"

namespace blinkbench {

struct RfOptions {
    std::size_t n_trees = 100;
    std::uint64_t seed = 0;
    bool bootstrap = true;   // test hook: false trains every tree on all rows
    std::size_t mtry = 0;    // candidate features per split; 0 = ceil(sqrt(d))
    std::size_t min_samples_split = 2;
};

// One CART node. Leaves carry a label; internal nodes route x[feature] <=
// threshold to the left child.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int label = -1;

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;
    std::vector<std::size_t> sample_rows;  // bootstrap draw (training provenance)
    std::vector<std::uint8_t> in_bag;      // per training row

    int predict_one(const double* row) const;
};

// Random forest of Gini-split CART trees over bootstrap resamples, with
// ceil(sqrt(D)) candidate features per split and majority voting. Ties in
// the vote resolve to label 0. Fully deterministic given the seed.
struct ForestModel {
    std::vector<Tree> trees;
    RfOptions options;
    std::size_t d = 0;

    int predict_one(const double* row) const;
    std::vector<int> predict(const Dataset& test) const;
};

ForestModel rf_fit(const Dataset& train, const RfOptions& options = {});

}  // namespace blinkbench
