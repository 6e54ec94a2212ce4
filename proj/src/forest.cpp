#include "blinkbench/forest.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blinkbench/errors.hpp"
#include "blinkbench/rng.hpp"

namespace blinkbench {

namespace {

struct SplitChoice {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double impurity = 0.0;  // weighted child Gini, lower is better
};

double gini_term(std::size_t c1, std::size_t total) {
    if (total == 0) return 0.0;
    const double p1 = static_cast<double>(c1) / static_cast<double>(total);
    const double p0 = 1.0 - p1;
    return static_cast<double>(total) * (1.0 - p0 * p0 - p1 * p1);
}

class TreeBuilder {
public:
    TreeBuilder(const Dataset& data, const RfOptions& options, Rng& rng)
        : data_(data), options_(options), rng_(rng) {
        mtry_ = options.mtry != 0
                    ? std::min(options.mtry, data.d)
                    : static_cast<std::size_t>(
                          std::ceil(std::sqrt(static_cast<double>(data.d))));
        feature_pool_.resize(data.d);
        for (std::size_t f = 0; f < data.d; ++f) feature_pool_[f] = f;
    }

    Tree build(std::vector<std::size_t> rows) {
        Tree tree;
        tree.sample_rows = rows;
        tree.in_bag.assign(data_.n, 0);
        for (std::size_t r : rows) tree.in_bag[r] = 1;
        grow(tree, std::move(rows));
        return tree;
    }

private:
    int grow(Tree& tree, std::vector<std::size_t> rows) {
        const int index = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();

        std::size_t ones = 0;
        for (std::size_t r : rows) ones += static_cast<std::size_t>(data_.y[r]);
        const std::size_t zeros = rows.size() - ones;
        if (ones == 0 || zeros == 0 || rows.size() < options_.min_samples_split) {
            tree.nodes[static_cast<std::size_t>(index)].label = majority(zeros, ones);
            return index;
        }

        const SplitChoice split = best_split(rows);
        if (!split.found) {
            tree.nodes[static_cast<std::size_t>(index)].label = majority(zeros, ones);
            return index;
        }

        std::vector<std::size_t> left_rows;
        std::vector<std::size_t> right_rows;
        left_rows.reserve(rows.size());
        right_rows.reserve(rows.size());
        for (std::size_t r : rows) {
            if (data_.x[r * data_.d + split.feature] <= split.threshold) {
                left_rows.push_back(r);
            } else {
                right_rows.push_back(r);
            }
        }
        rows.clear();
        rows.shrink_to_fit();

        tree.nodes[static_cast<std::size_t>(index)].feature =
            static_cast<int>(split.feature);
        tree.nodes[static_cast<std::size_t>(index)].threshold = split.threshold;
        const int left = grow(tree, std::move(left_rows));
        tree.nodes[static_cast<std::size_t>(index)].left = left;
        const int right = grow(tree, std::move(right_rows));
        tree.nodes[static_cast<std::size_t>(index)].right = right;
        return index;
    }

    static int majority(std::size_t zeros, std::size_t ones) {
        return ones > zeros ? 1 : 0;
    }

    SplitChoice best_split(const std::vector<std::size_t>& rows) {
        // Draw mtry distinct candidate features, then keep the first split
        // with strictly lowest weighted Gini (midpoint thresholds between
        // consecutive distinct values).
        for (std::size_t i = 0; i < mtry_; ++i) {
            const std::size_t pick = i + rng_.below(data_.d - i);
            std::swap(feature_pool_[i], feature_pool_[pick]);
        }
        // Ascending candidate order makes the tie-break "lowest feature
        // index, lowest threshold" regardless of the draw order.
        std::sort(feature_pool_.begin(),
                  feature_pool_.begin() + static_cast<std::ptrdiff_t>(mtry_));

        SplitChoice best;
        std::vector<std::pair<double, int>> column(rows.size());
        for (std::size_t ci = 0; ci < mtry_; ++ci) {
            const std::size_t f = feature_pool_[ci];
            for (std::size_t i = 0; i < rows.size(); ++i) {
                column[i] = {data_.x[rows[i] * data_.d + f], data_.y[rows[i]]};
            }
            std::sort(column.begin(), column.end());

            std::size_t total_ones = 0;
            for (const auto& [value, label] : column) {
                total_ones += static_cast<std::size_t>(label);
            }
            std::size_t left_n = 0;
            std::size_t left_ones = 0;
            for (std::size_t i = 0; i + 1 < column.size(); ++i) {
                ++left_n;
                left_ones += static_cast<std::size_t>(column[i].second);
                if (column[i].first == column[i + 1].first) continue;
                const double impurity =
                    gini_term(left_ones, left_n) +
                    gini_term(total_ones - left_ones, column.size() - left_n);
                if (!best.found || impurity < best.impurity) {
                    best.found = true;
                    best.feature = f;
                    best.threshold = 0.5 * (column[i].first + column[i + 1].first);
                    best.impurity = impurity;
                }
            }
        }
        return best;
    }

    const Dataset& data_;
    const RfOptions& options_;
    Rng& rng_;
    std::size_t mtry_ = 0;
    std::vector<std::size_t> feature_pool_;
};

}  // namespace

int Tree::predict_one(const double* row) const {
    int at = 0;
    while (!nodes[static_cast<std::size_t>(at)].is_leaf()) {
        const TreeNode& node = nodes[static_cast<std::size_t>(at)];
        at = row[node.feature] <= node.threshold ? node.left : node.right;
    }
    return nodes[static_cast<std::size_t>(at)].label;
}

ForestModel rf_fit(const Dataset& train, const RfOptions& options) {
    train.validate();
    if (options.n_trees == 0) throw std::invalid_argument("rf: n_trees must be positive");
    bool seen[2] = {false, false};
    for (int label : train.y) seen[static_cast<std::size_t>(label)] = true;
    if (!seen[0] || !seen[1]) throw SingleClass("rf needs both classes present");

    ForestModel model;
    model.options = options;
    model.d = train.d;
    model.trees.reserve(options.n_trees);
    for (std::size_t t = 0; t < options.n_trees; ++t) {
        Rng rng(Rng::derive(options.seed, t));
        std::vector<std::size_t> rows;
        rows.reserve(train.n);
        if (options.bootstrap) {
            for (std::size_t i = 0; i < train.n; ++i) rows.push_back(rng.below(train.n));
        } else {
            for (std::size_t i = 0; i < train.n; ++i) rows.push_back(i);
        }
        TreeBuilder builder(train, options, rng);
        model.trees.push_back(builder.build(std::move(rows)));
    }
    return model;
}

int ForestModel::predict_one(const double* row) const {
    std::size_t votes[2] = {0, 0};
    for (const Tree& tree : trees) {
        ++votes[static_cast<std::size_t>(tree.predict_one(row))];
    }
    return votes[1] > votes[0] ? 1 : 0;
}

std::vector<int> ForestModel::predict(const Dataset& test) const {
    if (test.d != d) {
        throw std::invalid_argument("rf: test dimensionality differs from training");
    }
    std::vector<int> out(test.n);
    for (std::size_t i = 0; i < test.n; ++i) out[i] = predict_one(test.row(i));
    return out;
}

}  // namespace blinkbench
