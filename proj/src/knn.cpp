#include "blinkbench/knn.hpp"

#include <algorithm>
#include <stdexcept>

namespace blinkbench {

namespace {

double squared_distance(const double* a, const double* b, std::size_t d) {
    double sum = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        const double diff = a[j] - b[j];
        sum += diff * diff;
    }
    return sum;
}

}  // namespace

KnnModel knn_fit(const Dataset& train, std::size_t k) {
    train.validate();
    if (k == 0) throw std::invalid_argument("knn: k must be positive");
    if (k > train.n) throw std::invalid_argument("knn: k exceeds training size");
    KnnModel model;
    model.k = k;
    model.train = train;
    return model;
}

int KnnModel::predict_one(const double* row) const {
    std::vector<double> dist(train.n);
    for (std::size_t i = 0; i < train.n; ++i) {
        dist[i] = squared_distance(row, train.row(i), train.d);
    }
    // k-th smallest distance; every point at that distance joins the vote.
    std::vector<double> order = dist;
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k - 1),
                     order.end());
    const double cutoff = order[k - 1];
    std::size_t votes[2] = {0, 0};
    for (std::size_t i = 0; i < train.n; ++i) {
        if (dist[i] <= cutoff) ++votes[static_cast<std::size_t>(train.y[i])];
    }
    return votes[1] > votes[0] ? 1 : 0;
}

std::vector<int> KnnModel::predict(const Dataset& test) const {
    if (test.d != train.d) {
        throw std::invalid_argument("knn: test dimensionality differs from training");
    }
    std::vector<int> out(test.n);
    for (std::size_t i = 0; i < test.n; ++i) out[i] = predict_one(test.row(i));
    return out;
}

}  // namespace blinkbench
