#pragma once

#include <cstddef>
#include <vector>

#include "blinkbench/dataset.hpp"

namespace blinkbench {

struct LogregOptions {
    double l2 = 1e-4;
    std::size_t max_iter = 1000;
    double tol = 1e-6;
};

// Binary logistic regression trained by gradient descent with backtracking
// line search on the mean negative log-likelihood plus (l2/2)*||w||^2. The
// bias is not regularized. Probability exactly 0.5 predicts label 0.
struct LogregModel {
    std::vector<double> weights;
    double bias = 0.0;
    LogregOptions options;
    bool converged = false;
    std::size_t iterations = 0;

    double decision(const double* row) const;
    double probability(const double* row) const;
    int predict_one(const double* row) const;
    std::vector<int> predict(const Dataset& test) const;
};

LogregModel logreg_fit(const Dataset& train, const LogregOptions& options = {});

// Mean NLL + ridge penalty and its analytic gradient (weights then bias),
// exposed for finite-difference verification.
double logreg_loss(const Dataset& data, const std::vector<double>& weights,
                   double bias, double l2);
std::vector<double> logreg_gradient(const Dataset& data,
                                    const std::vector<double>& weights,
                                    double bias, double l2);

}  // namespace blinkbench
