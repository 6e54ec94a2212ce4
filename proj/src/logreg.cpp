#include "blinkbench/logreg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blinkbench/errors.hpp"

namespace blinkbench {

namespace {

void require_both_classes(const Dataset& data) {
    bool seen[2] = {false, false};
    for (int label : data.y) seen[static_cast<std::size_t>(label)] = true;
    if (!seen[0] || !seen[1]) {
        throw SingleClass("logistic regression needs both classes present");
    }
}

double dot(const double* a, const double* b, std::size_t d) {
    double sum = 0.0;
    for (std::size_t j = 0; j < d; ++j) sum += a[j] * b[j];
    return sum;
}

// log(1 + exp(z)) without overflow.
double log1p_exp(double z) {
    if (z > 0.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

}  // namespace

double logreg_loss(const Dataset& data, const std::vector<double>& weights,
                   double bias, double l2) {
    double nll = 0.0;
    for (std::size_t i = 0; i < data.n; ++i) {
        const double z = dot(data.row(i), weights.data(), data.d) + bias;
        nll += log1p_exp(z) - static_cast<double>(data.y[i]) * z;
    }
    nll /= static_cast<double>(data.n);
    double penalty = 0.0;
    for (double w : weights) penalty += w * w;
    return nll + 0.5 * l2 * penalty;
}

std::vector<double> logreg_gradient(const Dataset& data,
                                    const std::vector<double>& weights,
                                    double bias, double l2) {
    std::vector<double> grad(data.d + 1, 0.0);
    for (std::size_t i = 0; i < data.n; ++i) {
        const double* row = data.row(i);
        const double z = dot(row, weights.data(), data.d) + bias;
        const double p = 1.0 / (1.0 + std::exp(-z));
        const double residual = p - static_cast<double>(data.y[i]);
        for (std::size_t j = 0; j < data.d; ++j) grad[j] += residual * row[j];
        grad[data.d] += residual;
    }
    const double scale = 1.0 / static_cast<double>(data.n);
    for (double& g : grad) g *= scale;
    for (std::size_t j = 0; j < data.d; ++j) grad[j] += l2 * weights[j];
    return grad;
}

LogregModel logreg_fit(const Dataset& train, const LogregOptions& options) {
    train.validate();
    require_both_classes(train);
    if (options.l2 < 0.0) throw std::invalid_argument("logreg: l2 must be >= 0");
    if (options.tol <= 0.0) throw std::invalid_argument("logreg: tol must be positive");

    LogregModel model;
    model.options = options;
    model.weights.assign(train.d, 0.0);
    model.bias = 0.0;

    double loss = logreg_loss(train, model.weights, model.bias, options.l2);
    double step = 1.0;
    for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
        const std::vector<double> grad =
            logreg_gradient(train, model.weights, model.bias, options.l2);
        double grad_inf = 0.0;
        double grad_sq = 0.0;
        for (double g : grad) {
            grad_inf = std::max(grad_inf, std::abs(g));
            grad_sq += g * g;
        }
        model.iterations = iter;
        if (grad_inf < options.tol) {
            model.converged = true;
            return model;
        }

        // Backtracking line search with the Armijo condition.
        step = std::min(step * 2.0, 1e6);
        std::vector<double> next_w(train.d);
        double next_b = 0.0;
        double next_loss = 0.0;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t j = 0; j < train.d; ++j) {
                next_w[j] = model.weights[j] - step * grad[j];
            }
            next_b = model.bias - step * grad[train.d];
            next_loss = logreg_loss(train, next_w, next_b, options.l2);
            if (next_loss <= loss - 1e-4 * step * grad_sq) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // Line search stalled at float precision; treat as converged.
            model.converged = true;
            return model;
        }
        model.weights = next_w;
        model.bias = next_b;
        loss = next_loss;
    }
    model.iterations = options.max_iter;
    model.converged = false;
    return model;
}

double LogregModel::decision(const double* row) const {
    return dot(row, weights.data(), weights.size()) + bias;
}

double LogregModel::probability(const double* row) const {
    return 1.0 / (1.0 + std::exp(-decision(row)));
}

int LogregModel::predict_one(const double* row) const {
    // z > 0 exactly when p > 0.5, so p == 0.5 falls to label 0.
    return decision(row) > 0.0 ? 1 : 0;
}

std::vector<int> LogregModel::predict(const Dataset& test) const {
    if (test.d != weights.size()) {
        throw std::invalid_argument("logreg: test dimensionality differs from training");
    }
    std::vector<int> out(test.n);
    for (std::size_t i = 0; i < test.n; ++i) out[i] = predict_one(test.row(i));
    return out;
}

}  // namespace blinkbench
