#include "blinkbench/svc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <stdexcept>
#include <unordered_map>

#include "blinkbench/errors.hpp"

namespace blinkbench {

namespace {

void require_both_classes(const Dataset& data) {
    bool seen[2] = {false, false};
    for (int label : data.y) seen[static_cast<std::size_t>(label)] = true;
    if (!seen[0] || !seen[1]) throw SingleClass("svc needs both classes present");
}

double rbf(const double* a, const double* b, std::size_t d, double gamma) {
    double sq = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        const double diff = a[j] - b[j];
        sq += diff * diff;
    }
    return std::exp(-gamma * sq);
}

// LRU cache of full kernel rows, bounded by a memory budget.
class KernelCache {
public:
    KernelCache(const Dataset& data, double gamma, std::size_t budget_mb)
        : data_(data), gamma_(gamma) {
        const std::size_t row_bytes = data.n * sizeof(double);
        max_rows_ = std::max<std::size_t>(2, budget_mb * 1024 * 1024 / row_bytes);
    }

    const std::vector<double>& row(std::size_t i) {
        auto it = index_.find(i);
        if (it != index_.end()) {
            rows_.splice(rows_.begin(), rows_, it->second);
            return rows_.front().second;
        }
        if (rows_.size() >= max_rows_) {
            index_.erase(rows_.back().first);
            rows_.pop_back();
        }
        rows_.emplace_front(i, std::vector<double>(data_.n));
        std::vector<double>& values = rows_.front().second;
        const double* xi = data_.row(i);
        for (std::size_t t = 0; t < data_.n; ++t) {
            values[t] = rbf(xi, data_.row(t), data_.d, gamma_);
        }
        index_[i] = rows_.begin();
        return values;
    }

private:
    const Dataset& data_;
    double gamma_;
    std::size_t max_rows_;
    std::list<std::pair<std::size_t, std::vector<double>>> rows_;
    std::unordered_map<std::size_t,
                       std::list<std::pair<std::size_t, std::vector<double>>>::iterator>
        index_;
};

}  // namespace

SvcModel svc_fit(const Dataset& train, const SvcOptions& options) {
    train.validate();
    require_both_classes(train);
    if (options.c <= 0.0) throw std::invalid_argument("svc: c must be positive");
    if (options.gamma <= 0.0) throw std::invalid_argument("svc: gamma must be positive");

    const std::size_t n = train.n;
    const double c = options.c;
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = train.y[i] == 1 ? 1.0 : -1.0;

    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);  // gradient of the dual at alpha = 0
    KernelCache cache(train, options.gamma, options.cache_mb);

    const auto in_up = [&](std::size_t t) {
        return (y[t] > 0.0 && alpha[t] < c) || (y[t] < 0.0 && alpha[t] > 0.0);
    };
    const auto in_low = [&](std::size_t t) {
        return (y[t] > 0.0 && alpha[t] > 0.0) || (y[t] < 0.0 && alpha[t] < c);
    };

    SvcModel model;
    model.c = c;
    model.gamma = options.gamma;
    model.d = train.d;

    std::size_t updates = 0;
    bool converged = false;
    while (updates < options.max_updates) {
        // Most-violating pair: the largest -y*grad among the up set against
        // the smallest among the low set.
        double m = -std::numeric_limits<double>::infinity();
        double big_m = std::numeric_limits<double>::infinity();
        std::size_t i = n;
        std::size_t j = n;
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -y[t] * grad[t];
            if (in_up(t) && v > m) {
                m = v;
                i = t;
            }
            if (in_low(t) && v < big_m) {
                big_m = v;
                j = t;
            }
        }
        if (i == n || j == n || m - big_m < options.eps) {
            converged = true;
            break;
        }

        const std::vector<double>& ki = cache.row(i);
        const std::vector<double>& kj = cache.row(j);
        double eta = ki[i] + kj[j] - 2.0 * ki[j];
        if (eta < 1e-12) eta = 1e-12;

        // Optimal step along the equality-constraint line, then clipped to
        // keep both variables inside [0, c].
        double step = (m - big_m) / eta;
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        if (y[i] > 0.0) {
            lo = std::max(lo, -alpha[i]);
            hi = std::min(hi, c - alpha[i]);
        } else {
            lo = std::max(lo, alpha[i] - c);
            hi = std::min(hi, alpha[i]);
        }
        if (y[j] > 0.0) {
            lo = std::max(lo, alpha[j] - c);
            hi = std::min(hi, alpha[j]);
        } else {
            lo = std::max(lo, -alpha[j]);
            hi = std::min(hi, c - alpha[j]);
        }
        step = std::clamp(step, lo, hi);
        if (step <= 0.0) break;  // box blocks all progress

        alpha[i] = std::clamp(alpha[i] + y[i] * step, 0.0, c);
        alpha[j] = std::clamp(alpha[j] - y[j] * step, 0.0, c);
        for (std::size_t t = 0; t < n; ++t) {
            grad[t] += y[t] * step * (ki[t] - kj[t]);
        }
        ++updates;
    }
    model.updates = updates;
    model.converged = converged;

    // Bias from free support vectors when any exist, otherwise the midpoint
    // of the feasible interval given by the boundary sets.
    double free_sum = 0.0;
    std::size_t free_count = 0;
    double up_max = -std::numeric_limits<double>::infinity();
    double low_min = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
        const double v = -y[t] * grad[t];
        if (alpha[t] > 0.0 && alpha[t] < c) {
            free_sum += v;
            ++free_count;
        }
        if (in_up(t)) up_max = std::max(up_max, v);
        if (in_low(t)) low_min = std::min(low_min, v);
    }
    model.bias = free_count > 0 ? free_sum / static_cast<double>(free_count)
                                : 0.5 * (up_max + low_min);

    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > 0.0) {
            model.dual_coef.push_back(alpha[t] * y[t]);
            model.support_index.push_back(t);
            const double* row = train.row(t);
            model.support_x.insert(model.support_x.end(), row, row + train.d);
        }
    }
    return model;
}

double SvcModel::decision(const double* row) const {
    double sum = bias;
    for (std::size_t s = 0; s < dual_coef.size(); ++s) {
        sum += dual_coef[s] * rbf(support_x.data() + s * d, row, d, gamma);
    }
    return sum;
}

int SvcModel::predict_one(const double* row) const {
    return decision(row) > 0.0 ? 1 : 0;
}

std::vector<int> SvcModel::predict(const Dataset& test) const {
    if (test.d != d) {
        throw std::invalid_argument("svc: test dimensionality differs from training");
    }
    std::vector<int> out(test.n);
    for (std::size_t i = 0; i < test.n; ++i) out[i] = predict_one(test.row(i));
    return out;
}

double svc_kkt_residual(const SvcModel& model, const Dataset& train) {
    if (train.d != model.d) {
        throw std::invalid_argument("svc: dataset dimensionality differs from model");
    }
    std::vector<double> alpha(train.n, 0.0);
    for (std::size_t s = 0; s < model.support_index.size(); ++s) {
        alpha[model.support_index[s]] = std::abs(model.dual_coef[s]);
    }
    const double edge = 1e-9 * model.c;
    double residual = 0.0;
    for (std::size_t i = 0; i < train.n; ++i) {
        const double yi = train.y[i] == 1 ? 1.0 : -1.0;
        const double margin = yi * model.decision(train.row(i));
        double viol = 0.0;
        if (alpha[i] <= edge) {
            viol = std::max(0.0, 1.0 - margin);
        } else if (alpha[i] >= model.c - edge) {
            viol = std::max(0.0, margin - 1.0);
        } else {
            viol = std::abs(margin - 1.0);
        }
        residual = std::max(residual, viol);
    }
    return residual;
}

}  // namespace blinkbench
