#pragma once

#include <cstddef>
#include <vector>

#include "blinkbench/dataset.hpp"

namespace blinkbench {

struct SvcOptions {
    double c = 10.0;
    double gamma = 0.001;
    double eps = 1e-3;              // duality-gap stop threshold
    std::size_t max_updates = 1000000;  // cap on pairwise updates
    std::size_t cache_mb = 256;     // kernel row cache budget
};

// Soft-margin SVM with RBF kernel, trained by sequential two-variable dual
// optimization (first-order violating-pair selection). Support vectors are
// the training rows with nonzero dual weight.
struct SvcModel {
    std::vector<double> support_x;        // n_sv * d, row-major
    std::vector<double> dual_coef;        // alpha_i * y_i, y in {-1,+1}
    std::vector<std::size_t> support_index;  // positions in the training set
    double bias = 0.0;
    double c = 10.0;
    double gamma = 0.001;
    std::size_t d = 0;
    bool converged = false;
    std::size_t updates = 0;

    std::size_t support_count() const { return dual_coef.size(); }
    double decision(const double* row) const;
    int predict_one(const double* row) const;
    std::vector<int> predict(const Dataset& test) const;
};

SvcModel svc_fit(const Dataset& train, const SvcOptions& options = {});

// Worst KKT violation of the trained model over its training set, computed
// with fresh kernel evaluations (no reuse of solver state). Near-zero means
// the dual solution is optimal to within tolerance.
double svc_kkt_residual(const SvcModel& model, const Dataset& train);

}  // namespace blinkbench
