#include "blinkbench/metrics.hpp"

#include <stdexcept>

namespace blinkbench {

Confusion confusion_matrix(const std::vector<int>& predicted,
                           const std::vector<int>& actual, int positive_class) {
    if (predicted.size() != actual.size()) {
        throw std::invalid_argument("confusion_matrix: length mismatch");
    }
    Confusion c;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const bool pred_pos = predicted[i] == positive_class;
        const bool true_pos = actual[i] == positive_class;
        if (pred_pos && true_pos) ++c.tp;
        else if (pred_pos && !true_pos) ++c.fp;
        else if (!pred_pos && true_pos) ++c.fn;
        else ++c.tn;
    }
    return c;
}

double f1_score(const std::vector<int>& predicted, const std::vector<int>& actual,
                int positive_class) {
    const Confusion c = confusion_matrix(predicted, actual, positive_class);
    const std::size_t denom = 2 * c.tp + c.fp + c.fn;
    if (denom == 0) return 0.0;
    return 2.0 * static_cast<double>(c.tp) / static_cast<double>(denom);
}

double precision(const Confusion& c) {
    const std::size_t denom = c.tp + c.fp;
    return denom == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(denom);
}

double recall(const Confusion& c) {
    const std::size_t denom = c.tp + c.fn;
    return denom == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(denom);
}

}  // namespace blinkbench
