#pragma once

#include <cstddef>
#include <vector>

namespace blinkbench {

struct Confusion {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;
};

Confusion confusion_matrix(const std::vector<int>& predicted,
                           const std::vector<int>& actual,
                           int positive_class = 1);

// 2TP / (2TP + FP + FN); zero when that denominator is zero.
double f1_score(const std::vector<int>& predicted, const std::vector<int>& actual,
                int positive_class = 1);

double precision(const Confusion& c);
double recall(const Confusion& c);

}  // namespace blinkbench
