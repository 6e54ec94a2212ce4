#pragma once

#include <cstdint>
#include <vector>

namespace blinkbench {

struct FoldPlan {
    std::size_t k = 5;
    std::vector<std::size_t> assignments;  // per-row fold index
    std::uint64_t seed = 0;
    bool stratified = true;

    std::vector<std::size_t> test_rows(std::size_t fold) const;
    std::vector<std::size_t> train_rows(std::size_t fold) const;
};

// Deterministic fold assignment. Stratified plans shuffle each class
// separately and deal round-robin, so fold sizes differ by at most one and
// per-fold class counts stay within one row of proportional.
FoldPlan make_folds(const std::vector<int>& targets, std::size_t k,
                    std::uint64_t seed, bool stratified = true);

}  // namespace blinkbench
