#include "blinkbench/folds.hpp"

#include <stdexcept>

#include "blinkbench/errors.hpp"
#include "blinkbench/rng.hpp"

namespace blinkbench {

std::vector<std::size_t> FoldPlan::test_rows(std::size_t fold) const {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] == fold) rows.push_back(i);
    }
    return rows;
}

std::vector<std::size_t> FoldPlan::train_rows(std::size_t fold) const {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] != fold) rows.push_back(i);
    }
    return rows;
}

FoldPlan make_folds(const std::vector<int>& targets, std::size_t k,
                    std::uint64_t seed, bool stratified) {
    const std::size_t n = targets.size();
    if (k < 2) throw std::invalid_argument("make_folds: k must be at least 2");
    if (n < k) throw std::invalid_argument("make_folds: more folds than rows");
    for (int t : targets) {
        if (t != 0 && t != 1) throw ParseError("make_folds: label outside {0,1}");
    }

    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.stratified = stratified;
    plan.assignments.assign(n, 0);

    if (!stratified) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        Rng rng(seed);
        rng.shuffle(order);
        for (std::size_t pos = 0; pos < n; ++pos) {
            plan.assignments[order[pos]] = pos % k;
        }
        return plan;
    }

    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < n; ++i) {
        by_class[static_cast<std::size_t>(targets[i])].push_back(i);
    }
    if (by_class[0].size() < k || by_class[1].size() < k) {
        throw EmptySubset("make_folds: a class has fewer rows than folds");
    }

    // Continue the round-robin across classes so total fold sizes also stay
    // within one of each other.
    std::size_t next_fold = 0;
    for (std::size_t cls = 0; cls < 2; ++cls) {
        Rng rng(Rng::derive(seed, cls));
        rng.shuffle(by_class[cls]);
        for (std::size_t idx : by_class[cls]) {
            plan.assignments[idx] = next_fold;
            next_fold = (next_fold + 1) % k;
        }
    }
    return plan;
}

}  // namespace blinkbench
