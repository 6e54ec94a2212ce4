#include "blinkbench/grid_search.hpp"

#include <stdexcept>

#include "blinkbench/errors.hpp"
#include "blinkbench/folds.hpp"
#include "blinkbench/metrics.hpp"

namespace blinkbench {

GridResult grid_search(ModelKind kind, const Dataset& data,
                       const std::vector<std::map<std::string, double>>& grid,
                       std::size_t folds, std::uint64_t seed) {
    if (grid.empty()) throw std::invalid_argument("grid_search: empty grid");
    if (folds < 2) throw std::invalid_argument("grid_search: folds must be at least 2");
    data.validate();

    const FoldPlan plan = make_folds(data.y, folds, seed);
    GridResult result;
    result.kind = kind;
    result.cells.reserve(grid.size());

    bool have_best = false;
    for (const auto& params : grid) {
        GridCell cell;
        cell.params = params;
        try {
            double sum = 0.0;
            for (std::size_t fold = 0; fold < folds; ++fold) {
                const Dataset train = dataset_subset(data, plan.train_rows(fold));
                const Dataset test = dataset_subset(data, plan.test_rows(fold));
                const TrainedModel model = train_model(kind, train, params);
                const double f1 = f1_score(predict(model, test), test.y);
                cell.fold_f1.push_back(f1);
                sum += f1;
            }
            cell.mean_f1 = sum / static_cast<double>(folds);
        } catch (const DataError& e) {
            cell.failed = true;
            cell.error = e.what();
        } catch (const std::invalid_argument& e) {
            cell.failed = true;
            cell.error = e.what();
        }
        result.cells.push_back(std::move(cell));
        const std::size_t at = result.cells.size() - 1;
        if (!result.cells[at].failed &&
            (!have_best || result.cells[at].mean_f1 > result.cells[result.best_index].mean_f1)) {
            result.best_index = at;
            have_best = true;
        }
    }
    if (!have_best) throw DataError("grid_search: every cell failed");
    return result;
}

}  // namespace blinkbench
