#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "blinkbench/dataset.hpp"
#include "blinkbench/forest.hpp"
#include "blinkbench/knn.hpp"
#include "blinkbench/logreg.hpp"
#include "blinkbench/svc.hpp"

namespace blinkbench {

enum class ModelKind { knn, logreg, svc, rf };

ModelKind parse_model_kind(const std::string& name);
std::string to_string(ModelKind kind);

// Uniform wrapper so folds, grid search and the bench harness can treat all
// four classifiers alike. The hyperparameter record keeps every setting the
// training call actually used.
struct TrainedModel {
    ModelKind kind = ModelKind::knn;
    std::variant<KnnModel, LogregModel, SvcModel, ForestModel> impl;
    std::map<std::string, double> hyperparameters;
};

// Recognized hyperparameters (missing keys fall back to defaults):
//   knn:    k
//   logreg: l2, max_iter, tol
//   svc:    c, gamma, eps, max_updates
//   rf:     n_trees, seed, bootstrap (0/1), mtry, min_samples_split
TrainedModel train_model(ModelKind kind, const Dataset& data,
                         const std::map<std::string, double>& params = {});

std::vector<int> predict(const TrainedModel& model, const Dataset& data);

// Versioned JSON round-trip; a reloaded model predicts identically.
std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text);

}  // namespace blinkbench
