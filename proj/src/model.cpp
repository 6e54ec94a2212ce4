#include "blinkbench/model.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "blinkbench/errors.hpp"

namespace blinkbench {

namespace {

using nlohmann::json;

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

json dataset_to_json(const Dataset& data) {
    return json{{"x", data.x},
                {"y", data.y},
                {"n", data.n},
                {"d", data.d},
                {"feature_names", data.feature_names}};
}

Dataset dataset_from_json(const json& j) {
    Dataset data;
    data.x = j.at("x").get<std::vector<double>>();
    data.y = j.at("y").get<std::vector<int>>();
    data.n = j.at("n").get<std::size_t>();
    data.d = j.at("d").get<std::size_t>();
    data.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    return data;
}

json tree_to_json(const Tree& tree) {
    json nodes = json::array();
    for (const TreeNode& node : tree.nodes) {
        nodes.push_back(
            json::array({node.feature, node.threshold, node.left, node.right, node.label}));
    }
    return json{{"nodes", nodes}};
}

Tree tree_from_json(const json& j) {
    Tree tree;
    for (const json& n : j.at("nodes")) {
        TreeNode node;
        node.feature = n.at(0).get<int>();
        node.threshold = n.at(1).get<double>();
        node.left = n.at(2).get<int>();
        node.right = n.at(3).get<int>();
        node.label = n.at(4).get<int>();
        tree.nodes.push_back(node);
    }
    return tree;
}

}  // namespace

ModelKind parse_model_kind(const std::string& name) {
    if (name == "knn") return ModelKind::knn;
    if (name == "logreg") return ModelKind::logreg;
    if (name == "svc") return ModelKind::svc;
    if (name == "rf") return ModelKind::rf;
    throw ParseError("unknown model kind '" + name + "'");
}

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::knn: return "knn";
        case ModelKind::logreg: return "logreg";
        case ModelKind::svc: return "svc";
        case ModelKind::rf: return "rf";
    }
    throw std::logic_error("unreachable model kind");
}

TrainedModel train_model(ModelKind kind, const Dataset& data,
                         const std::map<std::string, double>& params) {
    TrainedModel model;
    model.kind = kind;
    switch (kind) {
        case ModelKind::knn: {
            const std::size_t k = static_cast<std::size_t>(param_or(params, "k", 3.0));
            model.impl = knn_fit(data, k);
            model.hyperparameters = {{"k", static_cast<double>(k)}};
            break;
        }
        case ModelKind::logreg: {
            LogregOptions options;
            options.l2 = param_or(params, "l2", options.l2);
            options.max_iter = static_cast<std::size_t>(
                param_or(params, "max_iter", static_cast<double>(options.max_iter)));
            options.tol = param_or(params, "tol", options.tol);
            model.impl = logreg_fit(data, options);
            model.hyperparameters = {{"l2", options.l2},
                                     {"max_iter", static_cast<double>(options.max_iter)},
                                     {"tol", options.tol}};
            break;
        }
        case ModelKind::svc: {
            SvcOptions options;
            options.c = param_or(params, "c", options.c);
            options.gamma = param_or(params, "gamma", options.gamma);
            options.eps = param_or(params, "eps", options.eps);
            options.max_updates = static_cast<std::size_t>(
                param_or(params, "max_updates", static_cast<double>(options.max_updates)));
            model.impl = svc_fit(data, options);
            model.hyperparameters = {{"c", options.c},
                                     {"gamma", options.gamma},
                                     {"eps", options.eps},
                                     {"max_updates", static_cast<double>(options.max_updates)}};
            break;
        }
        case ModelKind::rf: {
            RfOptions options;
            options.n_trees = static_cast<std::size_t>(
                param_or(params, "n_trees", static_cast<double>(options.n_trees)));
            options.seed = static_cast<std::uint64_t>(param_or(params, "seed", 0.0));
            options.bootstrap = param_or(params, "bootstrap", 1.0) != 0.0;
            options.mtry = static_cast<std::size_t>(param_or(params, "mtry", 0.0));
            options.min_samples_split = static_cast<std::size_t>(param_or(
                params, "min_samples_split", static_cast<double>(options.min_samples_split)));
            model.impl = rf_fit(data, options);
            model.hyperparameters = {
                {"n_trees", static_cast<double>(options.n_trees)},
                {"seed", static_cast<double>(options.seed)},
                {"bootstrap", options.bootstrap ? 1.0 : 0.0},
                {"mtry", static_cast<double>(options.mtry)},
                {"min_samples_split", static_cast<double>(options.min_samples_split)}};
            break;
        }
    }
    return model;
}

std::vector<int> predict(const TrainedModel& model, const Dataset& data) {
    return std::visit([&](const auto& impl) { return impl.predict(data); }, model.impl);
}

std::string model_to_json(const TrainedModel& model) {
    json j;
    j["version"] = 1;
    j["kind"] = to_string(model.kind);
    j["hyperparameters"] = model.hyperparameters;
    json state;
    switch (model.kind) {
        case ModelKind::knn: {
            const auto& knn = std::get<KnnModel>(model.impl);
            state = json{{"k", knn.k}, {"train", dataset_to_json(knn.train)}};
            break;
        }
        case ModelKind::logreg: {
            const auto& lr = std::get<LogregModel>(model.impl);
            state = json{{"weights", lr.weights},
                         {"bias", lr.bias},
                         {"converged", lr.converged},
                         {"iterations", lr.iterations}};
            break;
        }
        case ModelKind::svc: {
            const auto& svc = std::get<SvcModel>(model.impl);
            state = json{{"support_x", svc.support_x},
                         {"dual_coef", svc.dual_coef},
                         {"support_index", svc.support_index},
                         {"bias", svc.bias},
                         {"c", svc.c},
                         {"gamma", svc.gamma},
                         {"d", svc.d},
                         {"converged", svc.converged},
                         {"updates", svc.updates}};
            break;
        }
        case ModelKind::rf: {
            const auto& rf = std::get<ForestModel>(model.impl);
            json trees = json::array();
            for (const Tree& tree : rf.trees) trees.push_back(tree_to_json(tree));
            state = json{{"d", rf.d},
                         {"n_trees", rf.options.n_trees},
                         {"seed", rf.options.seed},
                         {"bootstrap", rf.options.bootstrap},
                         {"mtry", rf.options.mtry},
                         {"min_samples_split", rf.options.min_samples_split},
                         {"trees", trees}};
            break;
        }
    }
    j["state"] = state;
    return j.dump(2);
}

namespace {

TrainedModel model_from_parsed_json(const json& j) {
    if (j.at("version").get<int>() != 1) {
        throw ParseError("model json: unsupported version");
    }
    TrainedModel model;
    model.kind = parse_model_kind(j.at("kind").get<std::string>());
    model.hyperparameters =
        j.at("hyperparameters").get<std::map<std::string, double>>();
    const json& state = j.at("state");
    switch (model.kind) {
        case ModelKind::knn: {
            KnnModel knn;
            knn.k = state.at("k").get<std::size_t>();
            knn.train = dataset_from_json(state.at("train"));
            model.impl = std::move(knn);
            break;
        }
        case ModelKind::logreg: {
            LogregModel lr;
            lr.weights = state.at("weights").get<std::vector<double>>();
            lr.bias = state.at("bias").get<double>();
            lr.converged = state.at("converged").get<bool>();
            lr.iterations = state.at("iterations").get<std::size_t>();
            model.impl = std::move(lr);
            break;
        }
        case ModelKind::svc: {
            SvcModel svc;
            svc.support_x = state.at("support_x").get<std::vector<double>>();
            svc.dual_coef = state.at("dual_coef").get<std::vector<double>>();
            svc.support_index =
                state.at("support_index").get<std::vector<std::size_t>>();
            svc.bias = state.at("bias").get<double>();
            svc.c = state.at("c").get<double>();
            svc.gamma = state.at("gamma").get<double>();
            svc.d = state.at("d").get<std::size_t>();
            svc.converged = state.at("converged").get<bool>();
            svc.updates = state.at("updates").get<std::size_t>();
            model.impl = std::move(svc);
            break;
        }
        case ModelKind::rf: {
            ForestModel rf;
            rf.d = state.at("d").get<std::size_t>();
            rf.options.n_trees = state.at("n_trees").get<std::size_t>();
            rf.options.seed = state.at("seed").get<std::uint64_t>();
            rf.options.bootstrap = state.at("bootstrap").get<bool>();
            rf.options.mtry = state.at("mtry").get<std::size_t>();
            rf.options.min_samples_split =
                state.at("min_samples_split").get<std::size_t>();
            for (const json& t : state.at("trees")) rf.trees.push_back(tree_from_json(t));
            model.impl = std::move(rf);
            break;
        }
    }
    return model;
}

}  // namespace

TrainedModel model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("model json: ") + e.what());
    }
    try {
        return model_from_parsed_json(j);
    } catch (const json::exception& e) {
        throw ParseError(std::string("model json: ") + e.what());
    }
}

}  // namespace blinkbench
