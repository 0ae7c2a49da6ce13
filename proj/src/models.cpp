#include <algorithm>
#include <cmath>

#include "readmit/classifiers.hpp"
#include "readmit/errors.hpp"
#include "readmit/parallel.hpp"

namespace readmit {

const char* to_string(ModelFamily family) {
    switch (family) {
        case ModelFamily::NaiveBayes: return "naive_bayes";
        case ModelFamily::Logistic: return "logistic";
        case ModelFamily::Svm: return "linear_svm";
        case ModelFamily::RandomForest: return "random_forest";
        case ModelFamily::Gbdt: return "gbdt";
    }
    return "logistic";
}

ModelFamily parse_model_family(std::string_view name) {
    if (name == "naive_bayes") return ModelFamily::NaiveBayes;
    if (name == "logistic") return ModelFamily::Logistic;
    if (name == "linear_svm") return ModelFamily::Svm;
    if (name == "random_forest") return ModelFamily::RandomForest;
    if (name == "gbdt") return ModelFamily::Gbdt;
    throw DataError("unknown model family: '" + std::string(name) + "'");
}

std::map<std::string, double> default_settings(ModelFamily family, std::uint32_t dimension) {
    switch (family) {
        case ModelFamily::NaiveBayes: return {{"alpha", 1.0}};
        case ModelFamily::Logistic:
            return {{"l2_lambda", 1e-3},
                    {"epochs", 500},
                    {"learning_rate", 1.0},
                    {"tolerance", 1e-5}};
        case ModelFamily::Svm: return {{"l2_lambda", 1e-3}, {"epochs", 30}};
        case ModelFamily::RandomForest:
            return {{"n_trees", 100},
                    {"max_depth", 16},
                    {"mtry", std::ceil(std::sqrt(static_cast<double>(dimension)))},
                    {"min_leaf", 1}};
        case ModelFamily::Gbdt:
            return {{"n_stages", 100}, {"shrinkage", 0.1}, {"max_depth", 3}, {"min_leaf", 5}};
    }
    return {};
}

std::vector<std::map<std::string, double>> default_grid(ModelFamily family,
                                                        std::uint32_t dimension) {
    std::vector<std::map<std::string, double>> grid;
    switch (family) {
        case ModelFamily::NaiveBayes:
            grid.push_back({{"alpha", 1.0}});
            break;
        case ModelFamily::Logistic:
        case ModelFamily::Svm:
            for (double l2 : {1e-4, 1e-3, 1e-2, 1e-1}) grid.push_back({{"l2_lambda", l2}});
            break;
        case ModelFamily::RandomForest:
            for (double depth : {8.0, 16.0})
                grid.push_back({{"n_trees", 100},
                                {"max_depth", depth},
                                {"mtry", std::ceil(std::sqrt(static_cast<double>(dimension)))}});
            break;
        case ModelFamily::Gbdt:
            for (double shrinkage : {0.05, 0.1})
                grid.push_back({{"n_stages", 100}, {"shrinkage", shrinkage}, {"max_depth", 3}});
            break;
    }
    return grid;
}

TrainedModel train_model(ModelFamily family, const Dataset& data,
                         const std::map<std::string, double>& settings, std::uint64_t seed,
                         unsigned threads) {
    std::map<std::string, double> s = default_settings(family, data.dimension);
    for (const auto& [key, value] : settings) {
        if (s.find(key) == s.end())
            throw ContractError(std::string("unknown setting '") + key + "' for " +
                                to_string(family));
        s[key] = value;
    }

    TrainedModel trained;
    trained.family = family;
    trained.metadata.settings = s;
    trained.metadata.seed = seed;
    trained.metadata.dimension = data.dimension;

    switch (family) {
        case ModelFamily::NaiveBayes:
            trained.model = train_naive_bayes(data, s.at("alpha"));
            break;
        case ModelFamily::Logistic:
            trained.model = train_logistic_regression(data, s.at("l2_lambda"),
                                                      static_cast<int>(s.at("epochs")),
                                                      s.at("learning_rate"), s.at("tolerance"));
            break;
        case ModelFamily::Svm:
            trained.model = train_linear_svm(data, s.at("l2_lambda"),
                                             static_cast<int>(s.at("epochs")), seed);
            break;
        case ModelFamily::RandomForest:
            trained.model = train_random_forest(
                data, static_cast<int>(s.at("n_trees")), static_cast<int>(s.at("max_depth")),
                static_cast<int>(s.at("mtry")), static_cast<int>(s.at("min_leaf")), seed, threads);
            break;
        case ModelFamily::Gbdt:
            trained.model =
                train_gbdt(data, static_cast<int>(s.at("n_stages")), s.at("shrinkage"),
                           static_cast<int>(s.at("max_depth")), static_cast<int>(s.at("min_leaf")),
                           seed);
            break;
    }
    return trained;
}

double predict_score(const TrainedModel& model, const SparseVector& x) {
    return std::visit([&x](const auto& m) { return predict_score(m, x); }, model.model);
}

std::vector<double> predict_scores(const TrainedModel& model, const Dataset& data,
                                   unsigned threads) {
    std::vector<double> scores(data.size());
    parallel_for(data.size(), threads,
                 [&](std::size_t i) { scores[i] = predict_score(model, data.vectors[i]); });
    return scores;
}

namespace {

void accumulate_tree_gains(const std::vector<Tree>& trees, std::vector<double>& gain) {
    for (const Tree& tree : trees)
        for (const TreeNode& node : tree.nodes)
            if (node.feature >= 0) gain[static_cast<std::size_t>(node.feature)] += node.gain;
}

}  // namespace

std::vector<ImportanceEntry> feature_importance(const TrainedModel& model, const Vocabulary& vocab,
                                                std::size_t k) {
    if (k < 1) throw ContractError("feature importance: k must be >= 1");
    if (vocab.size() != model.dimension())
        throw ContractError("feature importance: vocabulary size does not match model dimension");
    if (model.family == ModelFamily::NaiveBayes)
        throw UnsupportedError("feature importance is not defined for naive_bayes models");

    std::vector<ImportanceEntry> entries;
    if (const auto* linear = std::get_if<LinearModel>(&model.model)) {
        for (std::size_t j = 0; j < linear->weights.size(); ++j) {
            const double w = linear->weights[j];
            if (w == 0.0) continue;
            entries.push_back({vocab.terms[j], std::abs(w), w > 0.0 ? 1 : -1});
        }
    } else {
        std::vector<double> gain(model.dimension(), 0.0);
        if (const auto* forest = std::get_if<ForestModel>(&model.model))
            accumulate_tree_gains(forest->trees, gain);
        else if (const auto* gbdt = std::get_if<GbdtModel>(&model.model))
            accumulate_tree_gains(gbdt->trees, gain);
        for (std::size_t j = 0; j < gain.size(); ++j)
            if (gain[j] > 0.0) entries.push_back({vocab.terms[j], gain[j], 0});
    }

    std::sort(entries.begin(), entries.end(), [](const ImportanceEntry& a, const ImportanceEntry& b) {
        if (a.importance != b.importance) return a.importance > b.importance;
        return a.term < b.term;
    });
    if (entries.size() > k) entries.resize(k);
    return entries;
}

}  // namespace readmit
