#include <istream>
#include <ostream>

#include "json.hpp"
#include "readmit/classifiers.hpp"
#include "readmit/errors.hpp"

namespace readmit {

namespace {

constexpr int kFormatVersion = 1;

nlohmann::ordered_json tree_to_json(const Tree& tree) {
    nlohmann::ordered_json doc;
    std::vector<std::int32_t> feature, left, right;
    std::vector<double> threshold, value, gain;
    for (const TreeNode& node : tree.nodes) {
        feature.push_back(node.feature);
        threshold.push_back(node.threshold);
        left.push_back(node.left);
        right.push_back(node.right);
        value.push_back(node.value);
        gain.push_back(node.gain);
    }
    doc["feature"] = feature;
    doc["threshold"] = threshold;
    doc["left"] = left;
    doc["right"] = right;
    doc["value"] = value;
    doc["gain"] = gain;
    return doc;
}

Tree tree_from_json(const nlohmann::json& doc, std::uint32_t n_features) {
    auto feature = doc.at("feature").get<std::vector<std::int32_t>>();
    auto threshold = doc.at("threshold").get<std::vector<double>>();
    auto left = doc.at("left").get<std::vector<std::int32_t>>();
    auto right = doc.at("right").get<std::vector<std::int32_t>>();
    auto value = doc.at("value").get<std::vector<double>>();
    auto gain = doc.at("gain").get<std::vector<double>>();
    const std::size_t n = feature.size();
    if (threshold.size() != n || left.size() != n || right.size() != n || value.size() != n ||
        gain.size() != n)
        throw DataError("model file: tree arrays have mismatched lengths");
    if (n == 0) throw DataError("model file: empty tree");

    Tree tree;
    tree.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        TreeNode& node = tree.nodes[i];
        node.feature = feature[i];
        node.threshold = threshold[i];
        node.left = left[i];
        node.right = right[i];
        node.value = value[i];
        node.gain = gain[i];
        if (node.feature >= 0) {
            if (static_cast<std::uint32_t>(node.feature) >= n_features)
                throw DataError("model file: tree references feature index out of range");
            if (node.left < 0 || node.right < 0 || static_cast<std::size_t>(node.left) >= n ||
                static_cast<std::size_t>(node.right) >= n)
                throw DataError("model file: tree child index out of range");
        }
    }
    return tree;
}

}  // namespace

void write_model(std::ostream& out, const TrainedModel& model) {
    nlohmann::ordered_json doc;
    doc["format_version"] = kFormatVersion;
    doc["family"] = to_string(model.family);
    doc["metadata"]["feature_set"] = model.metadata.feature_set;
    doc["metadata"]["settings"] = model.metadata.settings;
    doc["metadata"]["seed"] = model.metadata.seed;
    doc["metadata"]["dimension"] = model.metadata.dimension;

    nlohmann::ordered_json& parameters = doc["parameters"];
    if (const auto* nb = std::get_if<NBModel>(&model.model)) {
        parameters["alpha"] = nb->alpha;
        parameters["log_prior"] = nb->log_prior;
        parameters["log_likelihood_negative"] = nb->log_likelihood[0];
        parameters["log_likelihood_positive"] = nb->log_likelihood[1];
    } else if (const auto* linear = std::get_if<LinearModel>(&model.model)) {
        parameters["weights"] = linear->weights;
        parameters["bias"] = linear->bias;
    } else if (const auto* forest = std::get_if<ForestModel>(&model.model)) {
        parameters["n_features"] = forest->n_features;
        nlohmann::ordered_json trees = nlohmann::ordered_json::array();
        for (const Tree& tree : forest->trees) trees.push_back(tree_to_json(tree));
        parameters["trees"] = std::move(trees);
    } else if (const auto* gbdt = std::get_if<GbdtModel>(&model.model)) {
        parameters["n_features"] = gbdt->n_features;
        parameters["initial_score"] = gbdt->initial_score;
        parameters["shrinkage"] = gbdt->shrinkage;
        nlohmann::ordered_json trees = nlohmann::ordered_json::array();
        for (const Tree& tree : gbdt->trees) trees.push_back(tree_to_json(tree));
        parameters["trees"] = std::move(trees);
    }
    out << doc.dump(2) << '\n';
}

TrainedModel read_model(std::istream& in, const std::string& name) {
    TrainedModel model;
    try {
        nlohmann::json doc = nlohmann::json::parse(in);
        if (doc.at("format_version").get<int>() != kFormatVersion)
            throw DataError(name + ": unsupported model format version");
        model.family = parse_model_family(doc.at("family").get<std::string>());
        const auto& metadata = doc.at("metadata");
        model.metadata.feature_set = metadata.at("feature_set").get<std::string>();
        model.metadata.settings = metadata.at("settings").get<std::map<std::string, double>>();
        model.metadata.seed = metadata.at("seed").get<std::uint64_t>();
        model.metadata.dimension = metadata.at("dimension").get<std::uint32_t>();

        const auto& parameters = doc.at("parameters");
        const std::uint32_t dimension = model.metadata.dimension;
        switch (model.family) {
            case ModelFamily::NaiveBayes: {
                NBModel nb;
                nb.alpha = parameters.at("alpha").get<double>();
                nb.log_prior = parameters.at("log_prior").get<std::array<double, 2>>();
                nb.log_likelihood[0] =
                    parameters.at("log_likelihood_negative").get<std::vector<double>>();
                nb.log_likelihood[1] =
                    parameters.at("log_likelihood_positive").get<std::vector<double>>();
                if (nb.log_likelihood[0].size() != dimension ||
                    nb.log_likelihood[1].size() != dimension)
                    throw DataError(name + ": likelihood table does not match dimension");
                model.model = std::move(nb);
                break;
            }
            case ModelFamily::Logistic:
            case ModelFamily::Svm: {
                LinearModel linear;
                linear.family = model.family;
                linear.weights = parameters.at("weights").get<std::vector<double>>();
                linear.bias = parameters.at("bias").get<double>();
                if (linear.weights.size() != dimension)
                    throw DataError(name + ": weight vector does not match dimension");
                model.model = std::move(linear);
                break;
            }
            case ModelFamily::RandomForest: {
                ForestModel forest;
                forest.n_features = parameters.at("n_features").get<std::uint32_t>();
                if (forest.n_features != dimension)
                    throw DataError(name + ": n_features does not match dimension");
                for (const auto& tree : parameters.at("trees"))
                    forest.trees.push_back(tree_from_json(tree, forest.n_features));
                if (forest.trees.empty()) throw DataError(name + ": forest has no trees");
                model.model = std::move(forest);
                break;
            }
            case ModelFamily::Gbdt: {
                GbdtModel gbdt;
                gbdt.n_features = parameters.at("n_features").get<std::uint32_t>();
                if (gbdt.n_features != dimension)
                    throw DataError(name + ": n_features does not match dimension");
                gbdt.initial_score = parameters.at("initial_score").get<double>();
                gbdt.shrinkage = parameters.at("shrinkage").get<double>();
                for (const auto& tree : parameters.at("trees"))
                    gbdt.trees.push_back(tree_from_json(tree, gbdt.n_features));
                model.model = std::move(gbdt);
                break;
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(name + ": bad model file: " + e.what());
    }
    return model;
}

}  // namespace readmit
