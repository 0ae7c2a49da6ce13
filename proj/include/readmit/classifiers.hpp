#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "readmit/sparse.hpp"
#include "readmit/text_features.hpp"

namespace readmit {

enum class ModelFamily { NaiveBayes, Logistic, Svm, RandomForest, Gbdt };

const char* to_string(ModelFamily family);
ModelFamily parse_model_family(std::string_view name);

/// Multinomial Naive Bayes over tf-idf mass treated as fractional counts.
struct NBModel {
    std::array<double, 2> log_prior{};                    // [negative, positive]
    std::array<std::vector<double>, 2> log_likelihood{};  // per class, per feature
    double alpha = 1.0;

    std::uint32_t dimension() const { return static_cast<std::uint32_t>(log_likelihood[0].size()); }
};

struct LinearModel {
    std::vector<double> weights;
    double bias = 0.0;
    ModelFamily family = ModelFamily::Logistic;  // Logistic or Svm

    std::uint32_t dimension() const { return static_cast<std::uint32_t>(weights.size()); }
};

/// Flattened binary tree. Node 0 is the root; leaves have feature == -1.
struct TreeNode {
    std::int32_t feature = -1;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double value = 0.0;  // leaf prediction
    double gain = 0.0;   // impurity/loss reduction of the split (internal nodes)
};

struct Tree {
    std::vector<TreeNode> nodes;

    /// x goes left when x[feature] <= threshold.
    double predict(const SparseVector& x) const;
};

struct ForestModel {
    std::vector<Tree> trees;
    std::uint32_t n_features = 0;
};

struct GbdtModel {
    double initial_score = 0.0;
    double shrinkage = 0.1;
    std::vector<Tree> trees;
    std::uint32_t n_features = 0;
};

struct ModelMetadata {
    std::string feature_set;
    std::map<std::string, double> settings;
    std::uint64_t seed = 0;
    std::uint32_t dimension = 0;
};

struct TrainedModel {
    ModelFamily family = ModelFamily::Logistic;
    ModelMetadata metadata;
    std::variant<NBModel, LinearModel, ForestModel, GbdtModel> model;

    std::uint32_t dimension() const { return metadata.dimension; }
};

/// log_likelihood(c, j) = ln((alpha + mass of feature j in class c) /
/// (alpha * D + total mass in class c)); priors from class counts.
NBModel train_naive_bayes(const Dataset& data, double alpha = 1.0);

/// Full-batch gradient descent on mean log-loss + (l2_lambda/2)*||w||^2,
/// bias unregularized. Stops when the gradient's infinity norm drops below
/// `tolerance` or after `epochs` passes.
LinearModel train_logistic_regression(const Dataset& data, double l2_lambda, int epochs,
                                      double learning_rate, double tolerance);

/// Objective and gradient of the logistic training problem at (weights,
/// bias); exposed so tests can check the gradient against finite differences.
double logistic_objective(const Dataset& data, const std::vector<double>& weights, double bias,
                          double l2_lambda);
struct LogisticGradient {
    std::vector<double> weights;
    double bias = 0.0;
};
LogisticGradient logistic_gradient(const Dataset& data, const std::vector<double>& weights,
                                   double bias, double l2_lambda);

/// Pegasos stochastic subgradient descent on hinge loss +
/// (l2_lambda/2)*||w||^2, step size 1/(l2_lambda * t), seeded epoch
/// shuffles, unregularized bias.
LinearModel train_linear_svm(const Dataset& data, double l2_lambda, int epochs, std::uint64_t seed);

/// Bootstrap-aggregated Gini trees: each tree sees n draws with replacement
/// and `mtry` features sampled without replacement per node; leaves hold the
/// positive fraction. Tree t uses the random stream seeded with seed + t, so
/// the forest is identical for any thread count.
ForestModel train_random_forest(const Dataset& data, int n_trees, int max_depth, int mtry,
                                int min_leaf, std::uint64_t seed, unsigned threads = 1);

/// Binomial-deviance boosting: initial_score is the class log-odds, each
/// stage fits a squared-error regression tree to residuals
/// (label - sigmoid(score)) with single-Newton-step leaf values, and scores
/// advance by shrinkage * tree output.
GbdtModel train_gbdt(const Dataset& data, int n_stages, double shrinkage, int max_depth,
                     int min_leaf, std::uint64_t seed);

double predict_score(const NBModel& model, const SparseVector& x);
double predict_score(const LinearModel& model, const SparseVector& x);
double predict_score(const ForestModel& model, const SparseVector& x);
double predict_score(const GbdtModel& model, const SparseVector& x);

/// Family-independent ranking score: linear models return w.x + b, NB the
/// log-posterior margin, forests the mean leaf fraction, GBDT accumulated
/// log-odds. Throws ContractError on dimension mismatch.
double predict_score(const TrainedModel& model, const SparseVector& x);
std::vector<double> predict_scores(const TrainedModel& model, const Dataset& data,
                                   unsigned threads = 1);

/// Uniform training entry: dispatches on family, reading hyperparameters
/// from `settings` (missing keys fall back to default_settings). The
/// returned metadata records the effective settings, seed, and dimension.
TrainedModel train_model(ModelFamily family, const Dataset& data,
                         const std::map<std::string, double>& settings, std::uint64_t seed,
                         unsigned threads = 1);

std::map<std::string, double> default_settings(ModelFamily family, std::uint32_t dimension);

/// Hyperparameter grid searched by the evaluation layer, in tie-break order.
std::vector<std::map<std::string, double>> default_grid(ModelFamily family,
                                                        std::uint32_t dimension);

struct ImportanceEntry {
    std::string term;
    double importance = 0.0;
    int sign = 0;  // weight sign for linear models, 0 for tree ensembles
};

/// Top-k features: |weight| for linear models, summed split gain for tree
/// ensembles; zero-importance features are omitted, ties broken by term.
/// Naive Bayes is rejected with UnsupportedError.
std::vector<ImportanceEntry> feature_importance(const TrainedModel& model, const Vocabulary& vocab,
                                                std::size_t k = 20);

/// Versioned JSON persistence; deserialize(serialize(m)) scores bit-equally.
void write_model(std::ostream& out, const TrainedModel& model);
TrainedModel read_model(std::istream& in, const std::string& name);

}  // namespace readmit
