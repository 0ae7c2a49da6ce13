#include <algorithm>
#include <cmath>
#include <numeric>

#include "readmit/classifiers.hpp"
#include "readmit/errors.hpp"
#include "readmit/rng.hpp"

namespace readmit {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// ln(1 + e^z), stable for large |z|
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

void require_two_classes(const Dataset& data, const char* who) {
    const std::size_t positives = data.positives();
    if (data.size() == 0 || positives == 0 || positives == data.size())
        throw TrainingError(std::string(who) + ": training data must contain both classes");
}

}  // namespace

double logistic_objective(const Dataset& data, const std::vector<double>& weights, double bias,
                          double l2_lambda) {
    const double n = static_cast<double>(data.size());
    double loss = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double z = data.vectors[i].dot(weights) + bias;
        // log-loss: softplus(z) - y*z
        loss += softplus(z) - (data.labels[i] ? z : 0.0);
    }
    loss /= n;
    double reg = 0.0;
    for (double w : weights) reg += w * w;
    return loss + 0.5 * l2_lambda * reg;
}

LogisticGradient logistic_gradient(const Dataset& data, const std::vector<double>& weights,
                                   double bias, double l2_lambda) {
    const double inv_n = 1.0 / static_cast<double>(data.size());
    LogisticGradient grad;
    grad.weights.assign(weights.size(), 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const SparseVector& x = data.vectors[i];
        const double residual = sigmoid(x.dot(weights) + bias) - static_cast<double>(data.labels[i]);
        for (std::size_t k = 0; k < x.indices.size(); ++k)
            grad.weights[x.indices[k]] += residual * x.values[k];
        grad.bias += residual;
    }
    for (std::size_t j = 0; j < weights.size(); ++j)
        grad.weights[j] = grad.weights[j] * inv_n + l2_lambda * weights[j];
    grad.bias *= inv_n;
    return grad;
}

LinearModel train_logistic_regression(const Dataset& data, double l2_lambda, int epochs,
                                      double learning_rate, double tolerance) {
    if (l2_lambda < 0.0) throw ContractError("logistic regression: l2_lambda must be >= 0");
    if (epochs < 1) throw ContractError("logistic regression: epochs must be >= 1");
    data.validate();
    require_two_classes(data, "logistic regression");

    LinearModel model;
    model.family = ModelFamily::Logistic;
    model.weights.assign(data.dimension, 0.0);
    model.bias = 0.0;

    for (int epoch = 0; epoch < epochs; ++epoch) {
        LogisticGradient grad = logistic_gradient(data, model.weights, model.bias, l2_lambda);
        double inf_norm = std::abs(grad.bias);
        for (double g : grad.weights) inf_norm = std::max(inf_norm, std::abs(g));
        if (!std::isfinite(inf_norm))
            throw TrainingError("logistic regression: non-finite gradient at epoch " +
                                std::to_string(epoch));
        if (inf_norm < tolerance) break;
        for (std::size_t j = 0; j < model.weights.size(); ++j)
            model.weights[j] -= learning_rate * grad.weights[j];
        model.bias -= learning_rate * grad.bias;
    }

    for (double w : model.weights)
        if (!std::isfinite(w)) throw TrainingError("logistic regression: non-finite weights");
    return model;
}

LinearModel train_linear_svm(const Dataset& data, double l2_lambda, int epochs, std::uint64_t seed) {
    if (l2_lambda <= 0.0) throw ContractError("linear svm: l2_lambda must be positive");
    if (epochs < 1) throw ContractError("linear svm: epochs must be >= 1");
    data.validate();
    require_two_classes(data, "linear svm");

    // w is kept as scale * v so the per-step shrink is O(1)
    std::vector<double> v(data.dimension, 0.0);
    double scale = 1.0;
    double bias = 0.0;

    std::vector<std::uint32_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);

    std::uint64_t t = 0;
    for (int epoch = 0; epoch < epochs; ++epoch) {
        rng.shuffle(order);
        for (std::uint32_t i : order) {
            ++t;
            const double eta = 1.0 / (l2_lambda * static_cast<double>(t));
            const SparseVector& x = data.vectors[i];
            const double y = data.labels[i] ? 1.0 : -1.0;
            const double margin = y * (scale * x.dot(v) + bias);
            scale *= 1.0 - eta * l2_lambda;  // = (t-1)/t; zero on the very first step
            if (scale <= 0.0) {
                std::fill(v.begin(), v.end(), 0.0);
                scale = 1.0;
            } else if (scale < 1e-9) {
                for (double& w : v) w *= scale;
                scale = 1.0;
            }
            if (margin < 1.0) {
                const double step = eta * y / scale;
                for (std::size_t k = 0; k < x.indices.size(); ++k)
                    v[x.indices[k]] += step * x.values[k];
                bias += eta * y;
            }
        }
    }

    LinearModel model;
    model.family = ModelFamily::Svm;
    model.weights.resize(data.dimension);
    for (std::size_t j = 0; j < v.size(); ++j) model.weights[j] = scale * v[j];
    model.bias = bias;
    for (double w : model.weights)
        if (!std::isfinite(w)) throw TrainingError("linear svm: non-finite weights");
    return model;
}

double predict_score(const LinearModel& model, const SparseVector& x) {
    if (x.dimension != model.dimension())
        throw ContractError("linear model: input dimension mismatch");
    return x.dot(model.weights) + model.bias;
}

}  // namespace readmit
