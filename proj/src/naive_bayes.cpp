#include <cmath>

#include "readmit/classifiers.hpp"
#include "readmit/errors.hpp"

namespace readmit {

NBModel train_naive_bayes(const Dataset& data, double alpha) {
    if (alpha <= 0.0) throw ContractError("naive bayes: alpha must be positive");
    data.validate();
    const std::size_t n = data.size();
    const std::size_t positives = data.positives();
    if (n == 0 || positives == 0 || positives == n)
        throw TrainingError("naive bayes: training data must contain both classes");

    const auto dimension = data.dimension;
    NBModel model;
    model.alpha = alpha;
    model.log_prior[0] = std::log(static_cast<double>(n - positives) / static_cast<double>(n));
    model.log_prior[1] = std::log(static_cast<double>(positives) / static_cast<double>(n));

    std::array<std::vector<double>, 2> mass;
    mass[0].assign(dimension, 0.0);
    mass[1].assign(dimension, 0.0);
    std::array<double, 2> total{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const int c = data.labels[i];
        const SparseVector& x = data.vectors[i];
        for (std::size_t k = 0; k < x.indices.size(); ++k) {
            mass[c][x.indices[k]] += x.values[k];
            total[c] += x.values[k];
        }
    }

    for (int c = 0; c < 2; ++c) {
        model.log_likelihood[c].resize(dimension);
        const double denominator = std::log(alpha * static_cast<double>(dimension) + total[c]);
        for (std::uint32_t j = 0; j < dimension; ++j)
            model.log_likelihood[c][j] = std::log(alpha + mass[c][j]) - denominator;
    }
    return model;
}

double predict_score(const NBModel& model, const SparseVector& x) {
    if (x.dimension != model.dimension())
        throw ContractError("naive bayes: input dimension mismatch");
    double margin = model.log_prior[1] - model.log_prior[0];
    for (std::size_t k = 0; k < x.indices.size(); ++k)
        margin += x.values[k] *
                  (model.log_likelihood[1][x.indices[k]] - model.log_likelihood[0][x.indices[k]]);
    return margin;
}

}  // namespace readmit
