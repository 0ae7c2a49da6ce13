#pragma once

#include <vector>

#include "readmit/rng.hpp"
#include "readmit/sparse.hpp"

namespace testutil {

/// Random sparse dataset with labels independent of features unless the
/// caller plants structure afterwards. Both classes are guaranteed.
inline readmit::Dataset random_dataset(std::uint64_t seed, std::size_t n, std::uint32_t dim,
                                       double density, double positive_rate = 0.5) {
    readmit::Rng rng(seed);
    readmit::Dataset data;
    data.dimension = dim;
    for (std::size_t i = 0; i < n; ++i) {
        readmit::SparseVector x;
        x.dimension = dim;
        for (std::uint32_t j = 0; j < dim; ++j) {
            if (rng.uniform() < density) {
                x.indices.push_back(j);
                x.values.push_back(0.1 + rng.uniform());
            }
        }
        data.vectors.push_back(std::move(x));
        data.labels.push_back(rng.uniform() < positive_rate ? 1 : 0);
    }
    data.labels[0] = 0;
    data.labels[n - 1] = 1;
    return data;
}

/// Dataset where the first n_signal features fire far more often for
/// positives; remaining features are noise shared by both classes.
inline readmit::Dataset planted_dataset(std::uint64_t seed, std::size_t n, std::uint32_t dim,
                                        std::uint32_t n_signal, double positive_rate = 0.4) {
    readmit::Rng rng(seed);
    readmit::Dataset data;
    data.dimension = dim;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint8_t label = rng.uniform() < positive_rate ? 1 : 0;
        readmit::SparseVector x;
        x.dimension = dim;
        for (std::uint32_t j = 0; j < dim; ++j) {
            double p = j < n_signal ? (label ? 0.7 : 0.1) : 0.15;
            if (rng.uniform() < p) {
                x.indices.push_back(j);
                x.values.push_back(0.3 + rng.uniform());
            }
        }
        data.vectors.push_back(std::move(x));
        data.labels.push_back(label);
    }
    data.labels[0] = 0;
    data.labels[n - 1] = 1;
    return data;
}

/// Four points linearly separable by w = (1, -1).
inline readmit::Dataset separable_four() {
    readmit::Dataset data;
    data.dimension = 2;
    data.vectors.push_back({{0}, {1.0}, 2});
    data.vectors.push_back({{0, 1}, {0.9, 0.1}, 2});
    data.vectors.push_back({{1}, {1.0}, 2});
    data.vectors.push_back({{0, 1}, {0.1, 0.9}, 2});
    data.labels = {1, 1, 0, 0};
    return data;
}

}  // namespace testutil
