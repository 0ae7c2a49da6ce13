#include <algorithm>
#include <cmath>
#include <set>

#include "readmit/classifiers.hpp"
#include "readmit/errors.hpp"
#include "readmit/parallel.hpp"
#include "readmit/rng.hpp"

namespace readmit {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// column-major (row, value) lists, rows ascending; absent rows hold 0
struct Columns {
    std::vector<std::vector<std::pair<std::uint32_t, double>>> cols;

    explicit Columns(const Dataset& data) : cols(data.dimension) {
        for (std::uint32_t i = 0; i < data.size(); ++i) {
            const SparseVector& x = data.vectors[i];
            for (std::size_t k = 0; k < x.indices.size(); ++k)
                cols[x.indices[k]].emplace_back(i, x.values[k]);
        }
    }
};

// children impurity-mass drop for a binary 0/1 target (Gini)
double gini_gain(double wp, double sp, double wl, double sl) {
    const double wr = wp - wl;
    const double sr = sp - sl;
    auto mass = [](double w, double s) { return w - (s * s + (w - s) * (w - s)) / w; };
    return mass(wp, sp) - mass(wl, sl) - mass(wr, sr);
}

// squared-error drop; the sum-of-squares terms cancel
double sse_gain(double wp, double sp, double wl, double sl) {
    const double wr = wp - wl;
    const double sr = sp - sl;
    return sl * sl / wl + sr * sr / wr - sp * sp / wp;
}

struct BuildConfig {
    int max_depth = 8;
    double min_leaf = 1.0;  // minimum weighted samples per child
    bool gini = true;       // false: squared-error regression
    int mtry = 0;           // 0 = consider every feature
};

class TreeBuilder {
public:
    TreeBuilder(const Columns& columns, std::uint32_t n_features, const BuildConfig& config,
                const std::vector<double>& weight, const std::vector<double>& target,
                const std::vector<double>& hessian, Rng* rng)
        : columns_(columns),
          n_features_(n_features),
          config_(config),
          weight_(weight),
          target_(target),
          hessian_(hessian),
          rng_(rng) {}

    Tree build(std::vector<std::uint32_t> rows) {
        Tree tree;
        build_node(tree, std::move(rows), 0);
        return tree;
    }

private:
    const Columns& columns_;
    std::uint32_t n_features_;
    BuildConfig config_;
    const std::vector<double>& weight_;
    const std::vector<double>& target_;
    const std::vector<double>& hessian_;  // used for Newton leaves; empty for Gini trees
    Rng* rng_;

    double leaf_value(const std::vector<std::uint32_t>& rows, double w, double s) const {
        if (config_.gini) return s / w;  // positive fraction
        double h = 0.0;
        for (std::uint32_t i : rows) h += weight_[i] * hessian_[i];
        return s / std::max(h, 1e-12);  // single Newton step
    }

    std::vector<std::uint32_t> candidate_features() const {
        if (config_.mtry <= 0 || static_cast<std::uint32_t>(config_.mtry) >= n_features_) {
            std::vector<std::uint32_t> all(n_features_);
            for (std::uint32_t j = 0; j < n_features_; ++j) all[j] = j;
            return all;
        }
        std::set<std::uint32_t> picked;
        while (picked.size() < static_cast<std::size_t>(config_.mtry))
            picked.insert(static_cast<std::uint32_t>(rng_->bounded(n_features_)));
        return {picked.begin(), picked.end()};
    }

    struct Split {
        double gain = 0.0;
        std::uint32_t feature = 0;
        double threshold = 0.0;
        bool found = false;
    };

    // best threshold for one feature; rows and the column are both
    // row-ascending, so a single merge pass collects the present values
    void best_split_for_feature(std::uint32_t j, const std::vector<std::uint32_t>& rows, double wp,
                                double sp, Split& best) const {
        struct Group {
            double value, weight, sum;
        };
        std::vector<Group> groups;
        double w_present = 0.0, s_present = 0.0;
        const auto& col = columns_.cols[j];
        std::size_t c = 0;
        for (std::uint32_t row : rows) {
            while (c < col.size() && col[c].first < row) ++c;
            if (c < col.size() && col[c].first == row) {
                const double w = weight_[row];
                const double s = w * target_[row];
                groups.push_back({col[c].second, w, s});
                w_present += w;
                s_present += s;
            }
        }
        if (wp - w_present > 0.0) groups.push_back({0.0, wp - w_present, sp - s_present});
        std::sort(groups.begin(), groups.end(),
                  [](const Group& a, const Group& b) { return a.value < b.value; });

        // merge equal values in place
        std::size_t out = 0;
        for (std::size_t k = 0; k < groups.size(); ++k) {
            if (out > 0 && groups[out - 1].value == groups[k].value) {
                groups[out - 1].weight += groups[k].weight;
                groups[out - 1].sum += groups[k].sum;
            } else {
                groups[out++] = groups[k];
            }
        }
        groups.resize(out);
        if (groups.size() < 2) return;

        double wl = 0.0, sl = 0.0;
        for (std::size_t k = 0; k + 1 < groups.size(); ++k) {
            wl += groups[k].weight;
            sl += groups[k].sum;
            if (wl < config_.min_leaf || wp - wl < config_.min_leaf) continue;
            const double gain =
                config_.gini ? gini_gain(wp, sp, wl, sl) : sse_gain(wp, sp, wl, sl);
            if (!best.found || gain > best.gain) {
                best = {gain, j, (groups[k].value + groups[k + 1].value) / 2.0, true};
            }
        }
    }

    std::int32_t build_node(Tree& tree, std::vector<std::uint32_t> rows, int depth) {
        double w = 0.0, s = 0.0;
        for (std::uint32_t i : rows) {
            w += weight_[i];
            s += weight_[i] * target_[i];
        }

        const auto index = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.push_back(TreeNode{});
        tree.nodes[index].value = leaf_value(rows, w, s);

        const bool pure = config_.gini && (s == 0.0 || s == w);
        if (depth >= config_.max_depth || pure || w < 2.0 * config_.min_leaf) return index;

        Split best;
        for (std::uint32_t j : candidate_features()) {
            Split candidate;
            best_split_for_feature(j, rows, w, s, candidate);
            if (candidate.found && (!best.found || candidate.gain > best.gain)) best = candidate;
        }
        if (!best.found || best.gain <= 1e-12) return index;

        std::vector<std::uint32_t> left_rows, right_rows;
        const auto& col = columns_.cols[best.feature];
        std::size_t c = 0;
        for (std::uint32_t row : rows) {
            while (c < col.size() && col[c].first < row) ++c;
            const double value = (c < col.size() && col[c].first == row) ? col[c].second : 0.0;
            (value <= best.threshold ? left_rows : right_rows).push_back(row);
        }
        rows.clear();
        rows.shrink_to_fit();

        tree.nodes[index].feature = static_cast<std::int32_t>(best.feature);
        tree.nodes[index].threshold = best.threshold;
        tree.nodes[index].gain = best.gain;
        const std::int32_t left = build_node(tree, std::move(left_rows), depth + 1);
        tree.nodes[index].left = left;
        const std::int32_t right = build_node(tree, std::move(right_rows), depth + 1);
        tree.nodes[index].right = right;
        return index;
    }
};

double feature_value(const SparseVector& x, std::uint32_t j) {
    auto it = std::lower_bound(x.indices.begin(), x.indices.end(), j);
    if (it == x.indices.end() || *it != j) return 0.0;
    return x.values[static_cast<std::size_t>(it - x.indices.begin())];
}

}  // namespace

double Tree::predict(const SparseVector& x) const {
    std::int32_t node = 0;
    while (nodes[node].feature >= 0) {
        const double value = feature_value(x, static_cast<std::uint32_t>(nodes[node].feature));
        node = value <= nodes[node].threshold ? nodes[node].left : nodes[node].right;
    }
    return nodes[node].value;
}

ForestModel train_random_forest(const Dataset& data, int n_trees, int max_depth, int mtry,
                                int min_leaf, std::uint64_t seed, unsigned threads) {
    data.validate();
    const std::size_t n = data.size();
    if (n == 0) throw TrainingError("random forest: empty training data");
    if (n_trees < 1) throw ContractError("random forest: n_trees must be >= 1");
    if (max_depth < 1) throw ContractError("random forest: max_depth must be >= 1");
    if (mtry < 1 || static_cast<std::uint32_t>(mtry) > data.dimension)
        throw ContractError("random forest: mtry must be within [1, dimension]");
    if (min_leaf < 1) throw ContractError("random forest: min_leaf must be >= 1");
    if (static_cast<std::size_t>(min_leaf) >= n)
        throw TrainingError("random forest: min_leaf must be smaller than the training size");

    const Columns columns(data);
    std::vector<double> target(n);
    for (std::size_t i = 0; i < n; ++i) target[i] = data.labels[i];

    ForestModel model;
    model.n_features = data.dimension;
    model.trees.resize(static_cast<std::size_t>(n_trees));

    parallel_for(static_cast<std::size_t>(n_trees), threads, [&](std::size_t t) {
        Rng rng(unit_seed(seed, t));
        std::vector<double> weight(n, 0.0);
        for (std::size_t d = 0; d < n; ++d) weight[rng.bounded(n)] += 1.0;
        std::vector<std::uint32_t> rows;
        rows.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i)
            if (weight[i] > 0.0) rows.push_back(i);

        BuildConfig config;
        config.max_depth = max_depth;
        config.min_leaf = static_cast<double>(min_leaf);
        config.gini = true;
        config.mtry = mtry;
        TreeBuilder builder(columns, data.dimension, config, weight, target, {}, &rng);
        model.trees[t] = builder.build(std::move(rows));
    });
    return model;
}

GbdtModel train_gbdt(const Dataset& data, int n_stages, double shrinkage, int max_depth,
                     int min_leaf, std::uint64_t seed) {
    data.validate();
    const std::size_t n = data.size();
    const std::size_t positives = data.positives();
    if (n == 0 || positives == 0 || positives == n)
        throw TrainingError("gbdt: training data must contain both classes");
    if (n_stages < 0) throw ContractError("gbdt: n_stages must be >= 0");
    if (shrinkage <= 0.0 || shrinkage > 1.0) throw ContractError("gbdt: shrinkage must be in (0, 1]");
    if (max_depth < 1) throw ContractError("gbdt: max_depth must be >= 1");
    if (min_leaf < 1) throw ContractError("gbdt: min_leaf must be >= 1");
    (void)seed;  // recorded in metadata; the fit itself is deterministic

    const double p = static_cast<double>(positives) / static_cast<double>(n);
    GbdtModel model;
    model.n_features = data.dimension;
    model.shrinkage = shrinkage;
    model.initial_score = std::log(p / (1.0 - p));

    const Columns columns(data);
    const std::vector<double> weight(n, 1.0);
    std::vector<double> score(n, model.initial_score);
    std::vector<double> residual(n), hessian(n);
    std::vector<std::uint32_t> all_rows(n);
    for (std::uint32_t i = 0; i < n; ++i) all_rows[i] = i;

    BuildConfig config;
    config.max_depth = max_depth;
    config.min_leaf = static_cast<double>(min_leaf);
    config.gini = false;
    config.mtry = 0;

    for (int stage = 0; stage < n_stages; ++stage) {
        for (std::size_t i = 0; i < n; ++i) {
            const double prob = sigmoid(score[i]);
            residual[i] = static_cast<double>(data.labels[i]) - prob;
            hessian[i] = prob * (1.0 - prob);
        }
        TreeBuilder builder(columns, data.dimension, config, weight, residual, hessian, nullptr);
        Tree tree = builder.build(all_rows);
        for (std::size_t i = 0; i < n; ++i) {
            score[i] += shrinkage * tree.predict(data.vectors[i]);
            if (!std::isfinite(score[i]))
                throw TrainingError("gbdt: non-finite score at stage " + std::to_string(stage));
        }
        model.trees.push_back(std::move(tree));
    }
    return model;
}

double predict_score(const ForestModel& model, const SparseVector& x) {
    if (x.dimension != model.n_features) throw ContractError("random forest: input dimension mismatch");
    double sum = 0.0;
    for (const Tree& tree : model.trees) sum += tree.predict(x);
    return sum / static_cast<double>(model.trees.size());
}

double predict_score(const GbdtModel& model, const SparseVector& x) {
    if (x.dimension != model.n_features) throw ContractError("gbdt: input dimension mismatch");
    double score = model.initial_score;
    for (const Tree& tree : model.trees) score += model.shrinkage * tree.predict(x);
    return score;
}

}  // namespace readmit
