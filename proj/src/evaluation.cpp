#include "readmit/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <utility>

#include "json.hpp"
#include "readmit/errors.hpp"
#include "readmit/parallel.hpp"
#include "readmit/rng.hpp"

namespace readmit {
namespace {

// Distance between seed streams handed to sibling work units. Forest training
// consumes unit_seed(seed, t) for each of its trees, so sibling units must sit
// farther apart than any tree count used during tuning.
constexpr std::uint64_t kUnitSeedStride = 1u << 10;
constexpr std::uint64_t kConfigSeedStride = 1u << 20;

std::array<std::vector<std::uint32_t>, 2> indices_by_class(
    const std::vector<std::uint8_t>& labels) {
    std::array<std::vector<std::uint32_t>, 2> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] > 1) {
            throw ContractError("labels must be 0 or 1");
        }
        by_class[labels[i]].push_back(static_cast<std::uint32_t>(i));
    }
    return by_class;
}

double mean_of(const std::vector<double>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) {
        return 0.0;
    }
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

SplitPlan stratified_split(const std::vector<std::uint8_t>& labels, double ratio,
                           std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw ContractError("split ratio must lie strictly between 0 and 1");
    }
    auto by_class = indices_by_class(labels);
    for (int c = 0; c < 2; ++c) {
        if (by_class[c].size() < 2) {
            throw EvalError("stratified split needs at least 2 members of class " +
                            std::to_string(c) + ", got " + std::to_string(by_class[c].size()));
        }
    }
    SplitPlan plan;
    plan.seed = seed;
    plan.ratio = ratio;
    Rng rng(seed);
    for (int c = 0; c < 2; ++c) {
        auto& members = by_class[c];
        rng.shuffle(members);
        auto n_train = static_cast<std::size_t>(
            std::llround(ratio * static_cast<double>(members.size())));
        plan.train_indices.insert(plan.train_indices.end(), members.begin(),
                                  members.begin() + static_cast<std::ptrdiff_t>(n_train));
        plan.test_indices.insert(plan.test_indices.end(),
                                 members.begin() + static_cast<std::ptrdiff_t>(n_train),
                                 members.end());
    }
    std::sort(plan.train_indices.begin(), plan.train_indices.end());
    std::sort(plan.test_indices.begin(), plan.test_indices.end());
    return plan;
}

FoldPlan stratified_kfold(const std::vector<std::uint8_t>& labels, int k, std::uint64_t seed) {
    if (k < 2) {
        throw ContractError("fold count must be at least 2");
    }
    auto by_class = indices_by_class(labels);
    for (int c = 0; c < 2; ++c) {
        if (by_class[c].size() < static_cast<std::size_t>(k)) {
            throw EvalError("class " + std::to_string(c) + " has " +
                            std::to_string(by_class[c].size()) + " members, fewer than " +
                            std::to_string(k) + " folds");
        }
    }
    FoldPlan plan;
    plan.seed = seed;
    plan.validation.resize(static_cast<std::size_t>(k));
    Rng rng(seed);
    for (int c = 0; c < 2; ++c) {
        auto& members = by_class[c];
        rng.shuffle(members);
        for (std::size_t i = 0; i < members.size(); ++i) {
            plan.validation[i % static_cast<std::size_t>(k)].push_back(members[i]);
        }
    }
    for (auto& fold : plan.validation) {
        std::sort(fold.begin(), fold.end());
    }
    return plan;
}

double roc_auc(const std::vector<double>& scores, const std::vector<std::uint8_t>& labels) {
    if (scores.size() != labels.size()) {
        throw ContractError("scores and labels differ in length");
    }
    for (double s : scores) {
        if (!std::isfinite(s)) {
            throw ContractError("scores must be finite");
        }
    }
    auto by_class = indices_by_class(labels);
    const auto negatives = static_cast<double>(by_class[0].size());
    const auto positives = static_cast<double>(by_class[1].size());
    if (by_class[0].empty() || by_class[1].empty()) {
        throw EvalError("AUC undefined: labels contain a single class");
    }
    std::vector<std::uint32_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return scores[a] < scores[b]; });
    double positive_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        std::size_t group_positives = 0;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            group_positives += labels[order[j]];
            ++j;
        }
        // 1-based ranks i+1 .. j share the average rank.
        const double avg_rank = static_cast<double>(i + 1 + j) / 2.0;
        positive_rank_sum += avg_rank * static_cast<double>(group_positives);
        i = j;
    }
    const double min_rank_sum = positives * (positives + 1.0) / 2.0;
    return (positive_rank_sum - min_rank_sum) / (positives * negatives);
}

std::vector<RocPoint> roc_curve(const std::vector<double>& scores,
                                const std::vector<std::uint8_t>& labels) {
    if (scores.size() != labels.size()) {
        throw ContractError("scores and labels differ in length");
    }
    for (double s : scores) {
        if (!std::isfinite(s)) {
            throw ContractError("scores must be finite");
        }
    }
    auto by_class = indices_by_class(labels);
    const auto negatives = static_cast<double>(by_class[0].size());
    const auto positives = static_cast<double>(by_class[1].size());
    if (by_class[0].empty() || by_class[1].empty()) {
        throw EvalError("ROC undefined: labels contain a single class");
    }
    std::vector<std::uint32_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return scores[a] > scores[b]; });
    std::vector<RocPoint> curve;
    curve.push_back({0.0, 0.0});
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        std::size_t group_positives = 0;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            group_positives += labels[order[j]];
            ++j;
        }
        tp += group_positives;
        fp += (j - i) - group_positives;
        curve.push_back({static_cast<double>(fp) / negatives, static_cast<double>(tp) / positives});
        i = j;
    }
    return curve;
}

double trapezoid_area(const std::vector<RocPoint>& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        area += (curve[i].fpr - curve[i - 1].fpr) * (curve[i].tpr + curve[i - 1].tpr) / 2.0;
    }
    return area;
}

GridSearchResult grid_search(const Dataset& train, ModelFamily family,
                             const std::vector<std::map<std::string, double>>& grid, int k,
                             std::uint64_t seed, unsigned threads) {
    if (grid.empty()) {
        throw ContractError("parameter grid is empty");
    }
    const FoldPlan folds = stratified_kfold(train.labels, k, seed);
    const auto n_points = grid.size();
    const auto n_units = n_points * folds.validation.size();

    struct UnitOutcome {
        double auc = 0.0;
        bool failed = false;
        std::string error;
    };
    std::vector<UnitOutcome> outcomes(n_units);

    std::vector<std::vector<std::uint32_t>> fold_train(folds.validation.size());
    for (std::size_t f = 0; f < folds.validation.size(); ++f) {
        const auto& held_out = folds.validation[f];
        for (std::uint32_t idx = 0; idx < train.size(); ++idx) {
            if (!std::binary_search(held_out.begin(), held_out.end(), idx)) {
                fold_train[f].push_back(idx);
            }
        }
    }

    parallel_for(n_units, threads, [&](std::size_t u) {
        const std::size_t p = u / folds.validation.size();
        const std::size_t f = u % folds.validation.size();
        try {
            Dataset fit = subset(train, fold_train[f]);
            Dataset held = subset(train, folds.validation[f]);
            TrainedModel model =
                train_model(family, fit, grid[p], unit_seed(seed, u * kUnitSeedStride), 1);
            outcomes[u].auc = roc_auc(predict_scores(model, held, 1), held.labels);
        } catch (const TrainingError& e) {
            outcomes[u].failed = true;
            outcomes[u].error = e.what();
        } catch (const EvalError& e) {
            outcomes[u].failed = true;
            outcomes[u].error = e.what();
        }
    });

    GridSearchResult result;
    result.points.resize(n_points);
    std::size_t best = n_points;
    for (std::size_t p = 0; p < n_points; ++p) {
        auto& point = result.points[p];
        point.params = grid[p];
        std::vector<double> fold_aucs;
        for (std::size_t f = 0; f < folds.validation.size(); ++f) {
            const auto& outcome = outcomes[p * folds.validation.size() + f];
            if (outcome.failed) {
                point.failed = true;
                if (point.error.empty()) {
                    point.error = "fold " + std::to_string(f) + ": " + outcome.error;
                }
            } else {
                fold_aucs.push_back(outcome.auc);
            }
        }
        if (point.failed) {
            continue;
        }
        point.auc_mean = mean_of(fold_aucs);
        point.auc_sd = sample_sd(fold_aucs, point.auc_mean);
        if (best == n_points || point.auc_mean > result.points[best].auc_mean) {
            best = p;
        }
    }
    if (best == n_points) {
        throw EvalError("every grid point failed; first error: " + result.points[0].error);
    }
    result.best_params = result.points[best].params;
    result.cv_auc_mean = result.points[best].auc_mean;
    result.cv_auc_sd = result.points[best].auc_sd;
    result.model = train_model(family, train, result.best_params, seed, threads);
    return result;
}

std::vector<ModelFamily> full_roster() {
    return {ModelFamily::NaiveBayes, ModelFamily::Svm, ModelFamily::Logistic,
            ModelFamily::RandomForest, ModelFamily::Gbdt};
}

EvalReport evaluate_matrix(
    const std::map<std::string, Dataset>& feature_sets, const std::vector<ModelFamily>& roster,
    std::uint64_t seed, double ratio, int k, unsigned threads,
    const std::map<ModelFamily, std::vector<std::map<std::string, double>>>& grids) {
    if (feature_sets.empty()) {
        throw ContractError("no feature sets given");
    }
    if (roster.empty()) {
        throw ContractError("empty classifier roster");
    }
    const Dataset& first = feature_sets.begin()->second;
    for (const auto& [name, data] : feature_sets) {
        data.validate();
        if (data.labels != first.labels) {
            throw ContractError("feature set '" + name + "' disagrees on labels or row order");
        }
    }

    EvalReport report;
    report.seed = seed;
    report.ratio = ratio;
    report.folds = k;
    for (const auto& [name, data] : feature_sets) {
        report.feature_sets.push_back(name);
    }

    const SplitPlan split = stratified_split(first.labels, ratio, seed);

    std::size_t config = 0;
    for (ModelFamily family : roster) {
        for (const auto& [set_name, data] : feature_sets) {
            ConfigResult row;
            row.classifier = to_string(family);
            row.feature_set = set_name;
            const std::uint64_t config_seed = unit_seed(seed, config * kConfigSeedStride);
            try {
                Dataset train = subset(data, split.train_indices);
                Dataset test = subset(data, split.test_indices);
                auto it = grids.find(family);
                const auto grid =
                    it != grids.end() ? it->second : default_grid(family, data.dimension);
                GridSearchResult search =
                    grid_search(train, family, grid, k, config_seed, threads);
                row.best_params = search.best_params;
                row.cv_auc_mean = search.cv_auc_mean;
                row.cv_auc_sd = search.cv_auc_sd;
                auto test_scores = predict_scores(search.model, test, threads);
                row.test_auc = roc_auc(test_scores, test.labels);
                row.roc = roc_curve(test_scores, test.labels);
                row.model = std::move(search.model);
            } catch (const TrainingError& e) {
                row.failed = true;
                row.error = e.what();
            } catch (const EvalError& e) {
                row.failed = true;
                row.error = e.what();
            }
            report.rows.push_back(std::move(row));
            ++config;
        }
    }
    return report;
}

void write_report_json(std::ostream& out, const EvalReport& report) {
    nlohmann::ordered_json doc;
    doc["type"] = "evaluation_report";
    doc["seed"] = report.seed;
    doc["split_ratio"] = report.ratio;
    doc["cv_folds"] = report.folds;
    doc["feature_sets"] = report.feature_sets;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json entry;
        entry["classifier"] = row.classifier;
        entry["feature_set"] = row.feature_set;
        if (row.failed) {
            entry["failed"] = true;
            entry["error"] = row.error;
        } else {
            entry["best_params"] = row.best_params;
            entry["cv_auc_mean"] = row.cv_auc_mean;
            entry["cv_auc_sd"] = row.cv_auc_sd;
            entry["test_auc"] = row.test_auc;
            auto roc = nlohmann::ordered_json::array();
            for (const auto& point : row.roc) {
                roc.push_back({point.fpr, point.tpr});
            }
            entry["roc"] = std::move(roc);
        }
        doc["rows"].push_back(std::move(entry));
    }
    out << doc.dump(2) << '\n';
}

void write_report_table(std::ostream& out, const EvalReport& report) {
    std::size_t name_width = std::string("classifier").size();
    std::vector<std::string> classifiers;
    for (const auto& row : report.rows) {
        if (classifiers.empty() || classifiers.back() != row.classifier) {
            classifiers.push_back(row.classifier);
        }
        name_width = std::max(name_width, row.classifier.size());
    }
    std::vector<std::size_t> widths;
    for (const auto& set_name : report.feature_sets) {
        widths.push_back(std::max<std::size_t>(5, set_name.size()));
    }
    std::map<std::pair<std::string, std::string>, const ConfigResult*> cells;
    for (const auto& row : report.rows) {
        cells[{row.classifier, row.feature_set}] = &row;
    }

    out << "classifier" << std::string(name_width - 10, ' ');
    for (std::size_t c = 0; c < report.feature_sets.size(); ++c) {
        out << "  " << std::string(widths[c] - report.feature_sets[c].size(), ' ')
            << report.feature_sets[c];
    }
    out << '\n';
    char buf[32];
    for (const auto& classifier : classifiers) {
        out << classifier << std::string(name_width - classifier.size(), ' ');
        for (std::size_t c = 0; c < report.feature_sets.size(); ++c) {
            const auto it = cells.find({classifier, report.feature_sets[c]});
            std::string cell = "-";
            if (it != cells.end()) {
                if (it->second->failed) {
                    cell = "n/a";
                } else {
                    std::snprintf(buf, sizeof(buf), "%.3f", it->second->test_auc);
                    cell = buf;
                }
            }
            out << "  " << std::string(widths[c] - cell.size(), ' ') << cell;
        }
        out << '\n';
    }
}

void write_roc_csv(std::ostream& out, const std::vector<RocPoint>& curve) {
    out << "fpr,tpr\n";
    char buf[64];
    for (const auto& point : curve) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", point.fpr, point.tpr);
        out << buf;
    }
}

}  // namespace readmit
