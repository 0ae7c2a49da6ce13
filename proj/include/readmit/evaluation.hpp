#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "readmit/classifiers.hpp"
#include "readmit/sparse.hpp"

namespace readmit {

struct SplitPlan {
    std::vector<std::uint32_t> train_indices;  // ascending
    std::vector<std::uint32_t> test_indices;   // ascending
    std::uint64_t seed = 0;
    double ratio = 0.7;
};

/// Within each class, indices are shuffled by the seeded generator and the
/// first round(ratio * class count) go to train. Throws EvalError when a
/// class has fewer than two members.
SplitPlan stratified_split(const std::vector<std::uint8_t>& labels, double ratio,
                           std::uint64_t seed);

struct FoldPlan {
    std::vector<std::vector<std::uint32_t>> validation;  // k ascending index lists
    std::uint64_t seed = 0;
};

/// Per-class round-robin assignment after a seeded shuffle; indices are local
/// to the labels vector passed in. Throws EvalError naming any class smaller
/// than k.
FoldPlan stratified_kfold(const std::vector<std::uint8_t>& labels, int k, std::uint64_t seed);

/// Mann-Whitney AUC: (wins + 0.5 * ties) / (positives * negatives), computed
/// by ranking with tie-group averaging in O(n log n). Throws EvalError when
/// only one class is present, ContractError on non-finite scores.
double roc_auc(const std::vector<double>& scores, const std::vector<std::uint8_t>& labels);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

/// One point per distinct threshold (descending), with endpoints (0,0) and
/// (1,1); the trapezoidal area over these points equals roc_auc.
std::vector<RocPoint> roc_curve(const std::vector<double>& scores,
                                const std::vector<std::uint8_t>& labels);
double trapezoid_area(const std::vector<RocPoint>& curve);

struct GridPointResult {
    std::map<std::string, double> params;
    double auc_mean = 0.0;
    double auc_sd = 0.0;
    bool failed = false;
    std::string error;
};

struct GridSearchResult {
    TrainedModel model;  // refit on the full training data with the best params
    std::map<std::string, double> best_params;
    double cv_auc_mean = 0.0;
    double cv_auc_sd = 0.0;
    std::vector<GridPointResult> points;
};

/// Mean validation AUC over k folds per grid point; the highest mean wins,
/// ties broken by earliest grid order. Points whose folds throw training or
/// evaluation errors are marked failed and skipped; if every point fails the
/// search throws EvalError. Fold units run in parallel on seeded streams, so
/// the result is independent of the thread count.
GridSearchResult grid_search(const Dataset& train, ModelFamily family,
                             const std::vector<std::map<std::string, double>>& grid, int k,
                             std::uint64_t seed, unsigned threads = 1);

struct ConfigResult {
    std::string classifier;
    std::string feature_set;
    std::map<std::string, double> best_params;
    double cv_auc_mean = 0.0;
    double cv_auc_sd = 0.0;
    double test_auc = 0.0;
    std::vector<RocPoint> roc;
    bool failed = false;
    std::string error;
    std::optional<TrainedModel> model;
};

struct EvalReport {
    std::uint64_t seed = 0;
    double ratio = 0.7;
    int folds = 5;
    std::vector<std::string> feature_sets;  // alphabetical
    std::vector<ConfigResult> rows;         // roster-major, then feature set
};

/// Runs the full classifier-by-feature-set matrix: one shared stratified
/// split, per-configuration grid search on the shared training half, one
/// test-set scoring per configuration. All datasets must carry identical
/// labels. Grids default to default_grid per family unless overridden.
EvalReport evaluate_matrix(
    const std::map<std::string, Dataset>& feature_sets, const std::vector<ModelFamily>& roster,
    std::uint64_t seed, double ratio = 0.7, int k = 5, unsigned threads = 1,
    const std::map<ModelFamily, std::vector<std::map<std::string, double>>>& grids = {});

/// The classifier roster in report order.
std::vector<ModelFamily> full_roster();

void write_report_json(std::ostream& out, const EvalReport& report);
void write_report_table(std::ostream& out, const EvalReport& report);
void write_roc_csv(std::ostream& out, const std::vector<RocPoint>& curve);

}  // namespace readmit
