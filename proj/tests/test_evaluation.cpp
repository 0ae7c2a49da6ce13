#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "readmit/errors.hpp"
#include "readmit/evaluation.hpp"
#include "readmit/rng.hpp"
#include "test_util.hpp"

using namespace readmit;

namespace {

double auc_brute(const std::vector<double>& scores, const std::vector<std::uint8_t>& labels) {
    double credit = 0.0;
    double pairs = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!labels[i]) {
            continue;
        }
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j]) {
                continue;
            }
            pairs += 1.0;
            if (scores[i] > scores[j]) {
                credit += 1.0;
            } else if (scores[i] == scores[j]) {
                credit += 0.5;
            }
        }
    }
    return credit / pairs;
}

struct ScoredCase {
    std::vector<double> scores;
    std::vector<std::uint8_t> labels;
};

ScoredCase random_case(Rng& rng) {
    ScoredCase c;
    const std::size_t n = 2 + rng.bounded(99);
    const bool tie_heavy = rng.bounded(2) == 0;
    std::vector<double> palette;
    if (tie_heavy) {
        const std::size_t k = 2 + rng.bounded(10);
        for (std::size_t i = 0; i < k; ++i) {
            palette.push_back(rng.uniform() * 4.0 - 2.0);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        c.scores.push_back(tie_heavy ? palette[rng.bounded(palette.size())]
                                     : rng.uniform() * 4.0 - 2.0);
        c.labels.push_back(static_cast<std::uint8_t>(rng.bounded(2)));
    }
    c.labels[0] = 0;
    c.labels[1] = 1;
    return c;
}

std::vector<std::uint8_t> random_labels(Rng& rng, std::size_t n, std::size_t min_per_class) {
    std::vector<std::uint8_t> labels(n, 0);
    for (auto& y : labels) {
        y = static_cast<std::uint8_t>(rng.bounded(2));
    }
    for (std::size_t i = 0; i < min_per_class; ++i) {
        labels[i] = 0;
        labels[n - 1 - i] = 1;
    }
    return labels;
}

}  // namespace

TEST_CASE("AUC matches the four-score worked example") {
    CHECK(roc_auc({0.9, 0.8, 0.3, 0.2}, {1, 0, 1, 0}) == 0.75);
}

TEST_CASE("AUC hits the extremes on separable and reversed scores") {
    CHECK(roc_auc({1.0, 2.0, 3.0, 4.0}, {0, 0, 1, 1}) == 1.0);
    CHECK(roc_auc({1.0, 2.0, 3.0, 4.0}, {1, 1, 0, 0}) == 0.0);
    CHECK(roc_auc({0.5, 0.5, 0.5, 0.5}, {1, 0, 1, 0}) == 0.5);
}

TEST_CASE("AUC equals pair counting on 200 randomized score vectors") {
    Rng rng(20260815);
    for (int rep = 0; rep < 200; ++rep) {
        auto c = random_case(rng);
        CAPTURE(rep);
        CHECK(std::abs(roc_auc(c.scores, c.labels) - auc_brute(c.scores, c.labels)) <= 1e-12);
    }
}

TEST_CASE("AUC is invariant under strictly increasing transforms") {
    Rng rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        auto c = random_case(rng);
        const double base = roc_auc(c.scores, c.labels);
        std::vector<double> affine;
        std::vector<double> squashed;
        for (double s : c.scores) {
            affine.push_back(2.0 * s + 1.0);
            squashed.push_back(std::tanh(s));
        }
        CHECK(roc_auc(affine, c.labels) == base);
        CHECK(roc_auc(squashed, c.labels) == base);
    }
}

TEST_CASE("AUC rejects degenerate input") {
    CHECK_THROWS_AS(roc_auc({0.1, 0.2}, {1, 1}), EvalError);
    CHECK_THROWS_AS(roc_auc({0.1, 0.2}, {0, 0}), EvalError);
    CHECK_THROWS_AS(roc_auc({0.1, std::nan("")}, {0, 1}), ContractError);
    CHECK_THROWS_AS(roc_auc({0.1}, {0, 1}), ContractError);
}

TEST_CASE("ROC curve endpoints and canonical shapes") {
    SUBCASE("perfect separation on two points") {
        auto curve = roc_curve({0.9, 0.1}, {1, 0});
        REQUIRE(curve.size() == 3);
        CHECK(curve[0].fpr == 0.0);
        CHECK(curve[0].tpr == 0.0);
        CHECK(curve[1].fpr == 0.0);
        CHECK(curve[1].tpr == 1.0);
        CHECK(curve[2].fpr == 1.0);
        CHECK(curve[2].tpr == 1.0);
    }
    SUBCASE("fully tied scores collapse to the diagonal") {
        auto curve = roc_curve({0.5, 0.5}, {1, 0});
        REQUIRE(curve.size() == 2);
        CHECK(curve[0].fpr == 0.0);
        CHECK(curve[0].tpr == 0.0);
        CHECK(curve[1].fpr == 1.0);
        CHECK(curve[1].tpr == 1.0);
    }
}

TEST_CASE("ROC curve is monotone and its trapezoid area equals the AUC") {
    Rng rng(99);
    for (int rep = 0; rep < 100; ++rep) {
        auto c = random_case(rng);
        auto curve = roc_curve(c.scores, c.labels);
        CAPTURE(rep);
        REQUIRE(curve.size() >= 2);
        CHECK(curve.front().fpr == 0.0);
        CHECK(curve.front().tpr == 0.0);
        CHECK(curve.back().fpr == 1.0);
        CHECK(curve.back().tpr == 1.0);
        for (std::size_t i = 1; i < curve.size(); ++i) {
            CHECK(curve[i].fpr >= curve[i - 1].fpr);
            CHECK(curve[i].tpr >= curve[i - 1].tpr);
        }
        CHECK(std::abs(trapezoid_area(curve) - roc_auc(c.scores, c.labels)) <= 1e-12);
    }
}

TEST_CASE("stratified split reproduces the 7:3 worked example") {
    std::vector<std::uint8_t> labels = {0, 0, 0, 0, 0, 0, 0, 1, 1, 1};
    auto plan = stratified_split(labels, 0.7, 42);
    REQUIRE(plan.train_indices.size() == 7);
    REQUIRE(plan.test_indices.size() == 3);
    std::size_t train_pos = 0;
    for (auto i : plan.train_indices) {
        train_pos += labels[i];
    }
    CHECK(train_pos == 2);  // round(0.7 * 3)
    std::size_t test_pos = 0;
    for (auto i : plan.test_indices) {
        test_pos += labels[i];
    }
    CHECK(test_pos == 1);
}

TEST_CASE("stratified split partitions every index with per-class rounding") {
    Rng rng(5150);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 10 + rng.bounded(491);
        auto labels = random_labels(rng, n, 2);
        const double ratio = 0.5 + 0.4 * rng.uniform();
        auto plan = stratified_split(labels, ratio, 1000 + rep);
        CAPTURE(rep);
        CAPTURE(n);

        std::vector<std::uint32_t> all(plan.train_indices);
        all.insert(all.end(), plan.test_indices.begin(), plan.test_indices.end());
        std::sort(all.begin(), all.end());
        REQUIRE(all.size() == n);
        for (std::size_t i = 0; i < n; ++i) {
            REQUIRE(all[i] == i);
        }
        CHECK(std::is_sorted(plan.train_indices.begin(), plan.train_indices.end()));
        CHECK(std::is_sorted(plan.test_indices.begin(), plan.test_indices.end()));

        std::size_t class_count[2] = {0, 0};
        for (auto y : labels) {
            ++class_count[y];
        }
        std::size_t train_count[2] = {0, 0};
        for (auto i : plan.train_indices) {
            ++train_count[labels[i]];
        }
        for (int c = 0; c < 2; ++c) {
            CHECK(train_count[c] ==
                  static_cast<std::size_t>(std::llround(ratio * double(class_count[c]))));
        }
    }
}

TEST_CASE("stratified split is seed-deterministic and seed-sensitive") {
    Rng rng(1);
    auto labels = random_labels(rng, 60, 10);
    auto a = stratified_split(labels, 0.7, 9);
    auto b = stratified_split(labels, 0.7, 9);
    CHECK(a.train_indices == b.train_indices);
    CHECK(a.test_indices == b.test_indices);
    auto c = stratified_split(labels, 0.7, 10);
    CHECK(a.train_indices != c.train_indices);
}

TEST_CASE("stratified split rejects undersized classes and bad ratios") {
    CHECK_THROWS_AS(stratified_split({0, 0, 0, 1}, 0.7, 1), EvalError);
    CHECK_THROWS_AS(stratified_split({1, 1, 1, 0}, 0.7, 1), EvalError);
    CHECK_THROWS_AS(stratified_split({0, 0, 1, 1}, 0.0, 1), ContractError);
    CHECK_THROWS_AS(stratified_split({0, 0, 1, 1}, 1.0, 1), ContractError);
}

TEST_CASE("k-fold assignment spreads 10 positives as 2 per fold") {
    std::vector<std::uint8_t> labels(25, 0);
    for (int i = 0; i < 10; ++i) {
        labels[static_cast<std::size_t>(i)] = 1;
    }
    auto plan = stratified_kfold(labels, 5, 3);
    REQUIRE(plan.validation.size() == 5);
    for (const auto& fold : plan.validation) {
        std::size_t pos = 0;
        for (auto i : fold) {
            pos += labels[i];
        }
        CHECK(pos == 2);
        CHECK(fold.size() == 5);  // 2 positives + 3 negatives
    }
}

TEST_CASE("k-fold folds partition the indices with balanced classes") {
    Rng rng(77);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 20 + rng.bounded(481);
        auto labels = random_labels(rng, n, 5);
        const int k = 2 + static_cast<int>(rng.bounded(4));
        auto plan = stratified_kfold(labels, k, 40 + rep);
        CAPTURE(rep);

        std::vector<std::uint32_t> all;
        for (const auto& fold : plan.validation) {
            CHECK(std::is_sorted(fold.begin(), fold.end()));
            all.insert(all.end(), fold.begin(), fold.end());
        }
        std::sort(all.begin(), all.end());
        REQUIRE(all.size() == n);
        for (std::size_t i = 0; i < n; ++i) {
            REQUIRE(all[i] == i);
        }

        for (int c = 0; c < 2; ++c) {
            std::size_t lo = n;
            std::size_t hi = 0;
            for (const auto& fold : plan.validation) {
                std::size_t count = 0;
                for (auto i : fold) {
                    count += labels[i] == c ? 1 : 0;
                }
                lo = std::min(lo, count);
                hi = std::max(hi, count);
            }
            CHECK(hi - lo <= 1);
        }
    }
}

TEST_CASE("k-fold names the class that is too small") {
    std::vector<std::uint8_t> labels = {0, 0, 0, 0, 0, 0, 1, 1, 1};
    try {
        stratified_kfold(labels, 5, 1);
        FAIL("expected EvalError");
    } catch (const EvalError& e) {
        CHECK(std::string(e.what()).find("class 1") != std::string::npos);
    }
    CHECK_THROWS_AS(stratified_kfold(labels, 1, 1), ContractError);
}

TEST_CASE("grid search breaks exact ties toward the earlier grid point") {
    auto data = testutil::planted_dataset(11, 60, 12, 4);
    // learning rate zero leaves the model at the origin, so both points score
    // exactly 0.5 on every fold and only grid order can decide.
    std::vector<std::map<std::string, double>> grid = {
        {{"learning_rate", 0.0}, {"epochs", 1.0}},
        {{"learning_rate", 0.0}, {"epochs", 2.0}},
    };
    auto result = grid_search(data, ModelFamily::Logistic, grid, 5, 19);
    CHECK(result.best_params.at("epochs") == 1.0);
    CHECK(result.cv_auc_mean == 0.5);
}

TEST_CASE("grid search prefers the grid point that actually learns") {
    auto data = testutil::planted_dataset(12, 80, 12, 4);
    std::vector<std::map<std::string, double>> grid = {
        {{"learning_rate", 0.0}},
        {{"learning_rate", 1.0}},
    };
    auto result = grid_search(data, ModelFamily::Logistic, grid, 5, 19);
    CHECK(result.best_params.at("learning_rate") == 1.0);
    CHECK(result.cv_auc_mean > 0.6);
    REQUIRE(result.points.size() == 2);
    CHECK_FALSE(result.points[0].failed);
    CHECK(result.points[0].auc_mean == 0.5);
}

TEST_CASE("grid search skips points whose folds fail and errors when all do") {
    auto data = testutil::planted_dataset(13, 80, 12, 4);
    std::vector<std::map<std::string, double>> grid = {
        {{"learning_rate", 1e12}, {"l2_lambda", 0.1}},
        {{"learning_rate", 1.0}},
    };
    auto result = grid_search(data, ModelFamily::Logistic, grid, 5, 19);
    CHECK(result.points[0].failed);
    CHECK_FALSE(result.points[0].error.empty());
    CHECK(result.best_params.at("learning_rate") == 1.0);

    grid.pop_back();
    CHECK_THROWS_AS(grid_search(data, ModelFamily::Logistic, grid, 5, 19), EvalError);
}

TEST_CASE("grid search results do not depend on the thread count") {
    auto data = testutil::planted_dataset(14, 90, 16, 5);
    auto grid = default_grid(ModelFamily::RandomForest, data.dimension);
    auto serial = grid_search(data, ModelFamily::RandomForest, grid, 5, 23, 1);
    auto threaded = grid_search(data, ModelFamily::RandomForest, grid, 5, 23, 4);
    CHECK(serial.best_params == threaded.best_params);
    CHECK(serial.cv_auc_mean == threaded.cv_auc_mean);
    CHECK(serial.cv_auc_sd == threaded.cv_auc_sd);
    auto a = predict_scores(serial.model, data, 1);
    auto b = predict_scores(threaded.model, data, 1);
    CHECK(a == b);
}

TEST_CASE("grid search refits the winner on the full training data") {
    auto data = testutil::planted_dataset(15, 70, 12, 4);
    std::vector<std::map<std::string, double>> grid = {{{"l2_lambda", 0.001}}};
    auto result = grid_search(data, ModelFamily::Logistic, grid, 5, 31);
    auto direct = train_model(ModelFamily::Logistic, data, grid[0], 31);
    CHECK(predict_scores(result.model, data, 1) == predict_scores(direct, data, 1));
}

TEST_CASE("evaluate_matrix runs the full roster over every feature set") {
    auto planted = testutil::planted_dataset(21, 160, 30, 6);
    auto noise = testutil::random_dataset(22, 160, 30, 0.15);
    noise.labels = planted.labels;
    std::map<std::string, Dataset> sets = {{"bow", planted}, {"noise", noise}};

    auto report = evaluate_matrix(sets, full_roster(), 404, 0.7, 5, 4);
    REQUIRE(report.rows.size() == 10);
    CHECK(report.feature_sets == std::vector<std::string>{"bow", "noise"});
    CHECK(report.rows[0].classifier == "naive_bayes");
    CHECK(report.rows[0].feature_set == "bow");
    CHECK(report.rows[1].feature_set == "noise");
    CHECK(report.rows[2].classifier == "linear_svm");
    CHECK(report.rows[9].classifier == "gbdt");

    for (const auto& row : report.rows) {
        CAPTURE(row.classifier);
        CAPTURE(row.feature_set);
        REQUIRE_FALSE(row.failed);
        REQUIRE(row.model.has_value());
        CHECK(row.test_auc >= 0.0);
        CHECK(row.test_auc <= 1.0);
        CHECK(row.roc.size() >= 2);
        if (row.feature_set == "bow" && row.classifier != "naive_bayes") {
            CHECK(row.test_auc >= 0.7);
        }
        if (row.feature_set == "noise") {
            CHECK(row.test_auc > 0.2);
            CHECK(row.test_auc < 0.85);
        }
    }
}

TEST_CASE("evaluate_matrix rejects feature sets that disagree on labels") {
    auto planted = testutil::planted_dataset(31, 40, 10, 3);
    auto other = planted;
    other.labels[5] ^= 1;
    std::map<std::string, Dataset> sets = {{"a", planted}, {"b", other}};
    CHECK_THROWS_AS(evaluate_matrix(sets, {ModelFamily::NaiveBayes}, 1), ContractError);
}

TEST_CASE("evaluate_matrix annotates rows whose whole grid fails") {
    auto planted = testutil::planted_dataset(32, 60, 10, 3);
    std::map<std::string, Dataset> sets = {{"bow", planted}};
    std::map<ModelFamily, std::vector<std::map<std::string, double>>> grids;
    grids[ModelFamily::Logistic] = {{{"learning_rate", 1e12}, {"l2_lambda", 0.1}}};
    auto report = evaluate_matrix(sets, {ModelFamily::Logistic}, 7, 0.7, 5, 1, grids);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].failed);
    CHECK_FALSE(report.rows[0].error.empty());
    CHECK_FALSE(report.rows[0].model.has_value());

    std::ostringstream json;
    write_report_json(json, report);
    CHECK(json.str().find("\"failed\": true") != std::string::npos);
}

TEST_CASE("evaluation reports serialize byte-identically across runs and threads") {
    auto planted = testutil::planted_dataset(41, 120, 24, 5);
    std::map<std::string, Dataset> sets = {{"bow", planted}};
    std::vector<ModelFamily> roster = {ModelFamily::Logistic,
                                       ModelFamily::RandomForest};

    std::string serialized[2];
    for (int run = 0; run < 2; ++run) {
        auto report = evaluate_matrix(sets, roster, 17, 0.7, 5, run == 0 ? 1 : 4);
        std::ostringstream out;
        write_report_json(out, report);
        write_report_table(out, report);
        for (const auto& row : report.rows) {
            write_roc_csv(out, row.roc);
        }
        serialized[run] = out.str();
    }
    CHECK(serialized[0] == serialized[1]);
}

TEST_CASE("report table lines up one row per classifier") {
    auto planted = testutil::planted_dataset(51, 80, 16, 4);
    std::map<std::string, Dataset> sets = {{"bow", planted}, {"cui", planted}};
    auto report =
        evaluate_matrix(sets, {ModelFamily::NaiveBayes, ModelFamily::Svm}, 3, 0.7, 5, 2);

    std::ostringstream out;
    write_report_table(out, report);
    std::istringstream lines(out.str());
    std::vector<std::string> row_text;
    std::string line;
    while (std::getline(lines, line)) {
        row_text.push_back(line);
    }
    REQUIRE(row_text.size() == 3);
    CHECK(row_text[0].substr(0, 10) == "classifier");
    CHECK(row_text[1].substr(0, 11) == "naive_bayes");
    CHECK(row_text[2].substr(0, 10) == "linear_svm");
    for (const auto& text : row_text) {
        CHECK(text.size() == row_text[0].size());
    }
    // AUC cells carry exactly three decimals.
    CHECK(row_text[1].find('.') != std::string::npos);
    auto dot = row_text[1].find('.');
    CHECK(row_text[1].substr(dot + 4, 1) == " ");
}

TEST_CASE("ROC CSV is plain fpr,tpr rows") {
    std::ostringstream out;
    write_roc_csv(out, {{0.0, 0.0}, {0.25, 1.0}, {1.0, 1.0}});
    CHECK(out.str() == "fpr,tpr\n0,0\n0.25,1\n1,1\n");
}
