#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "readmit/pipeline.hpp"

namespace {

// Flag values are staged as key=value pairs and applied after the config
// file, so command-line settings always win.
struct Staging {
    std::vector<std::pair<std::string, std::string>> overrides;

    std::function<void(const std::string&)> sink(std::string key) {
        return [this, key = std::move(key)](const std::string& value) {
            overrides.emplace_back(key, value);
        };
    }
};

void add_staged_option(CLI::App* cmd, Staging& staging, const std::string& flag,
                       const std::string& key, const std::string& description) {
    cmd->add_option_function<std::string>(flag, staging.sink(key), description);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"30-day unplanned ICU readmission prediction toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    Staging staging;
    app.add_option("--config", config_path, "flat key=value settings file");
    add_staged_option(&app, staging, "--seed", "seed", "master random seed");
    add_staged_option(&app, staging, "--threads", "threads", "worker threads (0 = all cores)");
    add_staged_option(&app, staging, "--output-dir", "output_dir", "directory for all outputs");

    auto* synth = app.add_subcommand("synth", "generate a synthetic admissions/notes corpus");
    add_staged_option(synth, staging, "--subjects", "synth.n_subjects", "number of subjects");
    add_staged_option(synth, staging, "--positive-rate", "synth.positive_rate",
                      "readmission probability per subject");
    add_staged_option(synth, staging, "--signal-terms", "synth.n_signal_terms",
                      "number of label-carrying terms");
    add_staged_option(synth, staging, "--signal-strength", "synth.signal_strength",
                      "per-term presence probability for positives");
    add_staged_option(synth, staging, "--vocabulary-size", "synth.vocabulary_size",
                      "total generator vocabulary");

    auto* cohort = app.add_subcommand("cohort", "build the labeled cohort from CSV exports");
    add_staged_option(cohort, staging, "--admissions", "admissions", "admissions CSV path");
    add_staged_option(cohort, staging, "--notes", "notes", "notes CSV path");
    add_staged_option(cohort, staging, "--window-days", "window_days",
                      "readmission window in days");

    auto* featurize = app.add_subcommand("featurize", "turn discharge summaries into datasets");
    add_staged_option(featurize, staging, "--cohort", "cohort", "cohort JSONL path");
    add_staged_option(featurize, staging, "--lexicon", "lexicon",
                      "concept lexicon TSV (enables concept features)");
    add_staged_option(featurize, staging, "--annotations", "annotations",
                      "precomputed concept JSONL (overrides lexicon mapping)");
    add_staged_option(featurize, staging, "--stopwords", "stopwords", "stopword list path");
    add_staged_option(featurize, staging, "--min-doc-count", "min_doc_count",
                      "minimum document frequency");
    add_staged_option(featurize, staging, "--max-doc-fraction", "max_doc_fraction",
                      "maximum document-frequency fraction");

    const char* eval_help = "tune, fit, and score the classifier matrix";
    auto* train = app.add_subcommand("train", eval_help);
    auto* evaluate = app.add_subcommand("evaluate", eval_help);
    for (auto* cmd : {train, evaluate}) {
        add_staged_option(cmd, staging, "--classifiers", "classifiers",
                          "comma-separated classifier roster");
        add_staged_option(cmd, staging, "--split-ratio", "split_ratio",
                          "train fraction of the stratified split");
        add_staged_option(cmd, staging, "--folds", "cv_folds", "cross-validation folds");
    }

    auto* report = app.add_subcommand("report", "rank features of a trained model");
    add_staged_option(report, staging, "--model", "model", "model JSON path");
    add_staged_option(report, staging, "--vocabulary", "vocabulary", "vocabulary JSON path");
    add_staged_option(report, staging, "--top-k", "top_k", "number of features to report");
    add_staged_option(report, staging, "--font-min", "font_min", "smallest tag-cloud font size");
    add_staged_option(report, staging, "--font-max", "font_max", "largest tag-cloud font size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    readmit::PipelineConfig config;
    try {
        if (!config_path.empty()) {
            readmit::load_config_file(config, config_path);
        }
        for (const auto& [key, value] : staging.overrides) {
            readmit::set_config(config, key, value);
        }
        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "synth") {
            readmit::cmd_synth(config);
        } else if (name == "cohort") {
            readmit::cmd_cohort(config);
        } else if (name == "featurize") {
            readmit::cmd_featurize(config);
        } else if (name == "report") {
            readmit::cmd_report(config);
        } else {
            readmit::cmd_evaluate(config);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return readmit::exit_code_for(e);
    }
    return 0;
}
