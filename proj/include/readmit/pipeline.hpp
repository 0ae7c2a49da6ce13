#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "readmit/synth.hpp"

namespace readmit {

/// Settings shared by every subcommand. Paths left empty resolve to
/// conventional file names under output_dir, so the stages chain without
/// repeating flags.
struct PipelineConfig {
    std::string output_dir = ".";
    std::string admissions;   // default {output_dir}/admissions.csv
    std::string notes;        // default {output_dir}/notes.csv
    std::string cohort;       // default {output_dir}/cohort.jsonl
    std::string lexicon;      // enables concept features when set
    std::string annotations;  // precomputed concept JSONL, overrides lexicon mapping
    std::string stopwords;    // optional stopword file
    std::string model;        // report input
    std::string vocabulary;   // report input
    int window_days = 30;
    std::uint32_t min_doc_count = 5;
    double max_doc_fraction = 0.95;
    double split_ratio = 0.7;
    int cv_folds = 5;
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0 = all hardware threads
    std::vector<std::string> classifiers;  // empty = full roster
    std::size_t top_k = 20;
    double font_min = 10.0;
    double font_max = 48.0;
    SynthSpec synth;
};

/// Applies one flat key=value setting. Unknown keys and unparsable values
/// throw DataError.
void set_config(PipelineConfig& config, const std::string& key, const std::string& value);

/// Reads a flat key=value file ('#' starts a comment, blank lines ignored).
void load_config_file(PipelineConfig& config, const std::string& path);

void cmd_synth(const PipelineConfig& config);
void cmd_cohort(const PipelineConfig& config);
void cmd_featurize(const PipelineConfig& config);
void cmd_evaluate(const PipelineConfig& config);
void cmd_report(const PipelineConfig& config);

/// Process exit code for an error escaping a command: 2 for input and data
/// problems, 3 for training/evaluation failures, 4 for unsupported
/// operations.
int exit_code_for(const std::exception& error);

}  // namespace readmit
