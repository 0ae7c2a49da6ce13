#include "readmit/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "readmit/classifiers.hpp"
#include "readmit/cohort.hpp"
#include "readmit/concept_features.hpp"
#include "readmit/errors.hpp"
#include "readmit/evaluation.hpp"
#include "readmit/report.hpp"
#include "readmit/text_features.hpp"

namespace readmit {
namespace {

namespace fs = std::filesystem;

std::string trimmed(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return {};
    }
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string resolve(const PipelineConfig& config, const std::string& configured,
                    const char* fallback) {
    if (!configured.empty()) {
        return configured;
    }
    return (fs::path(config.output_dir) / fallback).string();
}

std::string out_path(const PipelineConfig& config, const std::string& name) {
    return (fs::path(config.output_dir) / name).string();
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open input file: " + path);
    }
    return in;
}

std::ofstream open_output(const std::string& path) {
    fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) {
        std::error_code ec;
        fs::create_directories(parent, ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot open output file: " + path);
    }
    return out;
}

unsigned resolved_threads(const PipelineConfig& config) {
    if (config.threads != 0) {
        return config.threads;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double parsed = std::stod(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return parsed;
    } catch (const std::exception&) {
        throw DataError("config: key '" + key + "' expects a number, got '" + value + "'");
    }
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
    double parsed = parse_number(key, value);
    if (parsed < 0 || parsed != static_cast<double>(static_cast<std::uint64_t>(parsed))) {
        throw DataError("config: key '" + key + "' expects a non-negative integer, got '" +
                        value + "'");
    }
    return static_cast<std::uint64_t>(parsed);
}

std::vector<ModelFamily> resolve_roster(const PipelineConfig& config) {
    if (config.classifiers.empty()) {
        return full_roster();
    }
    std::vector<ModelFamily> roster;
    for (const auto& name : config.classifiers) {
        roster.push_back(parse_model_family(name));
    }
    return roster;
}

std::string row_file_stem(const ConfigResult& row) {
    return row.classifier + "_" + row.feature_set;
}

}  // namespace

void set_config(PipelineConfig& config, const std::string& key, const std::string& value) {
    if (key == "output_dir") {
        config.output_dir = value;
    } else if (key == "admissions") {
        config.admissions = value;
    } else if (key == "notes") {
        config.notes = value;
    } else if (key == "cohort") {
        config.cohort = value;
    } else if (key == "lexicon") {
        config.lexicon = value;
    } else if (key == "annotations") {
        config.annotations = value;
    } else if (key == "stopwords") {
        config.stopwords = value;
    } else if (key == "model") {
        config.model = value;
    } else if (key == "vocabulary") {
        config.vocabulary = value;
    } else if (key == "window_days") {
        config.window_days = static_cast<int>(parse_unsigned(key, value));
    } else if (key == "min_doc_count") {
        config.min_doc_count = static_cast<std::uint32_t>(parse_unsigned(key, value));
    } else if (key == "max_doc_fraction") {
        config.max_doc_fraction = parse_number(key, value);
    } else if (key == "split_ratio") {
        config.split_ratio = parse_number(key, value);
    } else if (key == "cv_folds") {
        config.cv_folds = static_cast<int>(parse_unsigned(key, value));
    } else if (key == "seed") {
        config.seed = parse_unsigned(key, value);
    } else if (key == "threads") {
        config.threads = static_cast<unsigned>(parse_unsigned(key, value));
    } else if (key == "top_k") {
        config.top_k = static_cast<std::size_t>(parse_unsigned(key, value));
    } else if (key == "font_min") {
        config.font_min = parse_number(key, value);
    } else if (key == "font_max") {
        config.font_max = parse_number(key, value);
    } else if (key == "classifiers") {
        config.classifiers.clear();
        std::istringstream stream(value);
        std::string name;
        while (std::getline(stream, name, ',')) {
            name = trimmed(name);
            if (name.empty()) {
                continue;
            }
            parse_model_family(name);  // validates
            config.classifiers.push_back(name);
        }
    } else if (key == "synth.n_subjects") {
        config.synth.n_subjects = static_cast<std::size_t>(parse_unsigned(key, value));
    } else if (key == "synth.positive_rate") {
        config.synth.positive_rate = parse_number(key, value);
    } else if (key == "synth.n_signal_terms") {
        config.synth.n_signal_terms = static_cast<std::size_t>(parse_unsigned(key, value));
    } else if (key == "synth.signal_strength") {
        config.synth.signal_strength = parse_number(key, value);
    } else if (key == "synth.vocabulary_size") {
        config.synth.vocabulary_size = static_cast<std::size_t>(parse_unsigned(key, value));
    } else {
        throw DataError("config: unknown key '" + key + "'");
    }
}

void load_config_file(PipelineConfig& config, const std::string& path) {
    auto in = open_input(path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trimmed(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw DataError(path + ": line " + std::to_string(line_no) +
                            ": expected key = value");
        }
        try {
            set_config(config, trimmed(line.substr(0, eq)), trimmed(line.substr(eq + 1)));
        } catch (const DataError& e) {
            throw DataError(path + ": line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void cmd_synth(const PipelineConfig& config) {
    SynthSpec spec = config.synth;
    spec.seed = config.seed;
    auto admissions = open_output(out_path(config, "admissions.csv"));
    auto notes = open_output(out_path(config, "notes.csv"));
    write_synth_corpus(spec, admissions, notes);
}

void cmd_cohort(const PipelineConfig& config) {
    const std::string admissions_path = resolve(config, config.admissions, "admissions.csv");
    const std::string notes_path = resolve(config, config.notes, "notes.csv");
    auto admissions_in = open_input(admissions_path);
    auto notes_in = open_input(notes_path);
    auto admissions = parse_admissions(admissions_in, admissions_path);
    auto notes = parse_notes(notes_in, notes_path);
    Cohort cohort = build_cohort(admissions, notes, config.window_days);

    auto cohort_out = open_output(resolve(config, config.cohort, "cohort.jsonl"));
    write_cohort(cohort_out, cohort.subjects);
    auto stats_out = open_output(out_path(config, "cohort_stats.json"));
    write_cohort_stats(stats_out, cohort.stats);
    auto hist_out = open_output(out_path(config, "readmission_histogram.csv"));
    hist_out << "days,count\n";
    for (std::size_t d = 0; d < cohort.stats.interval_histogram.size(); ++d) {
        hist_out << d << ',' << cohort.stats.interval_histogram[d] << '\n';
    }
}

void cmd_featurize(const PipelineConfig& config) {
    const std::string cohort_path = resolve(config, config.cohort, "cohort.jsonl");
    auto cohort_in = open_input(cohort_path);
    auto subjects = read_cohort(cohort_in, cohort_path);
    if (subjects.empty()) {
        throw DataError(cohort_path + ": empty cohort");
    }

    StopwordList stopwords;
    if (!config.stopwords.empty()) {
        stopwords = StopwordList::from_file(config.stopwords);
    }

    std::vector<TokenStream> corpus;
    corpus.reserve(subjects.size());
    for (const auto& subject : subjects) {
        corpus.push_back(tokenize(subject.summary_text));
    }

    VocabularyOptions options;
    options.min_doc_count = config.min_doc_count;
    options.max_doc_fraction = config.max_doc_fraction;
    options.stem_terms = true;
    Vocabulary vocab = build_vocabulary(corpus, stopwords, options);
    if (vocab.size() == 0) {
        throw DataError("bag-of-words vocabulary is empty after document-frequency filtering");
    }

    DatasetFile bow;
    bow.feature_set = "bow";
    bow.data.dimension = static_cast<std::uint32_t>(vocab.size());
    for (std::size_t i = 0; i < subjects.size(); ++i) {
        auto terms = prepare_terms(corpus[i], stopwords, true);
        bow.data.vectors.push_back(vectorize_tfidf(terms, vocab));
        bow.data.labels.push_back(subjects[i].label ? 1 : 0);
        bow.hadm_ids.push_back(subjects[i].hadm_id);
    }
    auto vocab_out = open_output(out_path(config, "bow.vocab.json"));
    write_vocabulary(vocab_out, vocab);
    auto data_out = open_output(out_path(config, "bow.dataset.jsonl"));
    write_dataset(data_out, bow);

    if (config.annotations.empty() && config.lexicon.empty()) {
        return;
    }

    std::vector<ConceptAnnotation> annotations;
    if (!config.annotations.empty()) {
        auto ann_in = open_input(config.annotations);
        annotations = import_annotations(ann_in, config.annotations);
    } else {
        ConceptLexicon lexicon = load_lexicon_file(config.lexicon);
        const StopwordList no_stopwords;
        for (std::size_t i = 0; i < subjects.size(); ++i) {
            ConceptAnnotation annotation;
            annotation.doc_id = subjects[i].hadm_id;
            // Concept phrases match on the unfiltered stem sequence; removing
            // stopwords here would splice unrelated stems into phrases.
            annotation.cuis = map_concepts(prepare_terms(corpus[i], no_stopwords, true), lexicon);
            annotations.push_back(std::move(annotation));
        }
    }
    CuiFeatures cui =
        vectorize_cuis(annotations, subjects, config.min_doc_count, config.max_doc_fraction);
    DatasetFile cui_file;
    cui_file.feature_set = "cui";
    cui_file.data = std::move(cui.data);
    for (const auto& subject : subjects) {
        cui_file.hadm_ids.push_back(subject.hadm_id);
    }
    auto cui_vocab_out = open_output(out_path(config, "cui.vocab.json"));
    write_vocabulary(cui_vocab_out, cui.vocab);
    auto cui_data_out = open_output(out_path(config, "cui.dataset.jsonl"));
    write_dataset(cui_data_out, cui_file);
}

void cmd_evaluate(const PipelineConfig& config) {
    std::map<std::string, Dataset> sets;
    const std::string bow_path = out_path(config, "bow.dataset.jsonl");
    auto bow_in = open_input(bow_path);
    sets["bow"] = read_dataset(bow_in, bow_path).data;
    const std::string cui_path = out_path(config, "cui.dataset.jsonl");
    if (fs::exists(cui_path)) {
        auto cui_in = open_input(cui_path);
        sets["cui"] = read_dataset(cui_in, cui_path).data;
    }

    EvalReport report = evaluate_matrix(sets, resolve_roster(config), config.seed,
                                        config.split_ratio, config.cv_folds,
                                        resolved_threads(config));

    bool any_succeeded = false;
    for (const auto& row : report.rows) {
        if (row.failed) {
            continue;
        }
        any_succeeded = true;
        auto model_out = open_output(out_path(config, "model_" + row_file_stem(row) + ".json"));
        write_model(model_out, *row.model);
        auto roc_out = open_output(out_path(config, "roc_" + row_file_stem(row) + ".csv"));
        write_roc_csv(roc_out, row.roc);
    }
    auto json_out = open_output(out_path(config, "report.json"));
    write_report_json(json_out, report);
    auto table_out = open_output(out_path(config, "report.txt"));
    write_report_table(table_out, report);
    if (!any_succeeded) {
        throw EvalError("every configuration failed; first error: " + report.rows[0].error);
    }
}

void cmd_report(const PipelineConfig& config) {
    if (config.model.empty()) {
        throw DataError("report: no model file configured (key 'model')");
    }
    if (config.vocabulary.empty()) {
        throw DataError("report: no vocabulary file configured (key 'vocabulary')");
    }
    auto model_in = open_input(config.model);
    TrainedModel model = read_model(model_in, config.model);
    auto vocab_in = open_input(config.vocabulary);
    Vocabulary vocab = read_vocabulary(vocab_in, config.vocabulary);
    auto entries = feature_importance(model, vocab, config.top_k);
    auto csv_out = open_output(out_path(config, "importance.csv"));
    write_importance_csv(csv_out, entries);
    auto svg_out = open_output(out_path(config, "importance.svg"));
    write_tag_cloud_svg(svg_out, entries, config.font_min, config.font_max);
}

int exit_code_for(const std::exception& error) {
    if (dynamic_cast<const UnsupportedError*>(&error) != nullptr) {
        return 4;
    }
    if (dynamic_cast<const TrainingError*>(&error) != nullptr ||
        dynamic_cast<const EvalError*>(&error) != nullptr) {
        return 3;
    }
    return 2;
}

}  // namespace readmit
