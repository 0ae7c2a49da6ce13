#include "readmit/text_features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "readmit/csv.hpp"
#include "readmit/errors.hpp"
#include "readmit/porter.hpp"

namespace readmit {

TokenStream tokenize(std::string_view text) {
    TokenStream tokens;
    std::string current;
    for (char c : text) {
        if (c >= 'A' && c <= 'Z') {
            current.push_back(static_cast<char>(c - 'A' + 'a'));
        } else if (c >= 'a' && c <= 'z') {
            current.push_back(c);
        } else {
            if (current.size() >= 2) tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (current.size() >= 2) tokens.push_back(std::move(current));
    return tokens;
}

StopwordList StopwordList::from_stream(std::istream& in) {
    StopwordList list;
    std::string line;
    while (std::getline(in, line)) {
        std::string word = trim(line);
        if (word.empty() || word[0] == '#') continue;
        list.words_.insert(to_lower(word));
    }
    return list;
}

StopwordList StopwordList::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open stopword list: " + path);
    return from_stream(in);
}

std::vector<std::string> prepare_terms(const TokenStream& tokens, const StopwordList& stopwords,
                                       bool stem_terms) {
    std::vector<std::string> terms;
    terms.reserve(tokens.size());
    for (const std::string& token : tokens) {
        if (stopwords.contains(token)) continue;
        if (!stem_terms) {
            terms.push_back(token);
            continue;
        }
        std::string stem = porter_stem(token);
        if (stopwords.contains(stem)) continue;
        terms.push_back(std::move(stem));
    }
    return terms;
}

std::optional<std::uint32_t> Vocabulary::index_of(std::string_view term) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), term);
    if (it == terms.end() || *it != term) return std::nullopt;
    return static_cast<std::uint32_t>(it - terms.begin());
}

void Vocabulary::validate() const {
    if (terms.size() != doc_frequency.size() || terms.size() != idf.size())
        throw ContractError("vocabulary: term/df/idf length mismatch");
    if (corpus_size == 0 && !terms.empty())
        throw ContractError("vocabulary: non-empty term table with zero corpus size");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0 && !(terms[i - 1] < terms[i]))
            throw ContractError("vocabulary: terms not strictly sorted at '" + terms[i] + "'");
        if (doc_frequency[i] == 0 || doc_frequency[i] > corpus_size)
            throw ContractError("vocabulary: bad document frequency for '" + terms[i] + "'");
    }
}

double idf_weight(std::uint64_t corpus_size, std::uint32_t doc_frequency) {
    return std::log(static_cast<double>(corpus_size) / static_cast<double>(doc_frequency)) + 1.0;
}

Vocabulary build_vocabulary(const std::vector<TokenStream>& corpus, const StopwordList& stopwords,
                            const VocabularyOptions& options) {
    if (corpus.empty()) throw ContractError("build_vocabulary: empty corpus");
    if (options.min_doc_count < 1 || options.max_doc_fraction <= 0.0 || options.max_doc_fraction > 1.0)
        throw ContractError("build_vocabulary: document-frequency bounds out of range");

    std::unordered_map<std::string, std::uint32_t> df;
    std::unordered_set<std::string> seen;
    for (const TokenStream& doc : corpus) {
        seen.clear();
        for (const std::string& term : prepare_terms(doc, stopwords, options.stem_terms))
            seen.insert(term);
        for (const std::string& term : seen) ++df[term];
    }

    const std::uint64_t corpus_size = corpus.size();
    const auto max_df =
        static_cast<std::uint64_t>(std::floor(options.max_doc_fraction * static_cast<double>(corpus_size)));

    Vocabulary vocab;
    vocab.corpus_size = corpus_size;
    vocab.settings = options;
    for (const auto& [term, count] : df)
        if (count >= options.min_doc_count && count <= max_df) vocab.terms.push_back(term);
    std::sort(vocab.terms.begin(), vocab.terms.end());
    vocab.doc_frequency.reserve(vocab.terms.size());
    vocab.idf.reserve(vocab.terms.size());
    for (const std::string& term : vocab.terms) {
        std::uint32_t count = df.at(term);
        vocab.doc_frequency.push_back(count);
        vocab.idf.push_back(idf_weight(corpus_size, count));
    }
    return vocab;
}

SparseVector vectorize_tfidf(const std::vector<std::string>& terms, const Vocabulary& vocab) {
    std::map<std::uint32_t, std::uint32_t> counts;
    for (const std::string& term : terms)
        if (auto idx = vocab.index_of(term)) ++counts[*idx];

    SparseVector v;
    v.dimension = static_cast<std::uint32_t>(vocab.size());
    v.indices.reserve(counts.size());
    v.values.reserve(counts.size());
    double norm_sq = 0.0;
    for (const auto& [idx, count] : counts) {
        double value = static_cast<double>(count) * vocab.idf[idx];
        v.indices.push_back(idx);
        v.values.push_back(value);
        norm_sq += value * value;
    }
    if (norm_sq > 0.0) {
        double inv = 1.0 / std::sqrt(norm_sq);
        for (double& value : v.values) value *= inv;
    }
    return v;
}

void write_vocabulary(std::ostream& out, const Vocabulary& vocab) {
    nlohmann::ordered_json doc;
    doc["type"] = "vocabulary";
    doc["settings"]["min_doc_count"] = vocab.settings.min_doc_count;
    doc["settings"]["max_doc_fraction"] = vocab.settings.max_doc_fraction;
    doc["settings"]["stem_terms"] = vocab.settings.stem_terms;
    doc["corpus_size"] = vocab.corpus_size;
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < vocab.terms.size(); ++i) {
        nlohmann::ordered_json entry;
        entry["term"] = vocab.terms[i];
        entry["df"] = vocab.doc_frequency[i];
        terms.push_back(std::move(entry));
    }
    doc["terms"] = std::move(terms);
    out << doc.dump(2) << '\n';
}

Vocabulary read_vocabulary(std::istream& in, const std::string& name) {
    Vocabulary vocab;
    try {
        nlohmann::json doc = nlohmann::json::parse(in);
        if (doc.at("type").get<std::string>() != "vocabulary")
            throw DataError(name + ": not a vocabulary file");
        vocab.settings.min_doc_count = doc.at("settings").at("min_doc_count").get<std::uint32_t>();
        vocab.settings.max_doc_fraction = doc.at("settings").at("max_doc_fraction").get<double>();
        vocab.settings.stem_terms = doc.at("settings").at("stem_terms").get<bool>();
        vocab.corpus_size = doc.at("corpus_size").get<std::uint64_t>();
        for (const auto& entry : doc.at("terms")) {
            vocab.terms.push_back(entry.at("term").get<std::string>());
            vocab.doc_frequency.push_back(entry.at("df").get<std::uint32_t>());
            vocab.idf.push_back(idf_weight(vocab.corpus_size, vocab.doc_frequency.back()));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(name + ": bad vocabulary file: " + e.what());
    }
    vocab.validate();
    return vocab;
}

}  // namespace readmit
