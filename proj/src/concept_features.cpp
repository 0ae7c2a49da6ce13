#include "readmit/concept_features.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "readmit/csv.hpp"
#include "readmit/errors.hpp"
#include "readmit/porter.hpp"

namespace readmit {

namespace {

std::string phrase_key(const std::vector<std::string>& stems, std::size_t begin, std::size_t length) {
    std::string key;
    for (std::size_t i = 0; i < length; ++i) {
        if (i) key.push_back('\x1f');
        key += stems[begin + i];
    }
    return key;
}

}  // namespace

bool is_valid_cui(std::string_view cui) {
    if (cui.size() != 8 || cui[0] != 'C') return false;
    for (std::size_t i = 1; i < 8; ++i)
        if (cui[i] < '0' || cui[i] > '9') return false;
    return true;
}

void ConceptLexicon::add(LexiconEntry entry) {
    std::string key = phrase_key(entry.phrase, 0, entry.phrase.size());
    std::vector<std::string>& cuis = cuis_by_phrase_[key];
    if (std::find(cuis.begin(), cuis.end(), entry.cui) != cuis.end()) return;  // duplicate pair
    cuis.push_back(entry.cui);
    name_by_cui_.emplace(entry.cui, entry.preferred_name);
    max_phrase_length_ = std::max(max_phrase_length_, entry.phrase.size());
    entries_.push_back(std::move(entry));
}

const std::vector<std::string>* ConceptLexicon::find(const std::vector<std::string>& stems,
                                                     std::size_t begin, std::size_t length) const {
    auto it = cuis_by_phrase_.find(phrase_key(stems, begin, length));
    return it == cuis_by_phrase_.end() ? nullptr : &it->second;
}

std::string ConceptLexicon::preferred_name(const std::string& cui) const {
    auto it = name_by_cui_.find(cui);
    return it == name_by_cui_.end() ? std::string() : it->second;
}

ConceptLexicon load_lexicon(std::istream& in, const std::string& name) {
    ConceptLexicon lexicon;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;

        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == '\t') {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        if (fields.size() != 3)
            throw DataError(name + ": line " + std::to_string(line_number) +
                            ": expected 3 tab-separated fields, got " + std::to_string(fields.size()));

        LexiconEntry entry;
        for (const std::string& token : tokenize(fields[0])) entry.phrase.push_back(porter_stem(token));
        if (entry.phrase.empty())
            throw DataError(name + ": line " + std::to_string(line_number) + ": empty phrase");
        entry.cui = trim(fields[1]);
        if (!is_valid_cui(entry.cui))
            throw DataError(name + ": line " + std::to_string(line_number) + ": malformed CUI '" +
                            entry.cui + "'");
        entry.preferred_name = trim(fields[2]);
        lexicon.add(std::move(entry));
    }
    return lexicon;
}

ConceptLexicon load_lexicon_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open lexicon: " + path);
    return load_lexicon(in, path);
}

std::vector<std::string> map_concepts(const std::vector<std::string>& stems,
                                      const ConceptLexicon& lexicon) {
    std::vector<std::string> cuis;
    const std::size_t n = stems.size();
    std::size_t i = 0;
    while (i < n) {
        std::size_t longest = std::min(lexicon.max_phrase_length(), n - i);
        bool matched = false;
        for (std::size_t len = longest; len >= 1; --len) {
            if (const std::vector<std::string>* found = lexicon.find(stems, i, len)) {
                cuis.insert(cuis.end(), found->begin(), found->end());
                i += len;
                matched = true;
                break;
            }
        }
        if (!matched) ++i;
    }
    return cuis;
}

std::vector<ConceptAnnotation> import_annotations(std::istream& in, const std::string& name) {
    std::vector<ConceptAnnotation> annotations;
    std::set<std::int64_t> seen;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        ConceptAnnotation annotation;
        try {
            nlohmann::json row = nlohmann::json::parse(line);
            annotation.doc_id = row.at("doc_id").get<std::int64_t>();
            annotation.cuis = row.at("cuis").get<std::vector<std::string>>();
        } catch (const nlohmann::json::exception& e) {
            throw DataError(name + ": line " + std::to_string(line_number) + ": " + e.what());
        }
        for (const std::string& cui : annotation.cuis)
            if (!is_valid_cui(cui))
                throw DataError(name + ": line " + std::to_string(line_number) + ": malformed CUI '" +
                                cui + "'");
        if (!seen.insert(annotation.doc_id).second)
            throw DataError(name + ": line " + std::to_string(line_number) +
                            ": duplicate annotation for doc_id " + std::to_string(annotation.doc_id));
        annotations.push_back(std::move(annotation));
    }
    return annotations;
}

CuiFeatures vectorize_cuis(const std::vector<ConceptAnnotation>& annotations,
                           const std::vector<Subject>& subjects, std::uint32_t min_doc_count,
                           double max_doc_fraction) {
    std::unordered_map<std::int64_t, const ConceptAnnotation*> by_doc;
    for (const ConceptAnnotation& a : annotations) by_doc.emplace(a.doc_id, &a);

    std::vector<std::int64_t> missing;
    std::vector<TokenStream> corpus;
    corpus.reserve(subjects.size());
    for (const Subject& s : subjects) {
        auto it = by_doc.find(s.hadm_id);
        if (it == by_doc.end()) {
            missing.push_back(s.hadm_id);
            continue;
        }
        corpus.push_back(it->second->cuis);
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "missing concept annotations for " << missing.size() << " subject(s):";
        for (std::size_t i = 0; i < missing.size() && i < 10; ++i) msg << ' ' << missing[i];
        if (missing.size() > 10) msg << " ...";
        throw DataError(msg.str());
    }

    VocabularyOptions options;
    options.min_doc_count = min_doc_count;
    options.max_doc_fraction = max_doc_fraction;
    options.stem_terms = false;
    CuiFeatures features;
    features.vocab = build_vocabulary(corpus, StopwordList{}, options);
    if (features.vocab.size() == 0)
        throw DataError("empty CUI vocabulary: no concept survives the document-frequency bounds");

    features.data.dimension = static_cast<std::uint32_t>(features.vocab.size());
    features.data.vectors.reserve(subjects.size());
    features.data.labels.reserve(subjects.size());
    for (std::size_t i = 0; i < subjects.size(); ++i) {
        features.data.vectors.push_back(vectorize_tfidf(corpus[i], features.vocab));
        features.data.labels.push_back(subjects[i].label ? 1 : 0);
    }
    return features;
}

}  // namespace readmit
