#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "readmit/cohort.hpp"
#include "readmit/sparse.hpp"
#include "readmit/text_features.hpp"

namespace readmit {

/// true for "C" followed by exactly seven digits
bool is_valid_cui(std::string_view cui);

struct LexiconEntry {
    std::vector<std::string> phrase;  // stems, in order
    std::string cui;
    std::string preferred_name;
};

/// Phrase-to-concept dictionary. Phrases are stored as stem sequences; one
/// phrase may map to several CUIs.
class ConceptLexicon {
public:
    void add(LexiconEntry entry);

    const std::vector<LexiconEntry>& entries() const { return entries_; }
    std::size_t max_phrase_length() const { return max_phrase_length_; }

    /// CUIs for an exact stem sequence, in file order; nullptr when absent.
    const std::vector<std::string>* find(const std::vector<std::string>& stems, std::size_t begin,
                                         std::size_t length) const;

    /// Preferred name of a CUI (first entry wins), or empty string.
    std::string preferred_name(const std::string& cui) const;

private:
    std::vector<LexiconEntry> entries_;
    std::unordered_map<std::string, std::vector<std::string>> cuis_by_phrase_;
    std::unordered_map<std::string, std::string> name_by_cui_;
    std::size_t max_phrase_length_ = 0;
};

/// Loads a tab-separated lexicon: phrase, CUI, preferred name. Phrases are
/// tokenized and stemmed on load; duplicate (phrase, cui) lines collapse to
/// one entry. Blank lines and '#' comments are skipped. Errors carry the
/// line number.
ConceptLexicon load_lexicon(std::istream& in, const std::string& name);
ConceptLexicon load_lexicon_file(const std::string& path);

/// Greedy left-to-right longest-match over stem n-grams (up to the lexicon's
/// longest phrase). A match emits every CUI of that phrase and the scan
/// resumes after the matched span; unmatched stems emit nothing. The result
/// is the concept multiset in scan order.
std::vector<std::string> map_concepts(const std::vector<std::string>& stems,
                                      const ConceptLexicon& lexicon);

struct ConceptAnnotation {
    std::int64_t doc_id = 0;  // hadm_id
    std::vector<std::string> cuis;
};

/// Reads JSON-lines {doc_id, cuis:[...]} from an external concept mapper.
/// Duplicate doc_ids and malformed CUIs are errors (with line numbers);
/// doc_ids unknown to any particular cohort are not checked here.
std::vector<ConceptAnnotation> import_annotations(std::istream& in, const std::string& name);

struct CuiFeatures {
    Vocabulary vocab;
    Dataset data;
};

/// Bag-of-CUIs featurization: each CUI string is a term; the vocabulary and
/// tf-idf treatment match the word pipeline (same df bounds, no stopwords,
/// no stemming). Every subject must have exactly one annotation (missing
/// doc_ids are listed in the error); annotations for unknown doc_ids are
/// ignored. An empty vocabulary is an error.
CuiFeatures vectorize_cuis(const std::vector<ConceptAnnotation>& annotations,
                           const std::vector<Subject>& subjects,
                           std::uint32_t min_doc_count = 5, double max_doc_fraction = 0.95);

}  // namespace readmit
