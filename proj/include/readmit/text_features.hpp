#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "readmit/sparse.hpp"

namespace readmit {

using TokenStream = std::vector<std::string>;

/// Lowercases, splits on every character that is not an ASCII letter, and
/// drops tokens shorter than two characters.
TokenStream tokenize(std::string_view text);

/// Case-insensitive stopword membership. Files hold one word per line;
/// blank lines and lines starting with '#' are ignored.
class StopwordList {
public:
    StopwordList() = default;
    static StopwordList from_stream(std::istream& in);
    static StopwordList from_file(const std::string& path);

    bool contains(const std::string& lowercase_token) const {
        return words_.count(lowercase_token) != 0;
    }
    std::size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

/// Applies stopword removal and (optionally) stemming to a token stream.
/// A token is dropped when the raw token or its stem is a stopword; the
/// surviving stem (or raw token when stemming is off) is emitted in order.
std::vector<std::string> prepare_terms(const TokenStream& tokens, const StopwordList& stopwords,
                                       bool stem_terms);

struct VocabularyOptions {
    std::uint32_t min_doc_count = 5;  // keep terms appearing in at least this many documents
    double max_doc_fraction = 0.95;   // drop terms in more than floor(fraction * corpus) documents
    bool stem_terms = true;
};

/// Term table with document frequencies and idf weights. Terms are unique
/// and sorted lexicographically; the position of a term is its feature index.
struct Vocabulary {
    std::vector<std::string> terms;
    std::vector<std::uint32_t> doc_frequency;
    std::vector<double> idf;
    std::uint64_t corpus_size = 0;
    VocabularyOptions settings;

    std::size_t size() const { return terms.size(); }
    std::optional<std::uint32_t> index_of(std::string_view term) const;
    void validate() const;
};

/// idf(term) = ln(corpus_size / doc_frequency) + 1, natural log.
double idf_weight(std::uint64_t corpus_size, std::uint32_t doc_frequency);

/// Counts document frequencies over prepared documents and keeps terms with
/// min_doc_count <= df <= floor(max_doc_fraction * corpus_size).
/// `corpus` holds raw token streams; stopword removal and stemming happen
/// per `options` before counting.
Vocabulary build_vocabulary(const std::vector<TokenStream>& corpus, const StopwordList& stopwords,
                            const VocabularyOptions& options = {});

/// tf-idf vector for one prepared document: value = count * idf per
/// in-vocabulary term, then L2-normalized. Unknown terms are ignored; a
/// document with no in-vocabulary terms yields an empty (all-zero) vector.
SparseVector vectorize_tfidf(const std::vector<std::string>& terms, const Vocabulary& vocab);

void write_vocabulary(std::ostream& out, const Vocabulary& vocab);
Vocabulary read_vocabulary(std::istream& in, const std::string& name);

}  // namespace readmit
