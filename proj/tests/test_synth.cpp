#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "readmit/cohort.hpp"
#include "readmit/errors.hpp"
#include "readmit/synth.hpp"

using namespace readmit;

namespace {

Cohort synth_cohort(const SynthSpec& spec) {
    std::ostringstream admissions;
    std::ostringstream notes;
    write_synth_corpus(spec, admissions, notes);
    std::istringstream adm_in(admissions.str());
    std::istringstream note_in(notes.str());
    auto parsed_adm = parse_admissions(adm_in, "admissions");
    auto parsed_notes = parse_notes(note_in, "notes");
    return build_cohort(parsed_adm, parsed_notes);
}

}  // namespace

TEST_CASE("synth output is byte-identical for a fixed seed") {
    SynthSpec spec;
    spec.n_subjects = 120;
    spec.positive_rate = 0.25;
    spec.seed = 5;
    std::ostringstream a1;
    std::ostringstream n1;
    std::ostringstream a2;
    std::ostringstream n2;
    write_synth_corpus(spec, a1, n1);
    write_synth_corpus(spec, a2, n2);
    CHECK(a1.str() == a2.str());
    CHECK(n1.str() == n2.str());

    spec.seed = 6;
    std::ostringstream a3;
    std::ostringstream n3;
    write_synth_corpus(spec, a3, n3);
    CHECK(a1.str() != a3.str());
}

TEST_CASE("synth corpus builds a cohort of exactly n_subjects") {
    SynthSpec spec;
    spec.n_subjects = 500;
    spec.positive_rate = 0.2;
    spec.seed = 9;
    Cohort cohort = synth_cohort(spec);
    CHECK(cohort.stats.retained_count == 500);
    CHECK(cohort.subjects.size() == 500);
    const double fraction =
        static_cast<double>(cohort.stats.positive_count) / 500.0;
    CHECK(fraction > 0.14);
    CHECK(fraction < 0.26);
    const auto hist_total = std::accumulate(cohort.stats.interval_histogram.begin(),
                                            cohort.stats.interval_histogram.end(),
                                            std::uint64_t{0});
    CHECK(hist_total == cohort.stats.positive_count);
}

TEST_CASE("synth reaches every exclusion path at acceptance scale") {
    SynthSpec spec;
    spec.n_subjects = 2000;
    spec.positive_rate = 0.06;
    spec.seed = 42;
    Cohort cohort = synth_cohort(spec);
    CHECK(cohort.stats.excluded_newborn > 0);
    CHECK(cohort.stats.excluded_expired > 0);
    CHECK(cohort.stats.excluded_no_summary > 0);
    CHECK(cohort.stats.excluded_multiple_summaries > 0);
    CHECK(cohort.stats.retained_count == 2000);
}

TEST_CASE("zero signal strength leaves no planted terms in any note") {
    SynthSpec spec;
    spec.n_subjects = 150;
    spec.positive_rate = 0.3;
    spec.signal_strength = 0.0;
    spec.seed = 3;
    std::ostringstream admissions;
    std::ostringstream notes;
    write_synth_corpus(spec, admissions, notes);
    for (const auto& term : synth_signal_terms(spec.n_signal_terms)) {
        CHECK(notes.str().find(term) == std::string::npos);
    }
}

TEST_CASE("positive summaries carry planted terms far more often") {
    SynthSpec spec;
    spec.n_subjects = 400;
    spec.positive_rate = 0.5;
    spec.signal_strength = 0.8;
    spec.seed = 13;
    Cohort cohort = synth_cohort(spec);
    const auto terms = synth_signal_terms(spec.n_signal_terms);
    std::size_t pos_hits = 0;
    std::size_t pos_total = 0;
    std::size_t neg_hits = 0;
    std::size_t neg_total = 0;
    for (const auto& subject : cohort.subjects) {
        for (const auto& term : terms) {
            const bool hit = subject.summary_text.find(term) != std::string::npos;
            if (subject.label) {
                pos_hits += hit;
                ++pos_total;
            } else {
                neg_hits += hit;
                ++neg_total;
            }
        }
    }
    const double pos_rate = static_cast<double>(pos_hits) / static_cast<double>(pos_total);
    const double neg_rate = static_cast<double>(neg_hits) / static_cast<double>(neg_total);
    CHECK(pos_rate > 0.7);
    CHECK(pos_rate < 0.9);
    CHECK(neg_rate > 0.08);
    CHECK(neg_rate < 0.25);
}

TEST_CASE("signal term list extends uniquely past the builtin words") {
    auto terms = synth_signal_terms(25);
    REQUIRE(terms.size() == 25);
    CHECK(terms[0] == "tracheotomy");
    CHECK(terms[9] == "delirium");
    std::set<std::string> unique(terms.begin(), terms.end());
    CHECK(unique.size() == terms.size());
    for (const auto& term : terms) {
        for (char c : term) {
            CHECK(std::islower(static_cast<unsigned char>(c)));
        }
    }
}

TEST_CASE("invalid synth specs are rejected") {
    SynthSpec spec;
    spec.n_subjects = 0;
    std::ostringstream a;
    std::ostringstream n;
    CHECK_THROWS_AS(write_synth_corpus(spec, a, n), ContractError);
    spec.n_subjects = 10;
    spec.positive_rate = 0.0;
    CHECK_THROWS_AS(write_synth_corpus(spec, a, n), ContractError);
    spec.positive_rate = 0.5;
    spec.signal_strength = 1.5;
    CHECK_THROWS_AS(write_synth_corpus(spec, a, n), ContractError);
    spec.signal_strength = 0.5;
    spec.n_signal_terms = 600;
    spec.vocabulary_size = 600;
    CHECK_THROWS_AS(write_synth_corpus(spec, a, n), ContractError);
}
