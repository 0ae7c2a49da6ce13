#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace readmit {

struct SynthSpec {
    std::size_t n_subjects = 2000;
    double positive_rate = 0.06;
    std::size_t n_signal_terms = 10;
    double signal_strength = 0.8;
    std::size_t vocabulary_size = 600;
    std::uint64_t seed = 1;
};

/// The planted terms the generator embeds, in priority order. The first
/// n_signal_terms of these carry the label signal; past the builtin clinical
/// words the list continues with generated ones.
std::vector<std::string> synth_signal_terms(std::size_t n);

/// Emits an admissions CSV and a notes CSV that round-trip through the cohort
/// builder. Every subject gets an index admission with one discharge summary;
/// positive subjects get an unplanned readmission within 30 days. Sprinkled
/// extra subjects exercise the newborn, expired, no-summary, and
/// multiple-summary exclusion paths. Positive summaries contain each signal
/// term with probability signal_strength, negative summaries with that
/// probability divided by 5; the first half of the signal terms co-occur as a
/// block while the rest fire independently. Output is deterministic in the
/// seed. Throws ContractError on an invalid spec.
void write_synth_corpus(const SynthSpec& spec, std::ostream& admissions, std::ostream& notes);

}  // namespace readmit
