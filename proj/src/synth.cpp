#include "readmit/synth.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "readmit/civil_time.hpp"
#include "readmit/errors.hpp"
#include "readmit/rng.hpp"

namespace readmit {
namespace {

const char* const kClinicalTerms[] = {
    "tracheotomy", "fistula",  "bipap",     "hematoma", "sepsis",
    "pneumonia",   "dialysis", "tamponade", "empyema",  "delirium",
};
constexpr std::size_t kClinicalTermCount = sizeof(kClinicalTerms) / sizeof(kClinicalTerms[0]);

// Letter-only pseudo-words keep the tokenizer from splitting them. Background
// words avoid the consonant 'x' so the generated signal words (prefixed "xa")
// can never collide with them, and avoid the vowel 'e' so no suffix rule of
// the stemmer fires.
const char* const kConsonants[] = {"b", "d", "f", "g", "k", "l", "m",
                                   "n", "p", "r", "t", "v", "z"};
const char* const kVowels[] = {"a", "i", "o", "u"};

std::string syllable(std::size_t k) {
    return std::string(kConsonants[(k / 4) % 13]) + kVowels[k % 4];
}

std::string pseudo_word(std::size_t k) {
    return syllable(k % 52) + syllable((k / 52) % 52) + syllable((k / (52 * 52)) % 52);
}

std::string csv_text(const std::string& raw) {
    std::string out = "\"";
    for (char c : raw) {
        if (c == '"') {
            out += "\"\"";
        } else {
            out += c;
        }
    }
    out += '"';
    return out;
}

struct NoteWriter {
    std::ostream& out;
    std::int64_t next_row_id = 1;

    void write(std::int64_t subject, std::int64_t hadm, const std::string& category,
               const std::string& text) {
        out << next_row_id++ << ',' << subject << ',' << hadm << ',' << category << ','
            << csv_text(text) << '\n';
    }
};

struct AdmissionWriter {
    std::ostream& out;
    std::int64_t next_row_id = 1;

    void write(std::int64_t subject, std::int64_t hadm, Timestamp admit, Timestamp discharge,
               const char* type, bool expired) {
        out << next_row_id++ << ',' << subject << ',' << hadm << ',' << format_timestamp(admit)
            << ',' << format_timestamp(discharge) << ','
            << (expired ? format_timestamp(discharge) : std::string()) << ',' << type << ','
            << (expired ? 1 : 0) << '\n';
    }
};

std::string render_note(std::vector<std::string> words, Rng& rng) {
    if (words.empty()) {
        words.push_back("stable");
    }
    std::string text;
    std::size_t sentence_left = 0;
    std::size_t sentences = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (sentence_left == 0) {
            if (!text.empty()) {
                text += ". ";
                ++sentences;
                if (sentences % 3 == 0) {
                    text.back() = '\n';
                }
            }
            sentence_left = 8 + rng.bounded(6);
            words[i][0] = static_cast<char>(words[i][0] - 'a' + 'A');
        } else {
            text += rng.bounded(9) == 0 ? ", " : " ";
        }
        text += words[i];
        --sentence_left;
    }
    text += '.';
    return text;
}

}  // namespace

std::vector<std::string> synth_signal_terms(std::size_t n) {
    std::vector<std::string> terms;
    for (std::size_t i = 0; i < n; ++i) {
        if (i < kClinicalTermCount) {
            terms.emplace_back(kClinicalTerms[i]);
        } else {
            terms.push_back("xa" + pseudo_word(i - kClinicalTermCount));
        }
    }
    return terms;
}

void write_synth_corpus(const SynthSpec& spec, std::ostream& admissions, std::ostream& notes) {
    if (spec.n_subjects == 0) {
        throw ContractError("synth: n_subjects must be positive");
    }
    if (!(spec.positive_rate > 0.0 && spec.positive_rate < 1.0)) {
        throw ContractError("synth: positive_rate must lie strictly between 0 and 1");
    }
    if (!(spec.signal_strength >= 0.0 && spec.signal_strength <= 1.0)) {
        throw ContractError("synth: signal_strength must lie in [0, 1]");
    }
    if (spec.n_signal_terms >= spec.vocabulary_size) {
        throw ContractError("synth: n_signal_terms must be smaller than vocabulary_size");
    }

    const auto signal = synth_signal_terms(spec.n_signal_terms);
    const std::size_t n_background = spec.vocabulary_size - spec.n_signal_terms;
    std::vector<std::string> background(n_background);
    for (std::size_t k = 0; k < n_background; ++k) {
        background[k] = pseudo_word(k);
    }
    // Terms 0 .. bundle-1 rise and fall together; the rest are independent.
    const std::size_t bundle = spec.n_signal_terms / 2;

    Rng rng(spec.seed);
    AdmissionWriter adm{admissions};
    NoteWriter note{notes};
    admissions << "ROW_ID,SUBJECT_ID,HADM_ID,ADMITTIME,DISCHTIME,DEATHTIME,ADMISSION_TYPE,"
                  "HOSPITAL_EXPIRE_FLAG\n";
    notes << "ROW_ID,SUBJECT_ID,HADM_ID,CATEGORY,TEXT\n";

    const Timestamp base = *parse_timestamp("2130-01-01 00:00:00");
    const auto day = static_cast<Timestamp>(kSecondsPerDay);

    auto background_note = [&](std::size_t length) {
        std::vector<std::string> words(length);
        for (auto& w : words) {
            w = background[rng.bounded(n_background)];
        }
        return words;
    };

    for (std::size_t i = 0; i < spec.n_subjects; ++i) {
        const std::int64_t subject = 1000 + static_cast<std::int64_t>(i);
        const std::int64_t hadm = 100000 + 8 * static_cast<std::int64_t>(i);
        const bool positive = rng.uniform() < spec.positive_rate;

        const Timestamp admit = base + static_cast<Timestamp>(i) * day +
                                static_cast<Timestamp>(rng.bounded(86400));
        const Timestamp discharge = admit + (2 + static_cast<Timestamp>(rng.bounded(12))) * day +
                                    static_cast<Timestamp>(rng.bounded(86400));
        adm.write(subject, hadm, admit, discharge, rng.bounded(4) == 0 ? "URGENT" : "EMERGENCY",
                  false);

        auto words = background_note(40 + rng.bounded(40));
        if (!signal.empty()) {
            const double scale = positive ? 1.0 : 0.2;
            const bool bundle_fires = rng.uniform() < spec.signal_strength * scale;
            for (std::size_t t = 0; t < signal.size(); ++t) {
                const bool fires =
                    t < bundle ? bundle_fires : rng.uniform() < spec.signal_strength * scale;
                if (!fires) {
                    continue;
                }
                const std::size_t copies = 1 + (rng.bounded(10) < 3 ? 1 : 0);
                for (std::size_t c = 0; c < copies; ++c) {
                    words.insert(words.begin() + static_cast<std::ptrdiff_t>(
                                                     rng.bounded(words.size() + 1)),
                                 signal[t]);
                }
            }
        }
        note.write(subject, hadm, "Discharge summary", render_note(std::move(words), rng));

        if (positive) {
            const double delay_days = 0.5 + rng.uniform() * 28.5;
            const Timestamp readmit =
                discharge + static_cast<Timestamp>(delay_days * kSecondsPerDay);
            adm.write(subject, hadm + 1, readmit, readmit + 2 * day, "EMERGENCY", false);
        } else {
            const double r = rng.uniform();
            if (r < 0.15) {
                const Timestamp later =
                    discharge + static_cast<Timestamp>((31.0 + rng.uniform() * 60.0) *
                                                       kSecondsPerDay);
                adm.write(subject, hadm + 1, later, later + 2 * day, "EMERGENCY", false);
            } else if (r < 0.25) {
                const Timestamp later =
                    discharge + static_cast<Timestamp>((3.0 + rng.uniform() * 20.0) *
                                                       kSecondsPerDay);
                adm.write(subject, hadm + 1, later, later + day, "ELECTIVE", false);
            }
        }

        const Timestamp extra_admit = admit + static_cast<Timestamp>(rng.bounded(43200));
        if (i % 101 == 13) {
            const std::int64_t s = 500000 + static_cast<std::int64_t>(i);
            adm.write(s, hadm + 2, extra_admit, extra_admit + 3 * day, "NEWBORN", false);
            note.write(s, hadm + 2, "Discharge summary",
                       render_note(background_note(20 + rng.bounded(20)), rng));
        }
        if (i % 103 == 17) {
            const std::int64_t s = 600000 + static_cast<std::int64_t>(i);
            adm.write(s, hadm + 3, extra_admit, extra_admit + 5 * day, "EMERGENCY", true);
            note.write(s, hadm + 3, "Discharge summary",
                       render_note(background_note(20 + rng.bounded(20)), rng));
        }
        if (i % 107 == 19) {
            const std::int64_t s = 700000 + static_cast<std::int64_t>(i);
            adm.write(s, hadm + 4, extra_admit, extra_admit + 4 * day, "URGENT", false);
            note.write(s, hadm + 4, "Discharge summary",
                       render_note(background_note(15 + rng.bounded(10)), rng));
            note.write(s, hadm + 4, "Discharge summary",
                       render_note(background_note(15 + rng.bounded(10)), rng));
        }
        if (i % 109 == 23) {
            const std::int64_t s = 800000 + static_cast<std::int64_t>(i);
            adm.write(s, hadm + 5, extra_admit, extra_admit + 2 * day, "EMERGENCY", false);
            note.write(s, hadm + 5, "Radiology",
                       render_note(background_note(10 + rng.bounded(10)), rng));
        }
    }
}

}  // namespace readmit
