#include "readmit/porter.hpp"

#include <array>
#include <cstddef>

namespace readmit {

namespace {

bool is_consonant(std::string_view w, std::size_t i) {
    char c = w[i];
    switch (c) {
        case 'a':
        case 'e':
        case 'i':
        case 'o':
        case 'u':
            return false;
        case 'y':
            // y is a vowel exactly when preceded by a consonant
            return i == 0 ? true : !is_consonant(w, i - 1);
        default:
            return true;
    }
}

// Measure m of a stem: number of VC sequences in [C](VC)^m[V].
int measure(std::string_view stem) {
    std::size_t i = 0;
    const std::size_t n = stem.size();
    while (i < n && is_consonant(stem, i)) ++i;
    int m = 0;
    for (;;) {
        while (i < n && !is_consonant(stem, i)) ++i;
        if (i == n) return m;
        while (i < n && is_consonant(stem, i)) ++i;
        ++m;
        if (i == n) return m;
    }
}

bool contains_vowel(std::string_view stem) {
    for (std::size_t i = 0; i < stem.size(); ++i) {
        if (!is_consonant(stem, i)) return true;
    }
    return false;
}

bool ends_double_consonant(std::string_view stem) {
    std::size_t n = stem.size();
    if (n < 2) return false;
    return stem[n - 1] == stem[n - 2] && is_consonant(stem, n - 1) && is_consonant(stem, n - 2);
}

// *o: stem ends consonant-vowel-consonant and the final consonant is not w, x or y.
bool ends_cvc(std::string_view stem) {
    std::size_t n = stem.size();
    if (n < 3) return false;
    if (!is_consonant(stem, n - 3) || is_consonant(stem, n - 2) || !is_consonant(stem, n - 1)) {
        return false;
    }
    char last = stem[n - 1];
    return last != 'w' && last != 'x' && last != 'y';
}

bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
};

// Applies the longest-matching rule of the table whose stem satisfies
// m(stem) > min_measure. Once a suffix matches, no shorter one is tried.
template <std::size_t N>
void apply_step(std::string& w, const std::array<Rule, N>& rules, int min_measure) {
    for (const Rule& r : rules) {
        if (!ends_with(w, r.suffix)) continue;
        std::string_view stem(w.data(), w.size() - r.suffix.size());
        if (measure(stem) > min_measure) {
            w.resize(stem.size());
            w.append(r.replacement);
        }
        return;
    }
}

void step_1a(std::string& w) {
    if (ends_with(w, "sses")) {
        w.resize(w.size() - 2);
    } else if (ends_with(w, "ies")) {
        w.resize(w.size() - 2);
    } else if (ends_with(w, "ss")) {
        // unchanged
    } else if (ends_with(w, "s")) {
        w.resize(w.size() - 1);
    }
}

void step_1b(std::string& w) {
    if (ends_with(w, "eed")) {
        std::string_view stem(w.data(), w.size() - 3);
        if (measure(stem) > 0) w.resize(w.size() - 1);
        return;
    }
    bool stripped = false;
    if (ends_with(w, "ed")) {
        std::string_view stem(w.data(), w.size() - 2);
        if (contains_vowel(stem)) {
            w.resize(stem.size());
            stripped = true;
        }
    } else if (ends_with(w, "ing")) {
        std::string_view stem(w.data(), w.size() - 3);
        if (contains_vowel(stem)) {
            w.resize(stem.size());
            stripped = true;
        }
    }
    if (!stripped) return;

    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
        w.push_back('e');
    } else if (ends_double_consonant(w)) {
        char last = w.back();
        if (last != 'l' && last != 's' && last != 'z') w.pop_back();
    } else if (measure(w) == 1 && ends_cvc(w)) {
        w.push_back('e');
    }
}

void step_1c(std::string& w) {
    if (ends_with(w, "y") && contains_vowel(std::string_view(w.data(), w.size() - 1))) {
        w.back() = 'i';
    }
}

// Step 2, (m > 0); table in longest-suffix-first order.
constexpr std::array<Rule, 20> kStep2 = {{
    {"ational", "ate"},
    {"ization", "ize"},
    {"iveness", "ive"},
    {"fulness", "ful"},
    {"ousness", "ous"},
    {"tional", "tion"},
    {"biliti", "ble"},
    {"entli", "ent"},
    {"ousli", "ous"},
    {"ation", "ate"},
    {"alism", "al"},
    {"aliti", "al"},
    {"iviti", "ive"},
    {"enci", "ence"},
    {"anci", "ance"},
    {"izer", "ize"},
    {"abli", "able"},
    {"alli", "al"},
    {"ator", "ate"},
    {"eli", "e"},
}};

// Step 3, (m > 0).
constexpr std::array<Rule, 7> kStep3 = {{
    {"icate", "ic"},
    {"ative", ""},
    {"alize", "al"},
    {"iciti", "ic"},
    {"ical", "ic"},
    {"ness", ""},
    {"ful", ""},
}};

// Step 4, (m > 1), longest-suffix-first. "ion" additionally requires the stem
// to end in s or t; once its suffix matches, no shorter rule is tried.
constexpr std::array<Rule, 19> kStep4 = {{
    {"ement", ""},
    {"ance", ""},
    {"ence", ""},
    {"able", ""},
    {"ible", ""},
    {"ment", ""},
    {"ant", ""},
    {"ent", ""},
    {"ion", ""},
    {"ism", ""},
    {"ate", ""},
    {"iti", ""},
    {"ous", ""},
    {"ive", ""},
    {"ize", ""},
    {"al", ""},
    {"er", ""},
    {"ic", ""},
    {"ou", ""},
}};

void step_4(std::string& w) {
    for (const Rule& r : kStep4) {
        if (!ends_with(w, r.suffix)) continue;
        std::string_view stem(w.data(), w.size() - r.suffix.size());
        if (r.suffix == "ion" && (stem.empty() || (stem.back() != 's' && stem.back() != 't'))) {
            return;
        }
        if (measure(stem) > 1) w.resize(stem.size());
        return;
    }
}

void step_5a(std::string& w) {
    if (!ends_with(w, "e")) return;
    std::string_view stem(w.data(), w.size() - 1);
    int m = measure(stem);
    if (m > 1 || (m == 1 && !ends_cvc(stem))) w.pop_back();
}

void step_5b(std::string& w) {
    if (w.size() >= 2 && w.back() == 'l' && ends_double_consonant(w) && measure(w) > 1) {
        w.pop_back();
    }
}

}  // namespace

std::string porter_stem(std::string_view token) {
    std::string w(token);
    if (w.empty()) return w;
    step_1a(w);
    step_1b(w);
    step_1c(w);
    apply_step(w, kStep2, 0);
    apply_step(w, kStep3, 0);
    step_4(w);
    step_5a(w);
    step_5b(w);
    return w;
}

}  // namespace readmit
