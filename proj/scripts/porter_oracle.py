"""Reference implementation of the Porter (1980) suffix-stripping algorithm.

Used only to generate tests/data/porter_vocab.txt. Kept independent of the
C++ implementation: rules and conditions are transcribed directly from the
published algorithm description, and validated below against every worked
example pair that description gives, step by step.
"""

VOWELS = set("aeiou")


def _cons(word, i):
    c = word[i]
    if c in VOWELS:
        return False
    if c == "y":
        return True if i == 0 else not _cons(word, i - 1)
    return True


def _forms(word):
    """Sequence of 'c'/'v' classifications for a stem."""
    return ["c" if _cons(word, i) else "v" for i in range(len(word))]


def measure(stem):
    """m in [C](VC)^m[V]."""
    run = "".join(_forms(stem))
    # collapse runs
    collapsed = []
    for ch in run:
        if not collapsed or collapsed[-1] != ch:
            collapsed.append(ch)
    return "".join(collapsed).count("vc")


def has_vowel(stem):
    return "v" in _forms(stem)


def double_cons(stem):
    return (
        len(stem) >= 2
        and stem[-1] == stem[-2]
        and _cons(stem, len(stem) - 1)
        and _cons(stem, len(stem) - 2)
    )


def cvc(stem):
    if len(stem) < 3:
        return False
    if not (_cons(stem, len(stem) - 3) and not _cons(stem, len(stem) - 2) and _cons(stem, len(stem) - 1)):
        return False
    return stem[-1] not in "wxy"


def _replace_longest(word, rules, min_m):
    """rules: list of (suffix, replacement). Longest matching suffix is
    selected; its m-condition then gates the rewrite; the step always ends."""
    for suf, rep in sorted(rules, key=lambda r: -len(r[0])):
        if word.endswith(suf):
            stem = word[: len(word) - len(suf)]
            if measure(stem) > min_m:
                return stem + rep
            return word
    return word


def step1a(word):
    if word.endswith("sses"):
        return word[:-2]
    if word.endswith("ies"):
        return word[:-2]
    if word.endswith("ss"):
        return word
    if word.endswith("s"):
        return word[:-1]
    return word


def step1b(word):
    if word.endswith("eed"):
        stem = word[:-3]
        return stem + "ee" if measure(stem) > 0 else word
    if word.endswith("ed") and has_vowel(word[:-2]):
        word = word[:-2]
    elif word.endswith("ing") and has_vowel(word[:-3]):
        word = word[:-3]
    else:
        return word
    # post-strip fix-up
    if word.endswith(("at", "bl", "iz")):
        return word + "e"
    if double_cons(word) and word[-1] not in "lsz":
        return word[:-1]
    if measure(word) == 1 and cvc(word):
        return word + "e"
    return word


def step1c(word):
    if word.endswith("y") and has_vowel(word[:-1]):
        return word[:-1] + "i"
    return word


STEP2 = [
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("abli", "able"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
]

STEP3 = [
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
]

STEP4_PLAIN = [
    ("al", ""), ("ance", ""), ("ence", ""), ("er", ""), ("ic", ""),
    ("able", ""), ("ible", ""), ("ant", ""), ("ement", ""), ("ment", ""),
    ("ent", ""), ("ou", ""), ("ism", ""), ("ate", ""), ("iti", ""),
    ("ous", ""), ("ive", ""), ("ize", ""),
]


def step2(word):
    return _replace_longest(word, STEP2, 0)


def step3(word):
    return _replace_longest(word, STEP3, 0)


def step4(word):
    suffixes = sorted(STEP4_PLAIN + [("ion", "")], key=lambda r: -len(r[0]))
    for suf, rep in suffixes:
        if word.endswith(suf):
            stem = word[: len(word) - len(suf)]
            if suf == "ion" and not stem.endswith(("s", "t")):
                return word
            if measure(stem) > 1:
                return stem + rep
            return word
    return word


def step5a(word):
    if word.endswith("e"):
        stem = word[:-1]
        m = measure(stem)
        if m > 1 or (m == 1 and not cvc(stem)):
            return stem
    return word


def step5b(word):
    if word.endswith("l") and double_cons(word) and measure(word) > 1:
        return word[:-1]
    return word


def stem(word):
    for step in (step1a, step1b, step1c, step2, step3, step4, step5a, step5b):
        word = step(word)
    return word


# ----------------------------------------------------------------------
# Validation: every example pair the 1980 description gives, per step,
# plus its fully worked multi-step examples.
# ----------------------------------------------------------------------

_STEP_EXAMPLES = {
    step1a: [
        ("caresses", "caress"), ("ponies", "poni"), ("ties", "ti"),
        ("caress", "caress"), ("cats", "cat"),
    ],
    step1b: [
        ("feed", "feed"), ("agreed", "agree"), ("plastered", "plaster"),
        ("bled", "bled"), ("motoring", "motor"), ("sing", "sing"),
        ("conflated", "conflate"), ("troubled", "trouble"), ("sized", "size"),
        ("hopping", "hop"), ("tanned", "tan"), ("falling", "fall"),
        ("hissing", "hiss"), ("fizzed", "fizz"), ("failing", "fail"),
        ("filing", "file"),
    ],
    step1c: [("happy", "happi"), ("sky", "sky")],
    step2: [
        ("relational", "relate"), ("conditional", "condition"),
        ("rational", "rational"), ("valenci", "valence"),
        ("hesitanci", "hesitance"), ("digitizer", "digitize"),
        ("conformabli", "conformable"), ("radicalli", "radical"),
        ("differentli", "different"), ("vileli", "vile"),
        ("analogousli", "analogous"), ("vietnamization", "vietnamize"),
        ("predication", "predicate"), ("operator", "operate"),
        ("feudalism", "feudal"), ("decisiveness", "decisive"),
        ("hopefulness", "hopeful"), ("callousness", "callous"),
        ("formaliti", "formal"), ("sensitiviti", "sensitive"),
        ("sensibiliti", "sensible"),
    ],
    step3: [
        ("triplicate", "triplic"), ("formative", "form"), ("formalize", "formal"),
        ("electriciti", "electric"), ("electrical", "electric"),
        ("hopeful", "hope"), ("goodness", "good"),
    ],
    step4: [
        ("revival", "reviv"), ("allowance", "allow"), ("inference", "infer"),
        ("airliner", "airlin"), ("gyroscopic", "gyroscop"),
        ("adjustable", "adjust"), ("defensible", "defens"),
        ("irritant", "irrit"), ("replacement", "replac"),
        ("adjustment", "adjust"), ("dependent", "depend"),
        ("adoption", "adopt"), ("homologou", "homolog"),
        ("communism", "commun"), ("activate", "activ"),
        ("angulariti", "angular"), ("homologous", "homolog"),
        ("effective", "effect"), ("bowdlerize", "bowdler"),
    ],
    step5a: [("probate", "probat"), ("rate", "rate"), ("cease", "ceas")],
    step5b: [("controll", "control"), ("roll", "roll")],
}

_PIPELINE_EXAMPLES = [
    # worked examples of the full algorithm
    ("generalizations", "gener"),
    ("oscillators", "oscil"),
    ("connect", "connect"),
    ("connected", "connect"),
    ("connecting", "connect"),
    ("connection", "connect"),
    ("connections", "connect"),
    ("relational", "relat"),
    ("sky", "sky"),
    ("caresses", "caress"),
]


def self_test():
    for fn, pairs in _STEP_EXAMPLES.items():
        for word, expected in pairs:
            got = fn(word)
            assert got == expected, f"{fn.__name__}({word}) = {got}, expected {expected}"
    for word, expected in _PIPELINE_EXAMPLES:
        got = stem(word)
        assert got == expected, f"stem({word}) = {got}, expected {expected}"


self_test()

if __name__ == "__main__":
    import sys

    for w in sys.argv[1:]:
        print(w, stem(w))
