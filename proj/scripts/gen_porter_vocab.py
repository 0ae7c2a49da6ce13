"""Generates tests/data/porter_vocab.txt: one "word<TAB>stem" pair per line.

The list mixes everyday English, clinical vocabulary, the suffix families the
algorithm targets, and machine-built inflections. Words whose stems are not
fixed points of the stemmer (e.g. "university" -> "univers" -> "univ") are
excluded so the file doubles as an idempotence fixture.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
import porter_oracle as oracle

BASE = """
abandon ability able abnormal absorb abuse accept access accident accomplish
account accuse ache achieve acid acquire act action activate active actual
acute adapt add address adhere adjust administer admission admit adopt advance
adverse advise aerosol affect age agitate agree aid airway alert align allow
almost alter ambulate amend amount analyze anemia angina angle announce annual
answer antibiotic anxiety appear apply appoint approach approve area argue
arise arrange arrest arrive artery aspirate assess assign assist associate
assume assure atrophy attach attack attempt attend attribute augment auscultate
authorize avoid awake balance bandage base bathe bear beat become bed begin
behave believe benefit bleed block blood board body bolus bone book border
bother bound bowel brace brain breath breathe bring bruise build burn bypass
calculate calm cancel cancer cannulate capture cardiac care caress carry
catheter cause cease center certain challenge chance change charge chart check
chest choose chronic circulate cite claim classify clean clear climb clinic
close clot code cognition cold collapse collect comfort command comment commit
common communicate compare compensate complain complete complicate comply
compose compress compute conclude condition conduct confirm conflate confuse
congest connect consent consider consist console constipate constrict consult
consume contact contain continue contract contribute control convert convey
convince cooperate coordinate cope correct cough count course cover create
culture cure current cut cycle damage date debride decide decline decrease
deem defend defer deficit define deflate degrade dehydrate delay delirium
deliver demand demonstrate denies deny depend deplete deposit depress derive
describe design desire detect deteriorate determine develop deviate device
diagnose dialysis diet differ digest digitize dilate diminish direct discharge
disclose discontinue discover discuss disease dismiss disorder displace
dispose dissect distend distress distribute diurese divide dizziness document
dose drain draw dress drink drip drive drop drug dwell dye dying ease eat
edema educate effect effuse elect electric elevate eliminate emerge emphasize
employ empty enable encounter encourage end endorse endure engage enjoy enlarge
enroll ensure enter equal equip escalate establish estimate evaluate evolve
examine exceed excise excite exclude excrete execute exercise exert exhibit
exist expand expect expel experience expire explain explore expose express
extend extract extubate fail fall falter fast fatigue feed feel fever fill
filter find finish fistula fit fix flex float flow fluctuate flush focus
follow forget form formalize fracture fragment frame free frequent function
further gain gait gather general generalize generate give glucose govern grade
graft grasp great guard guide handle happen happy harm heal hear heart help
hematoma hemorrhage hesitate history hold home hope hospital hydrate identify
ignore imagine immobilize impact impair implant imply improve incise include
increase indicate infarct infect infer inflame inflate inform infuse ingest
inhale initiate inject injure insert inspect inspire install instruct intend
interact interest interfere interpret interrupt intervene interview intubate
invade involve irrigate irritate isolate issue join judge keep kidney know
label labor lack language lapse large last late laugh lead leak learn leave
lesion level lie lift limit line link lipid liquid list listen live locate
lodge look loose lose lower lung maintain make manage mandate manipulate mark
mask measure mediate medicate meet mention mineral minimize miss mobilize
moderate modify monitor motor move name narrow nebulize necessitate need
neglect nod normal note notice notify nourish number nurse obscure observe
obstruct obtain occlude occupy occur offer open operate oppose order organize
orient oscillate outline overload oxygenate pace pain palliate palpate palsy
pass patch patient pause perforate perform perfuse persist pertain phone place
plan plaster please pneumonia point ponder poor position possess post pour
practice precede predict prefer prepare prescribe present preserve press
pressure presume prevent probe proceed process produce progress promote prompt
prone propose protect prove provide provoke pull pulse pump puncture pursue
push qualify question radiate raise range rate reach react read realize
reassure recall receive recognize recommend reconcile record recover recruit
reduce refer refine reflect refuse regard register regress regulate rehab
reinforce reject relate relax release relieve rely remain remark remember
remind remove renal render repair repeat replace report represent request
require rescue resect resident resist resolve respect respire respond rest
restore restrain result resume retain retract return reveal review revise
rotate rouse route run rupture saturate save scan schedule sclerose screen
seal secure sedate see seek seize select sense separate sepsis serve set
settle severe shake share shift show sign simplify sit size skin sleep slide
slow smooth sneeze sound space speak specify speculate spell spend spike
splint stabilize staff stage stand start state stay stent step sterile
stimulate stop store strain stress stretch strike structure struggle study
submit succeed suction suffer suggest suppress surround suspect sustain
suture swallow swell tamponade taper target teach tear tell tend test thank
think thrive tilt tire tissue titrate tolerate total touch trace tracheotomy
track transfer transfuse transmit transplant trauma travel treat tremble
trend trigger trouble try tube turn ulcerate understand undergo unify update
urge use usual utilize value valve vary ventilate verify view visit void
volume wait wake walk want warm warn wash waste watch weak wean wear weigh
wheeze widen withdraw withhold witness work worry wound wrap write yield
""".split()

SPEC_WORDS = """
caresses ponies ties caress cats feed agreed plastered bled motoring sing
conflated troubled sized hopping tanned falling hissing fizzed failing filing
happy sky relational conditional rational valenci hesitanci digitizer
conformabli radicalli differentli vileli analogousli vietnamization
predication operator feudalism decisiveness hopefulness callousness formaliti
sensitiviti sensibiliti triplicate formative electriciti electrical hopeful
goodness revival allowance inference airliner gyroscopic adjustable defensible
irritant replacement adjustment dependent adoption homologou communism
activate angulariti homologous effective bowdlerize probate cease controll
roll generalizations oscillators connected connecting connection connections
chest ray clear bipap used subdural
""".split()

SUFFIXES = [
    "", "s", "es", "ed", "ing", "er", "ers", "ly", "ness", "ful", "less",
    "ation", "ations", "ement", "ment", "ments", "ance", "ence", "ant", "ent",
    "ism", "ate", "ity", "ous", "ive", "ize", "izer", "ized", "izing",
    "ization", "al", "ally", "ic", "ical", "ility", "iveness", "fulness",
    "ational", "y", "ies", "ier", "iest",
]


def variants(word):
    yield word
    for suf in SUFFIXES:
        if not suf:
            continue
        yield word + suf
        if word.endswith("e") and suf[0] in "aeiouy":
            yield word[:-1] + suf


def main():
    out_path = Path(__file__).parent.parent / "tests" / "data" / "porter_vocab.txt"
    out_path.parent.mkdir(parents=True, exist_ok=True)

    words = set(SPEC_WORDS)
    for base in BASE:
        for v in variants(base):
            words.add(v)

    kept = []
    dropped = 0
    for w in sorted(words):
        if not w.isalpha() or not w.islower():
            continue
        s = oracle.stem(w)
        if oracle.stem(s) != s:
            dropped += 1  # not a stemmer fixed point; keep the file an idempotence fixture
            continue
        kept.append((w, s))

    with open(out_path, "w") as f:
        f.write("# word<TAB>stem pairs for the suffix-stripper conformance and\n")
        f.write("# idempotence checks. Generated by scripts/gen_porter_vocab.py.\n")
        for w, s in kept:
            f.write(f"{w}\t{s}\n")

    print(f"wrote {len(kept)} pairs to {out_path} (dropped {dropped} non-fixed-point words)")


if __name__ == "__main__":
    main()
