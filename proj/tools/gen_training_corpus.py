#!/usr/bin/env python3
"""Writes the gold-chunked training corpus and its reference pattern list.

The corpus has 234 CQs from five ontologies: swo (88), stuff (11), awo (13),
DemCare_CQ (107) and ontodt (15), listed in that order so that every 10th record
is a SetA CQ. CQs whose text is published are fixed below. All other records
are stand-ins, generated from the reference patterns with a fixed seed.

Reference patterns are the CLaRO templates in place before the coverage
evaluation (the negation extension and post-evaluation additions are left out)
minus the defaults that normalisation derived. Each pattern occurs either at
least twice or once as a dematerialized CQ. The remaining records are
materialized one-offs, which mining must reject.

Usage: gen_training_corpus.py [repo root]
"""

import random
import re
import sys
from collections import Counter
from pathlib import Path

ROOT = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent

# Base templates produced by normalisation rather than observed in the corpus.
DERIVED_DEFAULTS = {"2", "3", "4", "15", "16", "17", "26", "33", "34", "35", "56", "57", "58",
                    "75", "76", "82", "83", "38", "86", "79", "78", "87"}
NOT_MINED = {"90", "91", "92", "60a", "93"}
# The CQ behind 6a chunked "Can we" as a split predicate.
PATTERN_OVERRIDES = {"6a": "PC1 we PC1 EC1 of EC2?"}

DOMAINS = [("swo", 88, "swo{:02d}"), ("stuff", 11, "stuff_{:02d}"), ("awo", 13, "awo_{}"),
           ("demcare", 107, "DemCare_CQ_{}"), ("ontodt", 15, "ontodt_{:02d}")]

# id -> (gold chunking, dematerialized). Published texts, chunked the way the
# pattern miner saw them.
FIXED = {
    "swo01": ("Which (software)[EC1] (can read)[PC1] ([data format x])[EC2]?", True),
    "swo08": ("What (software)[EC1] (can perform)[PC1] ([task x])[EC2]?", True),
    "swo11": ("Which (visualisation software)[EC1] is there for ([this data])[EC2] and what (will)[PC1] (it)[EC3] (cost)[PC1]?", True),
    "swo15": ("What (software)[EC1] (can)[PC1] I (use)[PC1] ([my data])[EC2] (with to support)[PC1] ([my task])[EC3]?", True),
    "swo21": ("What are (the alternatives)[EC1] to ([software x])[EC2]?", True),
    "swo31": ("Is ([software x])[EC1] (open source)[EC2] or (proprietary)[EC3]?", True),
    "swo37": ("(Can)[PC1] we (collaborate with)[PC1] (developers)[EC1] of ([software x])[EC2]?", True),
    "swo41": ("What is (the licence)[EC1] of ([software x])[EC2]?", True),
    "swo51": ("Who (developed)[PC1] ([software x])[EC1]?", True),
    "swo61": ("How long (has)[PC1] ([software x])[EC1] (been around)[PC1]?", True),
    "swo71": ("Does ([it])[EC1] have (a tutorial)[EC2]?", True),
    "swo81": ("Where (can)[PC1] I (get)[PC1] ([software x])[EC1]?", True),
    "stuff_03": ("What is the difference between (a mixture)[EC1] and (a solution)[EC2]?", False),
    "stuff_04": ("Can (a solution)[EC1] be (a pure stuff)[EC2]?", False),
    "awo_1": ("What are the types of (furry carnivorous animals)[EC1]?", False),
    "awo_2": ("Are there (animals that are carnivore)[EC1] but still (eat)[PC1] (grass)[EC2]?", False),
    "awo_5": ("Is there (an animal)[EC1] that (does not drink)[PC1] (water)[EC2]?", False),
    "awo_7": ("Which (country)[EC1] (do)[PC1] I (have to visit)[PC1] to (see)[PC2] (these animals)[EC2]?", False),
    "awo_9": ("Are there ([these animals])[EC1] in ([this country])[EC2]?", True),
    "awo_12": ("(Does)[PC1] (a lion)[EC1] (eat)[PC1] (plants)[EC2]?", False),
    "DemCare_CQ_4": ("What is (a directed task)[EC1]?", False),
    "DemCare_CQ_8": ("What are the types of (diagnosis)[EC1]?", False),
    "DemCare_CQ_9": ("Which (sensors)[EC1] (are used in)[PC1] (the directed step)[EC2]?", False),
    "DemCare_CQ_19": ("Which (tasks)[EC1] are (directed tasks)[EC2]?", False),
    "DemCare_CQ_29": ("Which are (the tasks)[EC1] of (the semi-directed step)[EC2]?", False),
    "DemCare_CQ_39": ("What is (the duration)[EC1] of (a task)[EC2]?", False),
    "DemCare_CQ_40": ("What (data)[EC1] (are measured for)[PC1] (gait assessment)[EC2]?", False),
    "DemCare_CQ_49": ("What (sensors)[EC1] (measure)[PC1] (sleep quality)[EC2]?", False),
    "DemCare_CQ_59": ("When (does)[PC1] (the monitoring)[EC1] of (the patient)[EC2] (start)[PC1]?", False),
    "DemCare_CQ_69": ("Who are (the carers)[EC1] of (the patient)[EC2]?", False),
    "DemCare_CQ_79": ("What type of (activity)[EC1] is (cooking)[EC2]?", False),
    "DemCare_CQ_89": ("What are the main types of (monitored)[PC1] (activities)[EC1]?", False),
    "DemCare_CQ_99": ("What types of (descriptive information)[EC1] (are relevant to)[PC1] (an observation)[EC1]?", False),
    "ontodt_02": ("What is (the set)[EC1] of (datatype qualities)[EC2] for ([a datatype X])[EC3]?", True),
    "ontodt_06": ("What is (the set)[EC1] of (datatypes)[EC2] that have ([a datatype quality X])[EC3] and ([characterizing operation Y])[EC4]?", True),
    "ontodt_12": ("What are (the datatypes)[EC1] that have ([datatype quality x])[EC2]?", True),
}

# Materialized one-offs that never became patterns (besides the fixed ones above).
ONE_OFF_PATTERNS = [
    "Which EC1 have EC2, but no EC3?",
    "How is EC1 PC1 in EC2?",
    "Why PC1 EC1 PC1 EC2?",
    "What EC1 is EC2 made of?",
    "Is EC1 always EC2?",
    "Are EC1 and EC2 the same EC3?",
    "Which EC1 PC1 the most EC2?",
    "How often PC1 EC1 PC1?",
    "What happens to EC1 when EC2 PC1?",
    "Can EC1 PC1 without EC2?",
    "Must EC1 PC1 EC2?",
    "What is the ratio of EC1 to EC2 in EC3?",
    "Which EC1 could PC1 EC2 by EC3?",
    "How much EC1 PC1 EC2?",
]

# Extra occurrences for the most frequent patterns.
FREQUENT = {"53": 29, "81": 3, "60": 6, "22": 4, "44": 4, "29": 4, "70": 3, "42": 3, "68": 3, "88": 3}

VOCAB = {
    "swo": ["software", "this tool", "the licence", "the developers", "the source code", "a command-line interface",
            "the output format", "the documentation", "a web service", "the algorithm", "the input data",
            "the latest version", "the user community", "the operating system", "a plugin", "the file size"],
    "stuff": ["a mixture", "a solution", "mayonnaise", "a colloid", "the components", "an emulsion", "water",
              "the solute", "a suspension", "a pure stuff", "the solvent", "milk"],
    "awo": ["animals", "a lion", "plants", "the herbivores", "an elephant", "grass", "the habitat", "carnivores",
            "a giraffe", "the impala", "the warthog", "water", "fruit", "a national park", "twigs"],
    "demcare": ["the patient", "the carer", "sleep quality", "the directed step", "the clinician",
                "an observation", "the sensor", "daily activities", "the protocol", "the agitation level",
                "the wearable camera", "the assessment", "the diagnosis", "the medication", "the room",
                "the semi-directed step", "a mono task"],
    "ontodt": ["the datatype", "the value space", "datatype qualities", "the datatype generator",
               "the aggregate datatype", "the field components", "the characterizing operations",
               "a primitive datatype", "the bound"],
}
PLACEHOLDERS = {
    "swo": ["[software x]", "[task x]", "[data format x]", "[my data]", "[algorithm x]", "[this data]"],
    "ontodt": ["[datatype x]", "[a datatype X]", "[quality y]", "[datatype quality x]"],
}
# Verb phrases are picked by context so the stand-ins read as plausible questions:
# after an auxiliary or a pronoun the base form, after a copula the participle,
# elsewhere a modal form that needs no agreement with its subject.
PC_BASE = ["use", "read", "support", "produce", "measure", "monitor", "require", "contain", "run on",
           "depend on", "export", "implement"]
PC_PARTICIPLE = ["used by", "produced by", "measured by", "required by", "supported by", "monitored by",
                 "part of", "contained in"]
PC_FINITE = ["can use", "can read", "can produce", "may contain", "should support", "must implement",
             "can measure", "can run on", "can export", "may require"]
PC_INITIAL = ["Can", "Should", "Must"]
PC2_SUBJECT = [("can", "read"), ("should", "install"), ("will", "use"), ("could", "produce"), ("can", "export"),
               ("may", "contain")]
PC2_PRONOUN = [("do", "need"), ("do", "use"), ("can", "use"), ("should", "install"), ("do", "have")]
PC3 = [("do", "need", "to install"), ("can", "use", "to analyse"), ("do", "need", "to run")]

AUXILIARIES = {"do", "does", "did", "can", "could", "will", "would", "should", "must", "may", "to", "i", "we",
               "you", "not"}
COPULAS = {"is", "are", "was", "were", "be", "been"}
# An entity after these words takes no determiner of its own.
BARE_AFTER = {"what", "which", "many", "much", "any", "no", "some", "the", "a", "an", "most", "all", "each",
              "every", "other"}
KIND_WORDS = {"type", "types", "kind", "kinds", "sort", "sorts", "category", "categories", "set"}


def bare(phrase):
    return re.sub(r"^(the|a|an|this|these) ", "", phrase)


def slot_re():
    return re.compile(r"\[(EC|PC)(\d+)\]")


def read_reference_patterns():
    patterns = []
    seen = set()
    for line in (ROOT / "data" / "claro_templates.txt").read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        ref, body = line.split(".", 1)
        if ref in NOT_MINED or ref in DERIVED_DEFAULTS:
            continue
        pattern = PATTERN_OVERRIDES.get(ref, slot_re().sub(r"\1\2", body.rstrip("*")))
        if pattern in seen:  # 18a repeats 17a
            continue
        seen.add(pattern)
        patterns.append((ref, pattern))
    return patterns


def key_of(pattern):
    return " ".join(w.lower() for w in re.findall(r"EC\d+|PC\d+|[^\s?,.;:!]+|[?,.;:!]", pattern))


def gold_pattern(gold):
    return re.sub(r"\s+([?,.;:!])", r"\1",
                  re.sub(r"\((?:[^()]|\([^()]*\))*\)\[(EC|PC)(\d+)\]", r"\1\2", gold))


def instantiate(pattern, domain, rng, dematerialized):
    tokens = re.findall(r"EC\d+|PC\d+|[^\s?,.;:!]+|[?,.;:!]", pattern)
    pc_counts = Counter(t for t in tokens if t.startswith("PC"))
    ec_phrases, pc_parts, pc_seen = {}, {}, Counter()
    nouns = rng.sample(VOCAB[domain], len(VOCAB[domain]))
    placeholder = rng.choice(PLACEHOLDERS[domain]) if dematerialized else None

    def before(i, k=1):
        return tokens[i - k].lower() if i - k >= 0 and not re.match(r"(EC|PC)\d", tokens[i - k]) else ""

    out = []
    for i, t in enumerate(tokens):
        if t.startswith("EC"):
            if t not in ec_phrases:
                phrase = placeholder if placeholder and t != "EC1" and placeholder not in ec_phrases.values() \
                    else nouns[len(ec_phrases) % len(nouns)]
                if not phrase.startswith("[") and (before(i) in BARE_AFTER or
                                                   (before(i) == "of" and before(i, 2) in KIND_WORDS)):
                    phrase = bare(phrase)
                ec_phrases[t] = phrase
            out.append(f"({ec_phrases[t]})[{t}]")
        elif t.startswith("PC"):
            if t not in pc_parts:
                n = pc_counts[t]
                if n == 1:
                    if i == 0:
                        choice = PC_INITIAL
                    elif before(i) in AUXILIARIES:
                        choice = PC_BASE
                    elif before(i) in COPULAS:
                        choice = PC_PARTICIPLE
                    else:
                        choice = PC_FINITE
                    pc_parts[t] = [rng.choice(choice)]
                elif n == 2:
                    after = tokens[i + 1].lower() if i + 1 < len(tokens) else ""
                    pc_parts[t] = list(rng.choice(PC2_PRONOUN if after in {"i", "we", "you"} else PC2_SUBJECT))
                else:
                    pc_parts[t] = list(rng.choice(PC3))
            out.append(f"({pc_parts[t][pc_seen[t]]})[{t}]")
            pc_seen[t] += 1
        else:
            out.append(t)
    if placeholder and placeholder not in ec_phrases.values():
        # Single-EC patterns: the placeholder is the only entity.
        first = next(i for i, t in enumerate(out) if t.endswith("[EC1]"))
        out[first] = f"({placeholder})[EC1]"
    gold = " ".join(out)
    gold = re.sub(r"\s+([?,.;:!])", r"\1", gold)
    if gold.startswith("("):
        gold = "(" + gold[1].upper() + gold[2:]
    return gold


def text_of(gold):
    return re.sub(r"\s+([?,.;:!])", r"\1", re.sub(r"\(((?:[^()]|\([^()]*\))*)\)\[(?:EC|PC)\d+\]", r"\1", gold))


def main():
    rng = random.Random(20190118)
    patterns = read_reference_patterns()
    assert len(patterns) == 106, len(patterns)
    ref_of = {key_of(p): r for r, p in patterns}

    ids = [(fmt.format(i), domain) for domain, n, fmt in DOMAINS for i in range(1, n + 1)]
    assert len(ids) == 234
    assert [i for i, _ in ids[::10]][:3] == ["swo01", "swo11", "swo21"]

    # Occurrences still owed per pattern after the fixed records.
    owed = Counter({key_of(p): FREQUENT.get(r, 2) for r, p in patterns})
    fixed_demat = set()
    for gold, demat in FIXED.values():
        k = key_of(gold_pattern(gold))
        if k in owed:
            owed[k] -= 1
            if demat:
                fixed_demat.add(k)
    free = [x for x in ids if x[0] not in FIXED]
    demat_capable = [x for x in free if x[1] in PLACEHOLDERS]
    surplus = sum(max(v, 0) for v in owed.values()) + len(ONE_OFF_PATTERNS) - len(free)
    # Patterns already kept by a fixed dematerialized CQ need no further
    # occurrence; the rest shrink to a single dematerialized CQ, until the
    # corpus fits.
    singles = set()
    for r, p in patterns:
        k = key_of(p)
        if surplus <= 0:
            break
        if k in fixed_demat and owed[k] > 0 and r not in FREQUENT:
            surplus -= owed[k]
            owed[k] = 0
    for r, p in patterns:
        k = key_of(p)
        if surplus <= 0:
            break
        if r not in FREQUENT and k not in fixed_demat and owed[k] == 2:
            owed[k] = 1
            singles.add(k)
            surplus -= 1
    assert surplus == 0, surplus

    occurrences = []
    for r, p in patterns:
        k = key_of(p)
        for j in range(max(owed[k], 0)):
            occurrences.append((p, k in singles and j == 0))
    occurrences += [(p, False) for p in ONE_OFF_PATTERNS]
    assert len(occurrences) == len(free), (len(occurrences), len(free))

    demat_items = [o for o in occurrences if o[1]]
    other_items = [o for o in occurrences if not o[1]]
    rng.shuffle(other_items)
    assert len(demat_items) <= len(demat_capable)
    assignment = {}
    demat_slots = rng.sample(demat_capable, len(demat_items))
    for slot, item in zip(demat_slots, demat_items):
        assignment[slot[0]] = item
    rest = iter(other_items)
    for slot in free:
        if slot[0] not in assignment:
            assignment[slot[0]] = next(rest)

    lines = ["# Gold-chunked training corpus: 234 CQs from five ontologies (swo, stuff, awo,",
             "# DemCare_CQ, ontodt). Generated by tools/gen_training_corpus.py; records with",
             "# `source: quoted` carry published text, all others are stand-ins.",
             "# Record format as in data/fixtures/set_a.txt."]
    for cq_id, domain in ids:
        if cq_id in FIXED:
            gold, demat = FIXED[cq_id]
            source = "quoted" if cq_id in {"swo08", "swo11", "swo15", "swo37", "swo71", "awo_1", "awo_5", "awo_7",
                                           "awo_9", "stuff_04", "DemCare_CQ_8", "DemCare_CQ_29", "DemCare_CQ_40", "ontodt_06", "DemCare_CQ_99",
                                           "ontodt_02"} else "stand-in"
        else:
            pattern, demat = assignment[cq_id]
            gold = instantiate(pattern, domain, rng, demat)
            source = "stand-in"
        lines += ["", f"id: {cq_id}", f"text: {text_of(gold)}", "validity: valid"]
        if demat:
            lines.append("dematerialized: yes")
        lines += [f"gold: {gold}", f"source: {source}"]
    out = ROOT / "data" / "corpus"
    out.mkdir(parents=True, exist_ok=True)
    (out / "training_corpus.txt").write_text("\n".join(lines) + "\n")
    (out / "patterns_106.txt").write_text(
        "# Reference list of the 106 mined patterns, with the CLaRO template each became.\n"
        + "".join(f"{r}\t{p}\n" for r, p in patterns))


if __name__ == "__main__":
    main()
