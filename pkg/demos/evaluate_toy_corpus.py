"""
Scoring against the toy reference corpus
========================================

System tags are projected onto the coarse reference tagset, then each
single-stem reference word is checked against the system's analyses of it.
Scores are exact fractions.
"""

import os

from korlex import DATA_DIR, MINI_MANIFEST, compile_bundle
from korlex.annotator import Annotator
from korlex.evaluator import evaluate, load_reference, parse_downgrade_map, system_words, downgrade

mini = os.path.join(DATA_DIR, "mini")
lexicon, _ = compile_bundle(MINI_MANIFEST)
dmap = parse_downgrade_map(os.path.join(mini, "downgrade.map"))
reference = load_reference(os.path.join(mini, "corpus", "toy.ref"))

with open(os.path.join(mini, "corpus", "toy.txt"), encoding="utf-8") as f:
    dags = list(Annotator(lexicon).iter_dags(f.read()))

scores = evaluate(dags, reference, dmap)
print(scores.format())

# the misses: unknown words, a different segmentation of 만도, and noun+하
# predicates that the reference splits into noun + suffix
for (word, analyses), ref in zip(system_words(dags), reference):
    coarse = {downgrade(a, dmap) for a in analyses}
    if ref.stems == 1 and ref.morphemes not in coarse:
        got = sorted(coarse)[0] if coarse else "UNK"
        print(f"{word}\treference {ref.morphemes}\tsystem {got}")
