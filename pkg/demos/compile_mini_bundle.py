"""
Compiling the mini resource bundle
==================================

The bundle lists a tagset, compatibility symbols, stem files and three kinds
of graphs. Compilation expands stems into allomorphs and derived stems,
flattens the suffix networks into ending lists, and links everything into a
single word automaton.
"""

import os
import tempfile

from korlex import MINI_MANIFEST, CompiledLexicon, compile_bundle
from korlex.hangul import compose, decompose

lexicon, report = compile_bundle(MINI_MANIFEST)

# sizes after each step
for key in ("base_stems", "variant_entries", "words", "word_states", "word_transitions"):
    print(f"{key:18s} {report[key]}")
print("endings per CS:", report["endings_per_cs"])

# every accepted word comes with its analyses
for word in ("컸다", "공부했다", "사과를", "짐승만도"):
    print(word)
    for analysis in lexicon.lookup(decompose(word)):
        print("   ", analysis)

# a few of the 866 words, back in syllables
print([compose(w) for w in lexicon.words()[:8]])

# the binary file reloads to the same lexicon
path = os.path.join(tempfile.mkdtemp(), "mini.klx")
lexicon.save(path)
print(os.path.getsize(path), "bytes")
print(CompiledLexicon.load(path).lookup(decompose("컸다")) == lexicon.lookup(decompose("컸다")))
