"""Resource-based morphological annotation of Korean.

Stem lexicons, allomorph and derivation graphs and suffix RTNs are compiled
ahead of time into one word-lexicon automaton over Hangul letters; annotation
is then a plain lexicon search that yields a DAG of morphemes per sentence.
"""

import os

from .annotator import Annotator, annotate_text, annotate_word, tokenize
from .build import compile_bundle, load_bundle
from .evaluator import evaluate, load_reference, parse_downgrade_map
from .hangul import compose, decompose
from .lexicon import CompiledLexicon

__version__ = "0.1.0"

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
MINI_MANIFEST = os.path.join(DATA_DIR, "mini", "mini.ini")
