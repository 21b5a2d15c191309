"""
Annotating text into morpheme DAGs
==================================

Each sentence becomes a DAG. Separators sit on the spine; an ambiguous word
opens one chain per analysis and an unknown word keeps a single UNK arc.
"""

import sys

from korlex import MINI_MANIFEST, compile_bundle
from korlex.annotator import Annotator, dag_words, format_dag

lexicon, _ = compile_bundle(MINI_MANIFEST)
annotator = Annotator(lexicon)

text = "친구가 사과를 샀다. 편지를 쓴 사람이 컸다!"

for dag in annotator.iter_dags(text):
    sys.stdout.write(format_dag(dag))
    print("paths:", len(dag.paths()))

# word-level view: 사과를 has two readings (fruit, apology), 편지를 none
dag = next(annotator.iter_dags("사과를 편지를 봤다."))
for word, analyses in dag_words(dag):
    print(word, len(analyses))
