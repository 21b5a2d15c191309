"""Throughput measurement of the annotator."""

import io
import time

import numpy as np

from .annotator import annotate_text, tokenize
from .hangul import compose


def synthetic_text(lexicon, n_words, seed=0, sentence_length=8):
    """Random text of ``n_words`` words drawn uniformly from the lexicon."""
    vocab = [compose(w) for w in lexicon.words()]
    if not vocab:
        raise ValueError("lexicon accepts no words")
    rng = np.random.default_rng(seed)
    picks = rng.integers(0, len(vocab), size=n_words)
    sentences = []
    for start in range(0, n_words, sentence_length):
        chunk = picks[start:start + sentence_length]
        sentences.append(" ".join(vocab[i] for i in chunk) + ".")
    return "\n".join(sentences) + "\n"


def count_words(text):
    return sum(1 for tok in tokenize(text) if tok.kind == "word")


def benchmark(lexicon, text, sink=None):
    """Annotate ``text`` end to end and report words per second.

    Timing covers tokenization, sentence splitting, alphabet conversion,
    lookup, DAG construction and writing to ``sink`` (an in-memory buffer by
    default).
    """
    n_words = count_words(text)
    sink = io.StringIO() if sink is None else sink
    start = time.perf_counter()
    n_sentences = annotate_text(lexicon, text, sink)
    elapsed = time.perf_counter() - start
    return {
        "words": n_words,
        "sentences": n_sentences,
        "seconds": elapsed,
        "words_per_second": n_words / elapsed if elapsed > 0 else float("inf"),
    }
