"""Text annotation into morpheme DAGs.

Each sentence becomes one DAG. Words and separators follow each other on a
single spine of nodes; an ambiguous word opens one parallel chain of
morpheme arcs per analysis between its start and end nodes.

Output format, one block per sentence::

    #sentence 1
    7
    0<TAB>1<TAB>컸<TAB>크다<TAB>A+val=1
    ...

Arc fields are ``from to surface base tag``. Morpheme surfaces and bases are
recomposed into syllables; a morpheme boundary inside a syllable leaves
jamo (``ㅋ`` + ``ㅓㅆ``). Tabs, newlines and backslashes in fields are escaped.
"""

import re
from collections import namedtuple
from dataclasses import dataclass, field

from .hangul import compose, decompose
from .resources import Tag

UNK = Tag("UNK")
SEP = Tag("SEP")
PUNCT = Tag("PUNCT")
SEPARATOR_TAGS = (SEP, PUNCT)

Morph = namedtuple("Morph", "surface base tag")

_TOKEN_RE = re.compile(r"(?P<word>[^\W_]+)|(?P<sep>\s+)|(?P<punct>.)", re.S)
_TERMINAL = frozenset(".?!")


@dataclass(frozen=True)
class Token:
    kind: str  # "word", "sep", "punct"
    text: str


@dataclass(frozen=True)
class MorphemeArc:
    src: int
    dst: int
    surface: str  # syllabic
    base: str
    tag: Tag


@dataclass
class MorphemeDAG:
    number: int
    n_nodes: int = 1
    arcs: list = field(default_factory=list)

    @property
    def source(self):
        return 0

    @property
    def sink(self):
        return self.n_nodes - 1

    def paths(self):
        """Every source-to-sink path as a list of arcs (exponential; for tests)."""
        out = {}
        for arc in self.arcs:
            out.setdefault(arc.src, []).append(arc)

        def walk(node):
            if node == self.sink:
                yield []
                return
            for arc in out.get(node, ()):
                for rest in walk(arc.dst):
                    yield [arc] + rest

        return list(walk(self.source))


def tokenize(text):
    """Split text into words, whitespace runs and punctuation characters.

    Words are maximal runs of letters and digits (Hangul included). The
    tokens concatenate back to ``text``.
    """
    return [Token(m.lastgroup, m.group()) for m in _TOKEN_RE.finditer(text)]


def split_sentences(tokens):
    """Group tokens into sentences.

    A sentence ends after a run of terminal punctuation (. ? !) together with
    the whitespace that follows it, or after a whitespace token holding a
    newline.
    """
    sentence = []
    closing = False
    for tok in tokens:
        if closing and tok.kind != "sep" and not (tok.kind == "punct" and tok.text in _TERMINAL):
            yield sentence
            sentence, closing = [], False
        sentence.append(tok)
        if tok.kind == "punct" and tok.text in _TERMINAL:
            closing = True
        elif tok.kind == "sep" and "\n" in tok.text:
            yield sentence
            sentence, closing = [], False
    if sentence:
        yield sentence


def _analysis_key(analysis):
    return tuple((str(m.tag), m.base, m.surface) for m in analysis)


class Annotator:
    """Word-level annotation against a compiled lexicon.

    Analyses of each distinct word are cached; the lexicon is only read.
    """

    def __init__(self, lexicon, cache_size=200_000):
        self.lexicon = lexicon
        self.cache_size = cache_size
        self._cache = {}

    def annotate_word(self, word):
        """Analyses of ``word`` as tuples of (surface, base, tag), syllabic.

        Sorted by tags, then bases. An unknown word gives the single
        analysis ``((word, word, UNK),)``.
        """
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        letters = decompose(word)
        analyses = set()
        for a in self.lexicon.lookup(letters):
            analyses.add(
                tuple(Morph(compose(m.surface), compose(m.base), m.tag) for m in a.morphemes)
            )
        if analyses:
            result = sorted(analyses, key=_analysis_key)
        else:
            result = [(Morph(word, word, UNK),)]
        if len(self._cache) < self.cache_size:
            self._cache[word] = result
        return result

    def sentence_dag(self, tokens, number):
        dag = MorphemeDAG(number)
        node = 0
        next_id = 1
        for tok in tokens:
            if tok.kind != "word":
                tag = SEP if tok.kind == "sep" else PUNCT
                dag.arcs.append(MorphemeArc(node, next_id, tok.text, tok.text, tag))
                node = next_id
                next_id += 1
                continue
            analyses = self.annotate_word(tok.text)
            internal = sum(len(a) - 1 for a in analyses)
            end = next_id + internal
            for analysis in analyses:
                src = node
                for i, m in enumerate(analysis):
                    if i == len(analysis) - 1:
                        dst = end
                    else:
                        dst = next_id
                        next_id += 1
                    dag.arcs.append(MorphemeArc(src, dst, m.surface, m.base, m.tag))
                    src = dst
            node = end
            next_id = end + 1
        dag.n_nodes = next_id
        return dag

    def iter_dags(self, text):
        for number, sentence in enumerate(split_sentences(tokenize(text)), 1):
            yield self.sentence_dag(sentence, number)


def annotate_word(lexicon, word):
    return Annotator(lexicon, cache_size=0).annotate_word(word)


def annotate_text(lexicon, text, sink):
    """Annotate ``text`` and write each sentence DAG to ``sink`` as soon as
    it is built. Returns the number of DAGs written."""
    n = 0
    for dag in Annotator(lexicon).iter_dags(text):
        sink.write(format_dag(dag))
        n += 1
    return n


# --- DAG text format -----------------------------------------------------

_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r"}
_UNESCAPES = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}


def _escape(text):
    return "".join(_ESCAPES.get(c, c) for c in text)


def _unescape(text):
    if "\\" not in text:
        return text
    out = []
    it = iter(text)
    for c in it:
        if c == "\\":
            nxt = next(it, "")
            if nxt not in _UNESCAPES:
                raise ValueError(f"bad escape in {text!r}")
            out.append(_UNESCAPES[nxt])
        else:
            out.append(c)
    return "".join(out)


def format_dag(dag):
    lines = [f"#sentence {dag.number}", str(dag.n_nodes)]
    for a in dag.arcs:
        lines.append(f"{a.src}\t{a.dst}\t{_escape(a.surface)}\t{_escape(a.base)}\t{a.tag}")
    return "\n".join(lines) + "\n"


class DAGFormatError(ValueError):
    pass


def read_dags(lines):
    """Parse DAG blocks from an iterable of text lines."""
    dag = None
    expect_count = False
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\n")
        if not line:
            continue
        if line.startswith("#sentence "):
            if dag is not None:
                yield dag
            dag = MorphemeDAG(int(line.split()[1]))
            expect_count = True
            continue
        if dag is None:
            raise DAGFormatError(f"line {lineno}: arc outside of a sentence block")
        if expect_count:
            dag.n_nodes = int(line)
            expect_count = False
            continue
        parts = line.split("\t")
        if len(parts) != 5:
            raise DAGFormatError(f"line {lineno}: expected 5 fields, got {len(parts)}")
        try:
            src, dst = int(parts[0]), int(parts[1])
            tag = Tag.parse(parts[4])
            surface, base = _unescape(parts[2]), _unescape(parts[3])
        except ValueError as e:
            raise DAGFormatError(f"line {lineno}: {e}") from None
        dag.arcs.append(MorphemeArc(src, dst, surface, base, tag))
    if dag is not None:
        yield dag


def dag_words(dag):
    """Split a DAG into word regions.

    Words never touch each other without a separator, so word boundaries are
    the source, the sink and the ends of separator arcs. Returns a list of
    ``(text, analyses)``, one per word, where each analysis is the tuple of
    arcs along one path through the word. Unknown words have no analyses.
    """
    out = {}
    spine = {dag.source, dag.sink}
    for arc in dag.arcs:
        out.setdefault(arc.src, []).append(arc)
        if arc.tag in SEPARATOR_TAGS:
            spine.update((arc.src, arc.dst))
    words = []
    node = dag.source
    while node != dag.sink:
        arcs = out.get(node)
        if not arcs:
            raise DAGFormatError(f"sentence {dag.number}: node {node} has no outgoing arc")
        if len(arcs) == 1 and arcs[0].tag in SEPARATOR_TAGS:
            node = arcs[0].dst
            continue
        analyses = []
        stack = [(a,) for a in reversed(arcs)]
        while stack:
            path = stack.pop()
            if path[-1].dst in spine:
                analyses.append(path)
            else:
                nxt = out.get(path[-1].dst)
                if not nxt:
                    raise DAGFormatError(f"sentence {dag.number}: dead end at node {path[-1].dst}")
                stack.extend(path + (a,) for a in reversed(nxt))
        ends = {p[-1].dst for p in analyses}
        if len(ends) != 1:
            raise DAGFormatError(f"sentence {dag.number}: word at node {node} has several ends")
        text = compose(decompose("".join(a.surface for a in analyses[0])))
        if len(analyses) == 1 and len(analyses[0]) == 1 and analyses[0][0].tag == UNK:
            analyses = []
        words.append((text, analyses))
        node = ends.pop()
    return words
