"""Recall and precision of annotator output against a reference corpus.

Reference corpus format (UTF-8, ``#`` lines are metadata)::

    컸다<TAB>크다/pa+었/ep+다/ef
    사과나무가<TAB>사과/nc+나무/nc+가/jcs<TAB>2

The optional third column is the number of stems in the word (default 1);
only single-stem words are scored. A system analysis matches when its
sequence of (base form, downgraded tag) equals the reference sequence.

Downgrade map format, one ``FINE COARSE`` pair per line. ``FINE`` is a tag
pattern (general tag plus optional features); a fine tag is mapped by the
most specific pattern whose features it contains.
"""

from dataclasses import dataclass
from fractions import Fraction

from .annotator import dag_words
from .hangul import compose, decompose
from .resources import ResourceError, Tag


class UnmappedTagError(KeyError):
    def __str__(self):
        return f"no downgrade mapping for tag(s): {', '.join(self.args[0])}"


class AlignmentError(ValueError):
    def __init__(self, position, system, reference):
        self.position = position
        super().__init__(
            f"corpora diverge at word {position}: system {system!r}, reference {reference!r}"
        )


def _norm(form):
    return compose(decompose(form))


class TagDowngradeMap:
    def __init__(self, pairs):
        self._by_general = {}
        seen = set()
        for pattern, coarse in pairs:
            key = (pattern.general, pattern.features)
            if key in seen:
                raise ValueError(f"duplicate pattern {pattern}")
            seen.add(key)
            self._by_general.setdefault(pattern.general, []).append((pattern, coarse))
        self._cache = {}

    @classmethod
    def identity(cls):
        return _IdentityMap()

    def coarse(self, tag):
        hit = self._cache.get(tag)
        if hit is not None:
            return hit
        best, best_n = None, -1
        tag_feats = set(tag.features)
        for pattern, coarse in self._by_general.get(tag.general, ()):
            n = len(pattern.features)
            if set(pattern.features) <= tag_feats:
                if n > best_n:
                    best, best_n = coarse, n
                elif n == best_n and coarse != best:
                    raise ValueError(f"ambiguous downgrade mapping for {tag}")
        if best is None:
            raise UnmappedTagError([str(tag)])
        self._cache[tag] = best
        return best


class _IdentityMap:
    def coarse(self, tag):
        return str(tag)


def parse_downgrade_map(path):
    pairs = []
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ResourceError("expected 'FINE COARSE'", path, lineno)
            try:
                pairs.append((Tag.parse(parts[0]), parts[1]))
            except ValueError as e:
                raise ResourceError(str(e), path, lineno) from None
    try:
        return TagDowngradeMap(pairs)
    except ValueError as e:
        raise ResourceError(str(e), path) from None


def downgrade(analysis, dmap):
    """Project an analysis onto the coarse tagset.

    ``analysis`` is a sequence of morphemes with ``base`` and ``tag``
    attributes. Returns a tuple of (base, coarse tag) pairs. Every unmapped
    tag is reported at once.
    """
    out, missing = [], []
    for m in analysis:
        try:
            out.append((_norm(m.base), dmap.coarse(m.tag)))
        except UnmappedTagError:
            missing.append(str(m.tag))
    if missing:
        raise UnmappedTagError(sorted(set(missing)))
    return tuple(out)


@dataclass(frozen=True)
class ReferenceWord:
    text: str
    morphemes: tuple  # ((form, coarse tag), ...)
    stems: int = 1


def parse_reference_analysis(text):
    morphemes = []
    for item in text.split("+"):
        form, slash, tag = item.rpartition("/")
        if not slash or not form or not tag:
            raise ValueError(f"malformed morpheme {item!r}")
        morphemes.append((_norm(form), tag))
    return tuple(morphemes)


def read_reference(lines):
    words = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) not in (2, 3):
            raise ResourceError("expected 'word<TAB>analysis[<TAB>stems]'", line=lineno)
        try:
            stems = int(parts[2]) if len(parts) == 3 else 1
            words.append(ReferenceWord(_norm(parts[0]), parse_reference_analysis(parts[1]), stems))
        except ValueError as e:
            raise ResourceError(str(e), line=lineno) from None
    return words


def load_reference(path):
    with open(path, encoding="utf-8") as f:
        return read_reference(f)


@dataclass(frozen=True)
class Scores:
    recall: Fraction
    precision: Fraction
    matched: int
    single_stem_words: int
    total_words: int

    def format(self):
        return "\n".join(
            [
                f"recall={float(self.recall):.6f}",
                f"recall_exact={self.recall}",
                f"precision={float(self.precision):.6f}",
                f"precision_exact={self.precision}",
                f"matched_words={self.matched}",
                f"single_stem_words={self.single_stem_words}",
                f"total_words={self.total_words}",
            ]
        )


def system_words(dags):
    """Word texts and morpheme analyses from a sequence of DAGs."""
    words = []
    for dag in dags:
        words.extend(dag_words(dag))
    return words


def align(system, reference):
    for i, (sys_word, ref_word) in enumerate(zip(system, reference)):
        if sys_word[0] != ref_word.text:
            raise AlignmentError(i, sys_word[0], ref_word.text)
    if len(system) != len(reference):
        i = min(len(system), len(reference))
        sys_text = system[i][0] if i < len(system) else None
        ref_text = reference[i].text if i < len(reference) else None
        raise AlignmentError(i, sys_text, ref_text)


def evaluate(dags, reference, dmap):
    """Score system DAGs against reference words with exact fractions.

    Recall is the share of single-stem reference words whose analysis is
    among the word's downgraded system analyses. Precision averages, over the
    same words, 1/(number of system analyses) for a match and 0 otherwise.
    """
    system = system_words(dags)
    align(system, reference)
    n = matched = 0
    precision_sum = Fraction(0)
    for (_, analyses), ref in zip(system, reference):
        if ref.stems != 1:
            continue
        n += 1
        coarse = {downgrade(a, dmap) for a in analyses}
        if ref.morphemes in coarse:
            matched += 1
            precision_sum += Fraction(1, len(analyses))
    if n == 0:
        return Scores(Fraction(0), Fraction(0), 0, 0, len(reference))
    return Scores(Fraction(matched, n), precision_sum / n, matched, n, len(reference))


def recall(dags, reference, dmap):
    return evaluate(dags, reference, dmap).recall


def precision(dags, reference, dmap):
    return evaluate(dags, reference, dmap).precision
