"""The word lexicon: stem automaton linked to ending automata.

Linking bridges every final state of the stem automaton to the initial state
of the ending automaton of each compatibility symbol its stems carry. The
bridges are removed by epsilon closure and the result is determinized by
subset construction, so the stored word automaton is an epsilon-free DFA.
Subsets that hold a single ending state are shared by all stems reaching it,
so the ending automata are not copied per stem.

A final state of the word automaton carries the ids of the endings that end
there. Lookup recovers the stem part from the ending length and a second walk
in the stem automaton, which is kept for that purpose.
"""

import json
import mmap
import os
import struct
import zlib
from dataclasses import dataclass

import numpy as np

from .automaton import CompiledAutomaton
from .hangul import compose
from .resources import Tag
from .rtn import EndingEntry, Morpheme

MAGIC = b"KORLEX\x00\x1a"
FORMAT_VERSION = 1


class LexiconFormatError(ValueError):
    pass


class LinkError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class StemRecord:
    surface: str
    base: str
    tag: Tag
    cs: str


@dataclass(frozen=True, order=True)
class Analysis:
    stem: StemRecord
    ending: EndingEntry

    @property
    def morphemes(self):
        return (Morpheme(self.stem.surface, self.stem.base, self.stem.tag),) + self.ending.morphemes

    def __str__(self):
        return " ".join(
            "{%s,%s.%s}" % (compose(m.surface), compose(m.base), m.tag) for m in self.morphemes
        )


def link(stem_automaton, stems, ending_automata, endings):
    """Merge a stem automaton and per-CS ending automata into a word lexicon.

    ``stems[i]`` is the StemRecord of stem payload ``i``; ``ending_automata``
    maps a CS to an automaton whose payloads index ``endings``, a list of
    ``(cs, EndingEntry)``.
    """
    needed = sorted({stems[p].cs for p in stem_automaton.payloads.tolist()})
    missing = [cs for cs in needed if cs not in ending_automata]
    if missing:
        raise LinkError(f"no ending automaton for compatibility symbols {missing}")

    # subset elements: ("", stem state) or (cs, ending state)
    stem_delta = [stem_automaton.transitions(q) for q in range(stem_automaton.n_states)]
    stem_final = [stem_automaton.state_payloads(q) for q in range(stem_automaton.n_states)]
    bridge = []
    for q in range(stem_automaton.n_states):
        bridge.append(tuple(sorted({stems[p].cs for p in stem_final[q]})))

    def closure(elements):
        out = set(elements)
        for el in elements:
            if el[0] == "":
                out.update((cs, 0) for cs in bridge[el[1]])
        return frozenset(out)

    def step(element):
        kind, q = element
        if kind == "":
            return stem_delta[q].items()
        return ending_automata[kind].transitions(q).items()

    start = closure({("", 0)})
    index = {start: 0}
    order = [start]
    delta, finals = [], []
    letters = set()
    i = 0
    while i < len(order):
        subset = order[i]
        moves = {}
        for el in sorted(subset):
            for c, t in step(el):
                moves.setdefault(c, set()).add((el[0], t))
        edges = {}
        for c in sorted(moves):
            target = closure(moves[c])
            if target not in index:
                index[target] = len(order)
                order.append(target)
            edges[c] = index[target]
            letters.add(c)
        delta.append(edges)
        pays = set()
        for kind, q in subset:
            if kind != "":
                pays.update(ending_automata[kind].state_payloads(q))
        finals.append(tuple(sorted(pays)))
        i += 1
    word_automaton = CompiledAutomaton.from_tables("".join(sorted(letters)), delta, finals)
    return CompiledLexicon(stem_automaton, word_automaton, list(stems), list(endings))


class CompiledLexicon:
    def __init__(self, stem_automaton, word_automaton, stems, endings):
        self.stem_automaton = stem_automaton
        self.word_automaton = word_automaton
        self.stems = stems
        self.endings = endings

    @property
    def counts(self):
        cs_counts = {}
        for cs, _ in self.endings:
            cs_counts[cs] = cs_counts.get(cs, 0) + 1
        return {
            "stems": len(self.stems),
            "endings": len(self.endings),
            "endings_per_cs": dict(sorted(cs_counts.items())),
            "stem_states": self.stem_automaton.n_states,
            "stem_transitions": self.stem_automaton.n_transitions,
            "word_states": self.word_automaton.n_states,
            "word_transitions": self.word_automaton.n_transitions,
        }

    def lookup(self, letters):
        """Every (stem, ending) analysis of the letter string; [] if unknown."""
        ending_ids = self.word_automaton.lookup(letters)
        if not ending_ids:
            return []
        stem_payloads = {}
        out = []
        for eid in ending_ids:
            cs, ending = self.endings[eid]
            k = len(letters) - len(ending.surface)
            if k not in stem_payloads:
                stem_payloads[k] = self.stem_automaton.lookup(letters[:k])
            for sid in stem_payloads[k]:
                stem = self.stems[sid]
                if stem.cs == cs:
                    out.append(Analysis(stem, ending))
        out.sort()
        return out

    def words(self):
        """All accepted letter strings, sorted."""
        return [w for w, _ in self.word_automaton.items()]

    def count_words(self):
        return self.word_automaton.count_words()

    # --- binary format ---------------------------------------------------

    def to_bytes(self):
        tables = {
            "stems": [[s.surface, s.base, str(s.tag), s.cs] for s in self.stems],
            "endings": [
                [cs, [[m.surface, m.base, str(m.tag)] for m in e.morphemes]]
                for cs, e in self.endings
            ],
        }
        sections = []
        blobs = []
        offset = 0
        for prefix, automaton in (("stem", self.stem_automaton), ("word", self.word_automaton)):
            for name, arr in automaton.arrays().items():
                dtype = "<u2" if name == "labels" else "<i4"
                data = np.ascontiguousarray(arr, dtype=dtype).tobytes()
                pad = (-len(data)) % 8
                sections.append([f"{prefix}.{name}", dtype, offset, len(arr)])
                blobs.append(data + b"\x00" * pad)
                offset += len(data) + pad
        table_bytes = json.dumps(tables, ensure_ascii=False, separators=(",", ":")).encode("utf-8")
        body = b"".join(blobs) + table_bytes
        header = {
            "alphabet": {
                "stem": self.stem_automaton.alphabet,
                "word": self.word_automaton.alphabet,
            },
            "counts": self.counts,
            "sections": sections,
            "tables": [offset, len(table_bytes)],
            "body_size": len(body),
            "crc32": zlib.crc32(body),
        }
        head = json.dumps(header, ensure_ascii=False, sort_keys=True, separators=(",", ":")).encode("utf-8")
        head += b" " * ((-len(head) - 16) % 8)
        return MAGIC + struct.pack("<II", FORMAT_VERSION, len(head)) + head + body

    @classmethod
    def from_bytes(cls, data):
        if len(data) < 16:
            raise LexiconFormatError("truncated file")
        if data[:8] != MAGIC:
            raise LexiconFormatError("bad magic: not a compiled lexicon")
        version, head_len = struct.unpack_from("<II", data, 8)
        if version != FORMAT_VERSION:
            raise LexiconFormatError(f"version mismatch: file {version}, expected {FORMAT_VERSION}")
        if 16 + head_len > len(data):
            raise LexiconFormatError("truncated file")
        try:
            header = json.loads(bytes(data[16:16 + head_len]).decode("utf-8"))
            body_size, crc = header["body_size"], header["crc32"]
            sections, (t_off, t_len) = header["sections"], header["tables"]
            alphabets = header["alphabet"]["stem"], header["alphabet"]["word"]
        except (ValueError, KeyError, TypeError):
            raise LexiconFormatError("corrupted header") from None
        body = memoryview(data)[16 + head_len:]
        if len(body) != body_size:
            raise LexiconFormatError("truncated file")
        if zlib.crc32(body) != crc:
            raise LexiconFormatError("checksum mismatch: corrupted file")
        arrays = {"stem": {}, "word": {}}
        for name, dtype, offset, count in sections:
            prefix, field = name.split(".")
            arrays[prefix][field] = np.frombuffer(body, dtype=dtype, count=count, offset=offset)
        tables = json.loads(bytes(body[t_off:t_off + t_len]).decode("utf-8"))
        stem_aut = CompiledAutomaton(alphabets[0], **arrays["stem"])
        word_aut = CompiledAutomaton(alphabets[1], **arrays["word"])
        stems = [StemRecord(s, b, Tag.parse(t), cs) for s, b, t, cs in tables["stems"]]
        endings = []
        for cs, morphs in tables["endings"]:
            ms = tuple(Morpheme(s, b, Tag.parse(t)) for s, b, t in morphs)
            endings.append((cs, EndingEntry("".join(m.surface for m in ms), ms)))
        return cls(stem_aut, word_aut, stems, endings)

    def save(self, path):
        with open(path, "wb") as f:
            f.write(self.to_bytes())

    @classmethod
    def load(cls, path):
        """Load a lexicon file; the arrays are views into a read-only mmap."""
        with open(path, "rb") as f:
            if os.fstat(f.fileno()).st_size < 16:
                raise LexiconFormatError("truncated file")
            data = mmap.mmap(f.fileno(), 0, access=mmap.ACCESS_READ)
        lexicon = cls.from_bytes(data)
        lexicon._mmap = data  # keep the mapping alive with the arrays
        return lexicon


serialize = CompiledLexicon.save
deserialize = CompiledLexicon.load
