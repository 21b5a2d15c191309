"""Maintainable language resources: tagset, compatibility symbols, stems.

File formats (UTF-8, ``#`` starts a comment, blank lines ignored):

tagset::

    GENERAL N V A
    FEATURE sem cnt abs hum

compatibility symbols: one name per line, e.g. ``V_CE``.

stem lexicon, one entry per line::

    surface,base.GENERAL+feat=val+feat=val/CS[|graph|graph...]

Surface and base are written in syllables and decomposed to letters on load.
The optional ``|graph`` fields name the allomorph and derivation graphs that
apply to the stem.
"""

import configparser
import glob
import os
import re
from dataclasses import dataclass, field

from .hangul import compose, decompose

MAX_FEATURES = 4

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class ResourceError(Exception):
    """A malformed or inconsistent resource file."""

    def __init__(self, message, path=None, line=None):
        self.message = message
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(where + message)


@dataclass(frozen=True, order=True)
class Tag:
    general: str
    features: tuple = ()  # ((name, value), ...) sorted by name

    def __str__(self):
        return "+".join([self.general] + [f"{k}={v}" for k, v in self.features])

    @classmethod
    def parse(cls, text):
        """Parse ``GENERAL+feat=val...`` without checking it against a tagset."""
        parts = text.split("+")
        general = parts[0]
        if not general:
            raise ValueError(f"empty general tag in {text!r}")
        features = []
        for part in parts[1:]:
            name, eq, value = part.partition("=")
            if not eq or not name or not value:
                raise ValueError(f"malformed feature {part!r} in {text!r}")
            features.append((name, value))
        names = [n for n, _ in features]
        if len(set(names)) != len(names):
            raise ValueError(f"repeated feature in {text!r}")
        return cls(general, tuple(sorted(features)))


@dataclass
class Tagset:
    generals: list = field(default_factory=list)
    features: dict = field(default_factory=dict)  # name -> list of values

    @property
    def counts(self):
        """(general tags, features, feature values)."""
        return (
            len(self.generals),
            len(self.features),
            sum(len(v) for v in self.features.values()),
        )

    def check(self, tag):
        """Return a list of problems with ``tag``; empty if it is declared."""
        problems = []
        if tag.general not in self.generals:
            problems.append(f"unknown tag {tag.general!r}")
        if len(tag.features) > MAX_FEATURES:
            problems.append(f"{len(tag.features)} features (max {MAX_FEATURES})")
        for name, value in tag.features:
            if name not in self.features:
                problems.append(f"unknown feature {name!r}")
            elif value not in self.features[name]:
                problems.append(f"unknown value {value!r} for feature {name!r}")
        return problems


@dataclass(frozen=True, order=True)
class StemEntry:
    surface: str  # letters
    base: str  # letters
    tag: Tag
    cs: str
    graphs: tuple = ()

    def __str__(self):
        return format_stem_entry(self)


def _content_lines(path):
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.split("#", 1)[0].strip()
            if line:
                yield lineno, line


def parse_tagset(path):
    tagset = Tagset()
    seen_values = set()
    for lineno, line in _content_lines(path):
        keyword, *names = line.split()
        if keyword == "GENERAL":
            if not names:
                raise ResourceError("GENERAL without tags", path, lineno)
            for name in names:
                if name in tagset.generals:
                    raise ResourceError(f"duplicate general tag {name!r}", path, lineno)
                tagset.generals.append(name)
        elif keyword == "FEATURE":
            if len(names) < 2:
                raise ResourceError("FEATURE needs a name and at least one value", path, lineno)
            name, values = names[0], names[1:]
            if name in tagset.features:
                raise ResourceError(f"duplicate feature {name!r}", path, lineno)
            for value in values:
                if (name, value) in seen_values:
                    raise ResourceError(f"duplicate value {value!r} for {name!r}", path, lineno)
                seen_values.add((name, value))
            tagset.features[name] = list(values)
        else:
            raise ResourceError(f"malformed line: {line!r}", path, lineno)
        for name in names:
            if "=" in name or "+" in name or "/" in name:
                raise ResourceError(f"reserved character in {name!r}", path, lineno)
    if not tagset.generals and not tagset.features:
        raise ResourceError("empty tagset", path)
    return tagset


def parse_cs_list(path):
    names = []
    for lineno, line in _content_lines(path):
        for name in line.split():
            if not _NAME_RE.match(name):
                raise ResourceError(f"bad compatibility symbol {name!r}", path, lineno)
            if name in names:
                raise ResourceError(f"duplicate compatibility symbol {name!r}", path, lineno)
            names.append(name)
    if not names:
        raise ResourceError("empty compatibility symbol list", path)
    return names


def parse_stem_line(line, tagset, cs_list):
    """Parse one lexicon line; raises ValueError with a description."""
    head, *graphs = line.split("|")
    graphs = tuple(g.strip() for g in graphs)
    if any(not g for g in graphs):
        raise ValueError("empty graph name")
    forms, slash, cs = head.rpartition("/")
    if not slash:
        raise ValueError("missing /CS")
    cs = cs.strip()
    surface, comma, rest = forms.partition(",")
    if not comma:
        raise ValueError("missing ',' between surface and base")
    base, dot, tag_text = rest.partition(".")
    if not dot:
        raise ValueError("missing '.' before tag")
    surface, base = surface.strip(), base.strip()
    if not surface:
        raise ValueError("empty surface")
    if not base:
        raise ValueError("empty base")
    tag = Tag.parse(tag_text.strip())
    problems = tagset.check(tag)
    if cs not in cs_list:
        problems.append(f"unknown compatibility symbol {cs!r}")
    if problems:
        raise ValueError("; ".join(problems))
    return StemEntry(decompose(surface), decompose(base), tag, cs, graphs)


def parse_stem_lexicon(path, tagset, cs_list):
    """Parse a stem lexicon, collecting every bad line instead of stopping.

    Returns ``(entries, errors)``; ``errors`` is a list of ResourceError.
    """
    entries, errors = [], []
    for lineno, line in _content_lines(path):
        try:
            entries.append(parse_stem_line(line, tagset, cs_list))
        except ValueError as e:
            errors.append(ResourceError(str(e), path, lineno))
    return entries, errors


def format_stem_entry(entry):
    text = f"{compose(entry.surface)},{compose(entry.base)}.{entry.tag}/{entry.cs}"
    return "|".join((text,) + entry.graphs)


def write_stem_lexicon(entries, path):
    with open(path, "w", encoding="utf-8") as f:
        for entry in entries:
            f.write(format_stem_entry(entry) + "\n")


# --- bundle manifest -------------------------------------------------------

ROLES = ("stems", "allomorph", "derivation", "suffix")


@dataclass
class Manifest:
    """Declarative description of a resource bundle.

    Read from an INI file with a ``[bundle]`` section; paths are relative to
    the manifest and multi-file roles accept whitespace-separated globs.
    """

    root: str
    tagset: str
    cs: str
    stems: list
    allomorph: list = field(default_factory=list)
    derivation: list = field(default_factory=list)
    suffix: list = field(default_factory=list)
    downgrade: str = None
    unroll_bound: int = 1
    output: str = None
    allomorphs_of_derived: bool = True

    def missing_files(self):
        """List of (role, path) pairs that do not exist."""
        missing = []
        for role in ("tagset", "cs", "downgrade"):
            path = getattr(self, role)
            if path is not None and not os.path.isfile(path):
                missing.append((role, path))
        for role in ROLES:
            for path in getattr(self, role):
                if not os.path.isfile(path):
                    missing.append((role, path))
        return missing


def _expand(root, value):
    paths = []
    for pattern in value.split():
        full = os.path.join(root, pattern)
        matched = sorted(glob.glob(full)) if glob.has_magic(full) else [full]
        if not matched:
            raise ResourceError(f"pattern matched no files: {pattern}")
        paths.extend(matched)
    return paths


def load_manifest(path):
    parser = configparser.ConfigParser(interpolation=None)
    with open(path, encoding="utf-8") as f:
        parser.read_file(f)
    if "bundle" not in parser:
        raise ResourceError("missing [bundle] section", path)
    sec = parser["bundle"]
    root = os.path.dirname(os.path.abspath(path))
    for key in ("tagset", "cs", "stems"):
        if key not in sec:
            raise ResourceError(f"missing required key {key!r}", path)

    def one(key):
        return os.path.join(root, sec[key].strip()) if key in sec else None

    try:
        unroll_bound = sec.getint("unroll_bound", 1)
        allomorphs_of_derived = sec.getboolean("allomorphs_of_derived", True)
    except ValueError as e:
        raise ResourceError(str(e), path) from None
    if unroll_bound < 1:
        raise ResourceError("unroll_bound must be a positive integer", path)
    return Manifest(
        root=root,
        tagset=one("tagset"),
        cs=one("cs"),
        stems=_expand(root, sec["stems"]),
        allomorph=_expand(root, sec.get("allomorph", "")),
        derivation=_expand(root, sec.get("derivation", "")),
        suffix=_expand(root, sec.get("suffix", "")),
        downgrade=one("downgrade"),
        unroll_bound=unroll_bound,
        output=one("output"),
        allomorphs_of_derived=allomorphs_of_derived,
    )


def ending_graph_name(cs):
    """Name of the suffix RTN root serving compatibility symbol ``cs``."""
    return f"end_{cs}"
