"""Generation of stem allomorphs and derived stems from base-form stems.

Allomorph and derivation graphs are read as edit programs: the input side of
each path says which letters to remove from or append to the stem surface, the
output side edits the base form, and one ``{TAG/CS|graph...}`` token gives the
resulting tag and compatibility symbol. An empty tag keeps the stem's tag.
"""

import logging
from dataclasses import dataclass, replace

from .graphs import DEL, build_call_graph, call_cycles, reachable_graphs
from .resources import ResourceError, Tag
from .rtn import DEFAULT_UNROLL_BOUND, expand_paths

log = logging.getLogger(__name__)


class InapplicableProgram(ValueError):
    """The program removes more letters than the stem has."""


@dataclass(frozen=True)
class EditProgram:
    surface_edits: tuple  # letters to append, DEL to remove the last one
    base_edits: tuple
    tag: Tag  # None keeps the stem's tag
    cs: str
    graphs: tuple = ()  # allomorph graphs for the resulting stem

    @property
    def removals(self):
        return sum(1 for op in self.surface_edits if op == DEL)


def parse_edit_token(text, tagset=None, cs_list=None):
    head, *graphs = text.split("|")
    tag_text, slash, cs = head.rpartition("/")
    if not slash or not cs:
        raise ResourceError(f"edit token {{{text}}} lacks /CS")
    tag = None
    if tag_text:
        try:
            tag = Tag.parse(tag_text)
        except ValueError as e:
            raise ResourceError(str(e)) from None
        if tagset is not None and tagset.check(tag):
            raise ResourceError(f"edit token {{{text}}}: " + "; ".join(tagset.check(tag)))
    if cs_list is not None and cs not in cs_list:
        raise ResourceError(f"edit token {{{text}}}: unknown compatibility symbol {cs!r}")
    return tag, cs, tuple(graphs)


def enumerate_edit_programs(root, graphs, unroll_bound=None, tagset=None, cs_list=None):
    """One EditProgram per accepting path of graph ``root``.

    With ``unroll_bound=None`` (allomorph graphs) any call cycle is an error;
    derivation graphs pass a bound and get the same cycle policy as suffix
    RTNs.
    """
    sub = {n: graphs[n] for n in reachable_graphs(root, graphs)}
    if unroll_bound is None:
        cycles = call_cycles(build_call_graph(sub))
        if cycles:
            raise ResourceError(f"allomorph graph {root!r} has call cycles: {cycles}")
        unroll_bound = 0
    programs = []
    for path in expand_paths(root, graphs, unroll_bound):
        surface, base, tokens = [], [], []
        for arc in path:
            if arc.kind == "io":
                surface.extend(arc.inp)
                base.extend(arc.out)
            else:
                tokens.append(arc.name)
        if len(tokens) != 1:
            raise ResourceError(f"graph {root!r}: a path has {len(tokens)} output tokens, expected 1")
        tag, cs, next_graphs = parse_edit_token(tokens[0], tagset, cs_list)
        program = EditProgram(tuple(surface), tuple(base), tag, cs, next_graphs)
        if program not in programs:
            programs.append(program)
    return programs


def _run(letters, ops):
    buf = list(letters)
    for op in ops:
        if op == DEL:
            if not buf:
                raise InapplicableProgram("nothing left to remove")
            buf.pop()
        else:
            buf.append(op)
    return "".join(buf)


def apply(entry, program):
    """Apply ``program`` to a base-form stem entry."""
    surface = _run(entry.surface, program.surface_edits)
    if not surface:
        raise InapplicableProgram("program leaves an empty surface")
    base = _run(entry.base, program.base_edits)
    if not base:
        raise InapplicableProgram("program leaves an empty base")
    return replace(
        entry,
        surface=surface,
        base=base,
        tag=program.tag if program.tag is not None else entry.tag,
        cs=program.cs,
        graphs=program.graphs,
    )


def generate_variant_lexicon(
    stems,
    allomorph_graphs,
    derivation_graphs,
    graphs=None,
    unroll_bound=DEFAULT_UNROLL_BOUND,
    allomorphs_of_derived=True,
    tagset=None,
    cs_list=None,
):
    """Base stems plus every allomorph and derived stem they select.

    ``allomorph_graphs`` and ``derivation_graphs`` map names to graphs;
    ``graphs`` holds everything callable (defaults to their union). Output
    order: input order, then graph order, then path order. Derived stems are
    followed by their own allomorphs unless ``allomorphs_of_derived`` is off.
    """
    if graphs is None:
        graphs = {**allomorph_graphs, **derivation_graphs}
    programs = {}

    def programs_for(name):
        if name not in programs:
            if name in derivation_graphs:
                programs[name] = enumerate_edit_programs(name, graphs, unroll_bound, tagset, cs_list)
            else:
                programs[name] = enumerate_edit_programs(name, graphs, None, tagset, cs_list)
        return programs[name]

    def variants(entry, names, allow_derivation):
        for name in names:
            if name in derivation_graphs and allow_derivation:
                derived_graphs = True
            elif name in allomorph_graphs:
                derived_graphs = False
            else:
                raise ResourceError(
                    f"stem {entry} selects unknown {'graph' if allow_derivation else 'allomorph graph'} {name!r}"
                )
            for program in programs_for(name):
                try:
                    variant = apply(entry, program)
                except InapplicableProgram as e:
                    log.warning("graph %s not applicable to %s: %s", name, entry, e)
                    continue
                yield variant
                if derived_graphs and allomorphs_of_derived:
                    yield from variants(variant, variant.graphs, False)

    out = []
    for stem in stems:
        out.append(stem)
        out.extend(variants(stem, stem.graphs, True))
    return out


def strip_graphs(entries):
    return [replace(e, graphs=()) for e in entries]
