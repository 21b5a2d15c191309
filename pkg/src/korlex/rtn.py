"""Flattening of suffix RTNs into finite lists of endings.

A suffix graph path alternates letter arcs and tag tokens. Each tag token
closes one morpheme: the input letters read since the previous token are the
morpheme's surface form, the output letters its base form.
"""

from dataclasses import dataclass
from functools import lru_cache

from .graphs import DEL, build_call_graph, reachable_graphs
from .resources import ResourceError, Tag

DEFAULT_UNROLL_BOUND = 1


@dataclass(frozen=True, order=True)
class Morpheme:
    surface: str  # letters
    base: str  # letters
    tag: Tag


@dataclass(frozen=True, order=True)
class EndingEntry:
    surface: str
    morphemes: tuple = ()

    def __post_init__(self):
        assert "".join(m.surface for m in self.morphemes) == self.surface


def check_acyclic_states(names, graphs):
    for name in sorted(names):
        cycle = graphs[name].find_state_cycle()
        if cycle is not None:
            states = " -> ".join(graphs[name].states[s] for s in cycle)
            raise ResourceError(f"graph {name!r} has a state cycle: {states}")


def expand_paths(root, graphs, unroll_bound=DEFAULT_UNROLL_BOUND):
    """All accepting label sequences of the RTN rooted at ``root``.

    Calls are expanded inline; epsilon arcs vanish. A graph may be active on
    the call stack at most ``1 + unroll_bound`` times, which bounds every
    call-graph cycle. Each sequence is a tuple of ``io`` and ``token`` arcs.
    """
    if unroll_bound < 0:
        raise ValueError("unroll_bound must be >= 0")
    names = reachable_graphs(root, graphs)
    check_acyclic_states(names, graphs)
    out_arcs = {name: graphs[name].out_arcs() for name in names}

    @lru_cache(maxsize=None)
    def graph_paths(name, stack):
        # stack: sorted tuple of (graph, active count)
        depth = dict(stack)
        g = graphs[name]
        out = out_arcs[name]
        memo = {}

        def from_state(s):
            if s in memo:
                return memo[s]
            result = [()] if s in g.finals else []
            for arc in out[s]:
                tails = from_state(arc.dst)
                if not tails:
                    continue
                if arc.kind == "call":
                    if depth.get(arc.name, 0) > unroll_bound:
                        continue
                    inner = dict(depth)
                    inner[arc.name] = inner.get(arc.name, 0) + 1
                    heads = graph_paths(arc.name, tuple(sorted(inner.items())))
                    result.extend(h + t for h in heads for t in tails)
                elif arc.kind == "eps":
                    result.extend(tails)
                else:
                    result.extend((arc,) + t for t in tails)
            memo[s] = result
            return result

        return tuple(from_state(g.initial))

    return list(graph_paths(root, ((root, 1),)))


def ending_from_path(path, tagset=None):
    morphemes = []
    surface, base = [], []
    for arc in path:
        if arc.kind == "io":
            if DEL in arc.inp or DEL in arc.out:
                raise ResourceError("<DEL> is not allowed in suffix graphs")
            surface.extend(arc.inp)
            base.extend(arc.out)
        else:
            tag = _parse_tag(arc.name)
            if tagset is not None:
                problems = tagset.check(tag)
                if problems:
                    raise ResourceError(f"suffix tag {arc.name!r}: " + "; ".join(problems))
            morphemes.append(Morpheme("".join(surface), "".join(base), tag))
            surface, base = [], []
    if surface or base:
        raise ResourceError("suffix path ends with letters after its last tag")
    return EndingEntry("".join(m.surface for m in morphemes), tuple(morphemes))


@lru_cache(maxsize=4096)
def _parse_tag(text):
    try:
        return Tag.parse(text)
    except ValueError as e:
        raise ResourceError(str(e)) from None


def enumerate_endings(root, graphs, unroll_bound=DEFAULT_UNROLL_BOUND, tagset=None):
    """Flatten the suffix RTN ``root`` into a sorted, duplicate-free list.

    Same surface with different annotations gives separate entries.
    """
    build_call_graph({n: graphs[n] for n in reachable_graphs(root, graphs)})
    entries = {ending_from_path(p, tagset) for p in expand_paths(root, graphs, unroll_bound)}
    return sorted(entries)
