"""Transducer graphs and recursive transition networks.

Textual graph format::

    graph end_N_C          # optional; defaults to the file stem
    state 0 initial
    state 1
    state 2 final
    0 -> 1 : 만/만
    1 -> 2 : {JX+aux=lim}
    2 -> 3 : CALL(jx)

Arc labels:

``in/out`` or ``in``
    letters consumed on the input side and written on the output side. Either
    side may be ``<E>`` (empty) and may contain ``<DEL>`` (remove the last
    letter; only meaningful in allomorph and derivation graphs). Syllables are
    decomposed to letters on load.
``<E>``
    epsilon.
``{...}``
    an output token: a tag in suffix graphs, ``TAG/CS|graphs`` in edit graphs.
``CALL(name)``
    a call to another graph of the bundle.
"""

import os
import re
from dataclasses import dataclass, field

import networkx as nx

from .hangul import compose, decompose
from .resources import ResourceError

EPS = "<E>"
DEL = "<DEL>"

_ARC_RE = re.compile(r"^(\S+)\s*->\s*(\S+)\s*:\s*(.+?)\s*$")
_CALL_RE = re.compile(r"^CALL\(([A-Za-z_][A-Za-z0-9_]*)\)$")
_SIDE_RE = re.compile(r"<DEL>|<E>|[^<]")


@dataclass(frozen=True)
class Arc:
    src: int
    dst: int
    kind: str  # "io", "eps", "token", "call"
    inp: tuple = ()  # letters and DEL markers
    out: tuple = ()
    name: str = None  # token text or called graph

    def label(self):
        if self.kind == "eps":
            return EPS
        if self.kind == "token":
            return "{" + self.name + "}"
        if self.kind == "call":
            return f"CALL({self.name})"
        inp, out = _format_side(self.inp), _format_side(self.out)
        return inp if self.inp == self.out else f"{inp}/{out}"


@dataclass
class TransducerGraph:
    name: str
    states: list  # state names, index = state id
    initial: int
    finals: frozenset
    arcs: list
    warnings: list = field(default_factory=list, compare=False)

    def out_arcs(self):
        """Arcs grouped by source state, in file order."""
        table = [[] for _ in self.states]
        for arc in self.arcs:
            table[arc.src].append(arc)
        return table

    def calls(self):
        return sorted({a.name for a in self.arcs if a.kind == "call"})

    def find_state_cycle(self):
        """Return a list of states forming a cycle, or None."""
        out = self.out_arcs()
        color = [0] * len(self.states)
        for root in range(len(self.states)):
            if color[root]:
                continue
            stack = [(root, iter(out[root]))]
            path = [root]
            color[root] = 1
            while stack:
                state, it = stack[-1]
                arc = next(it, None)
                if arc is None:
                    stack.pop()
                    path.pop()
                    color[state] = 2
                    continue
                if color[arc.dst] == 1:
                    return path[path.index(arc.dst):] + [arc.dst]
                if color[arc.dst] == 0:
                    color[arc.dst] = 1
                    path.append(arc.dst)
                    stack.append((arc.dst, iter(out[arc.dst])))
        return None


def _format_side(items):
    if not items:
        return EPS
    parts, run = [], []
    for item in items:
        if item == DEL:
            if run:
                parts.append(compose("".join(run)))
                run = []
            parts.append(DEL)
        else:
            run.append(item)
    if run:
        parts.append(compose("".join(run)))
    return "".join(parts)


def _parse_side(text):
    if "/" in text or not text:
        raise ValueError(f"malformed label side {text!r}")
    items = []
    for tok in _SIDE_RE.findall(decompose(text)):
        if tok == EPS:
            continue
        if tok.isspace():
            raise ValueError(f"whitespace in label side {text!r}")
        items.append(tok)
    if "".join(_SIDE_RE.findall(text)) != text:
        raise ValueError(f"malformed label side {text!r}")
    return tuple(items)


def parse_label(text, src=0, dst=0):
    text = text.strip()
    if text == EPS:
        return Arc(src, dst, "eps")
    if text.startswith("{"):
        if not text.endswith("}") or len(text) < 3:
            raise ValueError(f"malformed token {text!r}")
        return Arc(src, dst, "token", name=text[1:-1])
    if text.startswith("CALL"):
        m = _CALL_RE.match(text)
        if not m:
            raise ValueError(f"malformed call {text!r}")
        return Arc(src, dst, "call", name=m.group(1))
    inp, slash, out = text.partition("/")
    inp = _parse_side(inp)
    out = _parse_side(out) if slash else inp
    if not inp and not out:
        return Arc(src, dst, "eps")
    return Arc(src, dst, "io", inp, out)


def parse_graph_text(text, name=None, path=None):
    graph_name = name
    states, index = [], {}
    initial, finals = [], []
    raw_arcs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("graph ") or line == "graph":
            parts = line.split()
            if len(parts) != 2:
                raise ResourceError("malformed graph line", path, lineno)
            graph_name = parts[1]
        elif line.startswith("state ") or line == "state":
            parts = line.split()
            if len(parts) < 2 or any(p not in ("initial", "final") for p in parts[2:]):
                raise ResourceError(f"malformed state line: {line!r}", path, lineno)
            sid = parts[1]
            if sid in index:
                raise ResourceError(f"duplicate state {sid!r}", path, lineno)
            index[sid] = len(states)
            states.append(sid)
            if "initial" in parts[2:]:
                initial.append(index[sid])
            if "final" in parts[2:]:
                finals.append(index[sid])
        else:
            m = _ARC_RE.match(line)
            if not m:
                raise ResourceError(f"malformed line: {line!r}", path, lineno)
            raw_arcs.append((lineno, m.group(1), m.group(2), m.group(3)))
    if graph_name is None:
        raise ResourceError("graph has no name", path)
    arcs = []
    for lineno, src, dst, label in raw_arcs:
        for sid in (src, dst):
            if sid not in index:
                raise ResourceError(f"undeclared state {sid!r}", path, lineno)
        try:
            arcs.append(parse_label(label, index[src], index[dst]))
        except ValueError as e:
            raise ResourceError(str(e), path, lineno) from None
    if len(initial) != 1:
        raise ResourceError(f"graph needs exactly one initial state, found {len(initial)}", path)
    if not finals:
        raise ResourceError("graph has no final state", path)
    graph = TransducerGraph(graph_name, states, initial[0], frozenset(finals), arcs)
    graph.warnings = _trim_warnings(graph)
    return graph


def _trim_warnings(graph):
    fwd = {graph.initial}
    out = graph.out_arcs()
    stack = [graph.initial]
    while stack:
        for arc in out[stack.pop()]:
            if arc.dst not in fwd:
                fwd.add(arc.dst)
                stack.append(arc.dst)
    back = set(graph.finals)
    into = [[] for _ in graph.states]
    for arc in graph.arcs:
        into[arc.dst].append(arc.src)
    stack = list(back)
    while stack:
        for src in into[stack.pop()]:
            if src not in back:
                back.add(src)
                stack.append(src)
    warnings = []
    for i, sid in enumerate(graph.states):
        if i not in fwd:
            warnings.append(f"{graph.name}: state {sid} unreachable from initial state")
        elif i not in back:
            warnings.append(f"{graph.name}: state {sid} cannot reach a final state")
    return warnings


def parse_graph(path):
    with open(path, encoding="utf-8") as f:
        text = f.read()
    default = os.path.splitext(os.path.basename(path))[0]
    return parse_graph_text(text, name=default, path=path)


def serialize_graph(graph):
    lines = [f"graph {graph.name}"]
    for i, sid in enumerate(graph.states):
        marks = []
        if i == graph.initial:
            marks.append("initial")
        if i in graph.finals:
            marks.append("final")
        lines.append(" ".join(["state", sid] + marks))
    for arc in graph.arcs:
        lines.append(f"{graph.states[arc.src]} -> {graph.states[arc.dst]} : {arc.label()}")
    return "\n".join(lines) + "\n"


def build_call_graph(graphs):
    """Directed graph of CALL references between graphs.

    ``graphs`` maps names to TransducerGraph. Raises ResourceError for a call
    to a graph that is not in the mapping.
    """
    cg = nx.DiGraph()
    cg.add_nodes_from(sorted(graphs))
    for name in sorted(graphs):
        for callee in graphs[name].calls():
            if callee not in graphs:
                raise ResourceError(f"graph {name!r} calls missing graph {callee!r}")
            cg.add_edge(name, callee)
    return cg


def call_cycles(call_graph):
    """Strongly connected components that contain a cycle, as sorted lists."""
    cycles = []
    for comp in nx.strongly_connected_components(call_graph):
        node = next(iter(comp))
        if len(comp) > 1 or call_graph.has_edge(node, node):
            cycles.append(sorted(comp))
    return sorted(cycles)


def reachable_graphs(root, graphs):
    """Names of ``root`` and every graph it calls transitively."""
    seen = {root}
    stack = [root]
    while stack:
        name = stack.pop()
        if name not in graphs:
            raise ResourceError(f"missing graph {name!r}")
        for callee in graphs[name].calls():
            if callee not in seen:
                seen.add(callee)
                stack.append(callee)
    return seen
