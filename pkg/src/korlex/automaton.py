"""Minimal acyclic deterministic automata built from sorted entry lists.

Construction is the incremental sorted-input algorithm: words are added in
lexicographic order and every state that can no longer change is either
merged with an equivalent registered state or registered itself. Payload
sets take part in state equivalence, so two final states carrying different
payloads are never merged.

The frozen automaton is stored as flat arrays (CSR layout): transitions of
state ``q`` are ``labels[first[q]:first[q+1]]`` / ``targets[...]`` sorted by
letter, payloads of ``q`` are ``payloads[pfirst[q]:pfirst[q+1]]``. State 0 is
the initial state.
"""

import numpy as np


class UnsortedInputError(ValueError):
    pass


class _Node:
    __slots__ = ("edges", "payloads", "key")

    def __init__(self):
        self.edges = {}
        self.payloads = set()
        self.key = None


def _common_prefix(a, b):
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return i


def compile_entries(entries):
    """Build the minimal automaton for ``entries``, a sorted iterable of
    ``(letters, payload)`` pairs with integer payloads.

    The same surface may appear several times with different payloads; exact
    duplicates are ignored. Raises UnsortedInputError if surfaces decrease.
    """
    register = {}
    root = _Node()
    path = [root]  # nodes along the previous word, path[i] after i letters
    prev = None

    def minimize(depth):
        # freeze path nodes deeper than ``depth``, deepest first
        while len(path) - 1 > depth:
            node = path.pop()
            key = (
                tuple(sorted(node.payloads)),
                tuple((c, id(child)) for c, child in node.edges.items()),
            )
            found = register.get(key)
            parent = path[-1]
            letter = next(reversed(parent.edges))
            if found is not None:
                parent.edges[letter] = found
            else:
                node.key = key
                register[key] = node

    for word, payload in entries:
        if prev is not None:
            if word < prev:
                raise UnsortedInputError(f"entries not sorted: {word!r} after {prev!r}")
            if word == prev:
                path[-1].payloads.add(payload)
                continue
        depth = _common_prefix(prev, word) if prev is not None else 0
        minimize(depth)
        node = path[-1]
        for c in word[depth:]:
            child = _Node()
            node.edges[c] = child
            path.append(child)
            node = child
        node.payloads.add(payload)
        prev = word
    minimize(0)
    return CompiledAutomaton.from_nodes(root)


class CompiledAutomaton:
    """Frozen acyclic DFA over single-character letters with int payloads."""

    def __init__(self, alphabet, first, labels, targets, pfirst, payloads):
        self.alphabet = alphabet  # str; labels index into it
        self.first = np.asarray(first, dtype=np.int32)
        self.labels = np.asarray(labels, dtype=np.uint16)
        self.targets = np.asarray(targets, dtype=np.int32)
        self.pfirst = np.asarray(pfirst, dtype=np.int32)
        self.payloads = np.asarray(payloads, dtype=np.int32)
        self._delta = None
        self._finals = None

    @classmethod
    def from_nodes(cls, root):
        # breadth-first numbering, letters in order; deterministic
        order = [root]
        index = {id(root): 0}
        i = 0
        while i < len(order):
            for c in sorted(order[i].edges):
                child = order[i].edges[c]
                if id(child) not in index:
                    index[id(child)] = len(order)
                    order.append(child)
            i += 1
        letters = sorted({c for node in order for c in node.edges})
        alphabet = "".join(letters)
        code = {c: k for k, c in enumerate(letters)}
        first, labels, targets, pfirst, payloads = [0], [], [], [0], []
        for node in order:
            for c in sorted(node.edges):
                labels.append(code[c])
                targets.append(index[id(node.edges[c])])
            first.append(len(labels))
            payloads.extend(sorted(node.payloads))
            pfirst.append(len(payloads))
        return cls(alphabet, first, labels, targets, pfirst, payloads)

    @classmethod
    def from_tables(cls, alphabet, delta, finals):
        """Build from per-state ``{letter: target}`` dicts and payload tuples."""
        code = {c: k for k, c in enumerate(alphabet)}
        first, labels, targets, pfirst, payloads = [0], [], [], [0], []
        for edges, pays in zip(delta, finals):
            for c in sorted(edges, key=code.__getitem__):
                labels.append(code[c])
                targets.append(edges[c])
            first.append(len(labels))
            payloads.extend(pays)
            pfirst.append(len(payloads))
        return cls(alphabet, first, labels, targets, pfirst, payloads)

    @property
    def n_states(self):
        return len(self.first) - 1

    @property
    def n_transitions(self):
        return len(self.labels)

    def _tables(self):
        if self._delta is None:
            first = self.first.tolist()
            labels = self.labels.tolist()
            targets = self.targets.tolist()
            pfirst = self.pfirst.tolist()
            payloads = self.payloads.tolist()
            alphabet = self.alphabet
            self._delta = [
                {alphabet[labels[t]]: targets[t] for t in range(first[q], first[q + 1])}
                for q in range(self.n_states)
            ]
            self._finals = [tuple(payloads[pfirst[q]:pfirst[q + 1]]) for q in range(self.n_states)]
        return self._delta, self._finals

    def transitions(self, state):
        return self._tables()[0][state]

    def state_payloads(self, state):
        return self._tables()[1][state]

    def walk(self, letters, state=0):
        """State reached by reading ``letters``, or -1."""
        delta = self._tables()[0]
        for c in letters:
            state = delta[state].get(c, -1)
            if state < 0:
                return -1
        return state

    def lookup(self, letters):
        """Payloads of ``letters``; empty tuple if not accepted."""
        state = self.walk(letters)
        return self._tables()[1][state] if state >= 0 else ()

    def accepts(self, letters):
        return bool(self.lookup(letters))

    def items(self):
        """All (word, payloads) pairs in lexicographic order."""
        delta, finals = self._tables()
        out = []
        stack = [(0, "")]
        while stack:
            state, prefix = stack.pop()
            if finals[state]:
                out.append((prefix, finals[state]))
            for c in sorted(delta[state], reverse=True):
                stack.append((delta[state][c], prefix + c))
        return out

    def count_words(self):
        """Number of accepted words, by dynamic programming over the DAG."""
        delta, finals = self._tables()
        counts = [0] * self.n_states
        for q in self._postorder():
            counts[q] = (1 if finals[q] else 0) + sum(counts[t] for t in delta[q].values())
        return counts[0] if self.n_states else 0

    def _postorder(self):
        delta = self._tables()[0]
        seen, order = {0}, []
        stack = [(0, iter(delta[0].values()))]
        while stack:
            q, it = stack[-1]
            t = next(it, None)
            if t is None:
                stack.pop()
                order.append(q)
            elif t not in seen:
                seen.add(t)
                stack.append((t, iter(delta[t].values())))
        return order

    def arrays(self):
        return {
            "first": self.first,
            "labels": self.labels,
            "targets": self.targets,
            "pfirst": self.pfirst,
            "payloads": self.payloads,
        }
