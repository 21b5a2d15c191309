"""Independent reference implementations used as test oracles.

Each one is deliberately naive: explicit search, explicit tries, explicit
cross products. None of them shares code with the package beyond parsed
resource objects.
"""


# --- suffix RTNs -----------------------------------------------------------

def canonical_tag(token):
    general, *features = token.split("+")
    return "+".join([general] + sorted(features))


def rtn_oracle(root, graphs, unroll_bound):
    """Set of (surface, ((surface, base, tag), ...)) by DFS over configurations.

    A configuration is (graph, state, return stack, surface so far, open
    morpheme letters, closed morphemes). The return stack lists (graph,
    state-after-call) frames; a graph may occur at most 1 + unroll_bound
    times among the active graphs.
    """
    results = set()
    todo = [(root, graphs[root].initial, (), "", "", "", ())]
    while todo:
        name, state, stack, surf, m_surf, m_base, done = todo.pop()
        g = graphs[name]
        if state in g.finals:
            if stack:
                (caller, back), rest = stack[-1], stack[:-1]
                todo.append((caller, back, rest, surf, m_surf, m_base, done))
            elif not m_surf and not m_base:
                results.add((surf, done))
        for arc in g.arcs:
            if arc.src != state:
                continue
            if arc.kind == "eps":
                todo.append((name, arc.dst, stack, surf, m_surf, m_base, done))
            elif arc.kind == "io":
                i, o = "".join(arc.inp), "".join(arc.out)
                todo.append((name, arc.dst, stack, surf + i, m_surf + i, m_base + o, done))
            elif arc.kind == "token":
                morph = (m_surf, m_base, canonical_tag(arc.name))
                todo.append((name, arc.dst, stack, surf, "", "", done + (morph,)))
            else:
                active = [caller for caller, _ in stack] + [name]
                if active.count(arc.name) + 1 > 1 + unroll_bound:
                    continue
                new_stack = stack + ((name, arc.dst),)
                todo.append((arc.name, graphs[arc.name].initial, new_stack, surf, m_surf, m_base, done))
    return results


def canonical_tag(token):
    general, *features = token.split("+")
    return "+".join([general] + sorted(features))


# --- minimal automata --------------------------------------------------------

def random_entry_set(rng, max_entries=200, alphabet="abcd", max_len=7, n_payloads=3):
    """Sorted (word, payload) pairs; a word may carry several payloads."""
    n = int(rng.integers(1, max_entries + 1))
    entries = set()
    for _ in range(n):
        length = int(rng.integers(1, max_len + 1))
        word = "".join(rng.choice(list(alphabet), size=length))
        entries.add((word, int(rng.integers(0, n_payloads))))
    return sorted(entries)


def minimal_state_count(entries):
    """States of the minimal DFA: build a trie, then refine partitions (Moore)."""
    trie = [{}]
    finals = [set()]
    for word, payload in entries:
        q = 0
        for c in word:
            if c not in trie[q]:
                trie.append({})
                finals.append(set())
                trie[q][c] = len(trie) - 1
            q = trie[q][c]
        finals[q].add(payload)
    n = len(trie)
    labels = [tuple(sorted(finals[q])) for q in range(n)]
    ids = {lab: i for i, lab in enumerate(sorted(set(labels)))}
    part = [ids[labels[q]] for q in range(n)]
    while True:
        sigs = [
            (part[q], tuple(sorted((c, part[t]) for c, t in trie[q].items())))
            for q in range(n)
        ]
        ids = {}
        new = [ids.setdefault(sig, len(ids)) for sig in sigs]
        if len(ids) == len(set(part)):
            return len(ids)
        part = new


# --- linked lexicon ----------------------------------------------------------

def cross_product(stems, endings):
    """Map word -> set of (stem index, ending index) for every CS match."""
    by_cs = {}
    for j, (cs, ending) in enumerate(endings):
        by_cs.setdefault(cs, []).append((j, ending.surface))
    words = {}
    for i, stem in enumerate(stems):
        for j, surface in by_cs.get(stem.cs, ()):
            words.setdefault(stem.surface + surface, set()).add((i, j))
    return words


# --- evaluation ---------------------------------------------------------------

def naive_scores(lexicon, reference_path, map_path):
    """Recall and precision straight from lexicon lookups, without DAGs.

    The downgrade map is applied by trying patterns from most to least
    features. A matched word scores 1 / (number of fine analyses) towards
    precision. Returns (recall, precision) as Fractions.
    """
    from fractions import Fraction

    from korlex.hangul import compose, decompose

    patterns = []
    with open(map_path, encoding="utf-8") as f:
        for line in f:
            line = line.split("#")[0].split()
            if line:
                general, *feats = line[0].split("+")
                patterns.append((general, set(feats), line[1]))
    patterns.sort(key=lambda p: -len(p[1]))

    def coarse(tag):
        general, *feats = str(tag).split("+")
        for g, need, c in patterns:
            if g == general and need <= set(feats):
                return c
        raise KeyError(str(tag))

    n = hits = 0
    prec = Fraction(0)
    with open(reference_path, encoding="utf-8") as f:
        for line in f:
            if line.startswith("#") or not line.strip():
                continue
            cols = line.rstrip("\n").split("\t")
            if len(cols) == 3 and cols[2] != "1":
                continue
            ref = tuple(tuple(m.rsplit("/", 1)) for m in cols[1].split("+"))
            analyses = lexicon.lookup(decompose(cols[0]))
            keys = {tuple((compose(m.base), coarse(m.tag)) for m in a.morphemes) for a in analyses}
            n += 1
            if ref in keys:
                hits += 1
                prec += Fraction(1, len(analyses))
    return Fraction(hits, n), prec / n
