"""Acceptance checks for the bundled mini resource set.

Every test prints one ``PASS``/``FAIL`` line with the measured value, then
asserts. Run with ``pytest -v tests/test_acceptance.py``.
"""

import glob
import os
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from korlex import DATA_DIR, MINI_MANIFEST
from korlex.annotator import Annotator, read_dags
from korlex.automaton import compile_entries
from korlex.bench import benchmark, count_words, synthetic_text
from korlex.evaluator import evaluate, load_reference, parse_downgrade_map
from korlex.graphs import parse_graph
from korlex.hangul import compose, decompose
from korlex.rtn import enumerate_endings

from conftest import fixture_path
from oracles import cross_product, minimal_state_count, naive_scores, random_entry_set, rtn_oracle

pytestmark = pytest.mark.acceptance

MINI = os.path.dirname(MINI_MANIFEST)
MAP = os.path.join(MINI, "downgrade.map")


@pytest.fixture
def verdict(capsys):
    def emit(name, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        assert ok, detail
    return emit


def test_jamo_round_trip(verdict):
    syllables = "".join(chr(c) for c in range(0xAC00, 0xD7A4))
    start = time.perf_counter()
    ok = all(compose(decompose(s)) == s for s in syllables)
    elapsed = time.perf_counter() - start
    verdict("jamo round-trip", ok and len(syllables) == 11172 and elapsed < 1.0,
            f"{len(syllables)} syllables, {elapsed:.3f} s (limit 1 s)")


def test_minimality_oracle(verdict):
    rng = np.random.default_rng(2006)
    mismatches = 0
    for _ in range(100):
        entries = random_entry_set(rng, max_entries=200)
        if compile_entries(entries).n_states != minimal_state_count(entries):
            mismatches += 1
    verdict("minimality oracle", mismatches == 0, f"{mismatches}/100 sets differ from partition refinement")


def test_language_equality(verdict, mini_lexicon):
    oracle = cross_product(mini_lexicon.stems, mini_lexicon.endings)
    accepted = set(mini_lexicon.words())
    diff = len(accepted ^ set(oracle))
    verdict("language equality", diff == 0 and len(oracle) <= 10_000,
            f"{len(accepted)} accepted, {len(oracle)} in cross product, {diff} differ")


def test_worked_examples(verdict, mini_lexicon):
    dmap = parse_downgrade_map(MAP)
    ann = Annotator(mini_lexicon)

    def coarse(word):
        return [[(m.surface, dmap.coarse(m.tag)) for m in a] for a in ann.annotate_word(word)]

    keot = ann.annotate_word("컸다")
    keot_ok = (
        coarse("컸다") == [[("ㅋ", "pa"), ("ㅓㅆ", "ep"), ("다", "ef")]]
        and keot[0][0].base == "크다"
        and str(keot[0][1].tag) == "EP+tense=past"
        and str(keot[0][2].tag) == "EF+lvl=plain+mood=decl"
    )
    jim_ok = coarse("짐승만도") == [[("짐승", "nc"), ("만", "jx"), ("도", "jx")]]
    verdict("worked examples", keot_ok and jim_ok,
            f"컸다 -> {coarse('컸다')}; 짐승만도 -> {coarse('짐승만도')}")


def test_rtn_enumeration(verdict):
    graphs = {}
    for path in glob.glob(os.path.join(DATA_DIR, "mini", "graphs", "suffix", "*.graph")):
        g = parse_graph(path)
        graphs[g.name] = g
    combo = {}
    for path in glob.glob(fixture_path("combo", "*.graph")):
        g = parse_graph(path)
        combo[g.name] = g

    def as_set(entries):
        return {(e.surface, tuple((m.surface, m.base, str(m.tag)) for m in e.morphemes)) for e in entries}

    bad, monotone, checked = [], True, 0
    for name in sorted(graphs):
        sets = {}
        for bound in (1, 2):
            sets[bound] = as_set(enumerate_endings(name, graphs, bound))
            if sets[bound] != rtn_oracle(name, graphs, bound):
                bad.append((name, bound))
            checked += 1
        monotone &= sets[1] <= sets[2]
    n_combo = len(enumerate_endings("combo", combo, 1))
    verdict("RTN enumeration", not bad and monotone and n_combo == 60,
            f"{checked} (graph, bound) pairs, mismatches {bad}, monotone={monotone}, 3x4x5 -> {n_combo}")


def test_evaluator_fixtures(verdict, mini_lexicon):
    dmap = parse_downgrade_map(MAP)
    results = {}
    cases = {
        "four-word": (fixture_path("four_words", "text.txt"), fixture_path("four_words", "ref.tsv"),
                      (Fraction(3, 4), Fraction(1, 2))),
        "toy corpus": (os.path.join(MINI, "corpus", "toy.txt"), os.path.join(MINI, "corpus", "toy.ref"),
                       (Fraction(169, 187), Fraction(166, 187))),
    }
    ok = True
    for name, (text_path, ref_path, expected) in cases.items():
        with open(text_path, encoding="utf-8") as f:
            dags = list(Annotator(mini_lexicon).iter_dags(f.read()))
        s = evaluate(dags, load_reference(ref_path), dmap)
        got = (s.recall, s.precision)
        ok &= got == expected == naive_scores(mini_lexicon, ref_path, MAP)
        results[name] = f"R={got[0]} P={got[1]}"
    verdict("evaluator fixtures", ok, "; ".join(f"{k}: {v}" for k, v in results.items()))


def test_throughput(verdict, mini_lexicon):
    start = time.perf_counter()
    text = synthetic_text(mini_lexicon, 100_000, seed=0)
    n = count_words(text)
    result = benchmark(mini_lexicon, text)
    total = time.perf_counter() - start
    rate = result["words_per_second"]
    verdict("throughput", n == 100_000 and rate >= 1210 and total < 120,
            f"{n} words at {rate:,.0f} word/s (floor 1,210), check took {total:.1f} s")


def _run_pipeline(workdir, hash_seed):
    env = dict(os.environ, PYTHONHASHSEED=str(hash_seed))
    lex = os.path.join(workdir, "mini.klx")
    dag = os.path.join(workdir, "toy.dag")
    cmd = [sys.executable, "-m", "korlex"]
    subprocess.run(cmd + ["compile", MINI_MANIFEST, "-o", lex], check=True, env=env,
                   capture_output=True)
    subprocess.run(cmd + ["annotate", "--lexicon", lex, "--input", os.path.join(MINI, "corpus", "toy.txt"),
                          "--output", dag], check=True, env=env, capture_output=True)
    with open(lex, "rb") as f1, open(dag, "rb") as f2:
        return f1.read(), f2.read()


def test_determinism(verdict, tmp_path):
    (tmp_path / "a").mkdir()
    (tmp_path / "b").mkdir()
    lex_a, dag_a = _run_pipeline(str(tmp_path / "a"), 1)
    lex_b, dag_b = _run_pipeline(str(tmp_path / "b"), 2)
    n_dags = len(list(read_dags(dag_a.decode("utf-8").splitlines())))
    verdict("determinism", lex_a == lex_b and dag_a == dag_b,
            f"lexicon {len(lex_a)} B identical={lex_a == lex_b}, "
            f"{n_dags} DAGs identical={dag_a == dag_b} (two processes, different hash seeds)")
