import io
import os
import random
from fractions import Fraction

import pytest

from korlex import DATA_DIR
from korlex.annotator import Annotator, MorphemeArc, MorphemeDAG, dag_words
from korlex.evaluator import (
    AlignmentError, ReferenceWord, TagDowngradeMap, UnmappedTagError, downgrade, evaluate,
    parse_downgrade_map, read_reference,
)
from korlex.automaton import compile_entries
from korlex.lexicon import link
from korlex.resources import Tag

from conftest import fixture_path
from oracles import naive_scores

MINI = os.path.join(DATA_DIR, "mini")
MAP = os.path.join(MINI, "downgrade.map")
TOY_TEXT = os.path.join(MINI, "corpus", "toy.txt")
TOY_REF = os.path.join(MINI, "corpus", "toy.ref")
FOUR_TEXT = fixture_path("four_words", "text.txt")
FOUR_REF = fixture_path("four_words", "ref.tsv")


def read(path):
    with open(path, encoding="utf-8") as f:
        return f.read()


def score(lexicon, text_path, ref_path, dmap=None):
    dags = list(Annotator(lexicon).iter_dags(read(text_path)))
    with open(ref_path, encoding="utf-8") as f:
        reference = read_reference(f)
    return evaluate(dags, reference, dmap or parse_downgrade_map(MAP))


def test_four_word_fixture(mini_lexicon):
    s = score(mini_lexicon, FOUR_TEXT, FOUR_REF)
    assert s.recall == Fraction(3, 4)
    # 컸다 1, 사과를 1/2, 쓴 1/2, 좋다 0
    assert s.precision == Fraction(1, 2)
    assert (s.recall, s.precision) == naive_scores(mini_lexicon, FOUR_REF, MAP)


def test_toy_corpus_hand_count(mini_lexicon):
    s = score(mini_lexicon, TOY_TEXT, TOY_REF)
    # 188 words, one of them a two-stem compound (사과나무가)
    assert (s.total_words, s.single_stem_words) == (188, 187)
    # 18 misses: 짐승만도 (segmentation convention); 7 noun+하 predicates the
    # reference splits into noun + suffix (노래했다, 공부했다, 공부했습니다,
    # 행복했다, 운동했습니까, 사과했다, 사랑했습니다); 10 words outside the mini
    # lexicon (못하다, 편지를, 학생들이, 서울에, 않다, 문을, 학교에서, 학생과,
    # 책상이, 배가)
    assert s.matched == 169
    assert s.recall == Fraction(169, 187)
    # six matched words have two fine analyses: 사과를, 사과는, 쓴, 썼다 x2, 썼고
    assert s.precision == Fraction(169 - 6, 187) + Fraction(6, 2 * 187)
    assert (s.recall, s.precision) == naive_scores(mini_lexicon, TOY_REF, MAP)


def reference_from_system(lexicon, text, dmap, pick=0):
    words = []
    for dag in Annotator(lexicon).iter_dags(text):
        for w, analyses in dag_words(dag):
            words.append(ReferenceWord(w, downgrade(analyses[pick], dmap)))
    return words


def test_superset_gives_full_recall(mini_lexicon):
    dmap = parse_downgrade_map(MAP)
    text = "컸다 사과를 쓴 좋다 갔습니다."
    ref = reference_from_system(mini_lexicon, text, dmap)
    s = evaluate(list(Annotator(mini_lexicon).iter_dags(text)), ref, dmap)
    assert s.recall == 1
    assert s.precision < 1


def test_unambiguous_and_correct_is_one(mini_lexicon):
    dmap = parse_downgrade_map(MAP)
    text = "컸다 좋다 갔습니다 학교에도."
    ref = reference_from_system(mini_lexicon, text, dmap)
    s = evaluate(list(Annotator(mini_lexicon).iter_dags(text)), ref, dmap)
    assert s.recall == s.precision == 1


def test_empty_system_output():
    empty = link(compile_entries([]), [], {}, [])
    s = score(empty, FOUR_TEXT, FOUR_REF)
    assert s.recall == 0 and s.precision == 0


def four_way_dag():
    dag = MorphemeDAG(1, n_nodes=2)
    for g in ("N", "V", "A", "JX"):
        dag.arcs.append(MorphemeArc(0, 1, "가", "가", Tag(g)))
    return dag


def test_four_analyses_contribute_quarter():
    dmap = TagDowngradeMap([(Tag(g), g.lower()) for g in ("N", "V", "A", "JX")])
    s = evaluate([four_way_dag()], [ReferenceWord("가", (("가", "v"),))], dmap)
    assert s.recall == 1 and s.precision == Fraction(1, 4)


def test_per_word_precision_bounded_by_recall(mini_lexicon):
    dmap = parse_downgrade_map(MAP)
    dags = list(Annotator(mini_lexicon).iter_dags(read(TOY_TEXT)))
    with open(TOY_REF, encoding="utf-8") as f:
        ref = read_reference(f)
    s = evaluate(dags, ref, dmap)
    assert 0 <= s.precision <= s.recall <= 1


def test_permutation_invariant(mini_lexicon):
    dmap = parse_downgrade_map(MAP)
    with open(TOY_REF, encoding="utf-8") as f:
        ref = read_reference(f)
    base = score(mini_lexicon, TOY_TEXT, TOY_REF)
    rng = random.Random(7)
    order = list(range(len(ref)))
    rng.shuffle(order)
    text = " ".join(ref[i].text for i in order) + "."
    s = evaluate(list(Annotator(mini_lexicon).iter_dags(text)), [ref[i] for i in order], dmap)
    assert (s.recall, s.precision) == (base.recall, base.precision)


def test_downgrade_projection():
    dmap = TagDowngradeMap([(Tag("V"), "pv"), (Tag.parse("JC+case=nom"), "jcs")])
    assert dmap.coarse(Tag.parse("V+deriv=noun+tense=past+val=1")) == "pv"
    assert dmap.coarse(Tag.parse("JC+case=nom+aux=top")) == "jcs"
    with pytest.raises(UnmappedTagError, match="JC"):
        dmap.coarse(Tag.parse("JC+case=acc"))


def test_unmapped_lists_all_tags():
    dmap = TagDowngradeMap([(Tag("N"), "nc")])
    analysis = [MorphemeArc(0, 1, "가", "가", Tag("V")), MorphemeArc(1, 2, "가", "가", Tag("EF"))]
    with pytest.raises(UnmappedTagError) as info:
        downgrade(analysis, dmap)
    assert "V" in str(info.value) and "EF" in str(info.value)


def test_identity_map():
    tag = Tag.parse("A+val=1")
    analysis = [MorphemeArc(0, 1, "ㅋ", "크다", tag)]
    assert downgrade(analysis, TagDowngradeMap.identity()) == (("크다", str(tag)),)


def test_mini_tags_through_bundled_map(mini_lexicon):
    dmap = parse_downgrade_map(MAP)
    table = {
        "N+sem=cnt": "nc", "V+deriv=noun": "pv", "A+val=1": "pa", "EP+tense=past": "ep",
        "EF+lvl=formal+mood=inter": "ef", "EC+conn=cause": "ecx", "ETM": "etm",
        "JC+case=nom": "jcs", "JC+case=acc": "jco", "JC+case=loc": "jca", "JX+aux=lim": "jx",
    }
    for fine, coarse in table.items():
        assert dmap.coarse(Tag.parse(fine)) == coarse
    emitted = {m.tag for w in mini_lexicon.words() for a in mini_lexicon.lookup(w) for m in a.morphemes}
    assert all(dmap.coarse(t) for t in emitted)


def test_alignment_error(mini_lexicon):
    dags = list(Annotator(mini_lexicon).iter_dags("컸다 좋다."))
    ref = [ReferenceWord("컸다", (("크다", "pa"),)), ReferenceWord("작다", (("작다", "pa"),))]
    with pytest.raises(AlignmentError) as info:
        evaluate(dags, ref, parse_downgrade_map(MAP))
    assert info.value.position == 1
    with pytest.raises(AlignmentError) as info:
        evaluate(dags, ref[:1], parse_downgrade_map(MAP))
    assert info.value.position == 1


def test_reference_format_errors():
    with pytest.raises(Exception, match="line 2"):
        read_reference(io.StringIO("컸다\t크다/pa\n나쁨\n"))
    with pytest.raises(Exception, match="line 1"):
        read_reference(io.StringIO("컸다\t크다pa\n"))
