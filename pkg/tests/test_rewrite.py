import functools
import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxspec.coxeter import content, lex_leq, typeA, typeB, typeD, typeI
from coxspec.groups import conjugacy_data, enumerate_group, eval_word
from coxspec.rewrite import (
    Cancel,
    Circular,
    Commute,
    EchelonForm,
    PatternMismatch,
    ReplaceBraid,
    RewriteTrace,
    Step,
    TentCommute,
    apply_step,
    echelon_conjugacy_merge,
    is_echelon,
    tent_word,
    to_echelon,
    verify_tent_identities,
)

KINDS = (Cancel, Commute, ReplaceBraid, TentCommute)


def candidate_steps(w):
    for p in range(len(w)):
        for make in KINDS:
            yield make(p)
    for k in range(1, len(w)):
        yield Circular(k)


def applicable(w, sys):
    for s in candidate_steps(w):
        try:
            yield s, apply_step(w, s, sys)
        except PatternMismatch:
            pass


def all_words(g, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(range(1, g + 1), repeat=n)


def test_tent_word_examples():
    assert tent_word(1, typeB(2)) == (1, 2, 1)
    assert tent_word(1, typeD(3)) == (1, 2, 3, 1)
    assert tent_word(2, typeB(3)) == (2, 3, 2)
    assert tent_word(1, typeD(5)) == (1, 2, 3, 4, 5, 3, 2, 1)


@pytest.mark.parametrize("bad", [lambda: tent_word(1, typeA(3)), lambda: tent_word(3, typeB(3)), lambda: tent_word(1, typeI(5))])
def test_tent_word_errors(bad):
    with pytest.raises(ValueError):
        bad()


def test_apply_step_examples():
    assert apply_step([1, 1, 2], Cancel(0), typeA(2)) == (2,)
    assert apply_step([1, 3], Commute(0), typeA(3)) == (3, 1)
    assert apply_step([1, 2, 1], ReplaceBraid(0), typeA(2)) == (2, 1, 2)
    with pytest.raises(PatternMismatch, match="position 0"):
        apply_step([1, 2, 1, 3], TentCommute(0), typeB(3))


def test_apply_step_tent_and_circular():
    b3 = typeB(3)
    assert apply_step([1, 2, 3, 2, 1, 3], TentCommute(0), b3) == (3, 1, 2, 3, 2, 1)
    assert apply_step([1, 2, 3, 2, 1, 2], TentCommute(0), b3) == (2, 1, 2, 3, 2, 1)
    d4 = typeD(4)
    assert apply_step([1, 2, 3, 4, 2, 1, 3], TentCommute(0), d4) == (4, 1, 2, 3, 4, 2, 1)
    assert apply_step([1, 2, 3], Circular(1), b3) == (2, 3, 1)
    for bad in (Circular(0), Circular(3), Commute(0), Cancel(1), ReplaceBraid(1)):
        with pytest.raises(PatternMismatch):
            apply_step([1, 2, 3], bad, b3)


def test_braid_patterns_are_content_decreasing_only():
    with pytest.raises(PatternMismatch):
        apply_step([2, 1, 2], ReplaceBraid(0), typeA(2))
    with pytest.raises(PatternMismatch):  # (2,3,2) with m=4 in B_3 is not a braid
        apply_step([2, 3, 2], ReplaceBraid(0), typeB(3))
    assert apply_step([2, 4, 2], ReplaceBraid(0), typeD(4)) == (4, 2, 4)


def test_step_json_round_trip():
    for s in (Cancel(2), Circular(3), ReplaceBraid(1, 2), TentCommute(0, 1)):
        assert Step.from_json(s.to_json()) == s
    with pytest.raises(ValueError):
        Step("swap", 0)


@pytest.mark.parametrize("sys,max_len", [(typeA(3), 8), (typeB(3), 8), (typeD(4), 8)])
def test_step_monotonicity_and_element_preservation(sys, max_len):
    table = enumerate_group(sys)
    conj = conjugacy_data(table)
    for w in all_words(sys.generator_count, max_len):
        cw = content(w, sys)
        x = None
        for s, out in applicable(w, sys):
            assert lex_leq(content(out, sys), cw), (w, s)
            if x is None:
                x = table.word_index(w)
            y = table.word_index(out)
            if s.kind == "circular":
                assert conj.class_of[x] == conj.class_of[y]
            else:
                assert x == y, (w, s)


@pytest.mark.parametrize("sys", [typeB(2), typeD(3), typeB(3), typeD(4), typeB(4), typeD(5)])
def test_verify_tent_identities(sys):
    assert verify_tent_identities(sys)


def test_tent_identities_by_hand_in_b2():
    # t_1 = g1 g2 g1 commutes with g2 as 2x2 signed permutation matrices
    sys = typeB(2)
    t = eval_word(tent_word(1, sys), sys).matrix()
    g2 = eval_word([2], sys).matrix()
    assert np.array_equal(t @ g2, g2 @ t)


def test_is_echelon_examples():
    assert is_echelon([], typeA(2)).kinds == ("1", "1", "1")
    form = is_echelon([1, 2, 1, 2], typeB(2))
    assert form.symbols == ["t1", "g2", "1"]
    assert is_echelon([2, 1], typeA(2)) is None
    assert is_echelon([1, 2, 3, 1, 3], typeD(3)).symbols == ["t1", "1", "g3"]
    with pytest.raises(ValueError):
        EchelonForm(typeA(2), ("1", "1", "g"))


def reachable(start, sys, depth):
    seen, frontier = {tuple(start)}, [tuple(start)]
    for _ in range(depth):
        nxt = []
        for w in frontier:
            for _, out in applicable(w, sys):
                if out not in seen:
                    seen.add(out)
                    nxt.append(out)
        frontier = nxt
    return seen


def test_to_echelon_examples():
    form, trace = to_echelon([1, 2, 1], typeA(2))
    assert form.word == (1,) and form.symbols == ["g1", "1", "1"]
    assert (1,) in reachable([1, 2, 1], typeA(2), 6)
    form, trace = to_echelon([2, 1, 2, 1], typeB(2))
    assert form.word == (1, 2, 1, 2) and form.symbols == ["t1", "g2", "1"]
    assert (1, 2, 1, 2) in reachable([2, 1, 2, 1], typeB(2), 6)
    for sys in (typeA(3), typeB(2), typeD(4)):
        form, trace = to_echelon([], sys)
        assert form.word == () and trace.steps == ()


def test_to_echelon_rejects_type_i():
    with pytest.raises(ValueError):
        to_echelon([1, 2], typeI(5))


def check_trace(word, sys, table, conj):
    form, trace = to_echelon(word, sys)
    assert is_echelon(trace.end, sys) is not None
    assert trace.replay(sys) == trace.end == form.word
    assert lex_leq(content(trace.end, sys), content(word, sys))
    x, y = table.word_index(word), table.word_index(trace.end)
    c = conj.conjugator_between(x, y)
    assert c is not None and table.conjugate(c, x) == y
    for first, last in trace.segments(sys):
        assert table.word_index(first) == table.word_index(last)
    again, trace2 = to_echelon(trace.end, sys)
    assert again.word == form.word and trace2.steps == ()


@pytest.mark.parametrize("sys,max_len", [(typeA(2), 8), (typeB(2), 8), (typeD(3), 8), (typeA(3), 7), (typeB(3), 7), (typeD(4), 6)])
def test_to_echelon_exhaustive(sys, max_len):
    table = enumerate_group(sys)
    conj = conjugacy_data(table)
    for w in all_words(sys.generator_count, max_len):
        check_trace(w, sys, table, conj)


@functools.lru_cache(maxsize=None)
def cached_group(sys):
    table = enumerate_group(sys, cap=30000)
    return table, conjugacy_data(table)


@pytest.mark.parametrize("sys", [typeA(5), typeB(5), typeD(6)])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_to_echelon_random_long_words(sys, data):
    word = data.draw(st.lists(st.integers(1, sys.generator_count), max_size=20))
    table, conj = cached_group(sys)
    check_trace(word, sys, table, conj)


def test_trace_json():
    _, trace = to_echelon([2, 1, 2, 1], typeB(2))
    data = trace.to_json()
    rebuilt = RewriteTrace(tuple(data["start"]), tuple(Step.from_json(s) for s in data["steps"]), tuple(data["end"]))
    assert rebuilt.replay(typeB(2)) == rebuilt.end


def test_merge_examples():
    d3 = typeD(3)
    e1, e2 = is_echelon([1, 2, 3, 1, 3], d3), is_echelon([1, 2, 3, 1, 2], d3)
    verdict = echelon_conjugacy_merge(e1, e2, d3)
    assert verdict and verdict.path == "fork-length"
    table = enumerate_group(d3)
    conj = conjugacy_data(table)
    assert conj.class_of[table.word_index(e1.word)] == conj.class_of[table.word_index(e2.word)]
    assert echelon_conjugacy_merge(e1, e1, d3).path == "equal-words"


@pytest.mark.parametrize("sys,w1,w2", [(typeD(3), [2], [3]), (typeD(4), [3], [4]), (typeD(4), [1, 3], [1, 4])])
def test_merge_short_fork_uses_brute_force(sys, w1, w2):
    e1, e2 = is_echelon(w1, sys), is_echelon(w2, sys)
    verdict = echelon_conjugacy_merge(e1, e2, sys)
    assert verdict.path == "brute-force"
    table = enumerate_group(sys)
    x, y = table.word_index(w1), table.word_index(w2)
    expected = any(table.conjugate(c, x) == y for c in range(len(table)))
    assert verdict.conjugate == expected


def test_merge_errors():
    d4 = typeD(4)
    with pytest.raises(ValueError):
        echelon_conjugacy_merge(is_echelon([1], d4), is_echelon([2], d4), d4)
    with pytest.raises(ValueError):
        echelon_conjugacy_merge(is_echelon([1], typeB(3)), is_echelon([1], typeB(3)), typeB(3))
