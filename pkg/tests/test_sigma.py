from __future__ import annotations

import pytest

from coxtrans.coxeter import (
    NONTRIVIAL_2,
    THREE,
    TRIVIAL_2,
    CoxeterError,
    CoxeterGraph,
    Move,
    apply_move,
    enumerate_moves,
)
from coxtrans.sigma import (
    HORIZONTAL,
    INCLINED_II,
    Strip,
    StripPoint,
    boundary_vertex_witness,
    bounded_set,
    build_sigma,
    build_strip,
    check_graph_change,
    check_strip_cycles,
    check_strip_planarity,
    l_minus,
    predict_graph_change,
    strips_of,
    to_dot,
)
from conftest import word


def test_l_minus(a4_word):
    assert l_minus(a4_word, 3) == 0
    assert l_minus(a4_word, 8) == 7
    assert l_minus(a4_word, 1) == 0


def test_sigma_a2_triple():
    sig = build_sigma(word((-1, -2, -1)))
    assert sig.edges == frozenset({(3, 1, HORIZONTAL), (2, 3, INCLINED_II)})
    assert sig.bounded == frozenset({3})


def test_sigma_opposite_pair():
    sig = build_sigma(word((-1, 1)))
    assert sig.directed() == frozenset({(2, 1)})
    assert sig.bounded == frozenset({2})


def test_sigma_trivial_cases():
    sig = build_sigma(word((-1,)))
    assert not sig.edges and not sig.bounded
    assert build_sigma(word(())).m == 0
    assert bounded_set(word((1, -2))) == frozenset()


def test_sigma_rejects_nonreduced():
    with pytest.raises(CoxeterError):
        build_sigma(word((1, 1)))


def test_a4_bounded(a4_word):
    sig = build_sigma(a4_word)
    assert len(sig.bounded) == 13
    assert sig.unbounded == [1, 2, 3, 6]


def test_a4_direction_rule(a4_word):
    sig = build_sigma(a4_word)
    for a, b, t in sig.edges:
        k, l = min(a, b), max(a, b)
        eps = 1 if a4_word[k] > 0 else -1
        forward = (a, b) == (k, l)
        assert forward == ((t == HORIZONTAL) == (eps == 1))


def test_strip_points_and_charges():
    sig = build_sigma(word((-1, -2, -1)))
    st = build_strip(sig, 1, 2)
    assert [p.position for p in st.points] == [1, 2, 3]
    assert [p.charge for p in st.points] == [1, -1, 1]


def test_strip_sizes(a4_word):
    sig = build_sigma(a4_word)
    # positions carrying letters of absolute value 1 or 2
    pts = [p.position for p in build_strip(sig, 1, 2).points]
    assert pts == [1, 2, 4, 5, 7, 8, 10, 12, 14, 16, 17]
    assert build_strip(build_sigma(word((-1,), 3)), 2, 3).points == ()
    with pytest.raises(CoxeterError):
        build_strip(sig, 1, 3, a4_word.graph)


def test_strips_pass_on_a4(a4_word):
    sig = build_sigma(a4_word)
    for st in strips_of(sig, a4_word.graph):
        assert check_strip_planarity(st).ok
        assert check_strip_cycles(st).ok


def test_strip_cycles_small():
    w = word((-1, -2, -1, 2))
    st = build_strip(build_sigma(w), 1, 2)
    v = check_strip_cycles(st)
    assert v.ok and v.checked == len(st.inclined) - 1 >= 1


def test_crossing_strip_detected():
    pts = tuple(StripPoint(p, lvl, -1) for p, lvl in [(1, -1), (2, 1), (3, -1), (4, 1)])
    st = Strip((1, 2), pts, ((1, 4), (3, 2)), ())
    assert not check_strip_planarity(st).ok
    few = Strip((1, 2), pts, ((1, 2),), ())
    assert check_strip_planarity(few).ok and check_strip_cycles(few).ok


def test_boundary_vertex():
    sig = build_sigma(word((-1, -2, -1)))
    assert boundary_vertex_witness(sig, {3}) == (1, 3)
    with pytest.raises(CoxeterError):
        boundary_vertex_witness(sig, {1})


def test_boundary_vertex_exhaustive_a4(a4_word):
    sig = build_sigma(a4_word)
    B = sorted(sig.bounded)
    for mask in range(1, 1 << len(B)):
        S = [B[i] for i in range(len(B)) if mask >> i & 1]
        assert boundary_vertex_witness(sig, S) is not None


def test_graph_change_a4_sequence(a4_word):
    mv1 = Move(NONTRIVIAL_2, 8)
    assert mv1 in enumerate_moves(a4_word)
    assert check_graph_change(a4_word, mv1).ok
    w2 = apply_move(a4_word, mv1)
    mv2 = Move(THREE, 10)
    assert mv2 in enumerate_moves(w2)
    assert check_graph_change(w2, mv2).ok


def test_graph_change_trivial_is_relabel():
    w = word((-3, -1, 2), 3)
    mv = Move(TRIVIAL_2, 2)
    assert mv in enumerate_moves(w)
    sig = build_sigma(w)
    pred = predict_graph_change(sig, w, mv)
    relabel = {1: 2, 2: 1, 3: 3}
    assert pred.directed() == frozenset((relabel[a], relabel[b]) for a, b in sig.directed())


def test_graph_change_every_move_a4(a4_word):
    for mv in enumerate_moves(a4_word):
        assert check_graph_change(a4_word, mv).ok, mv


def test_dot_output():
    dot = to_dot(build_sigma(word((-1, -2, -1))))
    assert dot.startswith("digraph Sigma {")
    assert dot.count("label=") == 3
    assert dot.count("->") == 2
    assert "3 -> 1 [style=solid]" in dot
    assert "2 -> 3 [style=dashed]" in dot
    assert to_dot(build_sigma(word(()))).count("->") == 0
