from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxtrans.conjugation import (
    certificate_along,
    check_intertwiner,
    check_omega_transform,
    check_phi_inverses,
    check_tau_phi_squared,
    conjugacy_certificate,
    det,
    intertwiner_exceptions,
    matmul,
    omega_correction,
    phi_map,
)
from coxtrans.coxeter import NONTRIVIAL_2, THREE, TRIVIAL_2, CoxeterError, Move, apply_move, enumerate_moves
from coxtrans.sigma import build_sigma
from coxtrans.transvection import omega_of, tau_matrix
from coxtrans.verify import random_graph, random_pair_word
from conftest import word

A2_PAIR = word((-1, 1))
NT2 = Move(NONTRIVIAL_2, 2)


def test_phi_a2_nontrivial():
    assert phi_map(A2_PAIR, NT2, 1).matrix.tolist() == [[1, 0], [0, -1]]
    assert phi_map(A2_PAIR, NT2, -1).matrix.tolist() == [[1, 0], [1, -1]]
    with pytest.raises(ValueError):
        phi_map(A2_PAIR, NT2, 0)
    with pytest.raises(CoxeterError):
        phi_map(A2_PAIR, Move(THREE, 2), 1)


def test_phi_a2_inverse_and_square():
    back = apply_move(A2_PAIR, NT2)
    minus_back = phi_map(back, NT2, -1).matrix
    plus_back = phi_map(back, NT2, 1).matrix
    plus = phi_map(A2_PAIR, NT2, 1).matrix
    assert (minus_back @ plus).tolist() == [[1, 0], [0, 1]]
    # composite is tau_2: (x1, x2) -> (x1, x1 + x2)
    assert (plus_back @ plus).tolist() == [[1, 0], [1, 1]]
    assert np.array_equal(plus_back @ plus, tau_matrix(omega_of(build_sigma(A2_PAIR)), 2))


def test_phi_trivial_is_permutation():
    w = word((-1, 2))
    mv = Move(TRIVIAL_2, 2)
    for sgn in (1, -1):
        assert phi_map(w, mv, sgn).matrix.tolist() == [[0, 1], [1, 0]]


def test_phi_three_move_structure(a4_word):
    w2 = apply_move(a4_word, Move(NONTRIVIAL_2, 8))
    mv = Move(THREE, 10)
    mat = phi_map(w2, mv, 1).matrix
    perm = np.zeros_like(mat)
    perm[np.arange(17), np.arange(17)] = 1
    perm[[7, 8]] = perm[[8, 7]]
    diff = np.nonzero((mat != perm).any(axis=1))[0].tolist()
    assert diff == [9]


def test_all_identities_on_a4(a4_word):
    sig = build_sigma(a4_word)
    for mv in enumerate_moves(a4_word):
        for check in (check_phi_inverses, check_tau_phi_squared, check_intertwiner, check_omega_transform):
            assert check(a4_word, mv, sig).ok, (check.__name__, mv)


def test_intertwiner_exceptions_a4(a4_word):
    sig = build_sigma(a4_word)
    mv = Move(NONTRIVIAL_2, 8)
    assert intertwiner_exceptions(sig, mv) == [9, 12]
    assert intertwiner_exceptions(sig, mv) == sorted(sig.in_neighbors(8))
    v = check_intertwiner(a4_word, mv, sig)
    assert v.notes["excepted"] == [9, 12]


def test_omega_transform_a2():
    sig = build_sigma(A2_PAIR)
    assert not omega_correction(sig, NT2).any()
    assert check_omega_transform(A2_PAIR, NT2).ok
    w = word((-1, 2))
    assert check_omega_transform(w, Move(TRIVIAL_2, 2)).ok


def test_certificates(a4_word):
    w = word((-1, -2, -1))
    ident = conjugacy_certificate(w, w)
    assert ident.steps == [] and np.array_equal(ident.matrix, np.eye(3, dtype=np.int64))
    one = conjugacy_certificate(w, word((-2, -1, -2)))
    assert len(one.steps) == 1 and one.verify().ok
    moves = [Move(NONTRIVIAL_2, 8), Move(THREE, 10)]
    two = certificate_along(a4_word, moves)
    assert len(two.steps) == 2 and two.verify().ok
    assert "generator" in two.to_text()
    with pytest.raises(CoxeterError):
        conjugacy_certificate(w, word((-1, -2)))


def test_exact_arithmetic_helpers():
    assert det(np.array([[2, 1], [1, 1]])) == 1
    assert det(np.array([[0, 1], [1, 0]])) == -1
    assert det(np.zeros((3, 3), dtype=np.int64)) == 0
    assert det(np.zeros((0, 0), dtype=np.int64)) == 1
    big = np.full((2, 2), 2**40, dtype=np.int64)
    with pytest.raises(OverflowError):
        matmul(big, big)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_identities_random(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(2, 5))
    w = random_pair_word(rng, g, rng.randint(1, 12))
    sig = build_sigma(w)
    for mv in enumerate_moves(w):
        assert check_phi_inverses(w, mv, sig).ok
        assert check_tau_phi_squared(w, mv, sig).ok
        assert check_intertwiner(w, mv, sig).ok
        assert check_omega_transform(w, mv, sig).ok
