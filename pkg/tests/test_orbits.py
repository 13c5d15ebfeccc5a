from __future__ import annotations

import json
import random

import numpy as np
import pytest

from coxtrans import _kernels
from coxtrans.coxeter import lexmin_w0_word_A
from coxtrans.fixtures import e6_problem, fixture_problem
from coxtrans.orbits import (
    DecompositionError,
    DimensionTooLarge,
    OrbitProblem,
    OrbitSetting,
    check_janssen,
    check_slices,
    corollary_orbit_count,
    e6_level_counts,
    enumerate_orbits,
    formula_orbit_count,
    slice_decomposition,
    weakly_orthogonal_decomposition,
    xi_from_vector,
)
from coxtrans.transvection import SkewForm
from conftest import word

A2_TRIPLE = word((-1, -2, -1))


def test_a2_triple_orbits():
    rep = enumerate_orbits(OrbitProblem.from_word(A2_TRIPLE))
    assert rep.orbit_count == 6
    assert rep.sizes == {1: 4, 2: 2}


def test_empty_generator_set():
    pr = OrbitProblem(SkewForm.from_edges(4, [(1, 2), (3, 4)]), ())
    rep = enumerate_orbits(pr)
    assert rep.orbit_count == 16 and rep.sizes == {1: 16}


@pytest.mark.parametrize("n, count", [(2, 2), (3, 6), (4, 20), (5, 52), (6, 96)])
def test_component_counts(n, count):
    assert enumerate_orbits(fixture_problem("an-w0", [n])).orbit_count == count


def test_a2_slices():
    recs = {r.representative: r for r in slice_decomposition(OrbitProblem.from_word(A2_TRIPLE))}
    zero = recs[0]
    assert zero.fixed_count == 2 and [size for _, size, _ in zero.orbits] == [1, 1]
    e1 = recs[1]
    assert e1.fixed_count == 0 and e1.fixed_predicted is None
    assert [size for _, size, _ in e1.orbits] == [2]
    assert not e1.theorem_applies


def test_formula_predictions():
    f6 = formula_orbit_count(fixture_problem("an-w0", [6]))
    assert f6.applicable and f6.count == 96 and f6.consistent
    f4 = formula_orbit_count(fixture_problem("an-w0", [4]))
    assert not f4.applicable and f4.count == 24
    fe = formula_orbit_count(e6_problem())
    assert fe.applicable and fe.count == 3


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_corollary_on_w0(n):
    cor = corollary_orbit_count(lexmin_w0_word_A(n))
    assert cor.s == n - 1 and cor.count == 3 * 2 ** (n - 1)


def test_corollary_a4(a4_word):
    cor = corollary_orbit_count(a4_word)
    assert cor.s == 4 and cor.count == 48
    rep = enumerate_orbits(OrbitProblem.from_word(a4_word))
    assert rep.e6_compatible and rep.orbit_count == 48


def test_e6_fixture():
    pr = e6_problem()
    rep = enumerate_orbits(pr, with_slices=True)
    assert rep.orbit_count == 3 and rep.sizes == {1: 1, 27: 1, 36: 1}
    assert e6_level_counts(pr) == {0: 28, 1: 36}
    assert check_slices(rep.slices).ok


@pytest.mark.parametrize("n", [5, 6])
def test_slice_structure(n):
    rep = enumerate_orbits(fixture_problem("an-w0", [n]), with_slices=True)
    assert check_slices(rep.slices).ok
    assert sum(len(s.orbits) for s in rep.slices) == rep.orbit_count


def test_backends_agree(monkeypatch):
    for name, args in (("an-w0", [5]), ("an-w0", [6]), ("a4-example", []), ("e6", [])):
        pr = fixture_problem(name, args)
        a = enumerate_orbits(pr, backend="numba")
        b = enumerate_orbits(pr, backend="numpy")
        assert (a.orbit_count, a.sizes, a.slice_orbit_counts) == (b.orbit_count, b.sizes, b.slice_orbit_counts)
    nb = 4
    cm = np.array([0b0110, 0b1001, 0b1001, 0b0110], dtype=np.int64)
    offs = np.arange(16, dtype=np.int64)
    assert np.array_equal(
        _kernels.slice_labels(nb, cm, offs, "numba"), _kernels.slice_labels(nb, cm, offs, "numpy")
    )
    monkeypatch.setenv("COXTRANS_NO_NUMBA", "1")
    assert _kernels.default_backend() == "numpy"
    assert enumerate_orbits(fixture_problem("an-w0", [5])).backend == "numpy"
    monkeypatch.setenv("COXTRANS_NO_NUMBA", "0")
    assert _kernels.default_backend() == ("numba" if _kernels.HAVE_NUMBA else "numpy")
    with pytest.raises(ValueError):
        _kernels.slice_census(nb, cm, offs, "cuda")


def test_threads_agree():
    pr = fixture_problem("an-w0", [7])
    a = enumerate_orbits(pr, threads=1)
    b = enumerate_orbits(pr, threads=4)
    assert a.to_text() == b.to_text()


def test_limit():
    with pytest.raises(DimensionTooLarge):
        enumerate_orbits(fixture_problem("an-w0", [6]), limit=10)


def test_report_formats():
    rep = enumerate_orbits(fixture_problem("an-w0", [6]))
    d = json.loads(rep.to_json())
    for key in ("m", "orbit_count", "sizes", "e6_compatible", "formula_count", "formula_applicable", "slices"):
        assert key in d
    assert d["orbit_count"] == 96 and d["formula_applicable"] is True
    text = rep.to_text()
    assert "orbit_count: 96\n" in text and "seconds" not in text
    again = enumerate_orbits(fixture_problem("an-w0", [6]))
    assert again.to_text() == text and again.to_json() == rep.to_json()


def test_janssen_fixtures():
    v = check_janssen(e6_problem())
    assert v.ok and v.notes["group_order"] == 51840
    assert v.notes["level_sizes"] == {0: 27, 1: 36}
    for n in (3, 4, 5):
        assert check_janssen(fixture_problem("an-w0", [n])).ok


def test_weakly_orthogonal_random():
    pr = fixture_problem("an-w0", [6])
    st = OrbitSetting.of(pr)
    rng = random.Random(5)
    done = 0
    while done < 150:
        xi = xi_from_vector(pr, rng.getrandbits(pr.m))
        if all(bin(xi & k).count("1") % 2 == 0 for k in pr.K.basis):
            continue
        u = pr.U.combination(rng.getrandbits(pr.U.dim))
        if u == 0 or st.q(u) != bin(xi & u).count("1") % 2:
            continue
        fam = weakly_orthogonal_decomposition(st, u, xi)
        acc = 0
        for x in fam:
            acc ^= x
        assert acc == u
        done += 1


def test_weakly_orthogonal_rejects_bad_input():
    pr = fixture_problem("an-w0", [6])
    st = OrbitSetting.of(pr)
    with pytest.raises(DecompositionError):
        weakly_orthogonal_decomposition(st, 0, 1 << (pr.B[0] - 1))
    with pytest.raises(DecompositionError):
        OrbitSetting.of(fixture_problem("an-w0", [4]))
