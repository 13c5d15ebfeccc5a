"""Acceptance gate: one PASS/FAIL line per criterion, all at zero tolerance.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import random
import time

import pytest

from coxtrans.coxeter import enumerate_reduced_words, lexmin_w0_word_A
from coxtrans.fixtures import e6_problem, fixture_problem
from coxtrans.orbits import (
    OrbitProblem,
    OrbitSetting,
    check_janssen,
    check_slices,
    e6_level_counts,
    enumerate_orbits,
    weakly_orthogonal_decomposition,
    xi_from_vector,
)
from coxtrans.sigma import boundary_vertex_witness, build_sigma
from coxtrans.verify import DEFAULT_SEED, a4_sequence, random_instances, run_suite
from coxtrans.sigma import check_graph_change

INSTANCES = 1000
VERIFY_BUDGET = 300.0
RESULTS: list[str] = []


def record(label: str, ok: bool, detail: str) -> None:
    RESULTS.append(f"{'PASS' if ok else 'FAIL'} {label}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def suites():
    enumerate_orbits(fixture_problem("an-w0", [3]))  # loads the compiled kernels
    t0 = time.perf_counter()
    results = run_suite("all", DEFAULT_SEED, INSTANCES)
    elapsed = time.perf_counter() - t0
    verdicts = {v.name: v for r in results for v in r.verdicts}
    return verdicts, elapsed


def _summ(*verdicts) -> str:
    return "; ".join(f"{v.name}: {v.checked} checked, {len(v.violations)} violations" for v in verdicts)


def test_c01_component_counts():
    expected = {2: 2, 3: 6, 4: 20, 5: 52, 6: 96, 7: 192}
    got, times = {}, {}
    enumerate_orbits(fixture_problem("an-w0", [3]))
    for n in expected:
        t0 = time.perf_counter()
        got[n] = enumerate_orbits(fixture_problem("an-w0", [n]), threads=1).orbit_count
        times[n] = time.perf_counter() - t0
    fast = all(times[n] < 1.0 for n in range(2, 7)) and times[7] < 60.0
    detail = ", ".join(f"n={n}: {got[n]} ({times[n]:.2f}s)" for n in expected)
    record("1 component counts", got == expected and fast, detail)


def test_c02_formula_consistency(suites):
    v, _ = suites
    formula, cor, kern = (v["orbit count equals closed form when E6-compatible"],
                          v["closed form equals 3 * 2^s"],
                          v["span(B) meets Ker Omega only in 0"])
    n_random = formula.notes.get("instances", 0)
    ok = formula.ok and cor.ok and kern.ok and n_random >= 50 and kern.checked >= INSTANCES
    record("2 formula consistency", ok, f"{n_random} random E6-compatible words; " + _summ(formula, cor, kern))


def test_c03_exceptional_cases():
    out = []
    ok = True
    for n, count in ((4, 20), (5, 52)):
        rep = enumerate_orbits(fixture_problem("an-w0", [n]))
        ok &= (not rep.e6_compatible) and rep.orbit_count == count and rep.formula.count != count
        out.append(f"n={n}: e6={rep.e6_compatible} brute={rep.orbit_count} closed form={rep.formula.count}")
    record("3 exceptional cases", ok, "; ".join(out))


def test_c04_graph_change(suites):
    v, _ = suites
    gc = v["graph change prediction equals direct construction"]
    seq = [check_graph_change(w, mv) for w, mv in a4_sequence()]
    inst = random_instances(DEFAULT_SEED, INSTANCES)
    ok = gc.ok and all(s.ok for s in seq) and len(inst) >= 1000
    ok &= all(w.graph.n <= 6 and len(w) <= 14 for w in inst)
    record("4 graph change", ok, f"{len(inst)} random instances; " + _summ(gc) + f"; A4 sequence {len(seq)} moves ok")


def test_c05_phi_identities(suites):
    v, _ = suites
    names = ("phi inverses (exact)", "phi+ composed with its reverse is tau_k",
             "intertwining with exception identity", "pullback of the form under phi")
    vs = [v[n] for n in names]
    record("5 phi identities", all(x.ok and x.checked > 0 for x in vs), _summ(*vs))


def test_c06_strips(suites):
    v, _ = suites
    vs = [v["strip planarity (no crossing inclined edges)"],
          v["strip cycles (consecutive inclined edges bound directed cycles)"]]
    record("6 strip theorems", all(x.ok and x.checked > 0 for x in vs), _summ(*vs))


def test_c07_boundary_vertex(suites):
    v, _ = suites
    bv = v["boundary vertex for every nonempty S in B(i)"]
    # large bounded sets: at least 10^4 random subsets
    rng = random.Random(DEFAULT_SEED)
    word = lexmin_w0_word_A(7)
    sig = build_sigma(word)
    B = sorted(sig.bounded)
    misses = sum(
        boundary_vertex_witness(sig, rng.sample(B, rng.randint(1, len(B)))) is None for _ in range(10_000)
    )
    ok = bv.ok and misses == 0 and bv.checked >= 8191
    record("7 boundary vertex", ok, _summ(bv) + f"; |B|={len(B)} random 10000 subsets, {misses} misses")


def test_c08_orbit_classification(suites):
    v, _ = suites
    sl = v["slice structure (fixed points, two Q-separated orbits)"]
    pr = e6_problem()
    rep = enumerate_orbits(pr, with_slices=True)
    levels = e6_level_counts(pr)
    ok = sl.ok and check_slices(rep.slices).ok and rep.orbit_count == 3 and levels == {0: 28, 1: 36}
    record("8 orbit classification", ok, _summ(sl) + f"; E6 fixture orbits={rep.orbit_count} levels={levels}")


def test_c09_conjugacy_invariance(suites):
    v, _ = suites
    conj = v["orbit counts constant on move graphs"]
    sizes = []
    ok = conj.ok
    for n, n_words in ((3, 2), (4, 16)):
        words = enumerate_reduced_words(lexmin_w0_word_A(n)).words
        counts = {enumerate_orbits(OrbitProblem.from_word(w)).orbit_count for w in words}
        sizes.append(f"A{n - 1} w0: {len(words)} words, counts {sorted(counts)}")
        ok &= len(words) == n_words and len(counts) == 1
    record("9 conjugacy invariance", ok, "; ".join(sizes) + "; " + _summ(conj))


def test_c10_small_group_lemmas(suites):
    v, _ = suites
    jan = v["Q = 1 transvections and transitivity on Q levels"]
    wod = v["weakly orthogonal decompositions"]
    fixtures = [("e6", []), ("a4-example", [])] + [("an-w0", [n]) for n in range(2, 8)]
    notes = []
    ok = jan.ok and wod.ok and wod.checked >= 100
    for name, args in fixtures:
        res = check_janssen(fixture_problem(name, args), cap=1_000_000)
        ok &= res.ok
        if "group_order" in res.notes:
            notes.append(f"{name}{''.join(' ' + str(a) for a in args)}: |G|={res.notes['group_order']}")
    # extra randomized admissible inputs on the an-w0 7 setting
    pr = fixture_problem("an-w0", [7])
    st = OrbitSetting.of(pr)
    rng = random.Random(DEFAULT_SEED)
    extra = 0
    while extra < 100:
        xi = xi_from_vector(pr, rng.getrandbits(pr.m))
        u = pr.U.combination(rng.getrandbits(pr.U.dim))
        if u and any(bin(xi & k).count("1") % 2 for k in pr.K.basis) and st.q(u) == bin(xi & u).count("1") % 2:
            weakly_orthogonal_decomposition(st, u, xi)
            extra += 1
    record("10 small-group lemmas", ok, "; ".join(notes) + f"; {_summ(jan, wod)}; +{extra} on an-w0 7")


def test_c11_verify_budget(suites):
    _, elapsed = suites
    record("verify all budget", elapsed < VERIFY_BUDGET, f"{elapsed:.1f}s for {INSTANCES} instances (limit {VERIFY_BUDGET:.0f}s)")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
