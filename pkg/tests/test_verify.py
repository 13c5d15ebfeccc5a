from __future__ import annotations

import random

import pytest

from coxtrans.coxeter import is_reduced, is_reduced_pair
from coxtrans.orbits import OrbitProblem
from coxtrans.verify import (
    NAMED_GRAPHS,
    SUITES,
    e6_instances,
    random_instances,
    random_pair_word,
    random_reduced,
    run_suite,
)


def test_random_words_are_reduced_pairs():
    rng = random.Random(1)
    for g in NAMED_GRAPHS.values():
        for _ in range(10):
            assert is_reduced(random_reduced(rng, g, 8), g)
            assert is_reduced_pair(random_pair_word(rng, g, 10))


def test_instances_deterministic():
    a = random_instances(11, 20)
    b = random_instances(11, 20)
    assert [w.letters for w in a] == [w.letters for w in b]
    assert all(w.graph.n <= 6 and 1 <= len(w) <= 14 for w in a)


def test_e6_instances():
    ws = e6_instances(3, 5)
    assert len(ws) == 5
    assert all(OrbitProblem.from_word(w).e6[0] and len(w) <= 22 for w in ws)


@pytest.mark.parametrize("suite", [s for s in SUITES if s != "orbits-theory"])
def test_suites_small(suite):
    (res,) = run_suite(suite, seed=5, instances=40)
    assert res.ok, [str(v) for v in res.verdicts]


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")
