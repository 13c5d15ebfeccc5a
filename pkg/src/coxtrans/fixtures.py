"""Built-in inputs so the checks run without external files."""
from __future__ import annotations

from .coxeter import CoxeterError, SignedWord, a4_example_word, lexmin_w0_word_A
from .orbits import OrbitProblem
from .transvection import E6_EDGES, SkewForm

FIXTURE_NAMES = ("an-w0", "a4-example", "e6")


def word_fixture(name: str, args=()) -> SignedWord:
    if name == "an-w0":
        if len(args) != 1:
            raise CoxeterError("fixture an-w0 takes one argument n")
        return lexmin_w0_word_A(int(args[0]))
    if name == "a4-example":
        if args:
            raise CoxeterError("fixture a4-example takes no arguments")
        return a4_example_word()
    raise CoxeterError(f"unknown word fixture {name!r}")


def e6_problem() -> OrbitProblem:
    """The E6 tree as the whole graph, every vertex a generator."""
    return OrbitProblem(SkewForm.from_edges(6, E6_EDGES), tuple(range(1, 7)))


def fixture_problem(name: str, args=()) -> OrbitProblem:
    if name == "e6":
        if args:
            raise CoxeterError("fixture e6 takes no arguments")
        return e6_problem()
    return OrbitProblem.from_word(word_fixture(name, args))
