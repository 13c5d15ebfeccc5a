"""Transvection groups attached to reduced pair words in simply-laced Coxeter groups.

Builds the directed graph Sigma of a signed pair word, the skew form it
defines, the conjugating maps between words related by braid moves, and
enumerates orbits of the resulting F_2 transvection groups.
"""
from __future__ import annotations

from .coxeter import CoxeterError, CoxeterGraph, Move, SignedWord, parse_graph, parse_word
from .orbits import OrbitProblem, enumerate_orbits
from .sigma import SigmaGraph, Verdict, build_sigma
from .transvection import SkewForm, omega_of, q_form

__version__ = "0.1.0"

__all__ = [
    "CoxeterError",
    "CoxeterGraph",
    "Move",
    "OrbitProblem",
    "SignedWord",
    "SigmaGraph",
    "SkewForm",
    "Verdict",
    "build_sigma",
    "enumerate_orbits",
    "omega_of",
    "parse_graph",
    "parse_word",
    "q_form",
]
