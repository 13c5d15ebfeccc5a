"""Simply-laced Coxeter groups, signed (pair) words and braid moves.

Letters are 1-based vertex labels of a Coxeter graph.  A signed word encodes a
reduced word for a pair ``(u, v)`` in ``W x W``: negative letters spell ``u``,
positive letters spell ``v``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

TRIVIAL_2 = "trivial-2"
NONTRIVIAL_2 = "nontrivial-2"
THREE = "3-move"
MOVE_KINDS = (TRIVIAL_2, NONTRIVIAL_2, THREE)


class CoxeterError(ValueError):
    """Bad graph, letter or word."""


@dataclass(frozen=True)
class CoxeterGraph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise CoxeterError(f"negative vertex count {self.n}")
        norm = set()
        for e in self.edges:
            i, j = tuple(e) if not isinstance(e, tuple) else e
            if i == j:
                raise CoxeterError(f"loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise CoxeterError(f"edge {{{i},{j}}} out of range 1..{self.n}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def path(cls, n: int) -> "CoxeterGraph":
        """The Dynkin graph A_n (vertices 1..n in a chain)."""
        return cls(n, frozenset((i, i + 1) for i in range(1, n)))

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(1, self.n + 1) if self.adjacent(i, j)]

    def check_letter(self, a: int) -> None:
        if a == 0 or abs(a) > self.n:
            raise CoxeterError(f"letter {a} out of range for n={self.n}")


@dataclass(frozen=True)
class Move:
    kind: str
    position: int

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise CoxeterError(f"unknown move kind {self.kind!r}")
        low = 3 if self.kind == THREE else 2
        if self.position < low:
            raise CoxeterError(f"{self.kind} needs position >= {low}")

    @property
    def trivial(self) -> bool:
        return self.kind == TRIVIAL_2

    def __str__(self):
        return f"{self.kind}@{self.position}"


@dataclass(frozen=True)
class SignedWord:
    letters: tuple
    graph: CoxeterGraph

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(a) for a in self.letters))
        for a in self.letters:
            self.graph.check_letter(a)

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, k: int) -> int:
        """1-based access, matching the position conventions of moves."""
        if not 1 <= k <= len(self.letters):
            raise IndexError(k)
        return self.letters[k - 1]

    def __str__(self):
        return " ".join(str(a) for a in self.letters)

    @property
    def negative_part(self) -> tuple:
        return tuple(-a for a in self.letters if a < 0)

    @property
    def positive_part(self) -> tuple:
        return tuple(a for a in self.letters if a > 0)

    def support(self) -> set:
        return {abs(a) for a in self.letters}

    def sign_flip(self) -> "SignedWord":
        return SignedWord(tuple(-a for a in self.letters), self.graph)

    def with_letters(self, letters: Iterable[int]) -> "SignedWord":
        return SignedWord(tuple(letters), self.graph)


# -- geometric representation -------------------------------------------------

def reflect(graph: CoxeterGraph, i: int, vec: list) -> list:
    """Apply s_i to a root-lattice vector given in the simple-root basis."""
    out = list(vec)
    # s_i(x) = x - <x, alpha_i^vee> alpha_i; coefficient picks up the Cartan row
    c = 2 * vec[i - 1] - sum(vec[j - 1] for j in graph.neighbors(i))
    out[i - 1] -= c
    return out


def geometric_action(word: Sequence[int], graph: CoxeterGraph) -> np.ndarray:
    """Matrix of ``s_{i_1} ... s_{i_m}``; column j is the image of alpha_j.

    Entries are Python ints (object dtype) so long words in infinite groups
    never overflow.
    """
    n = graph.n
    for a in word:
        if not 1 <= a <= n:
            raise CoxeterError(f"letter {a} out of range for n={n}")
    cols = []
    for j in range(1, n + 1):
        vec = [0] * n
        vec[j - 1] = 1
        for i in reversed(word):
            vec = reflect(graph, i, vec)
        cols.append(vec)
    mat = np.empty((n, n), dtype=object)
    for j, col in enumerate(cols):
        for r in range(n):
            mat[r, j] = col[r]
    return mat


def _is_positive(vec: list) -> bool:
    return all(x >= 0 for x in vec) and any(x > 0 for x in vec)


def is_reduced(word: Sequence[int], graph: CoxeterGraph) -> bool:
    """Root-tracking test: each s_{i_1}...s_{i_{k-1}}(alpha_{i_k}) is positive."""
    n = graph.n
    for a in word:
        if not 1 <= a <= n:
            raise CoxeterError(f"letter {a} out of range for n={n}")
    for k, a in enumerate(word):
        vec = [0] * n
        vec[a - 1] = 1
        for i in reversed(word[:k]):
            vec = reflect(graph, i, vec)
        if not _is_positive(vec):
            return False
    return True


def is_reduced_pair(word: SignedWord) -> bool:
    return is_reduced(word.negative_part, word.graph) and is_reduced(
        word.positive_part, word.graph
    )


def pair_element(word: SignedWord) -> tuple:
    """The pair (u, v) as root matrices, as hashable tuples."""
    u = geometric_action(word.negative_part, word.graph)
    v = geometric_action(word.positive_part, word.graph)
    return tuple(map(tuple, u.tolist())), tuple(map(tuple, v.tolist()))


# -- moves ----------------------------------------------------------------------

def tilde_adjacent(graph: CoxeterGraph, a: int, b: int) -> bool:
    """Adjacency in the doubled graph: same sign and adjacent absolute values."""
    return (a > 0) == (b > 0) and graph.adjacent(abs(a), abs(b))


def enumerate_moves(word: SignedWord) -> list[Move]:
    g, w = word.graph, word.letters
    moves = []
    for k in range(2, len(w) + 1):
        a, b = w[k - 2], w[k - 1]
        if a != b and not tilde_adjacent(g, a, b):
            moves.append(Move(NONTRIVIAL_2 if b == -a else TRIVIAL_2, k))
        elif k >= 3 and b == w[k - 3] and tilde_adjacent(g, a, b):
            moves.append(Move(THREE, k))
    return moves


def apply_move(word: SignedWord, move: Move) -> SignedWord:
    if move not in enumerate_moves(word):
        raise CoxeterError(f"move {move} not applicable to ({word})")
    w = list(word.letters)
    k = move.position
    if move.kind == THREE:
        a, b = w[k - 3], w[k - 2]
        w[k - 3 : k] = [b, a, b]
    else:
        w[k - 2], w[k - 1] = w[k - 1], w[k - 2]
    return word.with_letters(w)


def move_sigma(move: Move, m: int) -> tuple:
    """The permutation attached to a move, as a tuple ``perm[l-1] = sigma(l)``."""
    k = move.position
    if k > m:
        raise CoxeterError(f"move position {k} exceeds word length {m}")
    perm = list(range(1, m + 1))
    if move.kind == TRIVIAL_2:
        perm[k - 2], perm[k - 1] = k, k - 1
    elif move.kind == THREE:
        perm[k - 3], perm[k - 2] = k - 1, k - 2
    return tuple(perm)


# -- reduced word graph -----------------------------------------------------------

@dataclass
class MoveGraph:
    words: list
    edges: list  # (source index, target index, Move)
    truncated: bool = False

    def index(self) -> dict:
        return {w.letters: i for i, w in enumerate(self.words)}

    def path(self, src: int, dst: int) -> list | None:
        """Shortest list of (word index, Move) steps from src to dst."""
        adj: dict = {}
        for a, b, mv in self.edges:
            adj.setdefault(a, []).append((b, mv))
        prev = {src: None}
        queue = deque([src])
        while queue:
            x = queue.popleft()
            if x == dst:
                break
            for y, mv in adj.get(x, ()):
                if y not in prev:
                    prev[y] = (x, mv)
                    queue.append(y)
        if dst not in prev:
            return None
        steps = []
        x = dst
        while prev[x] is not None:
            p, mv = prev[x]
            steps.append((p, mv))
            x = p
        return steps[::-1]


def enumerate_reduced_words(seed: SignedWord, cap: int = 100_000) -> MoveGraph:
    """Breadth-first closure of ``seed`` under 2- and 3-moves.

    Stops after ``cap`` vertices and flags the result as truncated.
    """
    if not is_reduced_pair(seed):
        raise CoxeterError(f"seed ({seed}) is not reduced")
    words = [seed]
    index = {seed.letters: 0}
    edges = []
    queue = deque([0])
    truncated = False
    while queue:
        i = queue.popleft()
        w = words[i]
        for mv in enumerate_moves(w):
            nxt = apply_move(w, mv)
            j = index.get(nxt.letters)
            if j is None:
                if len(words) >= cap:
                    truncated = True
                    continue
                j = len(words)
                index[nxt.letters] = j
                words.append(nxt)
                queue.append(j)
            edges.append((i, j, mv))
    return MoveGraph(words, edges, truncated)


# -- fixtures and parsing -------------------------------------------------------

def lexmin_w0_word_A(n: int) -> SignedWord:
    """Lex-minimal reduced word of w0 in S_n, all letters negated: (w0, e)."""
    if n < 2:
        raise CoxeterError("need n >= 2")
    letters = [-a for top in range(1, n) for a in range(top, 0, -1)]
    return SignedWord(tuple(letters), CoxeterGraph.path(n - 1))


A4_EXAMPLE = (2, 1, -4, -2, -1, 3, -2, 2, -3, -2, 4, 1, -4, -1, 3, 2, 1)


def a4_example_word() -> SignedWord:
    return SignedWord(A4_EXAMPLE, CoxeterGraph.path(4))


def parse_word(text: str, graph: CoxeterGraph) -> SignedWord:
    tokens = [t for t in re.split(r"[\s,]+", text.strip()) if t]
    try:
        letters = tuple(int(t) for t in tokens)
    except ValueError as exc:
        raise CoxeterError(f"bad word literal {text!r}") from exc
    if 0 in letters:
        raise CoxeterError("letters must be nonzero")
    return SignedWord(letters, graph)


def parse_graph(text: str) -> CoxeterGraph:
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise CoxeterError("empty graph file")
    try:
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            i, j = (int(t) for t in ln.split())
            edges.append((i, j))
    except ValueError as exc:
        raise CoxeterError(f"malformed graph file: {exc}") from exc
    return CoxeterGraph(n, frozenset(edges))


def format_graph(graph: CoxeterGraph) -> str:
    lines = [str(graph.n)] + [f"{i} {j}" for i, j in sorted(graph.edges)]
    return "\n".join(lines) + "\n"
