"""Conjugating maps between transvection groups of words related by a move,
and exact integer-matrix checks of their identities."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coxeter import (
    CoxeterError,
    Move,
    SignedWord,
    apply_move,
    enumerate_moves,
    enumerate_reduced_words,
    move_sigma,
)
from .sigma import SigmaGraph, Verdict, build_sigma
from .transvection import omega_of, tau_matrix

_LIMIT = 2**62


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact int64 product; refuses inputs whose product could overflow."""
    bound = int(np.abs(a).sum(axis=1).max(initial=0)) * int(np.abs(b).max(initial=0))
    if bound >= _LIMIT:
        raise OverflowError("integer matrix product may overflow int64")
    return a @ b


def det(a: np.ndarray) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [[int(x) for x in row] for row in a]
    n = len(m)
    sgn, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sgn = -sgn
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sgn * m[n - 1][n - 1] if n else 1


@dataclass
class PhiMap:
    sign: int
    move: Move
    source: SignedWord
    target: SignedWord
    matrix: np.ndarray = field(repr=False)

    @property
    def m(self) -> int:
        return self.matrix.shape[0]


def inverse_move(move: Move) -> Move:
    """Moves are involutive: the same kind at the same position undoes them."""
    return move


def phi_map(word: SignedWord, move: Move, sign: int, sigma: SigmaGraph | None = None) -> PhiMap:
    """phi^+ (sign=+1) or phi^- (sign=-1) from ``word`` to ``apply_move(word, move)``.

    Row l picks coordinate sigma(l); for a non-trivial move the row at its
    position k is (sum over a -> k of xi_a) - xi_k for phi^+, and
    (sum over k -> b of xi_b) - xi_k for phi^-.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if move not in enumerate_moves(word):
        raise CoxeterError(f"move {move} not applicable to ({word})")
    sigma = sigma or build_sigma(word, check_reduced=False)
    m = len(word)
    perm = move_sigma(move, m)
    mat = np.zeros((m, m), dtype=np.int64)
    for l in range(1, m + 1):
        mat[l - 1, perm[l - 1] - 1] = 1
    if not move.trivial:
        k = move.position
        row = np.zeros(m, dtype=np.int64)
        nbrs = sigma.in_neighbors(k) if sign > 0 else sigma.out_neighbors(k)
        for a in nbrs:
            row[a - 1] += 1
        row[k - 1] -= 1
        mat[k - 1] = row
    mat.setflags(write=False)
    return PhiMap(sign, move, word, apply_move(word, move), mat)


@dataclass
class _Pair:
    """Everything needed for the identities on one (word, move) instance."""

    i: SignedWord
    j: SignedWord
    move: Move
    s_i: SigmaGraph
    s_j: SigmaGraph

    @classmethod
    def of(cls, word: SignedWord, move: Move, sigma: SigmaGraph | None = None) -> "_Pair":
        j = apply_move(word, move)
        return cls(word, j, move, sigma or build_sigma(word, False), build_sigma(j, False))

    def phi(self, sign: int, backwards: bool = False) -> np.ndarray:
        if backwards:
            return phi_map(self.j, inverse_move(self.move), sign, self.s_j).matrix
        return phi_map(self.i, self.move, sign, self.s_i).matrix


def _eye(m: int) -> np.ndarray:
    return np.eye(m, dtype=np.int64)


def check_phi_inverses(word: SignedWord, move: Move, sigma=None) -> Verdict:
    v = Verdict("phi inverses")
    p = _Pair.of(word, move, sigma)
    m = len(word)
    prods = {
        "phi-(i,i') phi+(i',i)": matmul(p.phi(-1, True), p.phi(1)),
        "phi+(i,i') phi-(i',i)": matmul(p.phi(1, True), p.phi(-1)),
    }
    for name, prod in prods.items():
        v.checked += 1
        if not np.array_equal(prod, _eye(m)):
            v.violations.append((str(word), str(move), name, prod.tolist()))
    for sgn in (1, -1):
        v.checked += 1
        d = det(p.phi(sgn))
        if d not in (1, -1):
            v.violations.append((str(word), str(move), f"det phi{sgn:+d}", d))
    return v


def check_tau_phi_squared(word: SignedWord, move: Move, sigma=None) -> Verdict:
    v = Verdict("phi squared is tau_k")
    if move.trivial:
        return v
    p = _Pair.of(word, move, sigma)
    prod = matmul(p.phi(1, True), p.phi(1))
    tau = tau_matrix(omega_of(p.s_i), move.position)
    v.checked = 1
    if not np.array_equal(prod, tau):
        v.violations.append((str(word), str(move), prod.tolist(), tau.tolist()))
    return v


def intertwiner_exceptions(sigma: SigmaGraph, move: Move) -> list[int]:
    if move.trivial:
        return []
    k = move.position
    return [l for l in sigma.in_neighbors(k) if l in sigma.bounded]


def conjugated_generator(p: _Pair, l: int) -> tuple:
    """Word in target generators equal to phi+ tau_{l,i} (phi+)^{-1}.

    Letters are (index, exponent) with exponent +1 or -1.
    """
    perm = move_sigma(p.move, len(p.i))
    if l in intertwiner_exceptions(p.s_i, p.move):
        k = p.move.position
        return ((k, 1), (perm[l - 1], 1), (k, -1))
    return ((perm[l - 1], 1),)


def word_matrix(form, letters) -> np.ndarray:
    out = _eye(form.m)
    for idx, e in letters:
        out = matmul(out, tau_matrix(form, idx, inverse=e < 0))
    return out


def check_intertwiner(word: SignedWord, move: Move, sigma=None) -> Verdict:
    v = Verdict("phi intertwines transvections")
    p = _Pair.of(word, move, sigma)
    om_i, om_j = omega_of(p.s_i), omega_of(p.s_j)
    phi = p.phi(1)
    phi_inv = p.phi(-1, True)
    perm = move_sigma(move, len(word))
    excepted = intertwiner_exceptions(p.s_i, move)
    v.notes["excepted"] = excepted
    v.notes["covered"] = sorted(set(p.s_i.bounded) - set(excepted))
    for l in sorted(p.s_i.bounded):
        v.checked += 1
        if l in excepted:
            lhs = matmul(matmul(phi, tau_matrix(om_i, l)), phi_inv)
            rhs = word_matrix(om_j, conjugated_generator(p, l))
        else:
            lhs = matmul(phi, tau_matrix(om_i, l))
            rhs = matmul(tau_matrix(om_j, perm[l - 1]), phi)
        if not np.array_equal(lhs, rhs):
            v.violations.append((str(word), str(move), l, l in excepted))
    return v


def wedge(m: int, a: int, b: int) -> np.ndarray:
    out = np.zeros((m, m), dtype=np.int64)
    out[a - 1, b - 1] += 1
    out[b - 1, a - 1] -= 1
    return out


def omega_correction(sigma: SigmaGraph, move: Move) -> np.ndarray:
    """Sum of xi_a ^ xi_b over paths a -> k -> b with a, b both unbounded."""
    m = sigma.m
    out = np.zeros((m, m), dtype=np.int64)
    if move.trivial:
        return out
    k = move.position
    for a in sigma.in_neighbors(k):
        for b in sigma.out_neighbors(k):
            if a not in sigma.bounded and b not in sigma.bounded:
                out += wedge(m, a, b)
    return out


def check_omega_transform(word: SignedWord, move: Move, sigma=None) -> Verdict:
    """Pullback (x, y) -> Omega'(phi x, phi y) against Omega minus the correction."""
    v = Verdict("omega transform")
    p = _Pair.of(word, move, sigma)
    om_i, om_j = omega_of(p.s_i).omega, omega_of(p.s_j).omega
    expected = om_i - omega_correction(p.s_i, move)
    for sgn in (1, -1):
        phi = p.phi(sgn)
        pull = matmul(matmul(phi.T, om_j), phi)
        v.checked += 1
        if not np.array_equal(pull, expected):
            v.violations.append((str(word), str(move), sgn))
    return v


# -- certificates -------------------------------------------------------------------

def _invert_word(letters):
    return tuple((idx, -e) for idx, e in reversed(letters))


@dataclass
class Certificate:
    source: SignedWord
    target: SignedWord
    steps: list  # PhiMap (sign +1) per move
    matrix: np.ndarray
    inverse: np.ndarray
    generators: dict  # bounded l of source -> word in target generators

    def verify(self) -> Verdict:
        v = Verdict("conjugacy certificate")
        om_s = omega_of(build_sigma(self.source, False))
        om_t = omega_of(build_sigma(self.target, False))
        v.checked += 1
        if not np.array_equal(matmul(self.matrix, self.inverse), _eye(om_s.m)):
            v.violations.append("composite inverse mismatch")
        for l, letters in self.generators.items():
            v.checked += 1
            lhs = matmul(matmul(self.matrix, tau_matrix(om_s, l)), self.inverse)
            if not np.array_equal(lhs, word_matrix(om_t, letters)):
                v.violations.append((l, letters))
        return v

    def to_text(self) -> str:
        out = [f"source: {self.source}", f"target: {self.target}", f"moves: {len(self.steps)}"]
        for step in self.steps:
            out.append(f"move {step.move.kind} {step.move.position}")
            out.extend(" ".join(str(int(x)) for x in row) for row in step.matrix)
        out.append("composite:")
        out.extend(" ".join(str(int(x)) for x in row) for row in self.matrix)
        for l, letters in sorted(self.generators.items()):
            body = " ".join(f"{idx}" if e > 0 else f"{idx}^-1" for idx, e in letters)
            out.append(f"generator {l}: {body}")
        return "\n".join(out) + "\n"


def certificate_along(source: SignedWord, moves) -> Certificate:
    """Certificate for the word reached from ``source`` by applying ``moves`` in order."""
    m = len(source)
    comp = _eye(m)
    inv = _eye(m)
    gens = {l: ((l, 1),) for l in sorted(build_sigma(source, False).bounded)}
    steps = []
    cur = source
    for mv in moves:
        p = _Pair.of(cur, mv)
        steps.append(phi_map(cur, mv, 1, p.s_i))
        comp = matmul(steps[-1].matrix, comp)
        inv = matmul(inv, p.phi(-1, True))
        image = {l: conjugated_generator(p, l) for l in p.s_i.bounded}
        for l, letters in gens.items():
            new = []
            for idx_, e in letters:
                w = image[idx_]
                new.extend(w if e > 0 else _invert_word(w))
            gens[l] = tuple(new)
        cur = p.j
    return Certificate(source, cur, steps, comp, inv, gens)


def conjugacy_certificate(source: SignedWord, target: SignedWord, cap: int = 100_000) -> Certificate:
    """Certificate along a shortest move path from ``source`` to ``target``."""
    if source.letters == target.letters:
        return certificate_along(source, [])
    mg = enumerate_reduced_words(source, cap)
    idx = mg.index()
    if target.letters not in idx:
        raise CoxeterError("target not reachable from source (different pair or cap too small)")
    return certificate_along(source, [mv for _, mv in mg.path(0, idx[target.letters])])
