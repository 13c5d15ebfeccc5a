"""Skew forms, symplectic transvections over Z and F_2, the quadratic form Q,
invariant subspaces and E6-compatibility of the generator graph."""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import gf2
from .sigma import SigmaGraph, Verdict


class ClosureTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class SkewForm:
    """Integer skew form with entries in {-1, 0, 1}; ``omega[k-1, l-1] = Omega(e_k, e_l)``."""

    omega: np.ndarray

    def __post_init__(self):
        om = np.asarray(self.omega, dtype=np.int64)
        if om.ndim != 2 or om.shape[0] != om.shape[1]:
            raise ValueError("form must be square")
        if not np.array_equal(om, -om.T):
            raise ValueError("form is not skew-symmetric")
        if np.abs(om).max(initial=0) > 1:
            raise ValueError("form entries must lie in {-1, 0, 1}")
        om.setflags(write=False)
        object.__setattr__(self, "omega", om)

    @property
    def m(self) -> int:
        return self.omega.shape[0]

    def __call__(self, x, y) -> int:
        return int(np.asarray(x, dtype=np.int64) @ self.omega @ np.asarray(y, dtype=np.int64))

    @classmethod
    def from_edges(cls, m: int, edges) -> "SkewForm":
        om = np.zeros((m, m), dtype=np.int64)
        for a, b in edges:
            om[a - 1, b - 1] = 1
            om[b - 1, a - 1] = -1
        return cls(om)

    def masks(self) -> list[int]:
        """``masks[k-1]``: bitmask of l with Omega(e_k, e_l) odd."""
        out = []
        for k in range(self.m):
            x = 0
            for l in np.nonzero(self.omega[k])[0]:
                x |= 1 << int(l)
            out.append(x)
        return out

    def mod2(self, x: int, y: int) -> int:
        """Reduced form on packed F_2 vectors."""
        masks = self.masks()
        acc = 0
        for k in gf2.bits(x):
            acc ^= gf2.parity(masks[k - 1] & y)
        return acc

    def to_text(self) -> str:
        return "\n".join(" ".join(str(int(v)) for v in row) for row in self.omega) + "\n"


def omega_of(sigma: SigmaGraph) -> SkewForm:
    return SkewForm.from_edges(sigma.m, sigma.directed())


def _check_k(form: SkewForm, k: int) -> None:
    if not 1 <= k <= form.m:
        raise ValueError(f"vertex {k} out of range 1..{form.m}")


def transvection_apply(form: SkewForm, k: int, v) -> np.ndarray:
    """tau_k(v) = v - Omega(v, e_k) e_k on an integer vector."""
    _check_k(form, k)
    v = np.asarray(v, dtype=object)
    if v.shape != (form.m,):
        raise ValueError(f"vector of length {v.shape} for dimension {form.m}")
    out = v.copy()
    out[k - 1] = v[k - 1] - sum(int(form.omega[a, k - 1]) * v[a] for a in range(form.m))
    return out


def tau_matrix(form: SkewForm, k: int, inverse: bool = False) -> np.ndarray:
    """Integer matrix of tau_k (or its inverse v + Omega(v, e_k) e_k)."""
    _check_k(form, k)
    mat = np.eye(form.m, dtype=np.int64)
    col = form.omega[:, k - 1]
    mat[k - 1, :] += col if inverse else -col
    return mat


def tau_mod2(masks: list[int], b: int, x: int) -> int:
    """Generator tau_b on a packed F_2 vector."""
    return x ^ (gf2.parity(x & masks[b - 1]) << (b - 1))


def transvection_by_vector(masks: list[int], u: int, x: int) -> int:
    """tau_u(x) = x + Omega(x, u) u over F_2."""
    acc = 0
    for k in gf2.bits(x):
        acc ^= gf2.parity(masks[k - 1] & u)
    return x ^ u if acc else x


def omega2(masks: list[int], x: int, y: int) -> int:
    acc = 0
    for k in gf2.bits(x):
        acc ^= gf2.parity(masks[k - 1] & y)
    return acc


# -- quadratic form -----------------------------------------------------------

@dataclass(frozen=True)
class QForm:
    m: int
    linear: int  # packed Q(e_k)
    masks: tuple  # reduced form, as in SkewForm.masks

    def __call__(self, x: int) -> int:
        acc = gf2.parity(x & self.linear)
        for k in gf2.bits(x):
            # pairs k < l only
            acc ^= gf2.parity(self.masks[k - 1] & x & ~((1 << k) - 1))
        return acc


def q_form(form: SkewForm, B, extension=None) -> QForm:
    """Q with Q(e_b) = 1 on B; off B, Q(e_k) comes from ``extension`` (default 0)."""
    lin = gf2.vec(B)
    if extension:
        for k, bit in dict(extension).items():
            if k in set(B):
                continue
            if bit:
                lin |= 1 << (k - 1)
    return QForm(form.m, lin, tuple(form.masks()))


def q_invariance_check(qform: QForm, B, samples: int = 4096, seed: int = 0) -> Verdict:
    v = Verdict("Q invariance")
    masks = list(qform.masks)
    if qform.m <= 16:
        xs = range(1 << qform.m)
    else:
        rng = random.Random(seed)
        xs = [rng.getrandbits(qform.m) for _ in range(samples)]
    for x in xs:
        qx = qform(x)
        for b in B:
            v.checked += 1
            if qform(tau_mod2(masks, b, x)) != qx:
                v.violations.append((b, x))
    return v


# -- subspaces ------------------------------------------------------------------

def kernel_basis(form: SkewForm, restrict_to: gf2.F2Subspace | None = None) -> gf2.F2Subspace:
    """Full kernel of the reduced form, or the kernel of its restriction to a subspace."""
    masks = form.masks()
    if restrict_to is None:
        return gf2.F2Subspace.span(gf2.nullspace(masks, form.m))
    basis = list(restrict_to.basis)
    d = len(basis)
    gram_rows = []
    for i in range(d):
        row = 0
        for j in range(d):
            if omega2(masks, basis[i], basis[j]):
                row |= 1 << j
        gram_rows.append(row)
    coeffs = gf2.nullspace(gram_rows, d)
    return gf2.F2Subspace.span(restrict_to.combination(c) for c in coeffs)


def span_of(B) -> gf2.F2Subspace:
    return gf2.F2Subspace.span(1 << (b - 1) for b in B)


def invariant_space(form: SkewForm, B) -> gf2.F2Subspace:
    """Vectors fixed by every tau_b: Omega(e_b, v) = 0 for b in B."""
    masks = form.masks()
    return gf2.F2Subspace.span(gf2.nullspace([masks[b - 1] for b in B], form.m))


# -- generator graph and E6 --------------------------------------------------------

E6_EDGES = ((1, 2), (2, 3), (3, 4), (4, 5), (3, 6))


def b_graph(form: SkewForm, B) -> dict:
    """Adjacency (as sets) on B: b ~ b' when Omega(b, b') is odd."""
    B = sorted(B)
    return {b: {c for c in B if c != b and form.omega[b - 1, c - 1] % 2} for b in B}


def is_connected(adj: dict) -> bool:
    if not adj:
        return False
    start = next(iter(adj))
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == len(adj)


def _induced_is_e6(adj: dict, verts) -> bool:
    verts = list(verts)
    edges = [(a, b) for a, b in combinations(verts, 2) if b in adj[a]]
    if len(edges) != 5:
        return False
    deg = {v: 0 for v in verts}
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    if sorted(deg.values()) != [1, 1, 1, 2, 2, 3]:
        return False
    centre = next(v for v in verts if deg[v] == 3)
    local = {v: {u for u in verts if u in adj[v]} for v in verts}
    if not is_connected(local):
        return False
    return sorted(deg[u] for u in local[centre]) == [1, 2, 2]


def find_e6(adj: dict) -> tuple | None:
    """An induced E6 tree, searched outward from each candidate branch vertex."""
    for c in sorted(adj):
        nc = sorted(adj[c])
        if len(nc) < 3:
            continue
        for x in nc:
            for y, z in combinations([u for u in nc if u != x], 2):
                if y in adj[x] or z in adj[x] or z in adj[y]:
                    continue
                core = {c, x, y, z}
                for y2 in sorted(adj[y] - core):
                    if y2 in adj[c] or y2 in adj[x] or y2 in adj[z]:
                        continue
                    for z2 in sorted(adj[z] - core - {y2}):
                        if z2 in adj[c] or z2 in adj[x] or z2 in adj[y] or z2 in adj[y2]:
                            continue
                        return (y2, y, c, z, z2, x)
    return None


def find_e6_bruteforce(adj: dict) -> tuple | None:
    for verts in combinations(sorted(adj), 6):
        if _induced_is_e6(adj, verts):
            return verts
    return None


def is_e6_compatible(adj: dict) -> tuple[bool, tuple | None]:
    """(flag, witness) where witness is ordered as the E6 chain 1-2-3-4-5 plus pendant 6."""
    if len(adj) < 6 or not is_connected(adj):
        return False, None
    w = find_e6(adj)
    return (w is not None), w


# -- small group closure -----------------------------------------------------------

def _apply_columns(cols: tuple, x: int) -> int:
    acc = 0
    for k in gf2.bits(x):
        acc ^= cols[k - 1]
    return acc


def generator_columns(masks: list[int], b: int) -> tuple:
    m = len(masks)
    return tuple(tau_mod2(masks, b, 1 << k) for k in range(m))


def vector_transvection_columns(masks: list[int], u: int) -> tuple:
    return tuple(transvection_by_vector(masks, u, 1 << k) for k in range(len(masks)))


def _row_keys(rows: np.ndarray) -> np.ndarray:
    rows = np.ascontiguousarray(rows)
    return rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).ravel()


def group_closure_small(form: SkewForm, generators, cap: int = 1_000_000) -> set:
    """All elements of the F_2 group generated by tau_b, b in ``generators``.

    Elements are tuples of column images (packed ints).  Raises
    ClosureTooLarge when more than ``cap`` elements appear.
    """
    masks = form.masks()
    m = form.m
    gens = [(b - 1, masks[b - 1]) for b in generators]
    ident = np.array([[1 << k for k in range(m)]], dtype=np.int64)
    seen = _row_keys(ident).copy()
    chunks = [ident]
    frontier = ident
    while len(frontier):
        # tau_b applied to every column of every frontier element
        cand = np.concatenate([
            frontier ^ ((np.bitwise_count(frontier & mb) & 1).astype(np.int64) << shift)
            for shift, mb in gens
        ])
        keys = _row_keys(cand)
        keys, first = np.unique(keys, return_index=True)
        pos = np.searchsorted(seen, keys).clip(max=len(seen) - 1)
        fresh = seen[pos] != keys
        frontier = cand[first[fresh]]
        if len(seen) + len(frontier) > cap:
            raise ClosureTooLarge(f"closure exceeds {cap} elements")
        seen = np.sort(np.concatenate([seen, keys[fresh]]))
        chunks.append(frontier)
    return {tuple(int(c) for c in row) for row in np.concatenate(chunks)}
