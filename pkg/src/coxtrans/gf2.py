"""Linear algebra over F_2 with vectors packed into Python ints.

Bit ``k-1`` of a vector holds the coordinate of basis vector ``e_k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


def parity(x: int) -> int:
    return x.bit_count() & 1


def bits(x: int) -> list[int]:
    """1-based positions of set bits."""
    out = []
    k = 1
    while x:
        if x & 1:
            out.append(k)
        x >>= 1
        k += 1
    return out


def vec(positions: Iterable[int]) -> int:
    x = 0
    for p in positions:
        x ^= 1 << (p - 1)
    return x


def rref(vectors: Iterable[int]) -> list[int]:
    """Reduced row echelon basis, sorted by decreasing leading bit."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            if v ^ b < v:
                v ^= b
        if v:
            # clear the new pivot from existing rows
            top = v.bit_length() - 1
            basis = [b ^ v if (b >> top) & 1 else b for b in basis]
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def reduce(v: int, basis: list[int]) -> int:
    """Canonical coset representative of ``v`` modulo span(basis) (basis in rref)."""
    for b in basis:
        if (v >> (b.bit_length() - 1)) & 1:
            v ^= b
    return v


@dataclass(frozen=True)
class F2Subspace:
    basis: tuple

    @classmethod
    def span(cls, vectors: Iterable[int]) -> "F2Subspace":
        return cls(tuple(rref(vectors)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v: int) -> bool:
        return reduce(v, list(self.basis)) == 0

    def __iter__(self):
        """All 2^dim elements."""
        for mask in range(1 << self.dim):
            x = 0
            for i, b in enumerate(self.basis):
                if (mask >> i) & 1:
                    x ^= b
            yield x

    def intersect(self, other: "F2Subspace") -> "F2Subspace":
        # Zassenhaus-free route: kernel of the map (a, b) -> sum a_i u_i + sum b_j w_j
        gens = list(self.basis) + list(other.basis)
        rels = relations(gens)
        out = []
        n = self.dim
        for r in rels:
            x = 0
            for i in range(n):
                if (r >> i) & 1:
                    x ^= self.basis[i]
            out.append(x)
        return F2Subspace.span(out)

    def combination(self, coeffs: int) -> int:
        x = 0
        for i, b in enumerate(self.basis):
            if (coeffs >> i) & 1:
                x ^= b
        return x


def relations(gens: list[int]) -> list[int]:
    """Basis (as coefficient masks) of linear relations among ``gens``."""
    rows: list[tuple[int, int]] = []  # (reduced vector, coefficient mask)
    out = []
    for i, g in enumerate(gens):
        v, c = g, 1 << i
        for rv, rc in rows:
            if v ^ rv < v:
                v ^= rv
                c ^= rc
        if v:
            rows.append((v, c))
            rows.sort(reverse=True)
        else:
            out.append(c)
    return out


def nullspace(rows: list[int], m: int) -> list[int]:
    """Basis of {x in F_2^m : parity(row & x) = 0 for every row}."""
    piv_rows = rref(rows)
    pivots = {r.bit_length() - 1: r for r in piv_rows}
    free = [c for c in range(m) if c not in pivots]
    out = []
    for f in free:
        x = 1 << f
        for p, r in pivots.items():
            if (r >> f) & 1:
                x |= 1 << p
        out.append(x)
    return out


def solve(rows: list[int], rhs: list[int], m: int) -> int | None:
    """One solution x of parity(rows[i] & x) = rhs[i], or None."""
    aug = [(r, b) for r, b in zip(rows, rhs)]
    piv: list[tuple[int, int]] = []
    for r, b in aug:
        for pr, pb in piv:
            top = pr.bit_length() - 1
            if (r >> top) & 1:
                r ^= pr
                b ^= pb
        if r:
            top = r.bit_length() - 1
            piv = [(pr ^ r, pb ^ b) if (pr >> top) & 1 else (pr, pb) for pr, pb in piv]
            piv.append((r, b))
        elif b:
            return None
    x = 0
    for r, b in piv:
        if b:
            x |= 1 << (r.bit_length() - 1)
    return x
