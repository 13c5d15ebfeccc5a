"""Orbits of transvection groups over F_2: brute-force enumeration, per-slice
structure, closed-form counts and the small-scale lemmas behind them."""
from __future__ import annotations

import json
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels, gf2
from .coxeter import SignedWord
from .sigma import SigmaGraph, Verdict, build_sigma
from .transvection import (
    ClosureTooLarge,
    QForm,
    SkewForm,
    b_graph,
    group_closure_small,
    invariant_space,
    is_connected,
    is_e6_compatible,
    kernel_basis,
    omega2,
    omega_of,
    q_form,
    span_of,
    vector_transvection_columns,
)

DEFAULT_LIMIT = 26
_CHUNK_ELEMENTS = 1 << 20


class DimensionTooLarge(ValueError):
    pass


class DecompositionError(RuntimeError):
    pass


@dataclass(frozen=True)
class OrbitProblem:
    """A reduced skew form on F_2^m with generator set B (1-based)."""

    form: SkewForm
    B: tuple

    def __post_init__(self):
        B = tuple(sorted(set(self.B)))
        if any(not 1 <= b <= self.form.m for b in B):
            raise ValueError("generator out of range")
        object.__setattr__(self, "B", B)

    @classmethod
    def from_sigma(cls, sigma: SigmaGraph) -> "OrbitProblem":
        return cls(omega_of(sigma), tuple(sigma.bounded))

    @classmethod
    def from_word(cls, word: SignedWord) -> "OrbitProblem":
        return cls.from_sigma(build_sigma(word))

    @property
    def m(self) -> int:
        return self.form.m

    @cached_property
    def masks(self) -> list:
        return self.form.masks()

    @cached_property
    def outside(self) -> tuple:
        return tuple(k for k in range(1, self.m + 1) if k not in self.B)

    @cached_property
    def cmasks(self) -> np.ndarray:
        """Generator masks compressed onto the B coordinates."""
        out = np.zeros(len(self.B), dtype=np.int64)
        for j, b in enumerate(self.B):
            mask = self.masks[b - 1]
            out[j] = sum(1 << i for i, c in enumerate(self.B) if (mask >> (c - 1)) & 1)
        return out

    def patterns(self, r: np.ndarray) -> np.ndarray:
        """Slice base points: slice index bits deposited on the non-B coordinates."""
        out = np.zeros(r.shape, dtype=np.int64)
        for i, k in enumerate(self.outside):
            out |= ((r >> i) & 1) << (k - 1)
        return out

    def deposit(self, t: np.ndarray) -> np.ndarray:
        out = np.zeros(np.shape(t), dtype=np.int64)
        for j, b in enumerate(self.B):
            out |= ((t >> j) & 1) << (b - 1)
        return out

    def offsets(self, patterns: np.ndarray) -> np.ndarray:
        out = np.zeros(patterns.shape, dtype=np.int64)
        for j, b in enumerate(self.B):
            par = np.bitwise_count(patterns & self.masks[b - 1]) & 1
            out |= par.astype(np.int64) << j
        return out

    def chunks(self, per_chunk: int | None = None):
        nslices = 1 << (self.m - len(self.B))
        if per_chunk is None:
            per_chunk = max(1, _CHUNK_ELEMENTS >> len(self.B))
        for start in range(0, nslices, per_chunk):
            yield np.arange(start, min(nslices, start + per_chunk), dtype=np.int64)

    @cached_property
    def U(self) -> gf2.F2Subspace:
        return span_of(self.B)

    @cached_property
    def K(self) -> gf2.F2Subspace:
        return kernel_basis(self.form, self.U)

    @cached_property
    def adjacency(self) -> dict:
        return b_graph(self.form, self.B)

    @cached_property
    def e6(self) -> tuple:
        return is_e6_compatible(self.adjacency)


def q_values(q: QForm, xs: np.ndarray) -> np.ndarray:
    """Vectorised Q on packed vectors."""
    xs = np.asarray(xs, dtype=np.int64)
    acc = np.bitwise_count(xs & q.linear) & 1
    for k in range(q.m):
        upper = q.masks[k] & ~((1 << (k + 1)) - 1)
        if upper:
            acc ^= ((xs >> k) & 1).astype(acc.dtype) & (np.bitwise_count(xs & upper) & 1)
    return acc.astype(np.int8)


# -- predictions ----------------------------------------------------------------

@dataclass
class FormulaPrediction:
    count: int
    applicable: bool
    witness: tuple | None
    outside: int
    dim_b_cap_ker: int
    dim_K: int
    dim_invariants: int
    slice_count: int

    @property
    def consistent(self) -> bool:
        """Both closed forms (full-kernel version and slice version) agree."""
        return self.count == self.slice_count


def formula_orbit_count(problem: OrbitProblem) -> FormulaPrediction:
    full_ker = kernel_basis(problem.form)
    d_cap = problem.U.intersect(full_ker).dim
    outside = problem.m - len(problem.B)
    count = 2**outside * (2 + 2**d_cap)
    dK = problem.K.dim
    dinv = invariant_space(problem.form, problem.B).dim
    first_kind = 2 ** (dinv - dK)
    slice_count = first_kind * (2**dK + 2) + (2**outside - first_kind) * 2
    flag, witness = problem.e6
    return FormulaPrediction(count, flag, witness, outside, d_cap, dK, dinv, slice_count)


@dataclass
class CorollaryPrediction:
    count: int
    s: int
    applicable: bool
    formula: FormulaPrediction

    @property
    def consistent(self) -> bool:
        return not self.applicable or self.count == self.formula.count


def corollary_orbit_count(word: SignedWord) -> CorollaryPrediction:
    s = len(word.support())
    problem = OrbitProblem.from_word(word)
    f = formula_orbit_count(problem)
    return CorollaryPrediction(3 * 2**s, s, f.applicable, f)


# -- enumeration ----------------------------------------------------------------

@dataclass
class SliceRecord:
    index: int
    representative: int
    fixed_count: int
    fixed_predicted: tuple | None  # (translate w, dim K) or None when empty
    orbits: list  # (orbit minimum, size, Q value or None when Q varies)
    theorem_applies: bool = False
    violations: list = field(default_factory=list)


@dataclass
class OrbitReport:
    m: int
    B: tuple
    orbit_count: int
    sizes: dict
    slice_orbit_counts: list
    formula: FormulaPrediction
    backend: str
    threads: int
    seconds: float = 0.0
    slices: list | None = None

    @property
    def e6_compatible(self) -> bool:
        return self.formula.applicable

    @property
    def matches_formula(self) -> bool | None:
        if not self.formula.applicable:
            return None
        return self.orbit_count == self.formula.count

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "m": self.m,
            "generators": list(self.B),
            "orbit_count": self.orbit_count,
            "sizes": {str(k): v for k, v in sorted(self.sizes.items())},
            "e6_compatible": self.e6_compatible,
            "e6_witness": list(self.formula.witness) if self.formula.witness else None,
            "formula_count": self.formula.count,
            "formula_applicable": self.formula.applicable,
            "formula_matches": self.matches_formula,
            "dim_b_cap_ker": self.formula.dim_b_cap_ker,
            "dim_K": self.formula.dim_K,
            "slice_orbit_counts": self.slice_orbit_counts,
            "slices": [asdict(s) for s in self.slices] if self.slices is not None else None,
        }
        if timing:
            out["seconds"] = round(self.seconds, 3)
            out["backend"] = self.backend
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"

    def to_text(self, timing: bool = False) -> str:
        d = self.to_dict(timing)
        lines = []
        for key in (
            "m", "generators", "orbit_count", "sizes", "e6_compatible", "e6_witness",
            "formula_count", "formula_applicable", "formula_matches", "dim_b_cap_ker", "dim_K",
        ):
            val = d[key]
            if isinstance(val, dict):
                val = " ".join(f"{k}x{v}" for k, v in val.items())
            elif isinstance(val, list):
                val = " ".join(map(str, val))
            lines.append(f"{key}: {val}")
        if timing:
            lines.append(f"seconds: {d['seconds']}")
            lines.append(f"backend: {d['backend']}")
        if self.slices is not None:
            for s in self.slices:
                orb = " ".join(f"{rep}/{size}/q{q}" for rep, size, q in s.orbits)
                lines.append(f"slice {s.index}: rep={s.representative} fixed={s.fixed_count} orbits={orb}")
        return "\n".join(lines) + "\n"


def enumerate_orbits(
    problem: OrbitProblem,
    limit: int = DEFAULT_LIMIT,
    threads: int = 1,
    backend: str | None = None,
    with_slices: bool = False,
    qform: QForm | None = None,
) -> OrbitReport:
    """Exact orbit partition of F_2^m by brute force, one slice at a time."""
    if problem.m > limit:
        raise DimensionTooLarge(f"m={problem.m} exceeds limit {limit}")
    backend = backend or _kernels.default_backend()
    t0 = time.perf_counter()
    nb = len(problem.B)

    def run(r):
        offs = problem.offsets(problem.patterns(r))
        s, _t, n = _kernels.slice_census(nb, problem.cmasks, offs, backend)
        return np.bincount(s, minlength=len(r)), n

    chunks = list(problem.chunks())
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(run, chunks))
    else:
        results = [run(r) for r in chunks]
    per_slice, sizes = [], Counter()
    for counts, n in results:
        per_slice.extend(int(c) for c in counts)
        sizes.update(Counter(n.tolist()))
    report = OrbitReport(
        problem.m, problem.B, sum(per_slice), dict(sizes), per_slice,
        formula_orbit_count(problem), backend, threads,
    )
    if with_slices:
        report.slices = slice_decomposition(problem, qform, backend)
    report.seconds = time.perf_counter() - t0
    return report


def slice_decomposition(problem: OrbitProblem, qform: QForm | None = None, backend=None) -> list:
    """Per-slice fixed points (two ways), orbits with Q labels and theorem checks."""
    qform = qform or q_form(problem.form, problem.B)
    nb = len(problem.B)
    size = 1 << nb
    t_all = np.arange(size, dtype=np.int64)
    dep = problem.deposit(t_all)
    K = problem.K
    flag = problem.e6[0]
    bmasks = [problem.masks[b - 1] for b in problem.B]
    records = []
    for r in problem.chunks():
        pats = problem.patterns(r)
        offs = problem.offsets(pats)
        labels = _kernels.slice_labels(nb, problem.cmasks, offs, backend)
        for row, (idx, p) in enumerate(zip(r.tolist(), pats.tolist())):
            lab = labels[row]
            xs = dep | p
            qs = q_values(qform, xs)
            counts = np.bincount(lab, minlength=size)
            reps = np.nonzero(counts)[0]
            qmin = np.full(size, 2, dtype=np.int8)
            qmax = np.full(size, -1, dtype=np.int8)
            np.minimum.at(qmin, lab, qs)
            np.maximum.at(qmax, lab, qs)
            # brute-force fixed points: no generator moves the vector
            moved = np.zeros(size, dtype=bool)
            for mk in bmasks:
                moved |= (np.bitwise_count(xs & mk) & 1).astype(bool)
            fixed_bf = set(xs[~moved].tolist())
            rec = SliceRecord(idx, p, len(fixed_bf), None, [])
            singletons = {int(xs[t]) for t in reps if counts[t] == 1}
            if singletons != fixed_bf:
                rec.violations.append("size-1 orbits differ from fixed vectors")
            # linear algebra: fixed set is w + K when Omega(K, p) = 0, else empty
            if all(omega2(problem.masks, k, p) == 0 for k in K.basis):
                rows = [problem.masks[b - 1] & gf2.vec(problem.B) for b in problem.B]
                rhs = [omega2(problem.masks, 1 << (b - 1), p) for b in problem.B]
                w = gf2.solve(rows, rhs, problem.m)
                if w is None:
                    rec.violations.append("no fixed translate although Omega(K, v) = 0")
                    predicted = set()
                else:
                    w ^= p
                    rec.fixed_predicted = (w, K.dim)
                    predicted = {w ^ k for k in K}
            else:
                predicted = set()
            if predicted != fixed_bf:
                rec.violations.append("fixed points disagree with the linear-algebra prediction")
            moving = []
            for t in reps.tolist():
                q = int(qmin[t]) if qmin[t] == qmax[t] else None
                rec.orbits.append((int(xs[t]), int(counts[t]), q))
                if counts[t] > 1 or int(xs[t]) not in fixed_bf:
                    moving.append(q)
                    if q is None:
                        rec.violations.append(f"Q not constant on orbit {int(xs[t])}")
            if flag:
                rec.theorem_applies = True
                nonfixed_q = set(qs[moved].tolist())
                if moved.any() and nonfixed_q != {0, 1}:
                    rec.violations.append("Q constant on the non-fixed part of the slice")
                if moved.any() and sorted(-1 if q is None else q for q in moving) != [0, 1]:
                    rec.violations.append(f"expected two Q-separated orbits, got {moving}")
            records.append(rec)
    return records


def check_slices(records: list) -> Verdict:
    v = Verdict("slice structure")
    for rec in records:
        v.checked += 1
        if rec.violations:
            v.violations.append((rec.index, rec.violations))
    return v


# -- weakly orthogonal families ---------------------------------------------------

@dataclass
class OrbitSetting:
    """Data for orbit arguments inside U: forms, Q, K and an E6 span."""

    problem: OrbitProblem
    q: QForm
    E: gf2.F2Subspace

    @classmethod
    def of(cls, problem: OrbitProblem, qform: QForm | None = None) -> "OrbitSetting":
        flag, witness = problem.e6
        if not flag:
            raise DecompositionError("generator graph is not E6-compatible")
        return cls(problem, qform or q_form(problem.form, problem.B), span_of(witness))

    def omega(self, x: int, y: int) -> int:
        return omega2(self.problem.masks, x, y)

    def in_K(self, u: int) -> bool:
        return u in self.problem.K


def xi_from_vector(problem: OrbitProblem, v: int) -> int:
    """The form u -> Omega(u, v) on U, as its values on the generators (packed mask)."""
    return gf2.vec(b for b in problem.B if omega2(problem.masks, 1 << (b - 1), v))


def _xi(xi: int, u: int) -> int:
    return gf2.parity(xi & u)


def in_T(setting: OrbitSetting, xi: int, u: int) -> bool:
    return u in setting.problem.U and not setting.in_K(u) and setting.q(u) == 1 and _xi(xi, u) == 1


def check_weakly_orthogonal(setting: OrbitSetting, xi: int, u: int, family) -> list:
    problems = []
    acc = 0
    for i, x in enumerate(family):
        if not in_T(setting, xi, x):
            problems.append(f"member {i} not in T_xi")
        if i and setting.omega(acc, x):
            problems.append(f"partial sum not orthogonal to member {i}")
        acc ^= x
    if acc != u:
        problems.append("family does not sum to u")
    return problems


def _case2(setting: OrbitSetting, xi: int, k: int) -> tuple:
    Q = setting.q
    cands = [e for e in setting.E if e and Q(e) == 0 and _xi(xi, e) == 0]
    for e in cands:
        for e2 in cands:
            if e2 != e and setting.omega(e, e2) == 0:
                return (k ^ e, k ^ e2, e ^ e2 ^ k)
    raise DecompositionError("no isotropic Q=0 pair in E")


def weakly_orthogonal_decomposition(setting: OrbitSetting, u: int, xi: int) -> tuple:
    """Write u as a sum of a weakly orthogonal family from T_xi.

    ``xi`` is a linear form on U given by its values on the generators (bit b-1
    for generator b).  Follows the three constructive cases; the result is
    verified before it is returned.
    """
    pr = setting.problem
    Q = setting.q
    if u == 0 or u not in pr.U:
        raise DecompositionError("u must be a nonzero vector of U")
    if Q(u) != _xi(xi, u):
        raise DecompositionError("need Q(u) = xi(u)")
    if all(_xi(xi, k) == 0 for k in pr.K.basis):
        raise DecompositionError("xi vanishes on K")
    if in_T(setting, xi, u):
        family = (u,)
    elif setting.in_K(u) and Q(u) == 0:
        b = next(1 << (b - 1) for b in pr.B if _xi(xi, 1 << (b - 1)))
        family = (b, u ^ b)
    elif setting.in_K(u):
        family = _case2(setting, xi, u)
    else:
        k = next(k for k in pr.K if _xi(xi, k))
        if Q(k) == 1:
            family = _case2(setting, xi, k) + (u ^ k,)
        else:
            e = next(
                (e for e in setting.E
                 if Q(e) == 1 and setting.omega(u, e) == 0 and not setting.in_K(u ^ e)),
                None,
            )
            if e is None:
                raise DecompositionError("no suitable vector in E")
            family = (e, u ^ e) if _xi(xi, e) else (e ^ k, u ^ e ^ k)
    problems = check_weakly_orthogonal(setting, xi, u, family)
    if problems:
        raise DecompositionError(f"construction failed for u={u}: {problems}")
    return family


# -- small-group lemmas -------------------------------------------------------------

def check_janssen(problem: OrbitProblem, qform: QForm | None = None, cap: int = 1_000_000) -> Verdict:
    """Transvections tau_u (u in U \\ K, Q(u)=1) lie in the group, and the group is
    transitive on each Q-level set of U \\ K.

    The membership part needs a connected generator graph, transitivity needs
    E6-compatibility; each part is checked only under its hypothesis.
    """
    v = Verdict("janssen lemmas")
    qform = qform or q_form(problem.form, problem.B)
    U, K = problem.U, problem.K
    outside_K = [u for u in U if u not in K]
    levels = {0: [u for u in outside_K if qform(u) == 0], 1: [u for u in outside_K if qform(u) == 1]}
    v.notes["level_sizes"] = {q: len(xs) for q, xs in levels.items()}
    connected = is_connected(problem.adjacency)
    if connected and levels[1]:
        try:
            group = group_closure_small(problem.form, problem.B, cap)
        except ClosureTooLarge:
            v.notes["skipped"] = f"closure exceeds {cap}"
            group = None
        if group is not None:
            v.notes["group_order"] = len(group)
            for u in levels[1]:
                v.checked += 1
                if vector_transvection_columns(problem.masks, u) not in group:
                    v.violations.append(("tau_u not in group", u))
    if problem.e6[0] and outside_K:
        nb = len(problem.B)
        labels = _kernels.slice_labels(nb, problem.cmasks, np.zeros(1, dtype=np.int64))[0]
        compress = {int(x): t for t, x in enumerate(problem.deposit(np.arange(1 << nb)).tolist())}
        for q, xs in levels.items():
            v.checked += 1
            if len({int(labels[compress[x]]) for x in xs}) > 1:
                v.violations.append(("not transitive on level", q))
    return v


def e6_level_counts(problem: OrbitProblem, qform: QForm | None = None) -> dict:
    """Q-level sizes on the span of the E6 witness (zero vector included)."""
    flag, witness = problem.e6
    if not flag:
        return {}
    qform = qform or q_form(problem.form, problem.B)
    counts = Counter(qform(e) for e in span_of(witness))
    return {0: counts[0], 1: counts[1]}
