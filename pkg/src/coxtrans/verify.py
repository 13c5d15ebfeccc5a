"""Randomised and exhaustive property suites behind ``coxtrans verify``.

Every suite is a deterministic function of its seed and instance count and
returns a list of Verdicts, one per checked statement.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product

from .conjugation import (
    check_intertwiner,
    check_omega_transform,
    check_phi_inverses,
    check_tau_phi_squared,
    certificate_along,
    conjugacy_certificate,
)
from .coxeter import (
    NONTRIVIAL_2,
    THREE,
    CoxeterGraph,
    Move,
    SignedWord,
    a4_example_word,
    apply_move,
    enumerate_moves,
    enumerate_reduced_words,
    geometric_action,
    is_reduced,
    is_reduced_pair,
    lexmin_w0_word_A,
    move_sigma,
    pair_element,
)
from . import gf2
from .fixtures import e6_problem
from .orbits import (
    DecompositionError,
    OrbitProblem,
    OrbitSetting,
    check_janssen,
    check_slices,
    e6_level_counts,
    enumerate_orbits,
    weakly_orthogonal_decomposition,
)
from .sigma import (
    HORIZONTAL,
    Verdict,
    boundary_vertex_witness,
    build_sigma,
    check_graph_change,
    check_strip_cycles,
    check_strip_planarity,
    strips_of,
)
from .transvection import kernel_basis, omega_of, q_form, q_invariance_check

SUITES = ("strips", "graph-change", "phi", "omega", "tits", "orbits-theory")
DEFAULT_SEED = 20260101
COMPONENT_COUNTS = {2: 2, 3: 6, 4: 20, 5: 52, 6: 96, 7: 192}
NAMED_GRAPHS = {
    "A4": CoxeterGraph.path(4),
    "A5": CoxeterGraph.path(5),
    "D5": CoxeterGraph(5, frozenset({(1, 2), (2, 3), (3, 4), (3, 5)})),
    "E6": CoxeterGraph(6, frozenset({(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)})),
    "C5": CoxeterGraph(5, frozenset({(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)})),
}


# -- instance generation ------------------------------------------------------------

def random_graph(rng: random.Random, n: int, p: float = 0.5) -> CoxeterGraph:
    return CoxeterGraph(n, frozenset(e for e in combinations(range(1, n + 1), 2) if rng.random() < p))


def random_reduced(rng: random.Random, graph: CoxeterGraph, length: int, patience: int = 40) -> list:
    """Grow a reduced word letter by letter; may stop short in finite groups."""
    word: list = []
    misses = 0
    while len(word) < length and misses < patience:
        a = rng.randint(1, graph.n)
        if is_reduced(word + [a], graph):
            word.append(a)
            misses = 0
        else:
            misses += 1
    return word


def random_pair_word(rng: random.Random, graph: CoxeterGraph, m: int) -> SignedWord:
    lu = rng.randint(0, m)
    u = random_reduced(rng, graph, lu)
    v = random_reduced(rng, graph, m - lu)
    neg = set(rng.sample(range(len(u) + len(v)), len(u)))
    iu, iv = iter(u), iter(v)
    letters = [-next(iu) if i in neg else next(iv) for i in range(len(u) + len(v))]
    return SignedWord(tuple(letters), graph)


def random_instances(seed: int, count: int, max_n: int = 6, max_m: int = 14) -> list:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(2, max_n)
        g = random_graph(rng, n, rng.choice((0.3, 0.5, 0.8)))
        w = random_pair_word(rng, g, rng.randint(1, max_m))
        if len(w):
            out.append(w)
    return out


def e6_instances(seed: int, count: int, max_m: int = 22, min_m: int = 12) -> list:
    """Random reduced pair words whose generator graph is E6-compatible."""
    rng = random.Random(seed)
    graphs = list(NAMED_GRAPHS.values())
    out = []
    for _ in range(200 * count):
        if len(out) >= count:
            break
        g = rng.choice(graphs) if rng.random() < 0.7 else random_graph(rng, rng.randint(4, 6), 0.5)
        w = random_pair_word(rng, g, rng.randint(min_m, max_m))
        if OrbitProblem.from_word(w).e6[0]:
            out.append(w)
    return out


def fixture_words() -> list:
    return [a4_example_word()] + [lexmin_w0_word_A(n) for n in range(2, 6)]


def a4_sequence() -> list:
    """The worked example: a non-trivial 2-move at 8, then a 3-move at 10."""
    w = a4_example_word()
    w2 = apply_move(w, Move(NONTRIVIAL_2, 8))
    return [(w, Move(NONTRIVIAL_2, 8)), (w2, Move(THREE, 10))]


# -- brute-force oracles --------------------------------------------------------------

def _key(mat) -> tuple:
    return tuple(map(tuple, mat.tolist()))


def element_lengths(graph: CoxeterGraph, depth: int) -> dict:
    """Breadth-first lengths of all elements of length <= depth, keyed by root matrix."""
    start = _key(geometric_action((), graph))
    lengths = {start: 0}
    words = {start: ()}
    frontier = [()]
    for d in range(1, depth + 1):
        nxt = []
        for w in frontier:
            for a in range(1, graph.n + 1):
                key = _key(geometric_action(w + (a,), graph))
                if key not in lengths:
                    lengths[key] = d
                    words[key] = w + (a,)
                    nxt.append(w + (a,))
        frontier = nxt
    return lengths


def brute_reduced_words(graph: CoxeterGraph, word: tuple) -> set:
    target = _key(geometric_action(word, graph))
    return {
        w for w in product(range(1, graph.n + 1), repeat=len(word))
        if _key(geometric_action(w, graph)) == target
    }


def shuffles(u_words: set, v_words: set, lu: int, lv: int) -> set:
    out = set()
    for neg in combinations(range(lu + lv), lu):
        neg_set = set(neg)
        for u in u_words:
            for v in v_words:
                iu, iv = iter(u), iter(v)
                out.add(tuple(-next(iu) if i in neg_set else next(iv) for i in range(lu + lv)))
    return out


# -- suites ---------------------------------------------------------------------

def suite_strips(words: list) -> list:
    planar = Verdict("strip planarity (no crossing inclined edges)")
    cycles = Verdict("strip cycles (consecutive inclined edges bound directed cycles)")
    bounded_edge = Verdict("every edge has a bounded endpoint")
    chains = Verdict("horizontal edges join consecutive occurrences")
    boundary = Verdict("boundary vertex for every nonempty S in B(i)")
    rng = random.Random(len(words))
    for w in words:
        sig = build_sigma(w, check_reduced=False)
        for st in strips_of(sig, w.graph):
            planar.merge(check_strip_planarity(st))
            cycles.merge(check_strip_cycles(st))
        for a, b, t in sig.edges:
            bounded_edge.checked += 1
            if a not in sig.bounded and b not in sig.bounded:
                bounded_edge.violations.append((str(w), a, b))
            if t == HORIZONTAL:
                chains.checked += 1
                lo, hi = min(a, b), max(a, b)
                if sig.lminus[hi - 1] != lo:
                    chains.violations.append((str(w), a, b))
        B = sorted(sig.bounded)
        if not B:
            continue
        if len(B) <= 13:
            subsets = (
                [B[i] for i in range(len(B)) if (mask >> i) & 1] for mask in range(1, 1 << len(B))
            )
        else:
            subsets = (rng.sample(B, rng.randint(1, len(B))) for _ in range(10_000))
        for S in subsets:
            boundary.checked += 1
            if boundary_vertex_witness(sig, S) is None:
                boundary.violations.append((str(w), S))
    return [planar, cycles, bounded_edge, chains, boundary]


def suite_graph_change(words: list) -> list:
    v = Verdict("graph change prediction equals direct construction")
    perm_v = Verdict("move permutation maps B(i) onto B(i')")
    for w in words:
        sig = build_sigma(w, check_reduced=False)
        for mv in enumerate_moves(w):
            v.merge(check_graph_change(w, mv, sig))
            perm = move_sigma(mv, len(w))
            after = build_sigma(apply_move(w, mv), check_reduced=False).bounded
            perm_v.checked += 1
            if {perm[b - 1] for b in sig.bounded} != set(after):
                perm_v.violations.append((str(w), str(mv)))
            elif not mv.trivial and (mv.position not in sig.bounded or perm[mv.position - 1] != mv.position):
                perm_v.violations.append((str(w), str(mv), "position"))
    seq = Verdict("graph change on the A4 worked example")
    for w, mv in a4_sequence():
        seq.merge(check_graph_change(w, mv))
    return [v, perm_v, seq]


def suite_phi(words: list) -> list:
    inv = Verdict("phi inverses (exact)")
    sq = Verdict("phi+ composed with its reverse is tau_k")
    tw = Verdict("intertwining with exception identity")
    for w in words:
        sig = build_sigma(w, check_reduced=False)
        for mv in enumerate_moves(w):
            inv.merge(check_phi_inverses(w, mv, sig))
            sq.merge(check_tau_phi_squared(w, mv, sig))
            tw.merge(check_intertwiner(w, mv, sig))
    cert = Verdict("conjugacy certificates")
    w0 = a4_example_word()
    cert.merge(certificate_along(w0, [mv for _, mv in a4_sequence()]).verify())
    a3 = lexmin_w0_word_A(4)
    for far in enumerate_reduced_words(a3).words[-3:]:
        cert.merge(conjugacy_certificate(a3, far).verify())
    rng = random.Random(len(words))
    for w in words[:200]:
        path, cur = [], w
        for _ in range(4):
            moves = enumerate_moves(cur)
            if not moves:
                break
            mv = rng.choice(moves)
            path.append(mv)
            cur = apply_move(cur, mv)
        cert.merge(certificate_along(w, path).verify())
    return [inv, sq, tw, cert]


def suite_omega(words: list) -> list:
    v = Verdict("pullback of the form under phi")
    for w in words:
        sig = build_sigma(w, check_reduced=False)
        for mv in enumerate_moves(w):
            v.merge(check_omega_transform(w, mv, sig))
    return [v]


def suite_tits(seed: int, count: int) -> list:
    rng = random.Random(seed)
    tits = Verdict("move graph equals all shuffles of reduced words")
    inv = Verdict("moves are involutions")
    pres = Verdict("moves preserve the pair (u, v)")
    red = Verdict("root-tracking reducedness equals minimum length")
    for n in range(1, 5):
        g = CoxeterGraph.path(n)
        lengths = element_lengths(g, 6)
        for w in product(range(1, n + 1), repeat=min(4, 6 - max(0, n - 3))):
            red.checked += 1
            if is_reduced(w, g) != (lengths[_key(geometric_action(w, g))] == len(w)):
                red.violations.append((n, w))
    for _ in range(max(3, count // 20)):
        n = rng.randint(1, 4)
        g = random_graph(rng, n)
        w = random_pair_word(rng, g, rng.randint(1, 7))
        lengths = element_lengths(g, 7)
        for sub in (w.negative_part, w.positive_part):
            red.checked += 1
            if is_reduced(sub, g) != (lengths[_key(geometric_action(sub, g))] == len(sub)):
                red.violations.append((str(w), sub))
        mg = enumerate_reduced_words(w, cap=10_000)
        if mg.truncated:
            continue
        u, v = w.negative_part, w.positive_part
        brute = shuffles(brute_reduced_words(g, u), brute_reduced_words(g, v), len(u), len(v))
        tits.checked += 1
        found = {x.letters for x in mg.words}
        if found != brute:
            tits.violations.append((str(w), len(found), len(brute)))
        elem = pair_element(w)
        for a, b, mv in mg.edges:
            x = mg.words[a]
            y = apply_move(x, mv)
            inv.checked += 1
            if apply_move(y, mv).letters != x.letters:
                inv.violations.append((str(x), str(mv)))
            pres.checked += 1
            if pair_element(y) != elem or not is_reduced_pair(y):
                pres.violations.append((str(x), str(mv)))
    return [tits, inv, pres, red]


def orbit_count_of(word: SignedWord) -> int:
    return enumerate_orbits(OrbitProblem.from_word(word)).orbit_count


def suite_orbits(seed: int, count: int, words: list) -> list:
    table = Verdict("component counts 2, 6, 20, 52, 96, 192")
    exceptional = Verdict("n = 4, 5 are not E6-compatible")
    formula = Verdict("orbit count equals closed form when E6-compatible")
    corollary = Verdict("closed form equals 3 * 2^s")
    kernel = Verdict("span(B) meets Ker Omega only in 0")
    slices = Verdict("slice structure (fixed points, two Q-separated orbits)")
    e6 = Verdict("pure E6 fixture: 3 orbits, Q levels 28/36")
    janssen = Verdict("Q = 1 transvections and transitivity on Q levels")
    wod = Verdict("weakly orthogonal decompositions")
    conj = Verdict("orbit counts constant on move graphs")
    flip = Verdict("global sign flip keeps the orbit partition")
    qinv = Verdict("Q invariant under generators")

    for n, expected in COMPONENT_COUNTS.items():
        w = lexmin_w0_word_A(n)
        pr = OrbitProblem.from_word(w)
        rep = enumerate_orbits(pr, with_slices=pr.e6[0])
        table.checked += 1
        if rep.orbit_count != expected:
            table.violations.append((n, rep.orbit_count, expected))
        if n in (4, 5):
            exceptional.checked += 1
            if rep.e6_compatible or rep.orbit_count == 3 * 2 ** (n - 1):
                exceptional.violations.append(n)
        if rep.slices is not None:
            slices.merge(check_slices(rep.slices))

    e6_words = e6_instances(seed + 1, max(50, count // 20))
    formula.notes["instances"] = len(e6_words)
    if len(e6_words) < 50:
        formula.violations.append(f"only {len(e6_words)} E6-compatible instances generated")
    targets = [lexmin_w0_word_A(6), lexmin_w0_word_A(7)] + e6_words
    for w in targets:
        pr = OrbitProblem.from_word(w)
        rep = enumerate_orbits(pr, with_slices=len(w) <= 22)
        formula.checked += 1
        if not rep.formula.consistent or rep.orbit_count != rep.formula.count:
            formula.violations.append((str(w), rep.orbit_count, rep.formula.count))
        corollary.checked += 1
        if rep.formula.count != 3 * 2 ** len(w.support()):
            corollary.violations.append((str(w), rep.formula.count))
        slices.merge(check_slices(rep.slices))

    for w in words + targets:
        pr = OrbitProblem.from_word(w)
        kernel.checked += 1
        if pr.U.intersect(kernel_basis(pr.form)).dim:
            kernel.violations.append(str(w))

    pr = e6_problem()
    rep = enumerate_orbits(pr, with_slices=True)
    e6.checked += 1
    if rep.orbit_count != 3 or e6_level_counts(pr) != {0: 28, 1: 36}:
        e6.violations.append((rep.orbit_count, e6_level_counts(pr)))
    slices.merge(check_slices(rep.slices))

    for pr in [e6_problem()] + [OrbitProblem.from_word(w) for w in fixture_words()]:
        janssen.merge(check_janssen(pr, cap=1_000_000))

    rng = random.Random(seed + 2)
    settings = []
    for w in targets:
        pr = OrbitProblem.from_word(w)
        if pr.K.dim and len(pr.B) <= 16:
            settings.append(OrbitSetting.of(pr))
        if len(settings) >= 8:
            break
    done = 0
    while settings and done < max(100, count // 10):
        st = rng.choice(settings)
        pr = st.problem
        xi = rng.getrandbits(pr.m) & gf2.vec(pr.B)
        if all((xi & k).bit_count() % 2 == 0 for k in pr.K.basis):
            continue
        u = pr.U.combination(rng.getrandbits(pr.U.dim))
        if u == 0 or st.q(u) != (xi & u).bit_count() % 2:
            continue
        wod.checked += 1
        done += 1
        try:
            weakly_orthogonal_decomposition(st, u, xi)
        except DecompositionError as exc:
            wod.violations.append((u, xi, str(exc)))
    if not settings:
        wod.violations.append("no E6-compatible instance with nonzero K")

    for seed_word in (lexmin_w0_word_A(3), lexmin_w0_word_A(4)):
        mg = enumerate_reduced_words(seed_word)
        counts = {orbit_count_of(w) for w in mg.words}
        conj.checked += len(mg.words)
        if len(counts) != 1:
            conj.violations.append((str(seed_word), sorted(counts)))
    for w in words[: max(20, count // 10)]:
        base = orbit_count_of(w)
        for mv in enumerate_moves(w):
            conj.checked += 1
            if orbit_count_of(apply_move(w, mv)) != base:
                conj.violations.append((str(w), str(mv)))

    for w in words[: max(20, count // 10)] + fixture_words():
        a = enumerate_orbits(OrbitProblem.from_word(w))
        b = enumerate_orbits(OrbitProblem.from_word(w.sign_flip()))
        flip.checked += 1
        if (a.orbit_count, a.sizes, a.slice_orbit_counts) != (b.orbit_count, b.sizes, b.slice_orbit_counts):
            flip.violations.append(str(w))
        sig = build_sigma(w, check_reduced=False)
        qinv.merge(q_invariance_check(q_form(omega_of(sig), sig.bounded), sig.bounded, seed=seed))
    return [table, exceptional, formula, corollary, kernel, slices, e6, janssen, wod, conj, flip, qinv]


@dataclass
class SuiteResult:
    suite: str
    verdicts: list

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)


def run_suite(name: str, seed: int = DEFAULT_SEED, instances: int = 1000) -> list[SuiteResult]:
    if name != "all" and name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    words = None
    out = []
    for suite in SUITES if name == "all" else (name,):
        if suite in ("strips", "graph-change", "phi", "omega", "orbits-theory") and words is None:
            words = fixture_words() + random_instances(seed, instances)
        if suite == "strips":
            out.append(SuiteResult(suite, suite_strips(words)))
        elif suite == "graph-change":
            out.append(SuiteResult(suite, suite_graph_change(words)))
        elif suite == "phi":
            out.append(SuiteResult(suite, suite_phi(words)))
        elif suite == "omega":
            out.append(SuiteResult(suite, suite_omega(words)))
        elif suite == "tits":
            out.append(SuiteResult(suite, suite_tits(seed, instances)))
        elif suite == "orbits-theory":
            out.append(SuiteResult(suite, suite_orbits(seed, instances, words)))
    return out
