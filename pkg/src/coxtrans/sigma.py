"""The directed graph attached to a reduced pair word, its strips, and the
structural checks on it (boundary vertex, strip planarity/cycles, graph change
under moves)."""
from __future__ import annotations

from dataclasses import dataclass, field

from .coxeter import (
    THREE,
    CoxeterError,
    Move,
    SignedWord,
    apply_move,
    enumerate_moves,
    is_reduced_pair,
    move_sigma,
)

HORIZONTAL = "horizontal"
INCLINED_II = "inclined-ii"
INCLINED_III = "inclined-iii"


@dataclass
class Verdict:
    """Outcome of a verification; ``violations`` holds printable counterexamples."""

    name: str
    violations: list = field(default_factory=list)
    checked: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "Verdict") -> "Verdict":
        self.violations.extend(other.violations)
        self.checked += other.checked
        return self

    def __str__(self):
        state = "PASS" if self.ok else "FAIL"
        return f"{state} {self.name} ({self.checked} checked, {len(self.violations)} violations)"


def sign(a: int) -> int:
    return 1 if a > 0 else -1


@dataclass(frozen=True)
class SigmaGraph:
    m: int
    letters: tuple
    lminus: tuple
    bounded: frozenset
    edges: frozenset  # (from, to, type), 1-based

    def directed(self) -> frozenset:
        return frozenset((a, b) for a, b, _ in self.edges)

    def types(self) -> dict:
        return {(min(a, b), max(a, b)): t for a, b, t in self.edges}

    def in_neighbors(self, k: int) -> list[int]:
        return sorted(a for a, b, _ in self.edges if b == k)

    def out_neighbors(self, k: int) -> list[int]:
        return sorted(b for a, b, _ in self.edges if a == k)

    def adjacent(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.types()

    @property
    def unbounded(self) -> list[int]:
        return [k for k in range(1, self.m + 1) if k not in self.bounded]


def lminus_table(letters) -> tuple:
    """``out[l-1]`` is the last earlier position with the same |letter|, else 0."""
    last: dict = {}
    out = []
    for pos, a in enumerate(letters, start=1):
        out.append(last.get(abs(a), 0))
        last[abs(a)] = pos
    return tuple(out)


def l_minus(word: SignedWord, l: int) -> int:
    if not 1 <= l <= len(word):
        raise CoxeterError(f"position {l} out of range 1..{len(word)}")
    return lminus_table(word.letters)[l - 1]


def bounded_set(word: SignedWord) -> frozenset:
    lm = lminus_table(word.letters)
    return frozenset(l for l in range(1, len(word) + 1) if lm[l - 1] > 0)


def edge_type(word: SignedWord, k: int, l: int, lm=None) -> str | None:
    """Which condition of the edge definition the pair k < l satisfies, if any."""
    w, g = word.letters, word.graph
    if lm is None:
        lm = lminus_table(w)
    ik, il = w[k - 1], w[l - 1]
    km, lmn = lm[k - 1], lm[l - 1]
    hits = []
    if k == lmn:
        hits.append(HORIZONTAL)
    if g.adjacent(abs(ik), abs(il)):
        if km < lmn < k and sign(w[lmn - 1]) == sign(ik):
            hits.append(INCLINED_II)
        if lmn < km < k and sign(w[km - 1]) == -sign(ik):
            hits.append(INCLINED_III)
    assert len(hits) <= 1, f"conditions overlap on ({k},{l}): {hits}"
    return hits[0] if hits else None


def orient(word: SignedWord, k: int, l: int, kind: str) -> tuple:
    """Direction of an edge {k<l}: horizontal goes k->l iff i_k > 0, inclined iff i_k < 0."""
    positive = word[k] > 0
    forward = positive if kind == HORIZONTAL else not positive
    return (k, l) if forward else (l, k)


def build_sigma(word: SignedWord, check_reduced: bool = True) -> SigmaGraph:
    if check_reduced and not is_reduced_pair(word):
        raise CoxeterError(f"word ({word}) is not reduced")
    m = len(word)
    lm = lminus_table(word.letters)
    edges = set()
    for l in range(1, m + 1):
        for k in range(1, l):
            t = edge_type(word, k, l, lm)
            if t is not None:
                a, b = orient(word, k, l, t)
                edges.add((a, b, t))
    bounded = frozenset(l for l in range(1, m + 1) if lm[l - 1] > 0)
    return SigmaGraph(m, word.letters, lm, bounded, frozenset(edges))


# -- strips ---------------------------------------------------------------------

@dataclass(frozen=True)
class StripPoint:
    position: int
    level: int
    sign: int

    @property
    def charge(self) -> int:
        return self.level * self.sign


@dataclass(frozen=True)
class Strip:
    pair: tuple
    points: tuple
    inclined: tuple  # directed (a, b)
    horizontal: tuple

    def point(self, pos: int) -> StripPoint:
        for p in self.points:
            if p.position == pos:
                return p
        raise KeyError(pos)


def build_strip(sigma: SigmaGraph, i: int, j: int, graph=None) -> Strip:
    if graph is not None and not graph.adjacent(i, j):
        raise CoxeterError(f"{i} and {j} are not adjacent")
    if i == j:
        raise CoxeterError("strip needs two distinct vertices")
    pts = []
    for pos, a in enumerate(sigma.letters, start=1):
        if abs(a) in (i, j):
            pts.append(StripPoint(pos, -1 if abs(a) == i else 1, sign(a)))
    members = {p.position for p in pts}
    inc, hor = [], []
    for a, b, t in sorted(sigma.edges):
        if a in members and b in members:
            (hor if t == HORIZONTAL else inc).append((a, b))
    return Strip((i, j), tuple(pts), tuple(inc), tuple(hor))


def _segment(strip: Strip, edge: tuple) -> tuple:
    """Inclined edge as (bottom position, top position)."""
    a, b = edge
    pa = strip.point(a)
    return (a, b) if pa.level < 0 else (b, a)


def check_strip_planarity(strip: Strip) -> Verdict:
    v = Verdict("strip planarity")
    segs = [_segment(strip, e) for e in strip.inclined]
    for x in range(len(segs)):
        for y in range(x + 1, len(segs)):
            (b1, t1), (b2, t2) = segs[x], segs[y]
            v.checked += 1
            if (b1 - b2) * (t1 - t2) < 0:
                v.violations.append((strip.pair, strip.inclined[x], strip.inclined[y]))
    return v


def check_strip_cycles(strip: Strip) -> Verdict:
    """Each region between consecutive inclined edges is bounded by a directed cycle."""
    v = Verdict("strip cycles")
    segs = sorted(_segment(strip, e) for e in strip.inclined)
    bottom = [p.position for p in strip.points if p.level < 0]
    top = [p.position for p in strip.points if p.level > 0]
    directed = set(strip.inclined) | set(strip.horizontal)
    for (b1, t1), (b2, t2) in zip(segs, segs[1:]):
        v.checked += 1
        # walk: bottom left->right, up the right edge, top right->left, down the left edge
        walk = [x for x in bottom if b1 <= x <= b2]
        walk += [x for x in reversed(top) if t1 <= x <= t2]
        cycle = list(zip(walk, walk[1:] + walk[:1]))
        cycle = [(a, b) for a, b in cycle if a != b]
        fwd = sum((a, b) in directed for a, b in cycle)
        back = sum((b, a) in directed for a, b in cycle)
        if not (fwd == len(cycle) or back == len(cycle)):
            v.violations.append((strip.pair, (b1, t1), (b2, t2), cycle))
    return v


def strips_of(sigma: SigmaGraph, graph) -> list[Strip]:
    return [build_strip(sigma, i, j) for i, j in sorted(graph.edges)]


# -- boundary vertex -------------------------------------------------------------

def boundary_vertex_witness(sigma: SigmaGraph, S) -> tuple | None:
    """Return (a, b) with a outside S adjacent to b as its only neighbour in S.

    Follows the constructive choice (b in S with the least b^-, a = b^-) and
    recounts adjacency directly; None means no witness was found.
    """
    S = set(S)
    if not S or not S <= sigma.bounded:
        raise CoxeterError("S must be a nonempty subset of the bounded set")
    b = min(S, key=lambda x: (sigma.lminus[x - 1], x))
    a = sigma.lminus[b - 1]
    if a in S:
        return None
    nbrs = [c for c in S if sigma.adjacent(a, c)]
    return (a, b) if nbrs == [b] else None


# -- graph change -----------------------------------------------------------------

def predict_graph_change(sigma: SigmaGraph, word: SignedWord, move: Move) -> SigmaGraph:
    """Predict the graph of the moved word from ``sigma`` alone.

    Edges are relabelled by the move permutation; for a non-trivial move at k,
    edges through k are reversed and, for each path a -> k -> b with a or b
    bounded, the pair {sigma(a), sigma(b)} is toggled (added as sigma(a) -> sigma(b)).
    Edge types are recomputed from the new word.
    """
    if move not in enumerate_moves(word):
        raise CoxeterError(f"move {move} not applicable to ({word})")
    new_word = apply_move(word, move)
    perm = move_sigma(move, sigma.m)
    s = lambda x: perm[x - 1]  # noqa: E731
    k = move.position
    pred: dict = {}
    if move.trivial:
        for a, b in sigma.directed():
            pred[frozenset((s(a), s(b)))] = (s(a), s(b))
    else:
        ins = sigma.in_neighbors(k)
        outs = sigma.out_neighbors(k)
        for a, b in sigma.directed():
            if a == k:
                pred[frozenset((k, s(b)))] = (s(b), k)
            elif b == k:
                pred[frozenset((k, s(a)))] = (k, s(a))
            else:
                pred[frozenset((s(a), s(b)))] = (s(a), s(b))
        for a in ins:
            for b in outs:
                if a not in sigma.bounded and b not in sigma.bounded:
                    continue
                key = frozenset((s(a), s(b)))
                if key in pred:
                    del pred[key]
                else:
                    pred[key] = (s(a), s(b))
    lm = lminus_table(new_word.letters)
    edges = set()
    for a, b in pred.values():
        t = edge_type(new_word, min(a, b), max(a, b), lm)
        edges.add((a, b, t if t is not None else "unexplained"))
    bounded = frozenset(l for l in range(1, sigma.m + 1) if lm[l - 1] > 0)
    return SigmaGraph(sigma.m, new_word.letters, lm, bounded, frozenset(edges))


def check_graph_change(word: SignedWord, move: Move, sigma: SigmaGraph | None = None) -> Verdict:
    v = Verdict("graph change")
    sigma = sigma or build_sigma(word, check_reduced=False)
    pred = predict_graph_change(sigma, word, move)
    actual = build_sigma(apply_move(word, move), check_reduced=False)
    v.checked = 1
    if pred.directed() != actual.directed():
        v.violations.append(
            (str(word), str(move), sorted(pred.directed() - actual.directed()),
             sorted(actual.directed() - pred.directed()))
        )
    return v


# -- DOT --------------------------------------------------------------------------

_STYLE = {HORIZONTAL: "solid", INCLINED_II: "dashed", INCLINED_III: "dotted"}


def to_dot(sigma: SigmaGraph, name: str = "Sigma") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=circle, style=filled];"]
    for k, a in enumerate(sigma.letters, start=1):
        fill = "black" if a > 0 else "white"
        font = "white" if a > 0 else "black"
        lines.append(
            f'  {k} [label="{k}:{a}", fillcolor={fill}, fontcolor={font}, '
            f'bounded={"true" if k in sigma.bounded else "false"}];'
        )
    for a, b, t in sorted(sigma.edges):
        lines.append(f"  {a} -> {b} [style={_STYLE.get(t, 'bold')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
