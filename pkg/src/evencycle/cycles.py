"""Shortest even cycle (Algorithm S) and even-cycle detection."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from evencycle.enumerators import pcc_f
from evencycle.fields import FieldCtx, make_field
from evencycle.linalg import lagrange_interpolate
from evencycle.ring4 import RingCtx

__all__ = [
    "Digraph",
    "EvaluationSample",
    "SearchRun",
    "field_degree",
    "weighted_adjacency",
    "run_algorithm_s",
    "shortest_even_cycle",
    "has_even_cycle",
]

MIN_FIELD_DEGREE = 4


@dataclass(frozen=True)
class Digraph:
    """Simple digraph on vertices 1..n. Self-loops in the input are dropped:
    the algorithms put their own weighted loop on every vertex."""

    n: int
    arcs: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for u, v in self.arcs:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"arc ({u}, {v}) out of range 1..{self.n}")
        object.__setattr__(self, "arcs", frozenset((u, v) for u, v in self.arcs if u != v))

    @classmethod
    def from_arcs(cls, n: int, arcs) -> Digraph:
        arcs = list(arcs)
        if len(set(arcs)) != len(arcs):
            raise ValueError("duplicate arc")
        return cls(n, frozenset(arcs))

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def relabel(self, perm) -> Digraph:
        """Graph with vertex v renamed perm[v-1]."""
        return Digraph(self.n, frozenset((perm[u - 1], perm[v - 1]) for u, v in self.arcs))


@dataclass(frozen=True)
class EvaluationSample:
    gamma: int
    delta: int


@dataclass
class SearchRun:
    """Everything Algorithm S computed, for inspection and tests."""

    d: int
    field: FieldCtx | None
    samples: list[EvaluationSample]
    q: list[int]
    answer: int | None


def field_degree(n: int, d_override: int | None = None) -> int:
    d = 5 * math.ceil(math.log2(n)) if n >= 2 else 0
    if d_override is not None:
        d = max(d, d_override)
    return max(d, MIN_FIELD_DEGREE)


def _draw_weights(G: Digraph, fctx: FieldCtx, rng: random.Random):
    arcs = {a: rng.getrandbits(fctx.d) for a in G.sorted_arcs()}
    loops = [rng.getrandbits(fctx.d) for _ in range(G.n)]
    return arcs, loops


def weighted_adjacency(G: Digraph, arc_weights, loop_weights, y: int = 1, fctx: FieldCtx | None = None):
    """n x n matrix with loop weights (times ``y``) on the diagonal."""
    n = G.n
    A = [[0] * n for _ in range(n)]
    for (u, v), w in arc_weights.items():
        A[u - 1][v - 1] = w
    for u in range(n):
        A[u][u] = loop_weights[u] if y == 1 else fctx.mul(y, loop_weights[u])
    return A


def run_algorithm_s(G: Digraph, seed: int, d_override: int | None = None) -> SearchRun:
    n = G.n
    if n < 2:
        return SearchRun(0, None, [], [], None)
    d = field_degree(n, d_override)
    rng = random.Random(seed)
    fctx = make_field(d, rng)
    ring = RingCtx(fctx)
    gammas = [fctx.element(k) for k in range(n + 1)]
    arc_w, loop_w = _draw_weights(G, fctx, rng)
    samples = []
    for g in gammas:
        A = weighted_adjacency(G, arc_w, loop_w, y=g, fctx=fctx)
        samples.append(EvaluationSample(g, pcc_f(ring, A)))
    q = lagrange_interpolate(fctx, [(s.gamma, s.delta) for s in samples])
    answer = next((k for k in range(2, n + 1, 2) if q[n - k]), None)
    return SearchRun(d, fctx, samples, q, answer)


def shortest_even_cycle(G: Digraph, seed: int, d_override: int | None = None) -> int | None:
    """Length of a shortest even cycle, or None.

    One-sided Monte Carlo: a returned length is never below the true one, and
    an even-cycle-free graph always gives None.
    """
    return run_algorithm_s(G, seed, d_override).answer


def has_even_cycle(G: Digraph, seed: int, repeats: int = 1, d_override: int | None = None) -> bool:
    """True iff some random evaluation of pcc_{n-1} is nonzero. Never a false
    positive."""
    n = G.n
    if n < 2:
        return False
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    rng = random.Random(seed)
    fctx = make_field(field_degree(n, d_override), rng)
    ring = RingCtx(fctx)
    for _ in range(repeats):
        arc_w, loop_w = _draw_weights(G, fctx, rng)
        if pcc_f(ring, weighted_adjacency(G, arc_w, loop_w)):
            return True
    return False
