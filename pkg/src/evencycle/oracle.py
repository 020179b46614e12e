"""Brute-force reference implementations. Obvious rather than fast."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from evencycle.cycles import Digraph
from evencycle.fields import FieldCtx, make_field
from evencycle.perdet import permutation_sign
from evencycle.ring4 import RingCtx, RingElem

__all__ = [
    "OracleSizeError",
    "CycleCover",
    "cycle_covers",
    "brute_per_det_e",
    "brute_per_f",
    "brute_pcc",
    "brute_shortest_even_cycle",
    "pit_nonzero_fraction",
    "dlsz_statistic",
    "dlsz_bound",
]

MAX_ALGEBRAIC_N = 8
MAX_GRAPH_N = 10


class OracleSizeError(ValueError):
    pass


def _guard(n: int, limit: int) -> None:
    if n > limit:
        raise OracleSizeError(f"brute force limited to n <= {limit}, got {n}")


def _cycle_counts(f) -> tuple[int, int]:
    seen = [False] * len(f)
    kappa = 0
    for s in range(len(f)):
        if not seen[s]:
            kappa += 1
            i = s
            while not seen[i]:
                seen[i] = True
                i = f[i]
    loops = sum(1 for i, j in enumerate(f) if i == j)
    return kappa, loops


@dataclass(frozen=True)
class CycleCover:
    successor: tuple[int, ...]  # 0-indexed images
    kappa: int
    lam: int

    @classmethod
    def of(cls, successor) -> CycleCover:
        successor = tuple(successor)
        kappa, lam = _cycle_counts(successor)
        return cls(successor, kappa, lam)


def cycle_covers(G: Digraph):
    """All cycle covers of G with a loop added at every vertex."""
    _guard(G.n, MAX_ALGEBRAIC_N)
    allowed = G.arcs
    for f in itertools.permutations(range(G.n)):
        if all(u == v or (u + 1, v + 1) in allowed for u, v in enumerate(f)):
            yield CycleCover.of(f)


def brute_per_det_e(ctx: RingCtx, M) -> tuple[RingElem, RingElem]:
    """Leibniz sums: (per M, det M)."""
    n = len(M)
    _guard(n, MAX_ALGEBRAIC_N)
    per = det = ctx.zero
    for f in itertools.permutations(range(n)):
        t = ctx.one
        for i in range(n):
            t = ctx.mul(t, M[i][f[i]])
        per = ctx.add(per, t)
        det = ctx.add(det, t) if permutation_sign(f) > 0 else ctx.sub(det, t)
    return per, det


def brute_per_f(ctx: FieldCtx, A) -> int:
    n = len(A)
    _guard(n, MAX_ALGEBRAIC_N)
    total = 0
    for f in itertools.permutations(range(n)):
        t = 1
        for i in range(n):
            t = ctx.mul(t, A[i][f[i]])
        total ^= t
    return total


def brute_pcc(ctx: FieldCtx, A, m: int) -> int:
    """Sum over permutations with cycle count congruent to m (mod 2) of the
    product of matrix entries; zero entries mark missing arcs."""
    n = len(A)
    _guard(n, MAX_ALGEBRAIC_N)
    total = 0
    for f in itertools.permutations(range(n)):
        if (_cycle_counts(f)[0] - m) % 2:
            continue
        t = 1
        for i in range(n):
            t = ctx.mul(t, A[i][f[i]])
            if not t:
                break
        total ^= t
    return total


def brute_shortest_even_cycle(G: Digraph, max_n: int = MAX_GRAPH_N) -> int | None:
    """Minimum even length over all simple directed cycles, by DFS from the
    smallest vertex of each cycle."""
    _guard(G.n, max_n)
    succ = {u: [] for u in range(1, G.n + 1)}
    for u, v in G.sorted_arcs():
        succ[u].append(v)
    best = None

    def dfs(start, u, depth, on_path):
        nonlocal best
        for v in succ[u]:
            if v == start:
                length = depth + 1
                if length % 2 == 0 and (best is None or length < best):
                    best = length
            elif v > start and v not in on_path:
                # an even cycle longer than best cannot improve it; a longer
                # odd prefix still can, so only prune past best - 1
                if best is not None and depth + 2 >= best:
                    continue
                on_path.add(v)
                dfs(start, v, depth + 1, on_path)
                on_path.remove(v)

    for s in range(1, G.n + 1):
        dfs(s, s, 0, {s})
    return best


def pit_nonzero_fraction(ctx: FieldCtx, poly: dict, trials: int, rng: random.Random) -> float:
    """Fraction of uniform random points where ``poly`` is nonzero.

    ``poly`` maps frozensets of variable indices (squarefree monomials) to
    nonzero field coefficients.
    """
    poly = {frozenset(m): c for m, c in poly.items() if c}
    if not poly:
        raise ValueError("the zero polynomial is not a valid identity-test input")
    nvars = 1 + max((v for m in poly for v in m), default=-1)
    hits = 0
    for _ in range(trials):
        point = [rng.getrandbits(ctx.d) for _ in range(nvars)]
        value = 0
        for mono, c in poly.items():
            t = c
            for v in mono:
                t = ctx.mul(t, point[v])
            value ^= t
        hits += value != 0
    return hits / trials


def dlsz_bound(delta: int, d: int) -> float:
    return (1.0 - 2.0**-d) ** delta


def dlsz_statistic(delta: int, d: int, trials: int, seed: int = 0) -> float:
    """Empirical nonzero rate of w_0 * w_1 * ... * w_{delta-1} over GF(2^d).

    A single product of distinct variables attains the squarefree identity
    testing bound with equality, so it is the sharpest built-in test case.
    """
    if delta < 0:
        raise ValueError("degree must be non-negative")
    rng = random.Random(seed)
    ctx = make_field(d, rng)
    return pit_nonzero_fraction(ctx, {frozenset(range(delta)): 1}, trials, rng)
