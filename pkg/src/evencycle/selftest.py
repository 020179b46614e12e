"""Oracle-equivalence suites behind ``evencycle selftest``."""

from __future__ import annotations

import random
import sys

from evencycle import _backend
from evencycle.cycles import Digraph, shortest_even_cycle
from evencycle.enumerators import lifted, pcc_f
from evencycle.fields import make_field
from evencycle.linalg import det_f
from evencycle.oracle import brute_pcc, brute_per_det_e, brute_per_f, brute_shortest_even_cycle
from evencycle.perdet import per_det_e, per_similar
from evencycle.ring4 import RingCtx


def random_digraph(rng: random.Random, n: int, p: float) -> Digraph:
    arcs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v and rng.random() < p]
    return Digraph(n, frozenset(arcs))


def similar_matrix(ring: RingCtx, rng: random.Random, n: int):
    """Random matrix whose row i2 is tau times row i1; returns (M, i1, i2)."""
    M = [[ring.random(rng) for _ in range(n)] for _ in range(n)]
    i1, i2 = rng.sample(range(n), 2)
    tau = ring.random(rng)
    M[i2] = [ring.mul(tau, s) for s in M[i1]]
    return M, i1, i2


def _suites(seed: int, quick: bool):
    rng = random.Random(seed)
    scale = 1 if quick else 5
    rings = [RingCtx(make_field(d, rng)) for d in (1, 2, 8)]

    def det_f_leibniz():
        for _ in range(20 * scale):
            F = rings[2].field
            n = rng.randint(1, 5)
            A = [[F.random(rng) for _ in range(n)] for _ in range(n)]
            yield det_f(F, A) == brute_per_f(F, A)

    def per_det_leibniz():
        for ring in rings:
            for _ in range(10 * scale):
                n = rng.randint(1, 5)
                M = [[ring.random(rng) for _ in range(n)] for _ in range(n)]
                yield per_det_e(ring, M) == brute_per_det_e(ring, M)

    def similar_rows():
        for ring in rings:
            for _ in range(10 * scale):
                M, i1, i2 = similar_matrix(ring, rng, rng.randint(2, 5))
                yield per_similar(ring, M, i1, i2) == brute_per_det_e(ring, M)[0]

    def pcc_identity():
        ring = rings[2]
        F = ring.field
        for _ in range(20 * scale):
            n = rng.randint(1, 6)
            A = [[F.random(rng) if (i == j or rng.random() < 0.5) else 0 for j in range(n)] for i in range(n)]
            want = brute_pcc(F, A, n - 1)
            per, det = brute_per_det_e(ring, lifted(A))
            yield pcc_f(ring, A) == want and ring.sub(per, det) == ring.scale2(ring.lift(want))

    def shortest_vs_oracle():
        for _ in range(10 * scale):
            G = random_digraph(rng, rng.randint(2, 7), 0.3)
            yield shortest_even_cycle(G, rng.getrandbits(64), 16) == brute_shortest_even_cycle(G)

    def projection_homomorphism():
        for ring in rings:
            for _ in range(200 * scale):
                s, t = ring.random(rng), ring.random(rng)
                F = ring.field
                yield (ring.project(ring.add(s, t)) == F.add(ring.project(s), ring.project(t))
                       and ring.project(ring.mul(s, t)) == F.mul(ring.project(s), ring.project(t)))

    def backends_agree():
        if not _backend.compiled_available():
            return
        ring = rings[2]
        for _ in range(10 * scale):
            n = rng.randint(1, 6)
            M = [[ring.random(rng) for _ in range(n)] for _ in range(n)]
            with _backend.use_backend("python"):
                py = per_det_e(ring, M)
            with _backend.use_backend("auto"):
                yield per_det_e(ring, M) == py

    return {
        "det_f vs Leibniz": det_f_leibniz,
        "per/det over E(4^d) vs Leibniz": per_det_leibniz,
        "similar-row permanent vs Leibniz": similar_rows,
        "pcc and per-det identity vs enumeration": pcc_identity,
        "shortest even cycle vs DFS oracle": shortest_vs_oracle,
        "projection homomorphism": projection_homomorphism,
        "compiled vs python kernels": backends_agree,
    }


def run_selftest(seed: int, out=None, machine: bool = False, quick: bool = False) -> int:
    """Run every suite; returns the number of failed checks."""
    out = out or sys.stdout
    total_fail = 0
    if machine:
        print(f"seed={seed}", file=out)
        print(f"backend={_backend.active()}", file=out)
    else:
        print(f"# seed={seed} backend={_backend.active()}", file=out)
    for name, suite in _suites(seed, quick).items():
        results = list(suite())
        passed = sum(results)
        failed = len(results) - passed
        total_fail += failed
        if machine:
            key = name.replace(" ", "_").replace("/", "_")
            print(f"{key}.passed={passed}", file=out)
            print(f"{key}.failed={failed}", file=out)
        else:
            status = "PASS" if failed == 0 else "FAIL"
            print(f"{status} {name}: {passed} passed, {failed} failed", file=out)
    if machine:
        print(f"failures={total_fail}", file=out)
    else:
        print("SELFTEST OK" if total_fail == 0 else f"SELFTEST FAILED ({total_fail} mismatches)", file=out)
    return total_fail
