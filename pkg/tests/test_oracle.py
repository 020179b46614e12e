import random

import pytest

from conftest import ring_of_degree
from evencycle.cycles import Digraph
from evencycle.oracle import (
    CycleCover,
    OracleSizeError,
    brute_pcc,
    brute_per_det_e,
    brute_shortest_even_cycle,
    dlsz_bound,
    dlsz_statistic,
    pit_nonzero_fraction,
)
from evencycle.selftest import random_digraph


def test_leibniz_examples(e4):
    I = [[e4.one, e4.zero], [e4.zero, e4.one]]
    assert brute_per_det_e(e4, I) == (e4.one, e4.one)
    ones = [[e4.one] * 2 for _ in range(2)]
    assert brute_per_det_e(e4, ones) == (e4.from_coeffs([2]), e4.zero)
    M = [[e4.one, e4.one], [e4.from_coeffs([2])] * 2]
    assert brute_per_det_e(e4, M) == (e4.zero, e4.zero)


def test_size_guards(e4):
    with pytest.raises(OracleSizeError):
        brute_per_det_e(e4, [[e4.one] * 9 for _ in range(9)])
    with pytest.raises(OracleSizeError):
        brute_shortest_even_cycle(Digraph(11))
    assert brute_shortest_even_cycle(Digraph(12), max_n=12) is None


def test_cycle_cover_counts():
    cc = CycleCover.of((1, 0, 2, 4, 3))
    assert (cc.kappa, cc.lam) == (3, 1)


def test_triangle_pcc():
    ring = ring_of_degree(8)
    A = [[3, 5, 0], [0, 7, 9], [11, 0, 13]]
    assert brute_pcc(ring.field, A, 2) == 0


def test_double_triangle_has_no_even_cycle():
    # two directed triangles sharing vertex 1: a closed even walk of length 6
    # exists, but no even simple cycle
    G = Digraph(5, frozenset({(1, 2), (2, 3), (3, 1), (1, 4), (4, 5), (5, 1)}))
    assert brute_shortest_even_cycle(G) is None


def test_even_cycle_lengths():
    c6 = Digraph(6, frozenset((i, i % 6 + 1) for i in range(1, 7)))
    assert brute_shortest_even_cycle(c6) == 6
    with_chord = Digraph(6, c6.arcs | {(4, 1)})
    assert brute_shortest_even_cycle(with_chord) == 4


def test_relabel_invariance():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(2, 8)
        G = random_digraph(rng, n, 0.3)
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        assert brute_shortest_even_cycle(G.relabel(perm)) == brute_shortest_even_cycle(G)


def test_dlsz_constant():
    assert dlsz_statistic(0, 8, 100) == 1.0


def test_dlsz_degree_five():
    assert dlsz_statistic(5, 8, 10_000, seed=1) >= dlsz_bound(5, 8) - 0.02


def test_zero_polynomial_rejected():
    ring = ring_of_degree(8)
    with pytest.raises(ValueError):
        pit_nonzero_fraction(ring.field, {}, 10, random.Random(0))
    with pytest.raises(ValueError):
        pit_nonzero_fraction(ring.field, {frozenset({0}): 0}, 10, random.Random(0))
