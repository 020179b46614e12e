"""Parity cycle cover enumeration over GF(2^d) through E(4^d).

Over any ring, per A - det A = 2 * pcc_{n-1} A, where pcc_{n-1} sums the
weights of cycle covers whose cycle count has the parity of n-1. Computing
the right-hand side on the entrywise lift and halving recovers pcc_{n-1}
over GF(2^d).
"""

from __future__ import annotations

from evencycle.perdet import per_det_e
from evencycle.ring4 import RingCtx

__all__ = ["pcc_f", "lifted"]


def lifted(A) -> list[list[tuple[int, int]]]:
    return [[(a, 0) for a in row] for row in A]


def pcc_f(ring: RingCtx, A) -> int:
    """pcc_{n-1} of a weighted adjacency matrix over ``ring.field``.

    Raises :class:`~evencycle.ring4.UnliftError` if per - det has an odd
    coefficient, which can only come from a bug.
    """
    per, det = per_det_e(ring, lifted(A))
    return ring.unlift2(ring.sub(per, det))
