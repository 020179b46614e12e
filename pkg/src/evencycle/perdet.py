"""Permanent and determinant over E(4^d) by odd-elimination.

Both walk the same sequence of row operations. Every operation
``row i2 -= tau*row i1`` splits the permanent into the permanent of the
reduced matrix plus the permanent of the matrix in which row i2 is replaced
by ``tau*row i1``; the latter has a similar pair of rows and is evaluated
through a polynomial-matrix determinant over GF(2^d). For the determinant
that second branch always vanishes. Once no odd entry remains to eliminate,
only permutations with at most one even factor contribute, and those are
enumerated directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from evencycle import _backend
from evencycle.linalg import PolyMatrixF, det_poly_any, lagrange_interpolate
from evencycle.ring4 import RingCtx, RingElem

__all__ = [
    "InvariantError",
    "EliminationState",
    "per_e",
    "det_e",
    "per_det_e",
    "per_similar",
    "base_case_per",
    "base_case_det",
    "permutation_sign",
]


class InvariantError(RuntimeError):
    """The elimination bookkeeping no longer matches the matrix."""


def permutation_sign(f) -> int:
    """+1 or -1 for a permutation given as a sequence of images."""
    seen = [False] * len(f)
    sign = 1
    for start in range(len(f)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = f[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass
class EliminationState:
    ctx: RingCtx
    matrix: list[list[RingElem]]
    marked_rows: set[int] = field(default_factory=set)
    marked_cols: set[int] = field(default_factory=set)
    # marked column -> the row holding its unique odd entry
    designated: dict[int, int] = field(default_factory=dict)
    debug: bool = False

    @classmethod
    def start(cls, ctx: RingCtx, M, debug: bool = False) -> EliminationState:
        n = len(M)
        if any(len(row) != n for row in M):
            raise ValueError("matrix must be square")
        return cls(ctx, [list(row) for row in M], debug=debug)

    @property
    def n(self) -> int:
        return len(self.matrix)

    def next_pivot(self) -> tuple[int, int] | None:
        """Smallest unmarked column with an odd entry in an unmarked row,
        then the smallest such row."""
        W = self.matrix
        rows = [i for i in range(self.n) if i not in self.marked_rows]
        for j in range(self.n):
            if j in self.marked_cols:
                continue
            for i in rows:
                if W[i][j][0]:
                    return i, j
        return None

    def row_op(self, i1: int, i2: int, tau: RingElem) -> None:
        """Row i2 -= tau * row i1."""
        mul, sub = self.ctx.mul, self.ctx.sub
        src = self.matrix[i1]
        dst = self.matrix[i2]
        for k, s in enumerate(src):
            if s != (0, 0):
                dst[k] = sub(dst[k], mul(tau, s))
        if self.debug:
            self.check()

    def similar_branch(self, i1: int, i2: int, tau: RingElem) -> list[list[RingElem]]:
        """Copy of the matrix with row i2 replaced by tau * row i1."""
        mul = self.ctx.mul
        out = [list(row) for row in self.matrix]
        out[i2] = [mul(tau, s) for s in self.matrix[i1]]
        return out

    def mark(self, i: int, j: int) -> None:
        self.marked_rows.add(i)
        self.marked_cols.add(j)
        self.designated[j] = i
        if self.debug:
            self.check()

    def check(self) -> None:
        W = self.matrix
        if len(self.marked_rows) != len(self.marked_cols):
            raise InvariantError("marked row and column counts differ")
        for j, i in self.designated.items():
            odd = [r for r in range(self.n) if W[r][j][0]]
            if odd != [i]:
                raise InvariantError(f"marked column {j} has odd entries in rows {odd}, expected [{i}]")
        for i in self.marked_rows:
            odd = [j for j in self.marked_cols if W[i][j][0]]
            if len(odd) != 1:
                raise InvariantError(f"marked row {i} has {len(odd)} odd entries among marked columns")


def _eliminate(state: EliminationState, on_branch=None) -> EliminationState:
    ctx = state.ctx
    W = state.matrix
    while (pivot := state.next_pivot()) is not None:
        i1, j = pivot
        sigma = W[i1][j]
        for i2 in range(state.n):
            if i2 == i1 or not W[i2][j][0]:
                continue
            tau = ctx.elim_coeff(sigma, W[i2][j])
            if on_branch is not None:
                on_branch(state, i1, i2, tau)
            state.row_op(i1, i2, tau)
        state.mark(i1, j)
    return state


def _terminal_terms(state: EliminationState):
    """Yield (sign, monomial) for each permutation of the terminal matrix with
    at most one even factor."""
    state.check()
    ctx = state.ctx
    W = state.matrix
    n = state.n
    unmarked = [i for i in range(n) if i not in state.marked_rows]
    for i in unmarked:
        if any(s[0] for s in W[i]):
            raise InvariantError(f"unmarked row {i} still has an odd entry")
    if len(unmarked) >= 2:
        return
    col_of = {i: j for j, i in state.designated.items()}
    f = [0] * n
    for i, j in col_of.items():
        f[i] = j

    def product(skip=None):
        acc = ctx.one
        for i, j in col_of.items():
            if i != skip:
                acc = ctx.mul(acc, W[i][j])
        return acc

    if not unmarked:
        yield permutation_sign(f), product()
        return
    (i0,) = unmarked
    (j0,) = [j for j in range(n) if j not in state.marked_cols]
    f[i0] = j0
    main_sign = permutation_sign(f)
    yield main_sign, ctx.mul(product(), W[i0][j0])
    for i, j in col_of.items():
        if W[i][j0][0]:
            term = ctx.mul(ctx.mul(W[i][j0], W[i0][j]), product(skip=i))
            yield -main_sign, term


def base_case_per(state: EliminationState) -> RingElem:
    ctx = state.ctx
    acc = ctx.zero
    for _, term in _terminal_terms(state):
        acc = ctx.add(acc, term)
    return acc


def base_case_det(state: EliminationState) -> RingElem:
    ctx = state.ctx
    acc = ctx.zero
    for sign, term in _terminal_terms(state):
        acc = ctx.add(acc, term) if sign > 0 else ctx.sub(acc, term)
    return acc


def per_similar(ctx: RingCtx, M, i1: int, i2: int) -> RingElem:
    """Permanent of a matrix whose row i2 is a ring multiple of row i1.

    Paired permutations (swap the images of i1 and i2) contribute equal
    monomials, so the permanent is twice a half-sum. The half-sum is read off
    as the low r-coefficients of det B over GF(2^d)[r], where B is the
    projection with row i1 scaled by (1, r, ..., r^(n-1)) and row i2 by
    (r^(n-1), ..., 1).
    """
    n = len(M)
    if i1 == i2:
        raise ValueError("similar rows must be distinct")
    entries = []
    for i, row in enumerate(M):
        proj = [s[0] for s in row]
        if i == i1:
            entries.append([[0] * j + [a] for j, a in enumerate(proj)])
        elif i == i2:
            entries.append([[0] * (n - 1 - j) + [a] for j, a in enumerate(proj)])
        else:
            entries.append([[a] for a in proj])
    B = PolyMatrixF(ctx.field, entries, degree=n - 1)
    det = det_poly_any(B, 2 * n - 2)
    half = 0
    for c in det[: n - 1]:
        half ^= c
    return ctx.scale2(ctx.lift(half))


def _python_per_det(ctx: RingCtx, M, want_per: bool, want_det: bool, debug: bool):
    acc = [ctx.zero]

    def branch(state, i1, i2, tau):
        acc[0] = ctx.add(acc[0], per_similar(ctx, state.similar_branch(i1, i2, tau), i1, i2))

    state = _eliminate(EliminationState.start(ctx, M, debug), branch if want_per else None)
    per = ctx.add(acc[0], base_case_per(state)) if want_per else None
    det = base_case_det(state) if want_det else None
    return per, det


@lru_cache(maxsize=256)
def _similar_weights(field, n: int) -> tuple[int, ...]:
    """w_k with sum_{l<=n-2} [r^l] q = sum_k w_k q(k) for deg q <= 2n-2."""
    m = 2 * n - 1
    out = []
    for k in range(m):
        basis = lagrange_interpolate(field, [(x, int(x == k)) for x in range(m)])
        s = 0
        for c in basis[: n - 1]:
            s ^= c
        out.append(s)
    return tuple(out)


def _compiled_per_det(core, ctx: RingCtx, M, want_per: bool, want_det: bool):
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    lo = [s[0] for row in M for s in row]
    hi = [s[1] for row in M for s in row]
    weights = list(_similar_weights(ctx.field, n)) if want_per else []
    try:
        plo, phi, dlo, dhi = core.per_det(lo, hi, n, ctx.d, ctx.field.g2, weights, want_per, want_det)
    except RuntimeError as exc:
        raise InvariantError(str(exc)) from exc
    return ((plo, phi) if want_per else None), ((dlo, dhi) if want_det else None)


def per_det_e(ctx: RingCtx, M, *, want_per: bool = True, want_det: bool = True, debug: bool = False):
    """(per M, det M) from one elimination walk; an unrequested value is None."""
    n = len(M)
    core = _backend.kernels(ctx.d)
    if core is not None and not debug and n >= 1 and 2 * n - 1 <= ctx.field.order:
        return _compiled_per_det(core, ctx, M, want_per, want_det)
    return _python_per_det(ctx, M, want_per, want_det, debug)


def per_e(ctx: RingCtx, M, debug: bool = False) -> RingElem:
    return per_det_e(ctx, M, want_det=False, debug=debug)[0]


def det_e(ctx: RingCtx, M, debug: bool = False) -> RingElem:
    return per_det_e(ctx, M, want_per=False, debug=debug)[1]
