"""Dense linear algebra over GF(2^d).

Matrices are lists of rows of field ints. Univariate polynomials (``PolyF``)
are coefficient lists, lowest degree first.
"""

from __future__ import annotations

from dataclasses import dataclass

from evencycle import _backend
from evencycle.fields import FieldCtx

__all__ = [
    "det_f",
    "det_f_python",
    "PolyMatrixF",
    "poly_eval",
    "poly_trim",
    "poly_degree",
    "lagrange_interpolate",
    "det_poly",
]

PolyF = list[int]


def poly_trim(p: PolyF) -> PolyF:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def poly_degree(p: PolyF) -> int:
    return len(poly_trim(p)) - 1


def poly_eval(ctx: FieldCtx, p: PolyF, x: int) -> int:
    mul = ctx.mul
    acc = 0
    for c in reversed(p):
        acc = mul(acc, x) ^ c
    return acc


def det_f_python(ctx: FieldCtx, A) -> int:
    """Determinant by Gaussian elimination (pivot: first nonzero, top-down)."""
    n = len(A)
    M = [list(row) for row in A]
    mul = ctx.mul
    det = 1
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return 0
        if p != c:
            # a row swap flips the sign, which is invisible in characteristic 2
            M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        det = mul(det, piv)
        inv = ctx.inv(piv)
        prow = M[c]
        for r in range(c + 1, n):
            row = M[r]
            if row[c]:
                f = mul(row[c], inv)
                for k in range(c, n):
                    if prow[k]:
                        row[k] ^= mul(f, prow[k])
    return det


def det_f(ctx: FieldCtx, A) -> int:
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("determinant needs a square matrix")
    core = _backend.kernels(ctx.d)
    if core is not None:
        return core.det_f([x for row in A for x in row], n, ctx.d, ctx.g2)
    return det_f_python(ctx, A)


@dataclass
class PolyMatrixF:
    """Square matrix over GF(2^d)[r] whose entries have degree <= ``degree``."""

    field: FieldCtx
    entries: list[list[PolyF]]
    degree: int

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ValueError("polynomial matrix must be square")
        for row in self.entries:
            for p in row:
                if poly_degree(p) > self.degree:
                    raise ValueError(f"entry of degree {poly_degree(p)} exceeds bound {self.degree}")

    @property
    def n(self) -> int:
        return len(self.entries)

    def at(self, rho: int) -> list[list[int]]:
        ctx = self.field
        return [[poly_eval(ctx, p, rho) for p in row] for row in self.entries]


def lagrange_interpolate(ctx: FieldCtx, points) -> PolyF:
    """The unique polynomial of degree < len(points) through ``points``."""
    xs = [x for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation abscissae must be distinct")
    mul = ctx.mul
    m = len(points)
    # master polynomial prod (y - x_j); subtraction is xor
    master = [1]
    for x in xs:
        nxt = [0] * (len(master) + 1)
        for i, c in enumerate(master):
            nxt[i + 1] ^= c
            nxt[i] ^= mul(c, x)
        master = nxt
    out = [0] * m
    for l, (xl, yl) in enumerate(points):
        if not yl:
            continue
        # synthetic division of master by (y - x_l)
        basis = [0] * m
        carry = 0
        for i in range(m, 0, -1):
            carry = master[i] ^ mul(carry, xl)
            basis[i - 1] = carry
        denom = 1
        for j, xj in enumerate(xs):
            if j != l:
                denom = mul(denom, xl ^ xj)
        scale = mul(yl, ctx.inv(denom))
        for i in range(m):
            out[i] ^= mul(scale, basis[i])
    return out


def _bareiss(ctx: FieldCtx, B: list[list[PolyF]]) -> PolyF:
    """Fraction-free elimination over GF(2^d)[r]; used when the field is too
    small to supply enough evaluation points."""
    n = len(B)
    M = [[poly_trim(p) for p in row] for row in B]
    prev: PolyF = [1]
    for k in range(n - 1):
        p = next((r for r in range(k, n) if M[r][k]), None)
        if p is None:
            return []
        M[k], M[p] = M[p], M[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _padd(_pmul(ctx, M[i][j], M[k][k]), _pmul(ctx, M[i][k], M[k][j]))
                M[i][j] = _pexact_div(ctx, num, prev)
            M[i][k] = []
        prev = M[k][k]
    return poly_trim(M[n - 1][n - 1]) if n else [1]


def _padd(a: PolyF, b: PolyF) -> PolyF:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] ^= c
    return poly_trim(out)


def _pmul(ctx: FieldCtx, a: PolyF, b: PolyF) -> PolyF:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] ^= ctx.mul(x, y)
    return poly_trim(out)


def _pexact_div(ctx: FieldCtx, a: PolyF, b: PolyF) -> PolyF:
    a = poly_trim(a)
    b = poly_trim(b)
    if not a:
        return []
    lead_inv = ctx.inv(b[-1])
    q = [0] * (len(a) - len(b) + 1)
    for s in range(len(a) - len(b), -1, -1):
        c = ctx.mul(a[s + len(b) - 1], lead_inv)
        q[s] = c
        if c:
            for i, y in enumerate(b):
                a[s + i] ^= ctx.mul(c, y)
    if any(a):
        raise ArithmeticError("inexact polynomial division in fraction-free elimination")
    return poly_trim(q)


def det_poly(B: PolyMatrixF, D: int) -> PolyF:
    """det B for a polynomial matrix, exact as a coefficient list of length D+1.

    Evaluates at the D+1 field elements encoding 0..D, takes field
    determinants and interpolates. ``D`` must bound the degree of det B.
    """
    ctx = B.field
    if D < 0:
        raise ValueError("degree bound must be non-negative")
    if D + 1 > ctx.order:
        raise ValueError(f"GF(2^{ctx.d}) has fewer than {D + 1} distinct evaluation points")
    points = [(rho, det_f(ctx, B.at(rho))) for rho in range(D + 1)]
    return lagrange_interpolate(ctx, points)


def det_poly_any(B: PolyMatrixF, D: int) -> PolyF:
    """Like :func:`det_poly`, but falls back to fraction-free elimination over
    fields with fewer than D+1 elements."""
    if D + 1 <= B.field.order:
        return det_poly(B, D)
    out = _bareiss(B.field, B.entries)
    if len(out) > D + 1:
        raise ArithmeticError(f"determinant degree {len(out) - 1} exceeds bound {D}")
    return out + [0] * (D + 1 - len(out))
