"""The characteristic-4 ring E(4^d) = Z_4[x]/<g4> and its bridge to GF(2^d).

An element is a pair of bit planes ``(lo, hi)``: coefficient i of the
polynomial representative is ``bit_i(lo) + 2*bit_i(hi)`` in Z_4. With this
layout the projection to GF(2^d) is just ``lo``, lifting is ``(a, 0)``,
and ``2*lift(a)`` is ``(0, a)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from evencycle.fields import FieldCtx

__all__ = ["RingCtx", "RingElem", "UnliftError", "ring_arith"]

RingElem = tuple[int, int]


class UnliftError(ArithmeticError):
    """An element expected to be twice a lift had an odd coefficient."""


def _add(s: RingElem, t: RingElem) -> RingElem:
    return s[0] ^ t[0], s[1] ^ t[1] ^ (s[0] & t[0])


def _sub(s: RingElem, t: RingElem) -> RingElem:
    return s[0] ^ t[0], s[1] ^ t[1] ^ (t[0] & ~s[0])


@dataclass(frozen=True)
class RingCtx:
    """E(4^d) paired with ``field``; g4 is the lift of ``field.g2``."""

    field: FieldCtx

    zero = (0, 0)
    one = (1, 0)

    @property
    def d(self) -> int:
        return self.field.d

    @property
    def g4(self) -> RingElem:
        # x^d + lower terms, all coefficients in {0, 1}
        return (self.field.g2, 0)

    def from_coeffs(self, coeffs) -> RingElem:
        """Element from Z_4 coefficients, lowest degree first."""
        coeffs = list(coeffs)
        if len(coeffs) > self.d:
            raise ValueError(f"{len(coeffs)} coefficients exceed degree bound {self.d}")
        lo = hi = 0
        for i, c in enumerate(coeffs):
            c %= 4
            lo |= (c & 1) << i
            hi |= (c >> 1) << i
        return lo, hi

    def coeffs(self, s: RingElem) -> list[int]:
        lo, hi = s
        return [((lo >> i) & 1) | (((hi >> i) & 1) << 1) for i in range(self.d)]

    add = staticmethod(_add)
    sub = staticmethod(_sub)

    @staticmethod
    def neg(s: RingElem) -> RingElem:
        return s[0], s[1] ^ s[0]

    def mul(self, s: RingElem, t: RingElem) -> RingElem:
        alo, ahi = s
        blo, bhi = t
        lo = hi = 0
        i = 0
        while blo or bhi:
            if blo & 1:
                xl, xh = alo << i, ahi << i
                hi ^= xh ^ (lo & xl)
                lo ^= xl
            if bhi & 1:
                hi ^= alo << i
            blo >>= 1
            bhi >>= 1
            i += 1
        return self._reduce(lo, hi)

    def _reduce(self, lo: int, hi: int) -> RingElem:
        g, d = self.field.g2, self.d
        top = max(lo.bit_length(), hi.bit_length()) - 1
        for k in range(top, d - 1, -1):
            bl = (lo >> k) & 1
            bh = (hi >> k) & 1
            if not (bl or bh):
                continue
            shifted = g << (k - d)
            tl = shifted if bl else 0
            th = shifted if bh else 0
            hi ^= th ^ (tl & ~lo)
            lo ^= tl
        return lo, hi

    def scale2(self, s: RingElem) -> RingElem:
        """2*s, which equals 2*lift(project(s))."""
        return 0, s[0]

    def lift(self, a: int) -> RingElem:
        return a, 0

    @staticmethod
    def project(s: RingElem) -> int:
        return s[0]

    @staticmethod
    def is_odd(s: RingElem) -> bool:
        return s[0] != 0

    def elim_coeff(self, sigma: RingElem, upsilon: RingElem) -> RingElem:
        """tau with upsilon - sigma*tau even, for odd ``sigma``."""
        if not sigma[0]:
            raise ValueError("elimination pivot must be odd")
        return self.mul((self.field.inv(sigma[0]), 0), upsilon)

    @staticmethod
    def unlift2(s: RingElem) -> int:
        """The field element alpha with 2*lift(alpha) = s."""
        if s[0]:
            raise UnliftError(f"element has odd coefficients (low plane {s[0]:#x})")
        return s[1]

    def random(self, rng: random.Random) -> RingElem:
        return rng.getrandbits(self.d), rng.getrandbits(self.d)

    def random_even(self, rng: random.Random) -> RingElem:
        return 0, rng.getrandbits(self.d)

    def format(self, s: RingElem) -> str:
        """Z_4 digits, highest degree first."""
        return "".join(str(c) for c in reversed(self.coeffs(s)))

    def parse(self, text: str) -> RingElem:
        if not text or any(ch not in "0123" for ch in text):
            raise ValueError(f"not a Z_4 coefficient string: {text!r}")
        digits = [int(ch) for ch in reversed(text.lstrip("0") or "0")]
        return self.from_coeffs(digits)


def ring_arith(op: str, s: RingElem, t: RingElem, ctx: RingCtx) -> RingElem:
    if op == "add":
        return ctx.add(s, t)
    if op == "sub":
        return ctx.sub(s, t)
    if op == "mul":
        return ctx.mul(s, t)
    raise ValueError(f"unknown ring operation {op!r}")
