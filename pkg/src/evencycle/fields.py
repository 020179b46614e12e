"""Arithmetic in GF(2^d) = Z_2[x]/<g2>.

Binary polynomials are plain Python ints: bit i holds the coefficient of x^i,
and 0 is the zero polynomial. A field element is the int of its reduced
representative, so every element lies in range(2**d).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

__all__ = [
    "FieldCtx",
    "make_field",
    "is_irreducible",
    "field_arith",
    "random_field_elem",
    "poly_deg",
    "poly_mul",
    "poly_mod",
    "poly_mulmod",
    "poly_gcd",
]


def poly_deg(p: int) -> int:
    """Degree of a binary polynomial; -1 for the zero polynomial."""
    return p.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    """Carryless product of two binary polynomials."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    if not m:
        raise ZeroDivisionError("polynomial division by zero")
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def poly_divmod(a: int, m: int) -> tuple[int, int]:
    if not m:
        raise ZeroDivisionError("polynomial division by zero")
    dm = m.bit_length()
    q = 0
    while a.bit_length() >= dm:
        s = a.bit_length() - dm
        q |= 1 << s
        a ^= m << s
    return q, a


def poly_mulmod(a: int, b: int, m: int) -> int:
    return poly_mod(poly_mul(a, b), m)


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _frobenius(k: int, m: int) -> int:
    """x^(2^k) mod m, by k repeated squarings."""
    r = poly_mod(0b10, m)
    for _ in range(k):
        r = poly_mulmod(r, r, m)
    return r


def is_irreducible(p: int) -> bool:
    """Rabin's irreducibility test over Z_2.

    ``p`` is irreducible of degree d iff x^(2^d) = x (mod p) and
    gcd(x^(2^(d/q)) - x, p) = 1 for every prime q dividing d.
    """
    if p <= 1:
        raise ValueError("irreducibility test needs a polynomial of degree >= 1")
    d = poly_deg(p)
    x = poly_mod(0b10, p)
    if _frobenius(d, p) != x:
        return False
    for q in _prime_factors(d):
        h = _frobenius(d // q, p) ^ x
        if poly_gcd(p, h) != 1:
            return False
    return True


@dataclass(frozen=True)
class FieldCtx:
    """The field GF(2^d) defined by an irreducible ``g2`` of degree ``d``."""

    d: int
    g2: int
    order: int = field(init=False, repr=False)

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"field degree must be >= 1, got {self.d}")
        if poly_deg(self.g2) != self.d:
            raise ValueError(f"g2={self.g2:#x} does not have degree {self.d}")
        if not is_irreducible(self.g2):
            raise ValueError(f"g2={self.g2:#x} is reducible over Z_2")
        object.__setattr__(self, "order", 1 << self.d)

    zero = 0
    one = 1

    def element(self, k: int) -> int:
        """The element whose coefficient bits are the binary digits of ``k``."""
        if not 0 <= k < self.order:
            raise ValueError(f"{k} does not encode an element of GF(2^{self.d})")
        return k

    def add(self, a: int, b: int) -> int:
        return a ^ b

    sub = add

    def mul(self, a: int, b: int) -> int:
        g, d = self.g2, self.d
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> d:
                a ^= g
        return r

    def inv(self, a: int) -> int:
        """Multiplicative inverse by the extended Euclidean algorithm."""
        if not a:
            raise ZeroDivisionError("inverse of zero in GF(2^d)")
        r0, r1 = self.g2, a
        s0, s1 = 0, 1
        while r1:
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 ^ poly_mul(q, s1)
        # r0 is the gcd, which is 1 since g2 is irreducible
        return poly_mod(s0, self.g2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def random(self, rng: random.Random) -> int:
        return random_field_elem(rng, self)


def make_field(d: int, rng: random.Random) -> FieldCtx:
    """Draw random monic degree-``d`` polynomials until one is irreducible."""
    if d < 1:
        raise ValueError(f"field degree must be >= 1, got {d}")
    for _ in range(64 * d):
        cand = (1 << d) | rng.getrandbits(d)
        if is_irreducible(cand):
            return FieldCtx(d, cand)
    raise RuntimeError(
        f"no irreducible polynomial of degree {d} found in {64 * d} draws; "
        "the random stream is likely broken"
    )


def field_arith(op: str, a: int, b: int | None, ctx: FieldCtx) -> int:
    if op == "add":
        return ctx.add(a, b)
    if op == "mul":
        return ctx.mul(a, b)
    if op == "inv":
        return ctx.inv(a)
    raise ValueError(f"unknown field operation {op!r}")


def random_field_elem(rng: random.Random, ctx: FieldCtx) -> int:
    return rng.getrandbits(ctx.d)
