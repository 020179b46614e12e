# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: GF(2^d) determinants and the fused permanent/determinant
elimination over E(4^d), for d <= 64.

Field elements are uint64 words; ring elements are (lo, hi) bit-plane pairs.
Products go through unsigned __int128 before reduction.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

cdef extern from *:
    """
    typedef unsigned __int128 ec_u128;

    static inline uint64_t ec_gf_mul(uint64_t a, uint64_t b, uint64_t glow, int d) {
        ec_u128 p = 0, aa = a;
        while (b) {
            if (b & 1) p ^= aa;
            aa <<= 1;
            b >>= 1;
        }
        ec_u128 g = (((ec_u128)1) << d) | glow;
        for (int i = 2 * d - 2; i >= d; --i)
            if ((p >> i) & 1) p ^= g << (i - d);
        return (uint64_t)p;
    }

    static inline uint64_t ec_gf_inv(uint64_t a, uint64_t glow, int d) {
        /* a^(2^d - 2) */
        uint64_t r = 1, sq = a;
        for (int i = 1; i < d; ++i) {
            sq = ec_gf_mul(sq, sq, glow, d);
            r = ec_gf_mul(r, sq, glow, d);
        }
        return r;
    }

    static inline void ec_z4_mul(uint64_t alo, uint64_t ahi, uint64_t blo, uint64_t bhi,
                                 uint64_t glow, int d, uint64_t *rlo, uint64_t *rhi) {
        ec_u128 lo = 0, hi = 0, Alo = alo, Ahi = ahi;
        for (int i = 0; i < d; ++i) {
            if ((blo >> i) & 1) {
                ec_u128 xl = Alo << i, xh = Ahi << i;
                hi ^= xh ^ (lo & xl);
                lo ^= xl;
            }
            if ((bhi >> i) & 1) hi ^= Alo << i;
        }
        ec_u128 g = (((ec_u128)1) << d) | glow;
        for (int k = 2 * d - 2; k >= d; --k) {
            int bl = (int)((lo >> k) & 1), bh = (int)((hi >> k) & 1);
            if (!(bl | bh)) continue;
            ec_u128 G = g << (k - d);
            ec_u128 tl = bl ? G : 0, th = bh ? G : 0;
            hi ^= th ^ (tl & ~lo);
            lo ^= tl;
        }
        *rlo = (uint64_t)lo;
        *rhi = (uint64_t)hi;
    }
    """
    uint64_t ec_gf_mul(uint64_t a, uint64_t b, uint64_t glow, int d) nogil
    uint64_t ec_gf_inv(uint64_t a, uint64_t glow, int d) nogil
    void ec_z4_mul(uint64_t alo, uint64_t ahi, uint64_t blo, uint64_t bhi,
                   uint64_t glow, int d, uint64_t *rlo, uint64_t *rhi) nogil


cdef uint64_t _glow(int d, object g2) except? 0:
    if d < 1 or d > 64:
        raise ValueError("compiled kernels support 1 <= d <= 64")
    return <uint64_t>(g2 ^ ((<object>1) << d))


cdef uint64_t _det_inplace(uint64_t *M, int n, uint64_t glow, int d) noexcept nogil:
    cdef int c, r, k, p
    cdef uint64_t det = 1, piv, inv, f, t
    for c in range(n):
        p = -1
        for r in range(c, n):
            if M[r * n + c]:
                p = r
                break
        if p < 0:
            return 0
        if p != c:
            for k in range(n):
                t = M[c * n + k]
                M[c * n + k] = M[p * n + k]
                M[p * n + k] = t
        piv = M[c * n + c]
        det = ec_gf_mul(det, piv, glow, d)
        inv = ec_gf_inv(piv, glow, d)
        for r in range(c + 1, n):
            if M[r * n + c]:
                f = ec_gf_mul(M[r * n + c], inv, glow, d)
                for k in range(c, n):
                    if M[c * n + k]:
                        M[r * n + k] ^= ec_gf_mul(f, M[c * n + k], glow, d)
    return det


def gf_mul(a, b, int d, g2):
    return ec_gf_mul(<uint64_t>a, <uint64_t>b, _glow(d, g2), d)


def z4_mul(s, t, int d, g2):
    cdef uint64_t rlo, rhi
    ec_z4_mul(<uint64_t>s[0], <uint64_t>s[1], <uint64_t>t[0], <uint64_t>t[1], _glow(d, g2), d, &rlo, &rhi)
    return rlo, rhi


def det_f(list entries, int n, int d, g2):
    """Determinant of a row-major n*n matrix over GF(2^d)."""
    cdef uint64_t glow = _glow(d, g2)
    cdef uint64_t *M = <uint64_t *> malloc(max(n * n, 1) * sizeof(uint64_t))
    cdef int i
    cdef uint64_t out
    if M == NULL:
        raise MemoryError()
    try:
        for i in range(n * n):
            M[i] = <uint64_t>entries[i]
        with nogil:
            out = _det_inplace(M, n, glow, d)
        return out
    finally:
        free(M)


cdef inline void _add(uint64_t *lo, uint64_t *hi, uint64_t blo, uint64_t bhi) noexcept nogil:
    hi[0] ^= bhi ^ (lo[0] & blo)
    lo[0] ^= blo


cdef inline void _sub(uint64_t *lo, uint64_t *hi, uint64_t blo, uint64_t bhi) noexcept nogil:
    hi[0] ^= bhi ^ (blo & ~lo[0])
    lo[0] ^= blo


cdef int _sign(int *f, int n, char *seen) noexcept nogil:
    cdef int s = 1, start, i, length
    for i in range(n):
        seen[i] = 0
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = 1
            i = f[i]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


cdef uint64_t _similar_half(uint64_t *lo, int n, int i1, int i2, uint64_t ptau,
                            uint64_t *powers, uint64_t *weights,
                            uint64_t *P, uint64_t *B, uint64_t glow, int d) noexcept nogil:
    """Half-sum for the branch with row i2 := tau * row i1, from the projected
    matrix evaluated at the points 0..2n-2 and the precomputed weights."""
    cdef int i, j, k, m = 2 * n - 1
    cdef uint64_t acc = 0, det
    for i in range(n):
        for j in range(n):
            P[i * n + j] = lo[i * n + j]
    for j in range(n):
        P[i2 * n + j] = ec_gf_mul(ptau, lo[i1 * n + j], glow, d)
    for k in range(m):
        if not weights[k]:
            continue
        memcpy(B, P, n * n * sizeof(uint64_t))
        for j in range(n):
            B[i1 * n + j] = ec_gf_mul(P[i1 * n + j], powers[k * n + j], glow, d)
            B[i2 * n + j] = ec_gf_mul(P[i2 * n + j], powers[k * n + (n - 1 - j)], glow, d)
        det = _det_inplace(B, n, glow, d)
        if det:
            acc ^= ec_gf_mul(weights[k], det, glow, d)
    return acc


def per_det(list lo_in, list hi_in, int n, int d, g2, list weights_in, bint want_per, bint want_det):
    """Fused elimination; returns (per_lo, per_hi, det_lo, det_hi)."""
    cdef uint64_t glow = _glow(d, g2)
    cdef int m = 2 * n - 1
    cdef size_t nn = n * n
    if n < 1:
        raise ValueError("matrix must be non-empty")
    if want_per and len(weights_in) != m:
        raise ValueError("need 2n-1 interpolation weights")

    cdef uint64_t *lo = <uint64_t *> malloc(nn * sizeof(uint64_t))
    cdef uint64_t *hi = <uint64_t *> malloc(nn * sizeof(uint64_t))
    cdef uint64_t *P = <uint64_t *> malloc(nn * sizeof(uint64_t))
    cdef uint64_t *B = <uint64_t *> malloc(nn * sizeof(uint64_t))
    cdef uint64_t *powers = <uint64_t *> malloc(m * n * sizeof(uint64_t))
    cdef uint64_t *weights = <uint64_t *> malloc(m * sizeof(uint64_t))
    cdef char *row_marked = <char *> malloc(n)
    cdef char *col_marked = <char *> malloc(n)
    cdef char *seen = <char *> malloc(n)
    cdef int *col_of = <int *> malloc(n * sizeof(int))
    cdef int *f = <int *> malloc(n * sizeof(int))

    cdef int i, j, k, i1, i2, jp, u, i0, j0, err = 0, sgn
    cdef uint64_t per_lo = 0, per_hi = 0, det_lo = 0, det_hi = 0
    cdef uint64_t inv, tlo, thi, plo, phi, half, x
    cdef uint64_t prod_lo, prod_hi, term_lo, term_hi

    try:
        if not (lo and hi and P and B and powers and weights and row_marked
                and col_marked and seen and col_of and f):
            raise MemoryError()
        for i in range(<int>nn):
            lo[i] = <uint64_t>lo_in[i]
            hi[i] = <uint64_t>hi_in[i]
        if want_per:
            for k in range(m):
                weights[k] = <uint64_t>weights_in[k]
        with nogil:
            for k in range(m):
                x = 1
                for j in range(n):
                    powers[k * n + j] = x
                    x = ec_gf_mul(x, <uint64_t>k, glow, d)
            for i in range(n):
                row_marked[i] = 0
                col_marked[i] = 0
                col_of[i] = -1

            while True:
                i1 = -1
                jp = -1
                for j in range(n):
                    if col_marked[j]:
                        continue
                    for i in range(n):
                        if not row_marked[i] and lo[i * n + j]:
                            i1 = i
                            break
                    if i1 >= 0:
                        jp = j
                        break
                if i1 < 0:
                    break
                inv = ec_gf_inv(lo[i1 * n + jp], glow, d)
                for i2 in range(n):
                    if i2 == i1 or not lo[i2 * n + jp]:
                        continue
                    ec_z4_mul(inv, 0, lo[i2 * n + jp], hi[i2 * n + jp], glow, d, &tlo, &thi)
                    if want_per:
                        half = _similar_half(lo, n, i1, i2, tlo, powers, weights, P, B, glow, d)
                        _add(&per_lo, &per_hi, 0, half)
                    for k in range(n):
                        if lo[i1 * n + k] or hi[i1 * n + k]:
                            ec_z4_mul(tlo, thi, lo[i1 * n + k], hi[i1 * n + k], glow, d, &plo, &phi)
                            _sub(&lo[i2 * n + k], &hi[i2 * n + k], plo, phi)
                row_marked[i1] = 1
                col_marked[jp] = 1
                col_of[i1] = jp

            # terminal matrix: unmarked rows must be all even, marked columns
            # must hold exactly one odd entry, at the designated row
            u = 0
            i0 = -1
            for i in range(n):
                if not row_marked[i]:
                    u += 1
                    i0 = i
                    for j in range(n):
                        if lo[i * n + j]:
                            err = 1
            for i in range(n):
                if row_marked[i]:
                    for k in range(n):
                        if lo[k * n + col_of[i]] and k != i:
                            err = 2

            if not err and u <= 1:
                j0 = -1
                for j in range(n):
                    if not col_marked[j]:
                        j0 = j
                for i in range(n):
                    f[i] = col_of[i] if row_marked[i] else j0
                sgn = _sign(f, n, seen)
                prod_lo = 1
                prod_hi = 0
                for i in range(n):
                    if row_marked[i]:
                        ec_z4_mul(prod_lo, prod_hi, lo[i * n + col_of[i]], hi[i * n + col_of[i]],
                                  glow, d, &prod_lo, &prod_hi)
                if u == 1:
                    ec_z4_mul(prod_lo, prod_hi, lo[i0 * n + j0], hi[i0 * n + j0], glow, d, &term_lo, &term_hi)
                else:
                    term_lo = prod_lo
                    term_hi = prod_hi
                _add(&per_lo, &per_hi, term_lo, term_hi)
                if sgn > 0:
                    _add(&det_lo, &det_hi, term_lo, term_hi)
                else:
                    _sub(&det_lo, &det_hi, term_lo, term_hi)
                if u == 1:
                    for i in range(n):
                        if not row_marked[i] or not lo[i * n + j0]:
                            continue
                        ec_z4_mul(lo[i * n + j0], hi[i * n + j0], lo[i0 * n + col_of[i]], hi[i0 * n + col_of[i]],
                                  glow, d, &term_lo, &term_hi)
                        for k in range(n):
                            if row_marked[k] and k != i:
                                ec_z4_mul(term_lo, term_hi, lo[k * n + col_of[k]], hi[k * n + col_of[k]],
                                          glow, d, &term_lo, &term_hi)
                        _add(&per_lo, &per_hi, term_lo, term_hi)
                        if sgn > 0:
                            _sub(&det_lo, &det_hi, term_lo, term_hi)
                        else:
                            _add(&det_lo, &det_hi, term_lo, term_hi)

        if err == 1:
            raise RuntimeError("unmarked row still has an odd entry after elimination")
        if err == 2:
            raise RuntimeError("marked column has an odd entry outside its designated row")
        return per_lo, per_hi, det_lo, det_hi
    finally:
        free(lo); free(hi); free(P); free(B); free(powers); free(weights)
        free(row_marked); free(col_marked); free(seen); free(col_of); free(f)
