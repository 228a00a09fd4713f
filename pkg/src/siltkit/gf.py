"""Exact dense linear algebra and polynomial arithmetic over a prime field GF(p).

Matrices are plain ``numpy`` int64 arrays with entries reduced into ``[0, p)``.
Polynomials are lists of residues, lowest degree first, with no trailing zeros.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

DEFAULT_PRIME = 101

# float64 matmul is exact while every partial sum stays below 2**53
_FLOAT_EXACT = 2**53


class InconsistentSystem(ValueError):
    """Raised by :func:`solve` when the right-hand side is not in the image."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"field characteristic must be prime, got {p}")
    return p


@dataclass(frozen=True)
class PrimeField:
    """The field GF(p); validates primality once so downstream code can trust ``p``."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        check_prime(self.p)

    def __call__(self, value) -> int:
        return int(value) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("zero has no inverse in GF(p)")
        return pow(a, self.p - 2, self.p)

    def array(self, data) -> np.ndarray:
        return np.asarray(data, dtype=np.int64) % self.p


def inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("zero has no inverse in GF(p)")
    return pow(a, p - 2, p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact product of two residue matrices, reduced mod p."""
    a = np.asarray(a)
    b = np.asarray(b)
    inner = a.shape[-1] if a.ndim else 1
    if inner * (p - 1) ** 2 < _FLOAT_EXACT:
        out = np.matmul(a.astype(np.float64), b.astype(np.float64))
        return np.mod(out, p).astype(np.int64)
    return np.mod(np.matmul(a.astype(object), b.astype(object)), p).astype(np.int64)


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns the nonzero rows and the pivot columns."""
    a = np.array(m, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r, c:] = (a[r, c:] * inv(piv, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit, c:] = (a[hit, c:] - np.outer(col[hit], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: np.ndarray, p: int) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def _kernel_from_rref(r: np.ndarray, pivots: list[int], cols: int, p: int) -> np.ndarray:
    free = [c for c in range(cols) if c not in set(pivots)]
    k = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        k[f, j] = 1
        for i, pc in enumerate(pivots):
            k[pc, j] = (-r[i, f]) % p
    return k


def kernel(m: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel {x : m x = 0}, as columns."""
    m = np.asarray(m, dtype=np.int64)
    rows, cols = m.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref(m, p)
    return _kernel_from_rref(r, piv, cols, p)


def column_space(m: np.ndarray, p: int) -> np.ndarray:
    """Independent columns of ``m`` spanning its image (a subset of the original columns)."""
    m = np.asarray(m, dtype=np.int64) % p
    if m.size == 0:
        return np.zeros((m.shape[0], 0), dtype=np.int64)
    _, piv = rref(m, p)
    return m[:, piv]


@dataclass(frozen=True)
class RankProfile:
    rank: int
    kernel_basis: np.ndarray
    image_basis: np.ndarray


def rank_profile(m: np.ndarray, p: int) -> RankProfile:
    m = np.asarray(m, dtype=np.int64) % p
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return RankProfile(0, np.eye(cols, dtype=np.int64), np.zeros((rows, 0), dtype=np.int64))
    r, piv = rref(m, p)
    return RankProfile(len(piv), _kernel_from_rref(r, piv, cols, p), m[:, piv])


@dataclass(frozen=True)
class Solution:
    particular: np.ndarray
    kernel_basis: np.ndarray


def solve(m: np.ndarray, b: np.ndarray, p: int) -> Solution:
    """All solutions of m x = b, or :class:`InconsistentSystem`."""
    m = np.asarray(m, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    rows, cols = m.shape
    if b.shape[0] != rows:
        raise ValueError(f"dimension mismatch: matrix has {rows} rows, rhs has {b.shape[0]}")
    aug = np.concatenate([m, b[:, None]], axis=1)
    r, piv = rref(aug, p)
    if piv and piv[-1] == cols:
        raise InconsistentSystem("right-hand side is not in the image")
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = r[i, cols]
    return Solution(x, _kernel_from_rref(r[:, :cols], piv, cols, p))


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64) % p
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    if n == 0:
        return m.copy()
    r, piv = rref(np.concatenate([m, np.eye(n, dtype=np.int64)], axis=1), p)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return r[:, n:]


def complement_columns(sub: np.ndarray, extra: np.ndarray, p: int) -> list[int]:
    """Indices of columns of ``extra`` that extend a basis of span(sub) independently."""
    k = sub.shape[1]
    both = np.concatenate([sub, extra], axis=1)
    if both.shape[1] == 0 or both.shape[0] == 0:
        return []
    _, piv = rref(both, p)
    return [c - k for c in piv if c >= k]


class ColumnSolver:
    """Coordinates with respect to a fixed set of independent columns.

    ``coords(v)`` returns x with ``basis @ x == v``; it assumes v lies in the span
    unless ``check`` is requested.
    """

    def __init__(self, basis: np.ndarray, p: int):
        self.p = p
        self.basis = np.asarray(basis, dtype=np.int64) % p
        _n, k = self.basis.shape
        if k == 0:
            self.rows = []
            self.inv = np.zeros((0, 0), dtype=np.int64)
            return
        _, rows = rref(self.basis.T, p)
        if len(rows) != k:
            raise ValueError("ColumnSolver basis columns are dependent")
        self.rows = rows
        self.inv = inverse(self.basis[rows, :], p)

    def coords(self, v: np.ndarray, check: bool = False) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64) % self.p
        if not self.rows:
            x = np.zeros((0,) + v.shape[1:], dtype=np.int64)
            back = np.zeros_like(v)
        else:
            x = matmul(self.inv, v[self.rows], self.p)
            back = matmul(self.basis, x, self.p) if check else None
        if check and not np.array_equal(back, v):
            raise InconsistentSystem("vector is outside the span")
        return x


# ---------------------------------------------------------------------------
# polynomials over GF(p)


def poly_trim(f: list[int]) -> list[int]:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_add(f, g, p):
    n = max(len(f), len(g))
    return poly_trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)])


def poly_sub(f, g, p):
    n = max(len(f), len(g))
    return poly_trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def poly_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return poly_trim(out)


def poly_divmod(f, g, p):
    g = poly_trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = poly_trim(f)
    lc_inv = inv(g[-1], p)
    q = [0] * max(len(f) - len(g) + 1, 0)
    r = list(f)
    while len(r) >= len(g) and r:
        shift = len(r) - len(g)
        c = (r[-1] * lc_inv) % p
        q[shift] = c
        for i, b in enumerate(g):
            r[shift + i] = (r[shift + i] - c * b) % p
        r = poly_trim(r)
    return poly_trim(q), r


def poly_mod(f, g, p):
    return poly_divmod(f, g, p)[1]


def poly_monic(f, p):
    f = poly_trim(f)
    if not f:
        return f
    c = inv(f[-1], p)
    return [(a * c) % p for a in f]


def poly_gcd(f, g, p):
    f, g = poly_trim(f), poly_trim(g)
    while g:
        f, g = g, poly_mod(f, g, p)
    return poly_monic(f, p)


def poly_xgcd(f, g, p):
    """Return (d, s, t) with s f + t g = d = monic gcd."""
    r0, r1 = poly_trim(f), poly_trim(g)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1, p), p)
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1, p), p)
    if not r0:
        return [], [], []
    c = inv(r0[-1], p)
    scale = lambda h: [(a * c) % p for a in h]
    return scale(r0), scale(s0), scale(t0)


def poly_powmod(f, e, m, p):
    result = [1]
    base = poly_mod(f, m, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), m, p)
        base = poly_mod(poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def poly_deriv(f, p):
    return poly_trim([(i * a) % p for i, a in enumerate(f)][1:])


def poly_pow(f, e, p):
    out = [1]
    for _ in range(e):
        out = poly_mul(out, f, p)
    return out


def poly_eval(f, x, p):
    acc = 0
    for a in reversed(f):
        acc = (acc * x + a) % p
    return acc


def _pth_root(f, p):
    # f(x) = g(x^p) with coefficients in the prime field, whose Frobenius is trivial
    return [f[i] for i in range(0, len(f), p)]


def _square_free(f, p):
    """Square-free decomposition of a monic polynomial: list of (g, multiplicity)."""
    out = []
    if len(f) <= 1:
        return out
    fp = poly_deriv(f, p)
    if not fp:
        return [(g, e * p) for g, e in _square_free(_pth_root(f, p), p)]
    c = poly_gcd(f, fp, p)
    w = poly_divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = poly_gcd(w, c, p)
        fac = poly_divmod(w, y, p)[0]
        if len(fac) > 1:
            out.append((fac, i))
        w = y
        c = poly_divmod(c, y, p)[0]
        i += 1
    if len(c) > 1:
        out.extend((g, e * p) for g, e in _square_free(_pth_root(c, p), p))
    return out


def _distinct_degree(f, p):
    out = []
    h = [0, 1]
    d = 0
    f = list(f)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = poly_powmod(h, p, f, p)
        g = poly_gcd(f, poly_sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = poly_divmod(f, g, p)[0]
            h = poly_mod(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _equal_degree(f, d, p, rng):
    if len(f) - 1 == d:
        return [f]
    n = len(f) - 1
    while True:
        a = poly_trim([rng.randrange(p) for _ in range(n)])
        if len(a) <= 1:
            continue
        if p == 2:
            t = a
            b = a
            for _ in range(d - 1):
                b = poly_mod(poly_mul(b, b, p), f, p)
                t = poly_add(t, b, p)
            g = poly_gcd(f, t, p)
        else:
            g = poly_gcd(f, a, p)
            if 1 < len(g) < len(f):
                pass
            else:
                b = poly_powmod(a, (p**d - 1) // 2, f, p)
                g = poly_gcd(f, poly_sub(b, [1], p), p)
        if 1 < len(g) < len(f):
            h = poly_divmod(f, g, p)[0]
            return _equal_degree(g, d, p, rng) + _equal_degree(h, d, p, rng)


@dataclass(frozen=True)
class Factorization:
    unit: int
    factors: tuple[tuple[tuple[int, ...], int], ...]

    def expand(self, p: int) -> list[int]:
        out = [self.unit % p]
        for g, e in self.factors:
            out = poly_mul(out, poly_pow(list(g), e, p), p)
        return out


def factor_square_free(f, p: int, seed: int = 0) -> Factorization:
    """Factor a nonzero polynomial over GF(p) into monic irreducibles with multiplicity.

    Square-free decomposition, then distinct-degree and Cantor-Zassenhaus
    equal-degree splitting driven by ``random.Random(seed)``.
    """
    f = poly_trim([int(a) % p for a in f])
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    unit = f[-1]
    f = poly_monic(f, p)
    found: dict[tuple[int, ...], int] = {}
    for g, e in _square_free(f, p):
        for h, d in _distinct_degree(g, p):
            for irr in _equal_degree(h, d, p, rng):
                key = tuple(irr)
                found[key] = found.get(key, 0) + e
    factors = tuple(sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0])))
    return Factorization(unit, factors)
