"""Bounded complexes of projectives and computations in K^b(proj A).

A complex stores, per degree t, the vertices of its term X^t = sum e_v A and
the differential d^t: X^t -> X^{t+1} as an array of shape
(len X^{t+1}, len X^t, dim A); entry (r, c) lies in e_{row vertex} A e_{col vertex}
and acts by left multiplication, so composition is the matrix product.

Chain maps are always of degree zero; a degree-m map X -> Y is a chain map
X -> Y[m], with Y[1]^t = Y^{t+1} and differential -d.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import gf
from .algebra import Algebra, AlgebraAutomorphism, AlgebraError, amul


class ComplexError(ValueError):
    pass


class Inconclusive(RuntimeError):
    """An isomorphism question that the available certificates could not settle."""


def _zeros(r: int, c: int, d: int) -> np.ndarray:
    return np.zeros((r, c, d), dtype=np.int64)


class ProjComplex:
    def __init__(self, algebra: Algebra, terms: dict, diffs: dict | None = None, validate: bool = True, name: str = ""):
        self.algebra = algebra
        self.name = name
        self.terms: dict[int, tuple[int, ...]] = {
            int(t): tuple(int(v) for v in vs) for t, vs in sorted(terms.items()) if len(vs)
        }
        self.diffs: dict[int, np.ndarray] = {}
        d = algebra.dim
        for t, m in (diffs or {}).items():
            t = int(t)
            rows, cols = len(self.term(t + 1)), len(self.term(t))
            if rows == 0 or cols == 0:
                continue
            m = np.asarray(m, dtype=np.int64) % algebra.p
            if m.shape != (rows, cols, d):
                raise ComplexError(f"differential in degree {t} has shape {m.shape}, expected {(rows, cols, d)}")
            if np.any(m):
                self.diffs[t] = m
        if validate:
            self.validate()

    # -- accessors -------------------------------------------------------
    def term(self, t: int) -> tuple[int, ...]:
        return self.terms.get(t, ())

    def diff(self, t: int) -> np.ndarray:
        m = self.diffs.get(t)
        if m is None:
            return _zeros(len(self.term(t + 1)), len(self.term(t)), self.algebra.dim)
        return m

    @property
    def degrees(self) -> list[int]:
        return sorted(self.terms)

    @property
    def lo(self) -> int:
        return min(self.terms) if self.terms else 0

    @property
    def hi(self) -> int:
        return max(self.terms) if self.terms else -1

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def size(self) -> int:
        return sum(len(v) for v in self.terms.values())

    def signature(self) -> tuple:
        return tuple((t, tuple(sorted(vs))) for t, vs in sorted(self.terms.items()))

    def g_vector(self) -> np.ndarray:
        return g_vector(self)

    def __repr__(self):
        parts = [f"{t}:{[v + 1 for v in vs]}" for t, vs in sorted(self.terms.items())]
        return f"ProjComplex({self.name + ' ' if self.name else ''}{', '.join(parts)})"

    def __eq__(self, other):
        if not isinstance(other, ProjComplex) or other.algebra is not self.algebra:
            return NotImplemented
        if self.terms != other.terms or set(self.diffs) != set(other.diffs):
            return False
        return all(np.array_equal(self.diffs[t], other.diffs[t]) for t in self.diffs)

    def __hash__(self):
        return hash(self.signature())

    # -- checks ----------------------------------------------------------
    def validate(self) -> ProjComplex:
        alg = self.algebra
        for t, m in self.diffs.items():
            src, dst = self.term(t), self.term(t + 1)
            for r, vr in enumerate(dst):
                for c, vc in enumerate(src):
                    allowed = np.zeros(alg.dim, dtype=bool)
                    allowed[alg.corner(vr, vc)] = True
                    if np.any(m[r, c][~allowed]):
                        raise ComplexError(
                            f"differential entry ({r + 1},{c + 1}) in degree {t} is not in e{vr + 1}Ae{vc + 1}"
                        )
        for t in self.diffs:
            if t + 1 in self.diffs:
                sq = amul(alg, self.diffs[t + 1], self.diffs[t])
                if np.any(sq):
                    r, c = np.argwhere(np.any(sq, axis=2))[0]
                    raise ComplexError(f"d^{t + 1} d^{t} is nonzero at entry ({r + 1},{c + 1})")
        return self


def stalk(alg: Algebra, vertices, degree: int = 0, name: str = "") -> ProjComplex:
    return ProjComplex(alg, {degree: tuple(vertices)}, {}, name=name)


def regular(alg: Algebra) -> ProjComplex:
    """The algebra itself as a stalk complex in degree 0."""
    return stalk(alg, range(alg.n), name="A")


def g_vector(X: ProjComplex) -> np.ndarray:
    g = np.zeros(X.algebra.n, dtype=np.int64)
    for t, vs in X.terms.items():
        for v in vs:
            g[v] += (-1) ** (t % 2)
    return g


def shift(X: ProjComplex, k: int) -> ProjComplex:
    """X[k]: X[k]^t = X^{t+k} with differential (-1)^k d."""
    if k == 0:
        return X
    sign = -1 if k % 2 else 1
    terms = {t - k: vs for t, vs in X.terms.items()}
    diffs = {t - k: (sign * m) % X.algebra.p for t, m in X.diffs.items()}
    return ProjComplex(X.algebra, terms, diffs, validate=False)


def direct_sum(items, algebra: Algebra | None = None) -> ProjComplex:
    items = list(items)
    if not items:
        if algebra is None:
            raise ComplexError("direct sum of nothing needs an algebra")
        return ProjComplex(algebra, {}, {})
    alg = items[0].algebra
    d = alg.dim
    degs = sorted(set().union(*[X.terms for X in items]))
    terms = {t: sum((X.term(t) for X in items), ()) for t in degs}
    diffs = {}
    for t in degs:
        rows, cols = len(terms.get(t + 1, ())), len(terms[t])
        if rows == 0:
            continue
        m = _zeros(rows, cols, d)
        r0 = c0 = 0
        for X in items:
            rr, cc = len(X.term(t + 1)), len(X.term(t))
            if rr and cc:
                m[r0 : r0 + rr, c0 : c0 + cc] = X.diff(t)
            r0 += rr
            c0 += cc
        diffs[t] = m
    return ProjComplex(alg, terms, diffs, validate=False)


# ---------------------------------------------------------------------------
# chain maps


class ChainMap:
    """A degree-zero chain map; ``comps[t]`` has shape (len Y^t, len X^t, dim A)."""

    def __init__(self, source: ProjComplex, target: ProjComplex, comps: dict | None = None):
        self.source = source
        self.target = target
        d = source.algebra.dim
        self.comps: dict[int, np.ndarray] = {}
        for t, m in (comps or {}).items():
            rows, cols = len(target.term(t)), len(source.term(t))
            if rows == 0 or cols == 0:
                continue
            m = np.asarray(m, dtype=np.int64) % source.algebra.p
            if m.shape != (rows, cols, d):
                raise ComplexError(f"chain map component in degree {t} has the wrong shape")
            if np.any(m):
                self.comps[t] = m

    @property
    def algebra(self) -> Algebra:
        return self.source.algebra

    def comp(self, t: int) -> np.ndarray:
        m = self.comps.get(t)
        if m is None:
            return _zeros(len(self.target.term(t)), len(self.source.term(t)), self.algebra.dim)
        return m

    def is_zero(self) -> bool:
        return not self.comps

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"

    def check(self) -> ChainMap:
        alg = self.algebra
        for t in set(self.source.terms) | set(self.target.terms):
            lhs = amul(alg, self.target.diff(t), self.comp(t))
            rhs = amul(alg, self.comp(t + 1), self.source.diff(t))
            if not np.array_equal(lhs, rhs):
                raise ComplexError(f"map does not commute with differentials in degree {t}")
        return self

    def __add__(self, other: ChainMap) -> ChainMap:
        p = self.algebra.p
        keys = set(self.comps) | set(other.comps)
        return ChainMap(self.source, self.target, {t: (self.comp(t) + other.comp(t)) % p for t in keys})

    def __sub__(self, other: ChainMap) -> ChainMap:
        return self + other.scale(-1)

    def scale(self, c: int) -> ChainMap:
        p = self.algebra.p
        return ChainMap(self.source, self.target, {t: (c * m) % p for t, m in self.comps.items()})

    def shifted(self, k: int) -> ChainMap:
        """f[k]: X[k] -> Y[k], with f[k]^t = f^{t+k}."""
        if k == 0:
            return self
        return ChainMap(shift(self.source, k), shift(self.target, k), {t - k: m for t, m in self.comps.items()})

    def then(self, g: ChainMap) -> ChainMap:
        """g after self."""
        return compose(g, self)


def identity(X: ProjComplex) -> ChainMap:
    alg = X.algebra
    comps = {}
    for t, vs in X.terms.items():
        m = _zeros(len(vs), len(vs), alg.dim)
        for k, v in enumerate(vs):
            m[k, k, alg.idempotents[v]] = 1
        comps[t] = m
    return ChainMap(X, X, comps)


def zero_map(X: ProjComplex, Y: ProjComplex) -> ChainMap:
    return ChainMap(X, Y, {})


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    """g o f; the target of f must equal the source of g."""
    if f.target.terms != g.source.terms:
        raise ComplexError("maps are not composable")
    alg = f.algebra
    comps = {t: amul(alg, g.comp(t), f.comp(t)) for t in set(f.comps) & set(g.comps)}
    return ChainMap(f.source, g.target, comps)


def scalar_matrix_map(X: ProjComplex, Y: ProjComplex, blocks: dict) -> ChainMap:
    """Chain map whose component t is given by a (len Y^t, len X^t) matrix of scalars times idempotents."""
    alg = X.algebra
    comps = {}
    for t, mat in blocks.items():
        mat = np.asarray(mat, dtype=np.int64)
        m = _zeros(len(Y.term(t)), len(X.term(t)), alg.dim)
        for r, vr in enumerate(Y.term(t)):
            for c, vc in enumerate(X.term(t)):
                if mat[r, c] and vr == vc:
                    m[r, c, alg.idempotents[vr]] = mat[r, c]
        comps[t] = m
    return ChainMap(X, Y, comps)


@dataclass
class Triangle:
    """X -f-> Y -g-> C -h-> X[1]."""

    f: ChainMap
    g: ChainMap
    h: ChainMap

    @property
    def cone(self) -> ProjComplex:
        return self.g.target


def cone(f: ChainMap) -> Triangle:
    """Mapping cone: C^t = X^{t+1} + Y^t with d = [[-d_X, 0], [f, d_Y]]."""
    X, Y = f.source, f.target
    alg = X.algebra
    p, d = alg.p, alg.dim
    degs = sorted({t - 1 for t in X.terms} | set(Y.terms))
    terms = {t: X.term(t + 1) + Y.term(t) for t in degs}
    diffs = {}
    for t in degs:
        xs, ys = len(X.term(t + 1)), len(Y.term(t))
        xt, yt = len(X.term(t + 2)), len(Y.term(t + 1))
        if xt + yt == 0:
            continue
        m = _zeros(xt + yt, xs + ys, d)
        if xt and xs:
            m[:xt, :xs] = (-X.diff(t + 1)) % p
        if yt and xs:
            m[xt:, :xs] = f.comp(t + 1)
        if yt and ys:
            m[xt:, xs:] = Y.diff(t)
        diffs[t] = m
    C = ProjComplex(alg, terms, diffs, validate=False)
    inc, proj = {}, {}
    for t in degs:
        xs, ys = len(X.term(t + 1)), len(Y.term(t))
        if ys:
            m = _zeros(xs + ys, ys, d)
            m[xs:, :] = identity_block(alg, Y.term(t))
            inc[t] = m
        if xs:
            m = _zeros(xs, xs + ys, d)
            m[:, :xs] = identity_block(alg, X.term(t + 1))
            proj[t] = m
    Xs = shift(X, 1)
    return Triangle(f, ChainMap(Y, C, inc), ChainMap(C, Xs, proj))


def identity_block(alg: Algebra, vertices) -> np.ndarray:
    m = _zeros(len(vertices), len(vertices), alg.dim)
    for k, v in enumerate(vertices):
        m[k, k, alg.idempotents[v]] = 1
    return m


def cocone(g: ChainMap) -> ProjComplex:
    """The object Z in Z -> Y -g-> X -> Z[1]."""
    return shift(cone(g).cone, -1)


# ---------------------------------------------------------------------------
# Hom complexes


@dataclass
class _Layout:
    """Coordinates of degree-k maps X -> Z (components X^t -> Z^{t+k}) restricted to corners."""

    k: int
    blocks: list  # (t, rows, cols, r_idx, c_idx, z_idx, offset)
    size: int


def _layout(X: ProjComplex, Z: ProjComplex, k: int) -> _Layout:
    alg = X.algebra
    corners = np.array(alg.corners, dtype=np.int64)
    blocks = []
    off = 0
    for t in X.degrees:
        zt = Z.term(t + k)
        if not zt:
            continue
        xt = X.term(t)
        zv = np.array(zt, dtype=np.int64)
        xv = np.array(xt, dtype=np.int64)
        # mask[r, c, b] true when basis element b lies in e_{zv[r]} A e_{xv[c]}
        mask = (corners[None, None, :, 0] == zv[:, None, None]) & (corners[None, None, :, 1] == xv[None, :, None])
        r_idx, c_idx, z_idx = np.nonzero(mask)
        blocks.append((t, len(zt), len(xt), r_idx, c_idx, z_idx, off))
        off += len(r_idx)
    return _Layout(k, blocks, off)


def _flatten(layout: _Layout, comps: dict) -> np.ndarray:
    v = np.zeros(layout.size, dtype=np.int64)
    for t, _, _, r, c, z, off in layout.blocks:
        m = comps.get(t)
        if m is not None:
            v[off : off + len(r)] = m[r, c, z]
    return v


def _unflatten(layout: _Layout, vec: np.ndarray, d: int) -> dict:
    comps = {}
    for t, rows, cols, r, c, z, off in layout.blocks:
        m = _zeros(rows, cols, d)
        m[r, c, z] = vec[off : off + len(r)]
        comps[t] = m
    return comps


def _left_tensor(alg: Algebra, dm: np.ndarray) -> np.ndarray:
    """L[r', r, b, z]: coefficient of b_z in dm[r', r] * b_b."""
    rr, r, d = dm.shape
    flat = dm.reshape(rr * r, d).astype(np.float64) @ alg.mult.reshape(d, d * d).astype(np.float64)
    return np.mod(flat, alg.p).astype(np.int64).reshape(rr, r, d, d)


def _right_tensor(alg: Algebra, dm: np.ndarray) -> np.ndarray:
    """R[c', c, a, z]: coefficient of b_z in b_a * dm[c', c]."""
    cc, c, d = dm.shape
    mt = alg.mult.transpose(1, 0, 2).reshape(d, d * d).astype(np.float64)
    flat = dm.reshape(cc * c, d).astype(np.float64) @ mt
    return np.mod(flat, alg.p).astype(np.int64).reshape(cc, c, d, d)


class _HomComplexBuilder:
    """Matrices of D(f) = d_Z f - (-1)^k f d_X between degree-k and degree-(k+1) maps."""

    def __init__(self, X: ProjComplex, Z: ProjComplex):
        self.X, self.Z = X, Z
        self.alg = X.algebra
        self._left: dict[int, np.ndarray] = {}
        self._right: dict[int, np.ndarray] = {}
        self._layouts: dict[int, _Layout] = {}

    def layout(self, k: int) -> _Layout:
        if k not in self._layouts:
            self._layouts[k] = _layout(self.X, self.Z, k)
        return self._layouts[k]

    def left(self, t: int) -> np.ndarray | None:
        if t not in self._left:
            m = self.Z.diffs.get(t)
            self._left[t] = None if m is None else _left_tensor(self.alg, m)
        return self._left[t]

    def right(self, t: int) -> np.ndarray | None:
        if t not in self._right:
            m = self.X.diffs.get(t)
            self._right[t] = None if m is None else _right_tensor(self.alg, m)
        return self._right[t]

    def matrix(self, k: int) -> np.ndarray:
        src, dst = self.layout(k), self.layout(k + 1)
        p = self.alg.p
        D = np.zeros((dst.size, src.size), dtype=np.int64)
        if src.size == 0 or dst.size == 0:
            return D
        sblocks = {b[0]: b for b in src.blocks}
        sign = -1 if k % 2 == 0 else 1  # -(-1)^k
        for t, _, _, r2, c2, z2, off2 in dst.blocks:
            rows = slice(off2, off2 + len(r2))
            # d_Z^{t+k} f^t
            L = self.left(t + k)
            b = sblocks.get(t)
            if L is not None and b is not None:
                _, _, _, r1, c1, z1, off1 = b
                blk = L[r2[:, None], r1[None, :], z1[None, :], z2[:, None]] * (c2[:, None] == c1[None, :])
                D[rows, off1 : off1 + len(r1)] += blk
            # f^{t+1} d_X^t
            R = self.right(t)
            b = sblocks.get(t + 1)
            if R is not None and b is not None:
                _, _, _, r1, c1, z1, off1 = b
                blk = R[c1[None, :], c2[:, None], z1[None, :], z2[:, None]] * (r2[:, None] == r1[None, :])
                D[rows, off1 : off1 + len(r1)] += sign * blk
        return D % p


class HomSpace:
    """Hom_{K^b}(X, Y[m]) with representative chain maps X -> Y[m]."""

    def __init__(self, source: ProjComplex, target: ProjComplex, m: int):
        self.source = source
        self.target = target
        self.m = m
        self.shifted_target = shift(target, m)
        alg = source.algebra
        p = alg.p
        builder = _HomComplexBuilder(source, self.shifted_target)
        self._layout = builder.layout(0)
        n0 = self._layout.size
        if n0 == 0:
            self._cycles = np.zeros((0, 0), dtype=np.int64)
            self._bounds = np.zeros((0, 0), dtype=np.int64)
            self._reps = np.zeros((0, 0), dtype=np.int64)
        else:
            D0 = builder.matrix(0)
            self._cycles = gf.kernel(D0, p) if D0.shape[0] else np.eye(n0, dtype=np.int64)
            Dm1 = builder.matrix(-1)
            self._bounds = gf.column_space(Dm1, p) if Dm1.shape[1] else np.zeros((n0, 0), dtype=np.int64)
            keep = gf.complement_columns(self._bounds, self._cycles, p)
            self._reps = self._cycles[:, keep]
        self.dim = self._reps.shape[1]
        self._solver = None

    def __repr__(self):
        return f"HomSpace(dim={self.dim}, m={self.m})"

    @property
    def basis(self) -> list[ChainMap]:
        d = self.source.algebra.dim
        return [
            ChainMap(self.source, self.shifted_target, _unflatten(self._layout, self._reps[:, k], d))
            for k in range(self.dim)
        ]

    def element(self, coeffs) -> ChainMap:
        p = self.source.algebra.p
        coeffs = np.asarray(coeffs, dtype=np.int64) % p
        vec = gf.matmul(self._reps, coeffs, p) if self.dim else np.zeros(self._layout.size, dtype=np.int64)
        return ChainMap(self.source, self.shifted_target, _unflatten(self._layout, vec, self.source.algebra.dim))

    def random_element(self, rng: random.Random) -> ChainMap:
        return self.element([rng.randrange(self.source.algebra.p) for _ in range(self.dim)])

    def coords(self, f: ChainMap) -> np.ndarray:
        """Coordinates of the homotopy class of f in the chosen basis."""
        p = self.source.algebra.p
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64)
        if self._solver is None:
            self._solver = gf.ColumnSolver(np.concatenate([self._bounds, self._reps], axis=1), p)
        x = self._solver.coords(_flatten(self._layout, f.comps), check=True)
        return x[self._bounds.shape[1] :]

    def is_null_homotopic(self, f: ChainMap) -> bool:
        return not np.any(self.coords(f)) if self.dim else True


def hom_space(X: ProjComplex, Y: ProjComplex, m: int = 0) -> HomSpace:
    return HomSpace(X, Y, m)


def hom_dim(X: ProjComplex, Y: ProjComplex, m: int = 0) -> int:
    """dim Hom(X, Y[m]) without building representatives."""
    if X.is_zero or Y.is_zero:
        return 0
    if m < Y.lo - X.hi or m > Y.hi - X.lo:
        return 0
    p = X.algebra.p
    builder = _HomComplexBuilder(X, shift(Y, m))
    n0 = builder.layout(0).size
    if n0 == 0:
        return 0
    D0 = builder.matrix(0)
    Dm1 = builder.matrix(-1)
    r0 = gf.rank(D0, p) if D0.size else 0
    r1 = gf.rank(Dm1, p) if Dm1.size else 0
    return n0 - r0 - r1


def hom_window(X: ProjComplex, Y: ProjComplex) -> range:
    """Shifts m where Hom(X, Y[m]) can be nonzero."""
    if X.is_zero or Y.is_zero:
        return range(0)
    return range(Y.lo - X.hi, Y.hi - X.lo + 1)


def hom_table(X: ProjComplex, Y: ProjComplex) -> dict[int, int]:
    return {m: hom_dim(X, Y, m) for m in hom_window(X, Y)}


def euler_form(X: ProjComplex, Y: ProjComplex) -> int:
    return sum((-1) ** (m % 2) * v for m, v in hom_table(X, Y).items())


def euler_from_g(X: ProjComplex, Y: ProjComplex) -> int:
    """g(X)^T C^T g(Y) with C[i, j] = dim e_i A e_j, since Hom(P_i, P_j) = e_j A e_i."""
    C = X.algebra.cartan
    return int(X.g_vector() @ C.T @ Y.g_vector())


def is_null_homotopic(f: ChainMap) -> bool:
    return HomSpace(f.source, f.target, 0).is_null_homotopic(f)


def is_contractible(X: ProjComplex) -> bool:
    if X.is_zero:
        return True
    return is_null_homotopic(identity(X))


# ---------------------------------------------------------------------------
# minimization


def corner_unit_inverse(alg: Algebra, u: np.ndarray, v: int) -> np.ndarray:
    """Inverse of a unit u of e_v A e_v inside that corner."""
    p = alg.p
    lam = int(u[alg.idempotents[v]]) % p
    if lam == 0:
        raise AlgebraError("element is not a unit of its corner")
    ev = alg.idempotent(v)
    li = gf.inv(lam, p)
    r = (ev - li * u) % p  # u = lam (e_v - r), r radical
    acc = ev.copy()
    term = ev.copy()
    for _ in range(alg.dim + 1):
        term = alg.mul(term, r)
        if not np.any(term):
            break
        acc = (acc + term) % p
    return (li * acc) % p


def _find_unit(X: ProjComplex):
    alg = X.algebra
    idem = np.array(alg.idempotents)
    for t in sorted(X.diffs):
        m = X.diffs[t]
        rows, cols = X.term(t + 1), X.term(t)
        for r, vr in enumerate(rows):
            for c, vc in enumerate(cols):
                if vr == vc and m[r, c, idem[vr]] % alg.p:
                    return t, r, c
    return None


def minimize(X: ProjComplex) -> ProjComplex:
    """Homotopy-equivalent complex with all differential entries in the radical."""
    alg = X.algebra
    p = alg.p
    cur = X
    while True:
        hit = _find_unit(cur)
        if hit is None:
            return cur
        t, r, c = hit
        m = cur.diff(t)
        v = cur.term(t)[c]
        uinv = corner_unit_inverse(alg, m[r, c], v)
        keep_rows = [k for k in range(m.shape[0]) if k != r]
        keep_cols = [k for k in range(m.shape[1]) if k != c]
        beta = m[r : r + 1, keep_cols]
        gamma = m[keep_rows, c : c + 1]
        delta = m[np.ix_(keep_rows, keep_cols)]
        corr = amul(alg, amul(alg, gamma, uinv[None, None, :]), beta)
        terms = {s: list(vs) for s, vs in cur.terms.items()}
        diffs = {s: mm for s, mm in cur.diffs.items()}
        terms[t] = [terms[t][k] for k in keep_cols]
        terms[t + 1] = [terms[t + 1][k] for k in keep_rows]
        diffs[t] = (delta - corr) % p
        if t - 1 in diffs:
            diffs[t - 1] = diffs[t - 1][keep_cols]
        if t + 1 in diffs:
            diffs[t + 1] = diffs[t + 1][:, keep_rows]
        for s in (t, t + 1):
            if not terms[s]:
                del terms[s]
        diffs = {s: mm for s, mm in diffs.items() if mm.size}
        cur = ProjComplex(alg, terms, diffs, validate=False, name=X.name)


def is_minimal(X: ProjComplex) -> bool:
    return _find_unit(X) is None


def top_matrix(alg: Algebra, m: np.ndarray, rows, cols) -> np.ndarray:
    """Scalar matrix of idempotent coefficients (zero between distinct vertices)."""
    out = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for r, vr in enumerate(rows):
        for c, vc in enumerate(cols):
            if vr == vc:
                out[r, c] = m[r, c, alg.idempotents[vr]]
    return out


def is_degreewise_iso(f: ChainMap) -> bool:
    """True when every component is an isomorphism of projective modules."""
    alg = f.algebra
    if f.source.signature() != f.target.signature():
        return False
    for t, vs in f.source.terms.items():
        top = top_matrix(alg, f.comp(t), f.target.term(t), vs)
        if gf.rank(top, alg.p) != len(vs):
            return False
    return True


# ---------------------------------------------------------------------------
# functors


def twist_complex(X: ProjComplex, alpha: AlgebraAutomorphism) -> ProjComplex:
    """X tensored with the twisted bimodule A_alpha.

    e_i A (x) A_alpha is identified with alpha^{-1}(e_i) A, so summand i becomes
    the vertex alpha^{-1}(i) and entries are transported by alpha^{-1}.
    """
    alg = X.algebra
    inv = alpha.inverse()
    perm = inv.vertex_perm
    terms = {t: tuple(perm[v] for v in vs) for t, vs in X.terms.items()}
    diffs = {}
    for t, m in X.diffs.items():
        r, c, d = m.shape
        diffs[t] = gf.matmul(m.reshape(r * c, d), inv.matrix.T, alg.p).reshape(r, c, d)
    return ProjComplex(alg, terms, diffs, validate=False, name=X.name)


def twist_map(f: ChainMap, alpha: AlgebraAutomorphism) -> ChainMap:
    inv = alpha.inverse()
    p = f.algebra.p
    comps = {}
    for t, m in f.comps.items():
        r, c, d = m.shape
        comps[t] = gf.matmul(m.reshape(r * c, d), inv.matrix.T, p).reshape(r, c, d)
    return ChainMap(twist_complex(f.source, alpha), twist_complex(f.target, alpha), comps)


def base_change(X: ProjComplex, target: Algebra, inclusion: np.ndarray) -> ProjComplex:
    """X tensored over A with B along an algebra map A -> B that keeps vertex idempotents."""
    p = target.p
    diffs = {}
    for t, m in X.diffs.items():
        r, c, d = m.shape
        diffs[t] = gf.matmul(m.reshape(r * c, d), np.asarray(inclusion).T, p).reshape(r, c, target.dim)
    return ProjComplex(target, dict(X.terms), diffs, name=X.name)


# ---------------------------------------------------------------------------
# isomorphism testing


@dataclass
class IsoResult:
    isomorphic: bool
    method: str
    certificate: ChainMap | None = field(default=None, repr=False)


def hom_fingerprint(X: ProjComplex, probes) -> tuple:
    return tuple(tuple(sorted(hom_table(P, X).items())) for P in probes)


def iso_in_homotopy(
    X: ProjComplex, Y: ProjComplex, seed: int = 0, tries: int = 8, minimal: bool = False, detail: bool = False
):
    """Decide X = Y in K^b(proj A).

    Minimal complexes are isomorphic in K^b exactly when they are isomorphic as
    complexes, which a chain map with invertible tops in each degree certifies.
    Random elements of Hom(X, Y) are tried first; if none is invertible the
    question is settled exactly through Krull-Schmidt decompositions.
    """
    res = _iso(X, Y, seed, tries, minimal)
    return res if detail else res.isomorphic


def _iso(X, Y, seed, tries, minimal) -> IsoResult:
    if not minimal:
        X, Y = minimize(X), minimize(Y)
    if X.signature() != Y.signature():
        return IsoResult(False, "signature")
    if X.is_zero:
        return IsoResult(True, "zero")
    H = HomSpace(X, Y, 0)
    if H.dim == 0:
        return IsoResult(False, "hom")
    rng = random.Random(seed)
    for k in range(tries):
        f = H.random_element(rng) if k or H.dim > 1 else H.basis[0]
        if is_degreewise_iso(f):
            return IsoResult(True, "certificate", f)
    H2 = HomSpace(Y, X, 0)
    if H2.dim == 0:
        return IsoResult(False, "hom")
    for P in [X]:
        if hom_table(P, X) != hom_table(P, Y) or hom_table(X, P) != hom_table(Y, P):
            return IsoResult(False, "fingerprint")
    from .krull_schmidt import SplitFailure, decompose

    try:
        dx = decompose(X, seed=seed, minimal=True)
        dy = decompose(Y, seed=seed, minimal=True)
    except SplitFailure as exc:
        raise Inconclusive(str(exc)) from exc
    return IsoResult(dx.matches(dy), "decomposition")


def indecomposables_isomorphic(U: ProjComplex, V: ProjComplex, seed: int = 0) -> bool:
    """Exact test for minimal complexes with local endomorphism rings.

    U = V iff some composite g f (f: U -> V, g: V -> U) is not in the radical of End(U).
    """
    if U.signature() != V.signature():
        return False
    if U.is_zero:
        return True
    H = HomSpace(U, V, 0)
    if H.dim == 0:
        return False
    rng = random.Random(seed)
    for _ in range(4):
        if is_degreewise_iso(H.random_element(rng)):
            return True
    G = HomSpace(V, U, 0)
    fs, gs = H.basis, G.basis
    for f in fs:
        for g in gs:
            if is_degreewise_iso(compose(g, f)):
                return True
    return False


# ---------------------------------------------------------------------------
# random complexes for property tests


def random_radical_element(alg: Algebra, i: int, j: int, rng: random.Random, density: float = 0.7) -> np.ndarray:
    v = np.zeros(alg.dim, dtype=np.int64)
    rad = set(alg.radical)
    for k in alg.corner(i, j):
        if int(k) in rad and rng.random() < density:
            v[k] = rng.randrange(alg.p)
    return v


def random_two_term(alg: Algebra, rng: random.Random, max_terms: int = 3, degree: int = -1) -> ProjComplex:
    a = [rng.randrange(alg.n) for _ in range(rng.randint(0, max_terms))]
    b = [rng.randrange(alg.n) for _ in range(rng.randint(1, max_terms))]
    m = _zeros(len(b), len(a), alg.dim)
    for r, vr in enumerate(b):
        for c, vc in enumerate(a):
            m[r, c] = random_radical_element(alg, vr, vc, rng)
    return ProjComplex(alg, {degree: a, degree + 1: b}, {degree: m} if a else {})


def random_complex(alg: Algebra, rng: random.Random, max_terms: int = 3, steps: int = 1) -> ProjComplex:
    """Iterated cones of random maps between random two-term complexes and stalks."""
    X = random_two_term(alg, rng, max_terms)
    for _ in range(steps):
        Z = random_two_term(alg, rng, max_terms, degree=rng.choice([-2, -1, 0]))
        H = HomSpace(Z, X, 0)
        f = H.random_element(rng) if H.dim else zero_map(Z, X)
        X = cone(f).cone
    return X
