"""Endomorphism algebras in K^b(proj A) and Krull-Schmidt decompositions."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import gf
from .algebra import Algebra, AlgebraError, amul, radical_basis
from .complexes import (
    ChainMap,
    HomSpace,
    ProjComplex,
    compose,
    direct_sum,
    identity,
    indecomposables_isomorphic,
    minimize,
    top_matrix,
)


class SplitFailure(AlgebraError):
    """End(X)/rad is not a product of copies of GF(p) where splitting was needed."""


@dataclass
class EndAlgebra:
    algebra: Algebra
    hom: HomSpace
    maps: list[ChainMap] = field(repr=False)
    radical: np.ndarray = field(repr=False, default=None)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def top_dim(self) -> int:
        return self.dim - self.radical.shape[1]


def _structure_constants(hom: HomSpace, maps: list[ChainMap], coords) -> np.ndarray:
    k = len(maps)
    mult = np.zeros((k, k, k), dtype=np.int64)
    for a in range(k):
        for b in range(k):
            mult[a, b] = coords(compose(maps[a], maps[b]))
    return mult


def end_algebra(X: ProjComplex, with_radical: bool = True) -> EndAlgebra:
    """End_{K^b}(X) with product a * b = a o b, on a basis starting with id_X."""
    p = X.algebra.p
    H = HomSpace(X, X, 0)
    k = H.dim
    if k == 0:
        alg = Algebra(p, [], np.zeros((0, 0, 0), dtype=np.int64), np.zeros(0, dtype=np.int64), validate=False)
        return EndAlgebra(alg, H, [], np.zeros((0, 0), dtype=np.int64))
    idc = H.coords(identity(X))
    # change of basis so that the identity is the first basis element
    keep = gf.complement_columns(idc[:, None], np.eye(k, dtype=np.int64), p)
    P = np.concatenate([idc[:, None], np.eye(k, dtype=np.int64)[:, keep]], axis=1)
    Pinv = gf.inverse(P, p)
    maps = [H.element(P[:, j]) for j in range(k)]
    mult = _structure_constants(H, maps, lambda f: gf.matmul(Pinv, H.coords(f), p))
    one = np.zeros(k, dtype=np.int64)
    one[0] = 1
    labels = ["id"] + [f"f{j}" for j in range(1, k)]
    alg = Algebra(p, labels, mult, one, name=f"End({X.name or 'X'})")
    rad = radical_basis(alg) if with_radical else None
    return EndAlgebra(alg, H, maps, rad)


def basic_end_algebra(summands: list[ProjComplex]) -> tuple[Algebra, list[list[ChainMap]]]:
    """End of the direct sum of pairwise non-isomorphic indecomposables, as a vertex-typed algebra.

    Vertex i is the summand T_i; the corner e_i B e_j is Hom(T_j, T_i) and the
    product is composition.
    """
    n = len(summands)
    p = summands[0].algebra.p
    homs = [[HomSpace(summands[j], summands[i], 0) for j in range(n)] for i in range(n)]
    # per-corner bases, with identity first on the diagonal
    change = {}
    labels, corners, maps, idems, radical = [], [], [], [], []
    for i in range(n):
        for j in range(n):
            H = homs[i][j]
            if H.dim == 0:
                continue
            if i == j:
                E = end_algebra(summands[i])
                if E.top_dim != 1:
                    raise SplitFailure(f"summand {i + 1} does not have a local split endomorphism ring")
                # basis: identity, then radical
                cols = [np.eye(E.dim, dtype=np.int64)[:, 0]] + [E.radical[:, c] for c in range(E.radical.shape[1])]
                Q = np.stack(cols, axis=1)  # in E-basis coordinates
                Ecoords = np.stack([H.coords(f) for f in E.maps], axis=1)  # E-basis -> H coords
                B = gf.matmul(Ecoords, Q, p)
            else:
                B = np.eye(H.dim, dtype=np.int64)
            change[(i, j)] = (len(labels), gf.inverse(B, p))
            for c in range(H.dim):
                k = len(labels)
                f = H.element(B[:, c])
                maps.append(f)
                corners.append((i, j))
                if i == j and c == 0:
                    labels.append(f"e{i + 1}")
                    idems.append(k)
                else:
                    labels.append(f"h{i + 1}{j + 1}_{c}")
                    radical.append(k)
    d = len(labels)
    mult = np.zeros((d, d, d), dtype=np.int64)
    for a in range(d):
        ia, ja = corners[a]
        for b in range(d):
            ib, jb = corners[b]
            if ja != ib or (ia, jb) not in change:
                continue
            start, Binv = change[(ia, jb)]
            coords = gf.matmul(Binv, homs[ia][jb].coords(compose(maps[a], maps[b])), p)
            mult[a, b, start : start + len(coords)] = coords
    one = np.zeros(d, dtype=np.int64)
    one[idems] = 1
    alg = Algebra(p, labels, mult, one, idempotents=idems, corners=corners, radical=radical, name="End(T)")
    return alg, maps


# ---------------------------------------------------------------------------
# decomposition


@dataclass
class Decomposition:
    pieces: list[tuple[ProjComplex, int]]

    @property
    def count(self) -> int:
        return len(self.pieces)

    @property
    def total(self) -> int:
        return sum(m for _, m in self.pieces)

    def summands(self) -> list[ProjComplex]:
        return [X for X, _ in self.pieces]

    def matches(self, other: Decomposition) -> bool:
        if sorted(m for _, m in self.pieces) != sorted(m for _, m in other.pieces):
            return False
        used = set()
        for X, m in self.pieces:
            hit = None
            for k, (Y, m2) in enumerate(other.pieces):
                if k not in used and m2 == m and indecomposables_isomorphic(X, Y):
                    hit = k
                    break
            if hit is None:
                return False
            used.add(hit)
        return True

    def g_vector(self) -> np.ndarray:
        return sum(m * X.g_vector() for X, m in self.pieces)


def _components(X: ProjComplex) -> list[ProjComplex]:
    """Split along the connected components of the support graph of the differential."""
    nodes = [(t, k) for t in X.degrees for k in range(len(X.term(t)))]
    parent = {v: v for v in nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for t, m in X.diffs.items():
        for r, c in np.argwhere(np.any(m, axis=2)):
            a, b = find((t + 1, int(r))), find((t, int(c)))
            if a != b:
                parent[a] = b
    groups: dict = {}
    for v in nodes:
        groups.setdefault(find(v), []).append(v)
    if len(groups) <= 1:
        return [X]
    out = []
    for members in groups.values():
        idx = {}
        for t, k in sorted(members):
            idx.setdefault(t, []).append(k)
        terms = {t: tuple(X.term(t)[k] for k in ks) for t, ks in idx.items()}
        diffs = {}
        for t in idx:
            if t + 1 in idx and t in X.diffs:
                diffs[t] = X.diffs[t][np.ix_(idx[t + 1], idx[t])]
        out.append(ProjComplex(X.algebra, terms, diffs, validate=False, name=X.name))
    return out


def _min_poly(E: Algebra, a: np.ndarray) -> list[int]:
    p = E.p
    powers = [E.one.copy()]
    while True:
        nxt = E.mul(powers[-1], a)
        mat = np.stack(powers, axis=1)
        sol = None
        try:
            sol = gf.solve(mat, nxt, p)
        except gf.InconsistentSystem:
            pass
        if sol is not None:
            coeffs = [(-int(c)) % p for c in sol.particular] + [1]
            return coeffs
        powers.append(nxt)


def _split_idempotent(E: Algebra, a: np.ndarray, seed: int):
    """A nontrivial idempotent polynomial in a, or None."""
    p = E.p
    f = _min_poly(E, a)
    fac = gf.factor_square_free(f, p, seed=seed)
    if len(fac.factors) < 2:
        return None, fac
    g, e = fac.factors[0]
    g1 = gf.poly_pow(list(g), e, p)
    rest = gf.poly_divmod(f, g1, p)[0]
    _, _s, t = gf.poly_xgcd(g1, rest, p)
    idem_poly = gf.poly_mul(t, rest, p)
    return E.poly_eval(idem_poly, a), fac


def _find_idempotent(E: Algebra, rng: random.Random):
    k = E.dim
    last = None
    candidates = [np.array([rng.randrange(E.p) for _ in range(k)], dtype=np.int64) for _ in range(k + 8)]
    candidates += [E.basis_vector(j) for j in range(k)]
    for a in candidates:
        e, fac = _split_idempotent(E, a, rng.randrange(1 << 30))
        if e is not None:
            return e
        last = fac
    degree = max((len(g) - 1 for g, _ in last.factors), default=0) if last else 0
    raise SplitFailure(f"no splitting idempotent found; irreducible factor of degree {degree}")


def _chain_power(f: ChainMap, k: int) -> ChainMap:
    out = f
    for _ in range(k - 1):
        out = compose(out, f)
    return out


def make_idempotent(eps: ChainMap, limit: int = 64) -> ChainMap:
    """Refine an idempotent-up-to-homotopy endomorphism of a minimal complex to a chain-level idempotent."""
    for _ in range(limit):
        sq = compose(eps, eps)
        if all(np.array_equal(sq.comp(t), eps.comp(t)) for t in set(sq.comps) | set(eps.comps)):
            return eps
        cube = compose(sq, eps)
        eps = sq.scale(3) - cube.scale(2)
    raise AlgebraError("idempotent refinement did not converge")


def amatrix_inverse(alg: Algebra, w: np.ndarray, rows, cols) -> np.ndarray:
    """Inverse of a square matrix of algebra elements whose top matrix is invertible."""
    p = alg.p
    top = top_matrix(alg, w, rows, cols)
    top_inv = gf.inverse(top, p)  # (cols x rows) scalar
    w0inv = np.zeros((len(cols), len(rows), alg.dim), dtype=np.int64)
    for r, vr in enumerate(cols):
        for c, vc in enumerate(rows):
            if vr == vc and top_inv[r, c]:
                w0inv[r, c, alg.idempotents[vr]] = top_inv[r, c]
    ident = np.zeros((len(cols), len(cols), alg.dim), dtype=np.int64)
    for k, v in enumerate(cols):
        ident[k, k, alg.idempotents[v]] = 1
    # w^{-1} = sum_k (1 - w0inv w)^k w0inv
    nil = (ident - amul(alg, w0inv, w)) % p
    acc = ident.copy()
    term = ident.copy()
    for _ in range(alg.dim * max(1, len(cols)) + 1):
        term = amul(alg, term, nil)
        if not np.any(term):
            break
        acc = (acc + term) % p
    return amul(alg, acc, w0inv)


def image_of_idempotent(eps: ChainMap) -> tuple[ProjComplex, ChainMap, ChainMap]:
    """Split a chain-level idempotent: returns (Q, s: Q -> X, r: X -> Q) with r s = 1 and s r = eps."""
    X = eps.source
    alg = X.algebra
    p = alg.p
    terms, sects, rets = {}, {}, {}
    for t, vs in X.terms.items():
        e = eps.comp(t)
        top = top_matrix(alg, e, vs, vs)
        _, J = gf.rref(top, p)
        if not J:
            continue
        _, I = gf.rref(top[:, J].T, p)
        w = e[np.ix_(I, J)]
        winv = amatrix_inverse(alg, w, [vs[i] for i in I], [vs[j] for j in J])
        terms[t] = tuple(vs[j] for j in J)
        sects[t] = e[:, J]
        rets[t] = amul(alg, winv, e[I, :])
    diffs = {}
    for t in terms:
        if t + 1 in terms:
            diffs[t] = amul(alg, amul(alg, rets[t + 1], X.diff(t)), sects[t])
    Q = ProjComplex(alg, terms, diffs, validate=False, name=X.name)
    return Q, ChainMap(Q, X, sects), ChainMap(X, Q, rets)


def _split(X: ProjComplex, rng: random.Random) -> list[ProjComplex]:
    if X.is_zero:
        return []
    parts = _components(X)
    if len(parts) > 1:
        out = []
        for Y in parts:
            out.extend(_split(Y, rng))
        return out
    E = end_algebra(X)
    if E.dim == 0 or E.top_dim == 0:
        return []
    if E.top_dim == 1:
        return [X]
    e = _find_idempotent(E.algebra, rng)
    eps = _combine(E.maps, e, X)
    eps = make_idempotent(eps)
    comp = identity(X) - eps
    comp = make_idempotent(comp)
    Q1 = minimize(image_of_idempotent(eps)[0])
    Q2 = minimize(image_of_idempotent(comp)[0])
    return _split(Q1, rng) + _split(Q2, rng)


def _combine(maps: list[ChainMap], coeffs: np.ndarray, X: ProjComplex) -> ChainMap:
    out = ChainMap(X, X, {})
    for f, c in zip(maps, coeffs):
        if c:
            out = out + f.scale(int(c))
    return out


def decompose(X: ProjComplex, seed: int = 0, minimal: bool = False) -> Decomposition:
    """Krull-Schmidt decomposition into indecomposables with multiplicities."""
    if not minimal:
        X = minimize(X)
    rng = random.Random(seed)
    pieces = _split(X, rng)
    groups: list[list] = []
    for Y in pieces:
        for grp in groups:
            if indecomposables_isomorphic(grp[0], Y, seed=seed):
                grp[1] += 1
                break
        else:
            groups.append([Y, 1])
    groups.sort(key=lambda g: (g[0].lo, g[0].signature()))
    return Decomposition([(Y, m) for Y, m in groups])


def basic_form(X: ProjComplex, seed: int = 0) -> ProjComplex:
    dec = decompose(X, seed=seed)
    return direct_sum([Y for Y, _ in dec.pieces], algebra=X.algebra)
