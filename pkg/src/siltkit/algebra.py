"""Basic split finite-dimensional algebras given by structure constants.

Conventions used throughout the package:

* paths compose left to right, so ``x*y`` means "x, then y";
* vertices are 0-based internally and printed 1-based;
* ``e_i A`` is spanned by the basis paths starting at vertex ``i`` and
  ``Hom(e_j A, e_i A) = e_i A e_j`` acts by left multiplication.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import gf


class AlgebraError(ValueError):
    pass


class InhomogeneousRelation(AlgebraError):
    pass


class NotFiniteDimensional(AlgebraError):
    pass


class NotAnAutomorphism(AlgebraError):
    pass


class NotFrobenius(AlgebraError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int
    label: str = ""

    def __post_init__(self):
        if not self.label:
            object.__setattr__(self, "label", self.name)


@dataclass(frozen=True)
class Quiver:
    vertices: int
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(self.arrows))
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("arrow names must be unique")
        for a in self.arrows:
            if not (0 <= a.source < self.vertices and 0 <= a.target < self.vertices):
                raise AlgebraError(f"arrow {a.name}: endpoint outside 1..{self.vertices}")

    @cached_property
    def by_name(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    def out_arrows(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def resolve(self, tokens, start: int) -> tuple[str, ...] | None:
        """Concrete arrow names for a word of names or family labels read from ``start``.

        Returns None when the word does not exist as a path from ``start``.
        """
        cur = start
        word = []
        for tok in tokens:
            arrow = self.by_name.get(tok)
            if arrow is None:
                cands = [a for a in self.arrows if a.label == tok and a.source == cur]
                if len(cands) > 1:
                    raise AlgebraError(f"label {tok!r} is ambiguous at vertex {cur + 1}")
                arrow = cands[0] if cands else None
            if arrow is None or arrow.source != cur:
                return None
            word.append(arrow.name)
            cur = arrow.target
        return tuple(word)

    def knows(self, token: str) -> bool:
        return token in self.by_name or any(a.label == token for a in self.arrows)


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths, ``terms = ((coeff, word), ...)``."""

    terms: tuple[tuple[int, tuple[str, ...]], ...]

    @property
    def length(self) -> int:
        return len(self.terms[0][1])


def expand_relation(quiver: Quiver, terms) -> list[Relation]:
    """Instantiate a relation written with arrow names or family labels.

    The relation is placed at every start vertex where at least one term exists;
    terms that do not exist from that vertex are dropped there.
    """
    for _, toks in terms:
        for t in toks:
            if not quiver.knows(t):
                raise AlgebraError(f"unknown arrow {t!r}")
    out = []
    for s in range(quiver.vertices):
        inst = []
        for c, toks in terms:
            w = quiver.resolve(toks, s)
            if w is not None:
                inst.append((int(c), w))
        if inst:
            out.append(Relation(tuple(inst)))
    if not out:
        raise AlgebraError("relation does not describe any path in the quiver")
    return out


class Algebra:
    """Structure-constant presentation ``b_a * b_b = sum_z mult[a, b, z] b_z`` over GF(p).

    Vertex-typed algebras (the usual case) carry primitive idempotents, a
    corner ``(source, target)`` for every basis element, and a radical basis;
    the basis is then the idempotents together with the radical basis.
    Abstract algebras (for instance endomorphism algebras) may leave these unset.
    """

    def __init__(
        self,
        p: int,
        labels,
        mult: np.ndarray,
        one: np.ndarray,
        *,
        idempotents=None,
        corners=None,
        radical=None,
        degrees=None,
        quiver: Quiver | None = None,
        words=None,
        name: str = "",
        validate: bool = True,
    ):
        self.p = gf.check_prime(p)
        self.labels = tuple(labels)
        self.mult = np.asarray(mult, dtype=np.int64) % self.p
        self.one = np.asarray(one, dtype=np.int64) % self.p
        d = len(self.labels)
        if self.mult.shape != (d, d, d) or self.one.shape != (d,):
            raise AlgebraError("structure constants do not match the basis size")
        self.idempotents = tuple(idempotents) if idempotents is not None else None
        self.corners = tuple(tuple(c) for c in corners) if corners is not None else None
        self.radical = tuple(radical) if radical is not None else None
        self.degrees = tuple(degrees) if degrees is not None else None
        self.quiver = quiver
        self.words = tuple(words) if words is not None else None
        self.relations = ()
        self.name = name
        self._mult2d = self.mult.reshape(d * d, d).astype(np.float64)
        if validate:
            self.validate()

    # -- basic accessors -------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def n(self) -> int:
        return len(self.idempotents) if self.idempotents is not None else 0

    def __repr__(self):
        return f"Algebra({self.name or 'anonymous'}, dim={self.dim}, p={self.p})"

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def idempotent(self, i: int) -> np.ndarray:
        return self.basis_vector(self.idempotents[i])

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def element(self, label: str) -> np.ndarray:
        return self.basis_vector(self.index(label))

    # -- multiplication --------------------------------------------------
    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        outer = np.outer(a, b).reshape(-1) % self.p
        return _exact_vecmat(outer, self._mult2d, self.mult, self.p)

    def mul_many(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """Row-wise products ``left[k] * right[k]``."""
        d = self.dim
        outer = (left[:, :, None] * right[:, None, :]).reshape(len(left), d * d) % self.p
        return _exact_vecmat(outer, self._mult2d, self.mult, self.p)

    def left_matrix(self, a: np.ndarray) -> np.ndarray:
        """Matrix of b -> a*b, acting on column coordinate vectors."""
        return np.tensordot(np.asarray(a, dtype=np.int64), self.mult, axes=(0, 0)).T % self.p

    def right_matrix(self, a: np.ndarray) -> np.ndarray:
        """Matrix of b -> b*a."""
        return np.tensordot(self.mult, np.asarray(a, dtype=np.int64), axes=(1, 0)).T % self.p

    def power(self, a: np.ndarray, k: int) -> np.ndarray:
        out = self.one.copy()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def poly_eval(self, f, a: np.ndarray) -> np.ndarray:
        out = self.zero()
        for c in reversed(f):
            out = (self.mul(out, a) + c * self.one) % self.p
        return out

    # -- vertex data -----------------------------------------------------
    @cached_property
    def _corner_index(self) -> dict[tuple[int, int], np.ndarray]:
        out: dict[tuple[int, int], list[int]] = {}
        for k, c in enumerate(self.corners or ()):
            out.setdefault(c, []).append(k)
        return {c: np.array(v, dtype=np.int64) for c, v in out.items()}

    def corner(self, i: int, j: int) -> np.ndarray:
        """Basis indices spanning ``e_i A e_j``."""
        return self._corner_index.get((i, j), np.zeros(0, dtype=np.int64))

    def corner_basis(self, i: int, j: int) -> list[str]:
        return [self.labels[k] for k in self.corner(i, j)]

    @cached_property
    def cartan(self) -> np.ndarray:
        """``C[i, j] = dim e_i A e_j``."""
        return np.array([[len(self.corner(i, j)) for j in range(self.n)] for i in range(self.n)], dtype=np.int64)

    def rows_from(self, i: int) -> np.ndarray:
        """Basis indices of ``e_i A``."""
        return np.array([k for k, c in enumerate(self.corners) if c[0] == i], dtype=np.int64)

    def top(self, a: np.ndarray) -> np.ndarray:
        """Image of ``a`` in ``A / rad A = k^n``."""
        return np.asarray(a)[..., list(self.idempotents)]

    @cached_property
    def idempotent_of_index(self) -> dict[int, int]:
        return {b: v for v, b in enumerate(self.idempotents or ())}

    # -- paths -----------------------------------------------------------
    def arrow_element(self, name: str) -> np.ndarray:
        return self.path([name])

    def path(self, word) -> np.ndarray:
        """Element represented by a word of concrete arrow names."""
        if self.quiver is None:
            raise AlgebraError("algebra has no quiver presentation")
        word = tuple(word)
        if not word:
            raise AlgebraError("empty path; use idempotent()")
        try:
            k = self.words.index(word)
            return self.basis_vector(k)
        except ValueError:
            pass
        out = None
        for a in word:
            try:
                vec = self.basis_vector(self.words.index((a,)))
            except ValueError:
                return self.zero()
            out = vec if out is None else self.mul(out, vec)
        return out

    # -- validation ------------------------------------------------------
    def validate(self) -> None:
        p, d = self.p, self.dim
        # unit
        m = self.mult.astype(np.float64)
        left = np.mod(np.tensordot(self.one.astype(np.float64), m, axes=(0, 0)), p)
        right = np.mod(np.tensordot(m, self.one.astype(np.float64), axes=(1, 0)), p)
        eye = np.eye(d)
        if not (np.array_equal(left, eye) and np.array_equal(right, eye)):
            raise AlgebraError("unit element does not act as identity")
        # associativity on every basis triple
        for a in range(d):
            ab_c = gf.matmul(self.mult[a], self.mult.reshape(d, d * d), p)  # (b, c*z)
            a_bc = gf.matmul(self.mult.reshape(d * d, d), self.mult[a], p)  # (b*c, z)
            if not np.array_equal(ab_c.reshape(d, d, d), a_bc.reshape(d, d, d)):
                bad = np.argwhere(ab_c.reshape(d, d, d) != a_bc.reshape(d, d, d))[0]
                raise AlgebraError(
                    f"associativity fails on basis triple ({self.labels[a]}, {self.labels[bad[0]]}, {self.labels[bad[1]]})"
                )
        if self.idempotents is None:
            return
        n = self.n
        total = np.zeros(d, dtype=np.int64)
        for i in range(n):
            ei = self.idempotent(i)
            total = (total + ei) % p
            for j in range(n):
                prod = self.mul(ei, self.idempotent(j))
                want = ei if i == j else self.zero()
                if not np.array_equal(prod, want):
                    raise AlgebraError("idempotents are not pairwise orthogonal")
        if not np.array_equal(total, self.one):
            raise AlgebraError("idempotents do not sum to 1")
        if self.corners is not None:
            for k, (i, j) in enumerate(self.corners):
                b = self.basis_vector(k)
                if not np.array_equal(self.mul(self.mul(self.idempotent(i), b), self.idempotent(j)), b):
                    raise AlgebraError(f"basis element {self.labels[k]} is not in corner ({i + 1},{j + 1})")
        if self.radical is not None:
            if sorted(set(self.radical) | set(self.idempotents)) != list(range(d)) or set(self.radical) & set(
                self.idempotents
            ):
                raise AlgebraError("basis must be idempotents plus a radical basis")
            rad = list(self.radical)
            tops = [self.mult[rad][..., list(self.idempotents)], self.mult[:, rad][..., list(self.idempotents)]]
            if any(np.any(t) for t in tops):
                raise AlgebraError("declared radical is not an ideal")
            if not self.radical_is_nilpotent():
                raise AlgebraError("declared radical is not a nilpotent ideal")

    def radical_is_nilpotent(self) -> bool:
        rad = list(self.radical)
        if not rad:
            return True
        basis = np.eye(self.dim, dtype=np.int64)[:, rad]  # columns span current power
        for _ in range(self.dim + 1):
            prods = []
            for r in rad:
                R = self.right_matrix(self.basis_vector(r))
                prods.append(gf.matmul(R, basis, self.p))
            nxt = gf.column_space(np.concatenate(prods, axis=1), self.p)
            if nxt.shape[1] == 0:
                return True
            # the radical ideal condition: each power stays inside span(rad)
            if np.any(nxt[list(self.idempotents), :] % self.p):
                return False
            if nxt.shape[1] >= basis.shape[1]:
                return False
            basis = nxt
        return False

    @cached_property
    def loewy_length(self) -> int:
        """Smallest L with rad^L = 0 (0 for the zero algebra)."""
        if self.radical is None:
            raise AlgebraError("radical unknown")
        rad = list(self.radical)
        if not rad:
            return 1
        basis = np.eye(self.dim, dtype=np.int64)[:, rad]
        length = 1
        while basis.shape[1]:
            prods = [gf.matmul(self.right_matrix(self.basis_vector(r)), basis, self.p) for r in rad]
            basis = gf.column_space(np.concatenate(prods, axis=1), self.p)
            length += 1
        return length


def _exact_vecmat(rows: np.ndarray, mat_f: np.ndarray, mat_i: np.ndarray, p: int) -> np.ndarray:
    if rows.shape[-1] * (p - 1) ** 2 < 2**53:
        return np.mod(rows.astype(np.float64) @ mat_f, p).astype(np.int64)
    d = mat_i.shape[-1]
    return gf.matmul(rows, mat_i.reshape(-1, d), p)


def amul(alg: Algebra, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Product of matrices with algebra entries, shapes (R, K, d) @ (K, C, d) -> (R, C, d)."""
    r, k, d = x.shape
    k2, c, _ = y.shape
    if k != k2:
        raise ValueError("inner dimensions differ")
    if r == 0 or c == 0 or k == 0:
        return np.zeros((r, c, d), dtype=np.int64)
    p = alg.p
    if k * (p - 1) ** 2 < 2**53:
        tmp = np.einsum("rka,kcb->rcab", x.astype(np.float64), y.astype(np.float64), optimize=True)
        tmp = np.mod(tmp, p).reshape(r * c, d * d)
    else:
        tmp = np.mod(np.einsum("rka,kcb->rcab", x.astype(object), y.astype(object)), p).reshape(r * c, d * d)
        tmp = tmp.astype(np.int64)
    return _exact_vecmat(tmp, alg._mult2d, alg.mult, p).reshape(r, c, d)


# ---------------------------------------------------------------------------
# path algebras


def path_algebra(quiver: Quiver, relations, p: int = gf.DEFAULT_PRIME, max_len: int = 64, name: str = "") -> Algebra:
    """Path algebra of ``quiver`` modulo the two-sided ideal of length-homogeneous ``relations``.

    The quotient is built degree by degree: degree ``j+1`` is the space of
    (basis path of degree j) x (arrow) modulo the images of relations, so the
    chosen basis consists of paths.
    """
    p = gf.check_prime(p)
    arrows = quiver.by_name
    rels: list[Relation] = []
    for rel in relations:
        if not isinstance(rel, Relation):
            rel = Relation(tuple((int(c), tuple(w)) for c, w in rel))
        terms = [(c % p, tuple(w)) for c, w in rel.terms if c % p]
        if not terms:
            continue
        lengths = {len(w) for _, w in terms}
        if len(lengths) != 1:
            raise InhomogeneousRelation(f"relation mixes path lengths {sorted(lengths)}")
        if 0 in lengths:
            raise InhomogeneousRelation("relations must have positive length")
        ends = set()
        for _, w in terms:
            for a in w:
                if a not in arrows:
                    raise AlgebraError(f"unknown arrow {a!r} in relation")
            for a, b in itertools.pairwise(w):
                if arrows[a].target != arrows[b].source:
                    raise AlgebraError(f"path {'*'.join(w)} is not composable")
            ends.add((arrows[w[0]].source, arrows[w[-1]].target))
        if len(ends) != 1:
            raise AlgebraError("relation terms are not parallel paths")
        rels.append(Relation(tuple(terms)))

    n = quiver.vertices
    # level j: list of (word, source, target)
    levels = [[((), v, v) for v in range(n)]]
    right: list[dict[str, np.ndarray]] = []  # right[j][arrow]: matrix B_j -> B_{j+1}
    while True:
        j = len(levels) - 1
        cur = levels[j]
        cand = [(b, a.name) for b, (_, _, t) in enumerate(cur) for a in quiver.out_arrows(t)]
        if not cand:
            break
        if j + 1 > max_len:
            raise NotFiniteDimensional(f"not finite-dimensional within max_len={max_len}")
        cidx = {c: k for k, c in enumerate(cand)}
        kvecs = []
        for rel in rels:
            ell = rel.length
            if ell > j + 1:
                continue
            src = arrows[rel.terms[0][1][0]].source
            base = levels[j + 1 - ell]
            for b, (_, _, t) in enumerate(base):
                if t != src:
                    continue
                vec = np.zeros(len(cand), dtype=np.int64)
                for c, w in rel.terms:
                    v = np.zeros(len(base), dtype=np.int64)
                    v[b] = 1
                    deg = j + 1 - ell
                    for a in w[:-1]:
                        v = gf.matmul(right[deg][a], v, p)
                        deg += 1
                    for bb in np.flatnonzero(v):
                        vec[cidx[(int(bb), w[-1])]] += c * v[bb]
                if np.any(vec % p):
                    kvecs.append(vec % p)
        if kvecs:
            red, piv = gf.rref(np.array(kvecs), p)
        else:
            red, piv = np.zeros((0, len(cand)), dtype=np.int64), []
        pivset = set(piv)
        free = [c for c in range(len(cand)) if c not in pivset]
        proj = np.zeros((len(free), len(cand)), dtype=np.int64)
        fpos = {c: k for k, c in enumerate(free)}
        for c in free:
            proj[fpos[c], c] = 1
        for i, c in enumerate(piv):
            proj[:, c] = (-red[i, free]) % p
        nxt = []
        for c in free:
            b, a = cand[c]
            word, s, _ = cur[b]
            nxt.append((word + (a,), s, arrows[a].target))
        rmaps = {}
        for a in quiver.arrows:
            m = np.zeros((len(free), len(cur)), dtype=np.int64)
            for b in range(len(cur)):
                k = cidx.get((b, a.name))
                if k is not None:
                    m[:, b] = proj[:, k]
            rmaps[a.name] = m
        right.append(rmaps)
        if not nxt:
            break
        levels.append(nxt)

    offsets = np.cumsum([0] + [len(lv) for lv in levels])
    basis = [item for lv in levels for item in lv]
    d = len(basis)
    mult = np.zeros((d, d, d), dtype=np.int64)
    for ci, (wc, sc, tc) in enumerate(basis):
        jc = len(wc)
        for i, lv in enumerate(levels):
            if i + jc >= len(levels):
                break
            if jc == 0:
                for b, (_, _, t) in enumerate(lv):
                    if t == sc:
                        mult[offsets[i] + b, ci, offsets[i] + b] = 1
                continue
            img = np.eye(len(lv), dtype=np.int64)
            deg = i
            for a in wc:
                img = gf.matmul(right[deg][a], img, p)
                deg += 1
            for b, (_, _, t) in enumerate(lv):
                if t == sc:
                    mult[offsets[i] + b, ci, offsets[i + jc] : offsets[i + jc + 1]] = img[:, b]
    one = np.zeros(d, dtype=np.int64)
    one[:n] = 1
    labels = [f"e{v + 1}" if not w else "*".join(w) for w, v, _ in basis]
    alg = Algebra(
        p,
        labels,
        mult,
        one,
        idempotents=range(n),
        corners=[(s, t) for _, s, t in basis],
        radical=range(n, d),
        degrees=[len(w) for w, _, _ in basis],
        quiver=quiver,
        words=[w for w, _, _ in basis],
        name=name,
    )
    alg.relations = tuple(rels)
    return alg


def semisimple_field(p: int = gf.DEFAULT_PRIME) -> Algebra:
    """The one-vertex algebra k."""
    return path_algebra(Quiver(1, ()), [], p, name="k")


# ---------------------------------------------------------------------------
# automorphisms and algebra maps


class AlgebraAutomorphism:
    """An algebra automorphism, stored as the matrix whose column j is the image of basis j."""

    def __init__(self, algebra: Algebra, matrix: np.ndarray, vertex_perm, inverse: np.ndarray):
        self.algebra = algebra
        self.matrix = np.asarray(matrix, dtype=np.int64) % algebra.p
        self.vertex_perm = tuple(vertex_perm)
        self.inverse_matrix = inverse

    def __call__(self, a: np.ndarray) -> np.ndarray:
        return gf.matmul(self.matrix, np.asarray(a, dtype=np.int64), self.algebra.p)

    def inverse(self) -> AlgebraAutomorphism:
        inv_perm = [0] * len(self.vertex_perm)
        for i, j in enumerate(self.vertex_perm):
            inv_perm[j] = i
        return AlgebraAutomorphism(self.algebra, self.inverse_matrix, inv_perm, self.matrix)

    def compose(self, other: AlgebraAutomorphism) -> AlgebraAutomorphism:
        """self after other."""
        p = self.algebra.p
        return AlgebraAutomorphism(
            self.algebra,
            gf.matmul(self.matrix, other.matrix, p),
            [self.vertex_perm[other.vertex_perm[i]] for i in range(len(self.vertex_perm))],
            gf.matmul(other.inverse_matrix, self.inverse_matrix, p),
        )

    def order(self, limit: int = 64) -> int:
        cur = self.matrix
        eye = np.eye(self.algebra.dim, dtype=np.int64)
        for k in range(1, limit + 1):
            if np.array_equal(cur, eye):
                return k
            cur = gf.matmul(self.matrix, cur, self.algebra.p)
        raise AlgebraError("automorphism order exceeds limit")

    def is_identity(self) -> bool:
        return np.array_equal(self.matrix, np.eye(self.algebra.dim, dtype=np.int64))


def check_homomorphism(src: Algebra, dst: Algebra, matrix: np.ndarray) -> None:
    """Raise if ``matrix`` (dst.dim x src.dim) is not a unital multiplicative map."""
    p = src.p
    m = np.asarray(matrix, dtype=np.int64) % p
    if not np.array_equal(gf.matmul(m, src.one, p), dst.one):
        raise NotAnAutomorphism("map is not unital")
    d = src.dim
    for a in range(d):
        img_a = m[:, a]
        lhs = gf.matmul(m, src.mult[a].T, p)  # column b: image of a*b
        La = dst.left_matrix(img_a)
        rhs = gf.matmul(La, m, p)  # column b: image(a)*image(b)
        if not np.array_equal(lhs, rhs):
            b = int(np.argwhere(lhs != rhs)[0][1])
            raise NotAnAutomorphism(
                f"not multiplicative on ({src.labels[a]}, {src.labels[b]}): "
                f"phi(ab) != phi(a)phi(b)"
            )


def validate_automorphism(alg: Algebra, images) -> AlgebraAutomorphism:
    p = alg.p
    m = np.asarray(images, dtype=np.int64) % p
    if m.shape != (alg.dim, alg.dim):
        raise NotAnAutomorphism("image matrix must be square of size dim A")
    try:
        inv_m = gf.inverse(m, p)
    except ZeroDivisionError:
        raise NotAnAutomorphism("map is not invertible") from None
    check_homomorphism(alg, alg, m)
    perm = []
    if alg.idempotents is not None:
        for i in range(alg.n):
            img = m[:, alg.idempotents[i]]
            hits = [j for j in range(alg.n) if np.array_equal(img, alg.idempotent(j))]
            if len(hits) != 1:
                raise NotAnAutomorphism(f"image of e{i + 1} is not a vertex idempotent")
            perm.append(hits[0])
    return AlgebraAutomorphism(alg, m, perm, inv_m)


def identity_automorphism(alg: Algebra) -> AlgebraAutomorphism:
    return validate_automorphism(alg, np.eye(alg.dim, dtype=np.int64))


def map_from_arrows(src: Algebra, dst: Algebra, vertex_map, arrow_images: dict) -> np.ndarray:
    """Matrix of the algebra map sending e_i to e_{vertex_map[i]} and each arrow to the given element."""
    p = src.p
    m = np.zeros((dst.dim, src.dim), dtype=np.int64)
    for k, w in enumerate(src.words):
        if not w:
            m[:, k] = dst.idempotent(vertex_map[src.corners[k][0]])
            continue
        img = None
        for a in w:
            v = np.asarray(arrow_images[a], dtype=np.int64) % p
            img = v if img is None else dst.mul(img, v)
        m[:, k] = img
    check_homomorphism(src, dst, m)
    return m


def quiver_automorphism(alg: Algebra, vertex_map, arrow_map: dict[str, str]) -> AlgebraAutomorphism:
    """Automorphism induced by a quiver automorphism (arrow names to arrow names)."""
    images = {a: alg.arrow_element(b) for a, b in arrow_map.items()}
    return validate_automorphism(alg, map_from_arrows(alg, alg, vertex_map, images))


def unit_inverse(alg: Algebra, u: np.ndarray) -> np.ndarray:
    """Inverse of a unit ``u``: scale its top to 1 and sum the geometric series of the radical part."""
    p = alg.p
    top = alg.top(u)
    if np.any(top == 0):
        raise AlgebraError("element is not a unit")
    scale = np.zeros(alg.dim, dtype=np.int64)
    for v in range(alg.n):
        scale[alg.idempotents[v]] = gf.inv(int(top[v]), p)
    # u = t (1 - r) with t = top(u) invertible semisimple part
    t_inv = scale
    r = (alg.one - alg.mul(t_inv, u)) % p
    acc = alg.one.copy()
    term = alg.one.copy()
    for _ in range(alg.dim + 1):
        term = alg.mul(term, r)
        if not np.any(term):
            break
        acc = (acc + term) % p
    return alg.mul(acc, t_inv)


def inner_conjugation(alg: Algebra, u: np.ndarray) -> np.ndarray:
    """Matrix of x -> u x u^{-1}."""
    u_inv = unit_inverse(alg, u)
    return gf.matmul(alg.left_matrix(u), alg.right_matrix(u_inv), alg.p)


# ---------------------------------------------------------------------------
# self-injectivity and Frobenius forms


@dataclass
class SelfInjectivityReport:
    self_injective: bool
    nakayama_permutation: tuple[int, ...] | None
    weakly_symmetric: bool
    symmetric: bool
    socle_vectors: list[list[int]]
    socle_elements: list[np.ndarray] = field(repr=False, default_factory=list)

    def as_dict(self) -> dict:
        return {
            "self_injective": self.self_injective,
            "nakayama_permutation": None
            if self.nakayama_permutation is None
            else [i + 1 for i in self.nakayama_permutation],
            "weakly_symmetric": self.weakly_symmetric,
            "symmetric": self.symmetric,
            "socle_vectors": self.socle_vectors,
        }


def socle_of_projective(alg: Algebra, i: int) -> np.ndarray:
    """Basis (columns, global coordinates) of soc(e_i A) = {m in e_i A : m rad A = 0}."""
    p = alg.p
    idx = alg.rows_from(i)
    if not alg.radical:
        return np.eye(alg.dim, dtype=np.int64)[:, idx]
    rad = list(alg.radical)
    # constraint[(r, z), k] = mult[idx_k, r, z]
    cons = alg.mult[np.ix_(idx, rad)].transpose(1, 2, 0).reshape(len(rad) * alg.dim, len(idx))
    ker = gf.kernel(cons, p)
    out = np.zeros((alg.dim, ker.shape[1]), dtype=np.int64)
    out[idx, :] = ker
    return out


def self_injectivity_report(alg: Algebra, check_symmetric: bool = True) -> SelfInjectivityReport:
    n = alg.n
    vectors, elements, perm = [], [], []
    simple = True
    for i in range(n):
        soc = socle_of_projective(alg, i)
        vec = []
        for j in range(n):
            cols = alg.corner(i, j)
            vec.append(gf.rank(soc[cols, :], alg.p) if len(cols) and soc.shape[1] else 0)
        vectors.append(vec)
        if soc.shape[1] != 1:
            simple = False
            elements.append(soc)
            perm.append(None)
            continue
        s = soc[:, 0]
        elements.append(s)
        perm.append(int(np.flatnonzero(vec)[0]))
    self_inj = simple and sorted(perm) == list(range(n))
    pi = tuple(perm) if self_inj else None
    weak = self_inj and all(pi[i] == i for i in range(n))
    sym = False
    if weak and check_symmetric:
        sym = frobenius_form(alg, require_symmetric=True) is not None
    return SelfInjectivityReport(self_inj, pi, weak, sym, vectors, elements)


@dataclass
class FrobeniusForm:
    functional: np.ndarray
    gram: np.ndarray
    nakayama: AlgebraAutomorphism
    symmetric: bool

    def __call__(self, a: np.ndarray, b: np.ndarray) -> int:
        return int(a @ self.gram @ b % self.nakayama.algebra.p)


def _commutator_constraints(alg: Algebra) -> np.ndarray:
    d = alg.dim
    diff = (alg.mult - alg.mult.transpose(1, 0, 2)) % alg.p
    return diff.reshape(d * d, d)


def frobenius_form(alg: Algebra, require_symmetric: bool = False, seed: int | None = None):
    """An associative nondegenerate form beta(a, b) = lambda(ab) and its Nakayama automorphism.

    Every associative form has this shape, so the solution space is the dual
    space (or the functionals killing commutators, for symmetric forms).
    Nondegeneracy is equivalent to lambda being nonzero on each socle line
    soc(e_i A). Returns None when ``require_symmetric`` and no symmetric form
    exists; raises :class:`NotFrobenius` for algebras that are not self-injective.
    """
    p, d, n = alg.p, alg.dim, alg.n
    rep = self_injectivity_report(alg, check_symmetric=False)
    if not rep.self_injective:
        raise NotFrobenius("no associative nondegenerate form (algebra is not self-injective)")
    rng = random.Random(seed)
    if require_symmetric:
        space = gf.kernel(_commutator_constraints(alg), p)  # columns: admissible functionals
    else:
        space = np.eye(d, dtype=np.int64)
    socle = np.stack(rep.socle_elements, axis=1)  # d x n
    values = gf.matmul(socle.T, space, p)  # n x dim(space): lambda -> (lambda(s_i))
    if space.shape[1] == 0 or np.any(np.all(values == 0, axis=1)):
        if require_symmetric:
            return None
        raise NotFrobenius("no nondegenerate functional")
    image = gf.column_space(values, p)
    k = image.shape[1]
    target = None
    if seed is not None:
        for _ in range(64):
            cand = gf.matmul(image, np.array([rng.randrange(p) for _ in range(k)], dtype=np.int64), p)
            if np.all(cand != 0):
                target = cand
                break
    if target is None and k == n:
        target = np.ones(n, dtype=np.int64)
    if target is None:
        for coeffs in _enumerate_vectors(k, p, limit=200000):
            cand = gf.matmul(image, coeffs, p)
            if np.all(cand != 0):
                target = cand
                break
    if target is None:
        if require_symmetric:
            return None
        raise NotFrobenius("no nondegenerate functional found")
    sol = gf.solve(values, target, p)
    lam_coeffs = sol.particular
    if seed is not None and sol.kernel_basis.shape[1]:
        extra = np.array([rng.randrange(p) for _ in range(sol.kernel_basis.shape[1])], dtype=np.int64)
        lam_coeffs = (lam_coeffs + gf.matmul(sol.kernel_basis, extra, p)) % p
    lam = gf.matmul(space, lam_coeffs, p)
    gram = np.tensordot(alg.mult, lam, axes=(2, 0)) % p
    try:
        gram_inv = gf.inverse(gram, p)
    except ZeroDivisionError:
        raise NotFrobenius("constructed form is degenerate") from None
    nak = gf.matmul(gram_inv, gram.T, p)
    nak = _normalize_nakayama(alg, nak)
    return FrobeniusForm(lam, gram, validate_automorphism(alg, nak), bool(require_symmetric))


def _enumerate_vectors(k: int, p: int, limit: int):
    import itertools

    count = 0
    for vals in itertools.product(range(1, p), repeat=k) if k else [()]:
        yield np.array(vals, dtype=np.int64)
        count += 1
        if count >= limit:
            return
    if k:
        for vals in itertools.product(range(p), repeat=k):
            if 0 in vals:
                yield np.array(vals, dtype=np.int64)
                count += 1
                if count >= 2 * limit:
                    return


def _normalize_nakayama(alg: Algebra, nak: np.ndarray) -> np.ndarray:
    """Compose with an inner automorphism so that vertex idempotents map to vertex idempotents."""
    p = alg.p
    u = alg.zero()
    for i in range(alg.n):
        f = nak[:, alg.idempotents[i]]
        top = alg.top(f)
        hits = np.flatnonzero(top)
        if len(hits) != 1 or top[hits[0]] != 1:
            raise AlgebraError("image of a primitive idempotent has unexpected top")
        u = (u + alg.mul(alg.idempotent(int(hits[0])), f)) % p
    return gf.matmul(inner_conjugation(alg, u), nak, p)


def nakayama_automorphism(alg: Algebra, seed: int | None = None) -> AlgebraAutomorphism:
    return frobenius_form(alg, seed=seed).nakayama


# ---------------------------------------------------------------------------
# twisted trivial extensions


@dataclass
class TrivialExtension:
    algebra: Algebra
    base: Algebra
    twist: AlgebraAutomorphism
    inclusion: np.ndarray  # (2d x d)

    def include(self, a: np.ndarray) -> np.ndarray:
        return gf.matmul(self.inclusion, a, self.algebra.p)

    def dual(self, k: int) -> np.ndarray:
        """The element (0, b_k^*) of the dual part."""
        return self.algebra.basis_vector(self.base.dim + k)

    def formula_nakayama(self) -> AlgebraAutomorphism:
        """(a, f) -> (sigma(a), f o sigma^{-1})."""
        d = self.base.dim
        m = np.zeros((2 * d, 2 * d), dtype=np.int64)
        m[:d, :d] = self.twist.matrix
        m[d:, d:] = self.twist.inverse_matrix.T
        return validate_automorphism(self.algebra, m)


def twisted_trivial_extension(alg: Algebra, sigma: AlgebraAutomorphism, name: str = "") -> TrivialExtension:
    """A x| _sigma DA with (a, f)(b, g) = (ab, sigma(a) g + f b).

    Here (c g)(x) = g(x c) and (f b)(x) = f(b x) are the bimodule actions on DA.
    """
    p, d = alg.p, alg.dim
    S = sigma.matrix
    big = np.zeros((2 * d, 2 * d, 2 * d), dtype=np.int64)
    big[:d, :d, :d] = alg.mult
    # (b_i, 0)(0, b_j^*) has coordinate sum_l S[l, i] mult[k, l, j] at b_k^*
    big[:d, d:, d:] = np.einsum("li,klj->ijk", S, alg.mult) % p
    # (0, b_i^*)(b_j, 0) has coordinate mult[j, k, i] at b_k^*
    big[d:, :d, d:] = np.einsum("jki->ijk", alg.mult) % p
    one = np.concatenate([alg.one, np.zeros(d, dtype=np.int64)])
    inv_perm = sigma.inverse().vertex_perm
    corners = list(alg.corners) + [(inv_perm[t], s) for s, t in alg.corners]
    labels = list(alg.labels) + [f"D({lab})" for lab in alg.labels]
    radical = list(alg.radical) + list(range(d, 2 * d))
    lam = Algebra(
        p,
        labels,
        big,
        one,
        idempotents=alg.idempotents,
        corners=corners,
        radical=radical,
        quiver=alg.quiver,
        # dual basis elements are not paths; None never matches a word lookup
        words=list(alg.words) + [None] * d if alg.words is not None else None,
        name=name or f"T_sigma({alg.name})",
    )
    incl = np.zeros((2 * d, d), dtype=np.int64)
    incl[:d, :d] = np.eye(d, dtype=np.int64)
    return TrivialExtension(lam, alg, sigma, incl)


# ---------------------------------------------------------------------------
# radicals of abstract algebras


def radical_basis(alg: Algebra) -> np.ndarray:
    """Basis (columns) of the Jacobson radical, valid in every characteristic.

    Uses the integer-lift trace functionals on the left regular representation:
    I_{-1} = A and I_i = {a in I_{i-1} : g_i(ab) = 0 for all b}, where
    g_i(c) = Tr(L~_c^{p^i}) / p^i mod p for an integer lift L~_c; the radical
    is I_l with l = floor(log_p(dim A)).
    """
    p, d = alg.p, alg.dim
    if d == 0:
        return np.zeros((0, 0), dtype=np.int64)
    levels = 0
    while p ** (levels + 1) <= d:
        levels += 1
    current = np.eye(d, dtype=np.int64)
    left = [alg.left_matrix(alg.basis_vector(k)) for k in range(d)]
    for i in range(levels + 1):
        if current.shape[1] == 0:
            break
        modulus = p ** (i + 1)
        rows = []
        for col in range(current.shape[1]):
            a = current[:, col]
            La = sum(int(a[k]) * left[k] for k in np.flatnonzero(a)) % p
            vals = []
            for b in range(d):
                c_mat = gf.matmul(La, left[b], p)  # left mult by a*b
                vals.append(_lifted_trace(c_mat, p, i, modulus))
            rows.append(vals)
        g = np.array(rows, dtype=np.int64).T  # (b, col)
        ker = gf.kernel(g, p)
        current = gf.matmul(current, ker, p) if ker.shape[1] else np.zeros((d, 0), dtype=np.int64)
    return current


def _lifted_trace(mat: np.ndarray, p: int, i: int, modulus: int) -> int:
    if i == 0:
        return int(np.trace(mat) % p)
    m = mat.astype(object)
    power = np.eye(mat.shape[0], dtype=object)
    base = m
    e = p**i
    while e:
        if e & 1:
            power = np.mod(power.dot(base), modulus)
        base = np.mod(base.dot(base), modulus)
        e >>= 1
    tr = int(np.trace(power)) % modulus
    if tr % (p**i):
        raise AlgebraError("lifted trace not divisible; radical computation invariant broken")
    return (tr // p**i) % p
