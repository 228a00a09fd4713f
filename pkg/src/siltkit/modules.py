"""Finite-dimensional right modules given by action matrices, and their projective resolutions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf
from .algebra import Algebra, AlgebraAutomorphism, AlgebraError


class ResolutionBoundExceeded(AlgebraError):
    pass


class RightModule:
    """A right module; ``action[b]`` is the matrix of m -> m * b_b on row vectors.

    Associativity then reads ``action[a] @ action[b] == sum_z mult[a, b, z] action[z]``.
    """

    def __init__(self, algebra: Algebra, action: np.ndarray, name: str = "", validate: bool = True):
        self.algebra = algebra
        self.action = np.asarray(action, dtype=np.int64) % algebra.p
        self.name = name
        if validate:
            self.validate()

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    def __repr__(self):
        return f"RightModule({self.name or '?'}, dim={self.dim})"

    def validate(self) -> None:
        alg, p = self.algebra, self.algebra.p
        d, m = alg.dim, self.dim
        if self.action.shape != (d, m, m):
            raise AlgebraError("action has the wrong shape")
        unit = np.tensordot(alg.one, self.action, axes=(0, 0)) % p
        if not np.array_equal(unit, np.eye(m, dtype=np.int64)):
            raise AlgebraError("module action is not unital")
        flat = self.action.reshape(d, m * m)
        for a in range(d):
            lhs = np.einsum("ij,bjk->bik", self.action[a], self.action) % p
            rhs = gf.matmul(alg.mult[a], flat, p).reshape(d, m, m)
            if not np.array_equal(lhs, rhs):
                raise AlgebraError(f"module action is not associative at {alg.labels[a]}")

    def act(self, v: np.ndarray, a: np.ndarray) -> np.ndarray:
        """v * a for a row vector v and an algebra element a."""
        mat = np.tensordot(np.asarray(a, dtype=np.int64), self.action, axes=(0, 0)) % self.algebra.p
        return gf.matmul(v, mat, self.algebra.p)

    def radical_submodule(self, basis: np.ndarray | None = None) -> np.ndarray:
        """Rows spanning (span of ``basis``) * rad A."""
        p = self.algebra.p
        if basis is None:
            basis = np.eye(self.dim, dtype=np.int64)
        if basis.shape[0] == 0 or not self.algebra.radical:
            return np.zeros((0, self.dim), dtype=np.int64)
        imgs = [gf.matmul(basis, self.action[r], p) for r in self.algebra.radical]
        stack = np.concatenate(imgs, axis=0)
        return gf.column_space(stack.T, p).T

    def vertex_part(self, basis: np.ndarray, v: int) -> np.ndarray:
        """Rows spanning (span of ``basis``) * e_v."""
        p = self.algebra.p
        if basis.shape[0] == 0:
            return basis
        img = gf.matmul(basis, self.action[self.algebra.idempotents[v]], p)
        return gf.column_space(img.T, p).T

    def dimension_vector(self) -> list[int]:
        eye = np.eye(self.dim, dtype=np.int64)
        return [self.vertex_part(eye, v).shape[0] for v in range(self.algebra.n)]

    def socle(self) -> np.ndarray:
        p = self.algebra.p
        if not self.algebra.radical:
            return np.eye(self.dim, dtype=np.int64)
        cons = np.concatenate([self.action[r] for r in self.algebra.radical], axis=1)
        return gf.kernel(cons.T, p).T


@dataclass
class StructureReport:
    top: list[int]
    socle: list[int]
    radical_series: list[int]  # dimensions of M, M rad, M rad^2, ... down to 0

    @property
    def radical_length(self) -> int:
        return len(self.radical_series) - 1


def _vector_by_vertex(module: RightModule, rows: np.ndarray) -> list[int]:
    return [module.vertex_part(rows, v).shape[0] for v in range(module.algebra.n)]


def structure_report(module: RightModule) -> StructureReport:
    p = module.algebra.p
    eye = np.eye(module.dim, dtype=np.int64)
    rad = module.radical_submodule(eye)
    top = [a - b for a, b in zip(_vector_by_vertex(module, eye), _vector_by_vertex(module, rad))]
    soc = _vector_by_vertex(module, module.socle())
    series = [module.dim]
    cur = eye
    while cur.shape[0]:
        cur = module.radical_submodule(cur)
        series.append(cur.shape[0])
    del p
    return StructureReport(top, soc, series)


def projective_module(alg: Algebra, i: int) -> RightModule:
    """e_i A with the right regular action."""
    idx = alg.rows_from(i)
    act = alg.mult[np.ix_(idx, np.arange(alg.dim), idx)].transpose(1, 0, 2)
    return RightModule(alg, act, name=f"P{i + 1}")


def cyclic_quotient(alg: Algebra, i: int, killers) -> RightModule:
    """e_i A / (sum of k A for k in killers)."""
    p = alg.p
    idx = alg.rows_from(i)
    pos = {int(k): j for j, k in enumerate(idx)}
    gens = []
    for k in killers:
        k = np.asarray(k, dtype=np.int64) % p
        outside = [c for c in np.flatnonzero(k) if int(c) not in pos]
        if outside:
            raise AlgebraError("killers must lie in e_i A")
        # k * b for every basis element b
        prods = np.tensordot(k, alg.mult, axes=(0, 0)) % p  # (b, z)
        gens.append(prods[:, idx])
    if gens:
        sub = gf.column_space(np.concatenate(gens, axis=0).T, p)  # columns in e_i A coordinates
    else:
        sub = np.zeros((len(idx), 0), dtype=np.int64)
    keep = gf.complement_columns(sub, np.eye(len(idx), dtype=np.int64), p)
    q = len(keep)
    # projection e_i A -> quotient coordinates (rows = e_i A coordinates)
    full = np.concatenate([sub, np.eye(len(idx), dtype=np.int64)[:, keep]], axis=1)
    solver = gf.ColumnSolver(full, p)
    proj = solver.coords(np.eye(len(idx), dtype=np.int64))[sub.shape[1]:, :].T  # (len idx, q)
    act = np.zeros((alg.dim, q, q), dtype=np.int64)
    reps = np.eye(len(idx), dtype=np.int64)[:, keep].T  # quotient basis as rows in e_i A coords
    for b in range(alg.dim):
        right = alg.mult[np.ix_(idx, [b], idx)][:, 0, :]  # (idx, idx): row m -> m*b
        act[b] = gf.matmul(gf.matmul(reps, right, p), proj, p)
    return RightModule(alg, act, name=f"e{i + 1}A/...")


def twist_module(module: RightModule, sigma: AlgebraAutomorphism) -> RightModule:
    """M_sigma: the same space with m . a = m sigma(a)."""
    p = module.algebra.p
    # action of b becomes action of sigma(b) = sum_z S[z, b] b_z
    act = np.tensordot(sigma.matrix, module.action, axes=(0, 0)) % p
    return RightModule(module.algebra, act, name=f"{module.name}_sigma")


def hom_dimension(m1: RightModule, m2: RightModule) -> int:
    """dim Hom_A(M1, M2), as a fingerprint for module comparisons."""
    p = m1.algebra.p
    a, b = m1.dim, m2.dim
    # f (a x b) with A1_k f = f A2_k for all k; vectorize f row-major
    rows = []
    for k in range(m1.algebra.dim):
        rows.append(np.kron(m1.action[k], np.eye(b, dtype=np.int64)) - np.kron(np.eye(a, dtype=np.int64), m2.action[k].T))
    return gf.kernel(np.concatenate(rows, axis=0) % p, p).shape[1]


def _cover_generators(alg: Algebra, sub: np.ndarray, blocks: list[np.ndarray]):
    """Generators of a submodule of a free module, one per top dimension at each vertex.

    ``sub`` holds row vectors in the coordinates of P = sum e_{v} A, whose blocks
    are listed in ``blocks`` as global basis indices.
    """
    p = alg.p
    mod = _SubmoduleOfFree(alg, blocks)
    rad = mod.times_radical(sub)
    gens = []
    for v in range(alg.n):
        part = mod.times_idempotent(sub, v)
        radpart = mod.times_idempotent(rad, v) if rad.shape[0] else rad
        keep = gf.complement_columns(radpart.T if radpart.shape[0] else np.zeros((sub.shape[1], 0), dtype=np.int64), part.T, p)
        for k in keep:
            gens.append((v, part[k]))
    return gens


class _SubmoduleOfFree:
    def __init__(self, alg: Algebra, blocks: list[np.ndarray]):
        self.alg = alg
        self.blocks = blocks
        self.offsets = np.cumsum([0] + [len(b) for b in blocks])

    def right_mult(self, rows: np.ndarray, b: int) -> np.ndarray:
        out = np.zeros_like(rows)
        for k, idx in enumerate(self.blocks):
            sl = slice(self.offsets[k], self.offsets[k + 1])
            out[:, sl] = gf.matmul(rows[:, sl], self.alg.mult[np.ix_(idx, [b], idx)][:, 0, :], self.alg.p)
        return out

    def times_radical(self, rows: np.ndarray) -> np.ndarray:
        if rows.shape[0] == 0 or not self.alg.radical:
            return np.zeros((0, rows.shape[1]), dtype=np.int64)
        stack = np.concatenate([self.right_mult(rows, r) for r in self.alg.radical], axis=0)
        return gf.column_space(stack.T, self.alg.p).T

    def times_idempotent(self, rows: np.ndarray, v: int) -> np.ndarray:
        return self.right_mult(rows, self.alg.idempotents[v])


def projective_resolution(module: RightModule, degree_bound: int = 32):
    """Minimal projective resolution as a complex in degrees <= 0 (homology M in degree 0)."""
    from .complexes import ProjComplex

    alg, p = module.algebra, module.algebra.p
    d = alg.dim
    eye = np.eye(module.dim, dtype=np.int64)
    rad = module.radical_submodule(eye)
    tops = []
    for v in range(alg.n):
        part = module.vertex_part(eye, v)
        radpart = module.vertex_part(rad, v) if rad.shape[0] else rad
        keep = gf.complement_columns(
            radpart.T if radpart.shape[0] else np.zeros((module.dim, 0), dtype=np.int64), part.T, p
        )
        tops.extend((v, part[k]) for k in keep)
    if not tops:
        return ProjComplex(alg, {}, {})
    # P_0 -> M, e_v a -> m a ; linear map from P_0 coordinates (rows) to M
    blocks = [alg.rows_from(v) for v, _ in tops]
    cover_rows = []
    for (v, m), idx in zip(tops, blocks):
        for b in idx:
            cover_rows.append(module.act(m[None, :], alg.basis_vector(b))[0])
    cover = np.array(cover_rows, dtype=np.int64)  # (dim P0, dim M)
    terms = {0: tuple(v for v, _ in tops)}
    diffs = {}
    kernel_rows = gf.kernel(cover.T, p).T  # rows in P_0 coordinates
    cur_blocks = blocks
    deg = 0
    while kernel_rows.shape[0]:
        if -deg >= degree_bound:
            raise ResolutionBoundExceeded(f"projective resolution does not terminate within {degree_bound} steps")
        gens = _cover_generators(alg, kernel_rows, cur_blocks)
        offsets = np.cumsum([0] + [len(b) for b in cur_blocks])
        # differential entries: component k of generator g lies in e_{v_k} A e_w
        mat = np.zeros((len(cur_blocks), len(gens), d), dtype=np.int64)
        for c, (w, g) in enumerate(gens):
            for k, idx in enumerate(cur_blocks):
                mat[k, c, idx] = g[offsets[k] : offsets[k + 1]]
        new_blocks = [alg.rows_from(w) for w, _ in gens]
        # linear map P_new -> P_cur, rows indexed by P_new coordinates
        rows = []
        for (w, g), idx in zip(gens, new_blocks):
            sub = _SubmoduleOfFree(alg, cur_blocks)
            for b in idx:
                rows.append(sub.right_mult(g[None, :], b)[0])
        lin = np.array(rows, dtype=np.int64)
        deg -= 1
        terms[deg] = tuple(w for w, _ in gens)
        diffs[deg] = mat
        kernel_rows = gf.kernel(lin.T, p).T
        cur_blocks = new_blocks
    return ProjComplex(alg, terms, diffs)
