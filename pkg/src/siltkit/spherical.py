"""Spherical objects and spherical twists in K^b(proj A)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .complexes import (
    ChainMap,
    ProjComplex,
    Triangle,
    cone,
    direct_sum,
    hom_dim,
    hom_space,
    hom_table,
    hom_window,
    minimize,
    shift,
    stalk,
)


@dataclass
class SphericalReport:
    dimension: int
    end_table: dict[int, int]
    pairing: dict[int, list[tuple[int, int, int]]] = field(default_factory=dict)  # vertex -> (m, lhs, rhs)
    end_ok: bool = False
    pairing_ok: bool = False

    @property
    def verdict(self) -> bool:
        return self.end_ok and self.pairing_ok

    def as_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "end_table": {str(k): v for k, v in sorted(self.end_table.items())},
            "end_ok": self.end_ok,
            "pairing_ok": self.pairing_ok,
            "verdict": self.verdict,
        }


def spherical_check(E: ProjComplex, d: int) -> SphericalReport:
    """End table 1 exactly at 0 and d, plus the duality dim Hom(E, P_j[m]) = dim Hom(P_j, E[d-m])."""
    table = hom_table(E, E)
    want = {0: 1, d: 1} if d else {0: 2}
    end_ok = all(table.get(m, 0) == want.get(m, 0) for m in set(table) | set(want))
    alg = E.algebra
    pairing, ok = {}, True
    for j in range(alg.n):
        P = stalk(alg, [j])
        rows = []
        shifts = set(hom_window(E, P)) | {d - m for m in hom_window(P, E)}
        for m in sorted(shifts):
            lhs, rhs = hom_dim(E, P, m), hom_dim(P, E, d - m)
            rows.append((m, lhs, rhs))
            ok = ok and lhs == rhs
        pairing[j] = rows
    return SphericalReport(d, table, pairing, end_ok, ok)


def hom_orthogonal(X: ProjComplex, Y: ProjComplex) -> bool:
    return all(v == 0 for v in hom_table(X, Y).values()) and all(v == 0 for v in hom_table(Y, X).values())


@dataclass
class TwistResult:
    twist: ProjComplex
    triangle: Triangle
    evaluation_degrees: dict[int, int]  # m -> dim Hom(E, X[m])


def evaluation_map(E: ProjComplex, X: ProjComplex, bases: dict | None = None) -> tuple[ChainMap, dict[int, int]]:
    """sum_m Hom(E, X[m]) (x) E[-m] -> X, assembled from a basis of each Hom-space."""
    alg = X.algebra
    d = alg.dim
    sources, blocks, dims = [], [], {}
    for m in hom_window(E, X):
        basis = bases[m] if bases and m in bases else hom_space(E, X, m).basis
        if not basis:
            continue
        dims[m] = len(basis)
        Em = shift(E, -m)
        for phi in basis:
            sources.append(Em)
            # phi: E -> X[m]; phi[-m]: E[-m] -> X has component phi^{t-m} in degree t
            blocks.append({t + m: c for t, c in phi.comps.items()})
    S = direct_sum(sources, algebra=alg)
    comps = {}
    for t in S.degrees:
        rows = len(X.term(t))
        if rows == 0:
            continue
        mat = np.zeros((rows, len(S.term(t)), d), dtype=np.int64)
        c0 = 0
        for src, blk in zip(sources, blocks):
            w = len(src.term(t))
            if w and t in blk:
                mat[:, c0 : c0 + w] = blk[t]
            c0 += w
        comps[t] = mat
    return ChainMap(S, X, comps), dims


def spherical_twist(E: ProjComplex, X: ProjComplex, bases: dict | None = None) -> TwistResult:
    """T_E(X) = cone(evaluation), minimized."""
    ev, dims = evaluation_map(E, X, bases)
    tri = cone(ev)
    return TwistResult(minimize(tri.cone), tri, dims)
