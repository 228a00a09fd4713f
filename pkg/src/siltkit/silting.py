"""Presilting, silting and tilting verdicts, Nakayama stability and the silting order."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import sympy

from .algebra import (
    AlgebraAutomorphism,
    NotFrobenius,
    frobenius_form,
    self_injectivity_report,
)
from .complexes import (
    ProjComplex,
    direct_sum,
    hom_dim,
    hom_table,
    hom_window,
    iso_in_homotopy,
    minimize,
    twist_complex,
)
from .krull_schmidt import decompose

CERTIFICATES = ("regular", "mutation", "twist", "base-change", "unverified")


class TheoremViolation(AssertionError):
    """Two criteria that must agree for tilting complexes over self-injective algebras disagree."""


def integer_det(rows) -> int:
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return 1
    return int(sympy.Matrix(rows).det(method="bareiss"))


def g_matrix(summands) -> np.ndarray:
    return np.array([X.g_vector() for X in summands], dtype=np.int64).reshape(len(summands), -1)


@dataclass
class PresiltingResult:
    table: dict[int, int]
    presilting: bool

    @property
    def positive_failures(self) -> dict[int, int]:
        return {m: v for m, v in self.table.items() if m > 0 and v}


def presilting_check(T: ProjComplex) -> PresiltingResult:
    table = hom_table(T, T)
    return PresiltingResult(table, all(v == 0 for m, v in table.items() if m > 0))


@dataclass
class NuStability:
    stable: bool
    strongly_stable: bool
    orbit: list[int | None]  # summand i -> index of the summand isomorphic to nu* T_i

    def as_dict(self) -> dict:
        return {
            "stable": self.stable,
            "strongly_stable": self.strongly_stable,
            "orbit": [None if j is None else j + 1 for j in self.orbit],
        }


@dataclass
class SiltingReport:
    table: dict[int, int]
    summand_count: int
    g_vectors: list[list[int]]
    determinant: int
    presilting: bool
    k0_complete: bool
    certificate: str
    silting: bool
    status: str
    tilting: bool | None = None
    nu: NuStability | None = None
    summands: list[ProjComplex] = field(default_factory=list, repr=False)

    def as_dict(self) -> dict:
        out = {
            "vanishing_table": {str(m): v for m, v in sorted(self.table.items())},
            "summand_count": self.summand_count,
            "g_vectors": self.g_vectors,
            "determinant": self.determinant,
            "presilting": self.presilting,
            "k0_complete": self.k0_complete,
            "certificate": self.certificate,
            "silting": self.silting,
            "status": self.status,
            "tilting": self.tilting,
        }
        if self.nu is not None:
            out["nu_stability"] = self.nu.as_dict()
        return out


def silting_check(T: ProjComplex, certificate: str = "unverified", seed: int = 0, summands=None) -> SiltingReport:
    """Silting verdict on the basic part of T.

    Generation is never decided here: it is vouched for by ``certificate``.
    Without one the best possible verdict is presilting and K_0-complete.
    """
    if certificate not in CERTIFICATES:
        raise ValueError(f"unknown certificate {certificate!r}")
    if summands is None:
        summands = decompose(T, seed=seed).summands()
    basic = direct_sum(summands, algebra=T.algebra)
    pre = presilting_check(basic)
    G = g_matrix(summands)
    n = T.algebra.n
    det = integer_det(G) if len(summands) == n else 0
    k0 = len(summands) == n and abs(det) == 1
    silting = pre.presilting and k0 and certificate != "unverified"
    if not pre.presilting:
        status = "not presilting"
    elif not k0:
        status = "presilting, not K0-complete"
    elif certificate == "unverified":
        status = "presilting, K0-complete; generation not certified"
    else:
        status = f"silting ({certificate} certificate)"
    return SiltingReport(pre.table, len(summands), G.tolist(), det, pre.presilting, k0, certificate, silting, status, summands=summands)


@dataclass
class TiltingVerdict:
    tilting: bool
    failures: dict[int, int]
    nu_stable: bool | None
    agree: bool | None

    @property
    def reason(self) -> str:
        if self.tilting:
            return "tilting"
        m, v = min(self.failures.items())
        return f"nonzero Hom at shift {m}, dim {v}"


def nakayama_for(alg, seed: int = 0) -> AlgebraAutomorphism | None:
    rep = self_injectivity_report(alg, check_symmetric=False)
    if not rep.self_injective:
        return None
    try:
        return frobenius_form(alg, seed=seed).nakayama
    except NotFrobenius:
        return None


def tilting_check(T: ProjComplex, nu: AlgebraAutomorphism | None = None, seed: int = 0, table=None, cross_check: bool = True):
    """Tilting iff Hom(T, T[m]) = 0 for m != 0; over self-injective algebras also compare with nu* T = T."""
    if table is None:
        table = hom_table(T, T)
    failures = {m: v for m, v in table.items() if m != 0 and v}
    neg = {m: v for m, v in failures.items() if m < 0}
    pos = {m: v for m, v in failures.items() if m > 0}
    tilting = not failures
    stable = agree = None
    if cross_check:
        if nu is None:
            nu = nakayama_for(T.algebra, seed=seed)
        if nu is not None:
            stable = iso_in_homotopy(twist_complex(T, nu), T, seed=seed)
            agree = stable == (not neg) if not pos else None
            if agree is False:
                raise TheoremViolation(
                    f"negative vanishing is {not neg} but nu-stability is {stable} for a presilting complex"
                )
    return TiltingVerdict(tilting, failures, stable, agree)


def nu_stability(T: ProjComplex, nu: AlgebraAutomorphism, seed: int = 0, summands=None) -> NuStability:
    from .complexes import indecomposables_isomorphic

    if summands is None:
        summands = decompose(T, seed=seed).summands()
    images = [minimize(twist_complex(X, nu)) for X in summands]
    orbit = []
    for Y in images:
        hit = None
        for j, X in enumerate(summands):
            if indecomposables_isomorphic(Y, X, seed=seed):
                hit = j
                break
        orbit.append(hit)
    stable = sorted(j for j in orbit if j is not None) == list(range(len(summands)))
    strongly = all(j == i for i, j in enumerate(orbit))
    return NuStability(stable, strongly, orbit)


def silting_geq(T: ProjComplex, S: ProjComplex) -> bool:
    """T >= S iff Hom(T, S[m]) = 0 for all m > 0."""
    return all(hom_dim(T, S, m) == 0 for m in hom_window(T, S) if m > 0)


def two_term_check(T: ProjComplex) -> bool:
    M = minimize(T)
    return set(M.terms) <= {-1, 0}

