import numpy as np
import pytest

from siltkit.algebra import AlgebraError
from siltkit.complexes import hom_table, minimize, twist_complex
from siltkit.modules import (
    ResolutionBoundExceeded,
    RightModule,
    cyclic_quotient,
    hom_dimension,
    projective_module,
    projective_resolution,
    structure_report,
    twist_module,
)


def test_projective_dimension_vector(A4):
    P1 = projective_module(A4, 0)
    assert P1.dim == 7
    assert P1.dimension_vector() == [1, 2, 2, 2]


def test_uniserial_quotient(fam4):
    E = fam4.E
    assert E.dim == 4 and E.dimension_vector() == [1, 1, 1, 1]
    rep = structure_report(E)
    assert rep.top == [1, 0, 0, 0]
    assert rep.socle == [0, 0, 0, 1]
    assert rep.radical_series == [4, 3, 2, 1, 0]


def test_resolution_length(fam4):
    R = fam4.E_res
    assert R.degrees == [-3, -2, -1, 0]
    assert all(len(R.term(t)) == 1 for t in R.degrees)
    assert minimize(R).size == R.size


def test_resolution_of_projective_is_stalk(A4):
    R = projective_resolution(projective_module(A4, 2))
    assert R.terms == {0: (2,)}


def test_resolution_bound(pi_a2):
    # simple modules over preprojective algebras are periodic
    S = cyclic_quotient(pi_a2, 0, [pi_a2.basis_vector(k) for k in pi_a2.corner(0, 1)])
    with pytest.raises(ResolutionBoundExceeded):
        projective_resolution(S, degree_bound=6)


def test_twist_by_involution(fam4):
    E = fam4.E
    twice = twist_module(twist_module(E, fam4.sigma), fam4.sigma)
    assert np.array_equal(twice.action, E.action)
    other = cyclic_quotient(fam4.A, 0, [fam4.A.arrow_element("x1")])
    sE = twist_module(E, fam4.sigma)
    assert hom_dimension(sE, other) == hom_dimension(other, other) == 1
    assert hom_dimension(E, other) == 0


def test_twisted_resolution(fam4):
    sR = projective_resolution(twist_module(fam4.E, fam4.sigma))
    assert hom_table(sR, fam4.sE_res) == hom_table(fam4.sE_res, fam4.sE_res)
    assert hom_table(twist_complex(fam4.E_res, fam4.sigma), sR) == hom_table(sR, sR)


def test_killers_must_start_at_vertex(A4):
    with pytest.raises(AlgebraError):
        cyclic_quotient(A4, 0, [A4.arrow_element("x2")])


def test_invalid_action_rejected(A4):
    bad = np.zeros((A4.dim, 1, 1), dtype=np.int64)
    with pytest.raises(AlgebraError):
        RightModule(A4, bad)


def test_quotient_without_killers_is_projective(A4):
    Q = cyclic_quotient(A4, 0, [])
    P = projective_module(A4, 0)
    assert Q.dim == P.dim and hom_dimension(Q, P) == hom_dimension(P, P)


def test_quotient_by_both_arrows_is_simple(A4):
    S = cyclic_quotient(A4, 0, [A4.arrow_element("x1"), A4.arrow_element("y1")])
    assert S.dim == 1 and structure_report(S).radical_series == [1, 0]
