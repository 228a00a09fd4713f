import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siltkit.complexes import direct_sum, regular, shift, stalk, twist_complex
from siltkit.silting import (
    integer_det,
    nu_stability,
    presilting_check,
    silting_check,
    silting_geq,
    tilting_check,
    two_term_check,
)


def test_regular_is_silting(A4):
    rep = silting_check(regular(A4), certificate="regular")
    assert rep.silting and rep.determinant in (1, -1) and rep.summand_count == 4
    assert rep.status == "silting (regular certificate)"


def test_without_certificate_generation_is_open(A4):
    rep = silting_check(regular(A4))
    assert rep.presilting and rep.k0_complete and not rep.silting
    assert "not certified" in rep.status


def test_unknown_certificate(A4):
    with pytest.raises(ValueError):
        silting_check(regular(A4), certificate="trust me")


def test_positive_self_extension_not_presilting(A4):
    P = stalk(A4, [0])
    T = direct_sum([P, shift(P, -1)])
    res = presilting_check(T)
    assert not res.presilting and res.positive_failures == {1: 1}


def test_missing_summand_not_k0_complete(A4):
    rep = silting_check(direct_sum([stalk(A4, [0]), stalk(A4, [1])]), certificate="regular")
    assert rep.presilting and not rep.k0_complete and not rep.silting


def test_twisted_complex_is_silting(fam4):
    rep = silting_check(fam4.T, certificate="twist")
    assert rep.silting
    assert silting_check(fam4.sT, certificate="twist").silting


def test_regular_lambda_tilting(lam4, nu4):
    v = tilting_check(regular(lam4), nu=nu4)
    assert v.tilting and v.nu_stable and v.agree
    assert v.reason == "tilting"


def test_induced_complex_not_tilting(fam4, nu4):
    v = tilting_check(fam4.TL, nu=nu4)
    assert not v.tilting
    assert v.failures == {-2: 16, -1: 6}
    assert v.nu_stable is False and v.agree
    assert v.reason == "nonzero Hom at shift -2, dim 16"
    st_ = nu_stability(fam4.TL, nu4)
    assert not st_.stable


def test_regular_strongly_stable(lam4, nu4):
    s = nu_stability(regular(lam4), nu4)
    assert s.stable and s.strongly_stable and s.orbit == [0, 1, 2, 3]


def test_silting_order(A4):
    A = regular(A4)
    assert silting_geq(A, shift(A, 1))
    assert not silting_geq(shift(A, 1), A)
    assert silting_geq(A, A)


def test_two_term(fam4):
    assert two_term_check(regular(fam4.A))
    assert not two_term_check(fam4.T)
    assert two_term_check(twist_complex(regular(fam4.A), fam4.sigma))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_integer_det_matches_float(rows):
    assert integer_det(rows) == round(np.linalg.det(np.array(rows, dtype=float)))


def test_unverified_input_with_unimodular_g_matrix(A4):
    # P4 five degrees up: every nonzero map out of P4 then sits in a negative shift
    T = direct_sum([stalk(A4, [0]), stalk(A4, [1]), stalk(A4, [2]), shift(stalk(A4, [3]), -5)])
    rep = silting_check(T)
    assert rep.presilting and abs(rep.determinant) == 1
    assert not rep.silting and rep.status.endswith("generation not certified")
