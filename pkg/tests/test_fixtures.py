import numpy as np
import pytest

from siltkit.complexes import hom_table
from siltkit.fixtures import (
    AlgebraTooLarge,
    build_paper_family,
    coxeter_number,
    doubled_line_algebra,
    parse_dynkin,
    preprojective,
    preprojective_dimension,
    presentation_check,
    printed_summands,
    run_preprojective_demo,
)
from siltkit.krull_schmidt import decompose
from siltkit.mutation import _same_object


@pytest.mark.parametrize("n", [3, 5, 7])
def test_odd_or_small_n_rejected(n):
    with pytest.raises(ValueError):
        build_paper_family(n)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_doubled_line_dimension(n):
    assert doubled_line_algebra(n).dim == n * n


def test_larger_family_table():
    fam = build_paper_family(6, 101)
    assert fam.A.dim == 36 and fam.Lam.dim == 72
    table = {m: v for m, v in hom_table(fam.TL, fam.TL).items() if v}
    assert table[-4] == 36
    assert all(m <= 0 for m in table)


def test_presentation(fam4):
    chk = presentation_check(fam4)
    assert chk.ok
    d = chk.as_dict()
    assert d["dimension"] == d["expected"] == 32


def test_printed_summands_match(fam4):
    assert _same_object(printed_summands(fam4.Lam), decompose(fam4.TL).summands())
    gs = sorted(tuple(map(int, X.g_vector())) for X in fam4.printed)
    assert gs == sorted([(1, -1, 1, 0), (1, -1, 2, -1), (1, 0, 1, -1), (2, -1, 1, -1)])


def test_printed_offset_does_not_match(fam4):
    assert not _same_object(printed_summands(fam4.Lam, 1), decompose(fam4.TL).summands())


@pytest.mark.parametrize("kind,h", [("A2", 3), ("A5", 6), ("D4", 6), ("D6", 10), ("E6", 12), ("E7", 18), ("E8", 30)])
def test_coxeter_numbers(kind, h):
    assert coxeter_number(kind) == h


@pytest.mark.parametrize("kind,dim", [("A2", 4), ("A3", 10), ("D4", 28), ("E6", 156), ("E7", 399), ("E8", 1240)])
def test_preprojective_dimension_formula(kind, dim):
    assert preprojective_dimension(kind) == dim


@pytest.mark.parametrize("kind", ["A2", "A3", "A4", "D4", "D5"])
def test_preprojective_built_dimension(kind):
    alg = preprojective(kind)
    alg.validate()
    assert alg.dim == preprojective_dimension(kind)


@pytest.mark.parametrize("kind", ["E7", "E8"])
def test_too_large(kind):
    with pytest.raises(AlgebraTooLarge):
        preprojective(kind)


@pytest.mark.parametrize("kind", ["F4", "A0", "D3", "E9", "x"])
def test_bad_dynkin(kind):
    with pytest.raises(ValueError):
        parse_dynkin(kind)


def test_preprojective_a3_demo():
    rep = run_preprojective_demo("A3")
    assert rep["two_term"]["nodes"] == 24  # order of the Weyl group of A3
    assert rep["verdict"] == "pass"
    assert rep["self_injectivity"]["nakayama_permutation"] == [2, 1, 0] or rep["self_injectivity"]["nakayama_permutation"] == [3, 2, 1]


def test_sigma_swaps_letters(fam4):
    A = fam4.A
    assert np.array_equal(fam4.sigma(A.arrow_element("x2")), A.arrow_element("y2"))
