import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from siltkit import gf

P = 101


def matrices(p=P, max_side=7):
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    ).map(lambda rows: np.array(rows, dtype=np.int64))


def _rank_mod(m, p):
    # independent oracle: sympy's row reduction over GF(p) via DomainMatrix
    from sympy.polys.domains import GF
    from sympy.polys.matrices import DomainMatrix

    dm = DomainMatrix([[GF(p)(int(x)) for x in row] for row in m.tolist()], m.shape, GF(p))
    return dm.rank()


def test_identity_rank_profile():
    prof = gf.rank_profile(np.eye(5, dtype=np.int64), P)
    assert prof.rank == 5 and prof.kernel_basis.shape[1] == 0


def test_zero_rank_profile():
    prof = gf.rank_profile(np.zeros((3, 4), dtype=np.int64), P)
    assert prof.rank == 0 and prof.kernel_basis.shape[1] == 4


def test_rank_deficient_over_gf5():
    prof = gf.rank_profile(np.array([[1, 2], [2, 4]]), 5)
    assert prof.rank == 1 and prof.kernel_basis.shape[1] == 1


def test_solve_identity():
    b = np.array([3, 1, 4])
    assert np.array_equal(gf.solve(np.eye(3, dtype=np.int64), b, 7).particular, b)


def test_solve_inconsistent():
    with pytest.raises(gf.InconsistentSystem):
        gf.solve(np.zeros((2, 2), dtype=np.int64), np.array([1, 0]), 7)


def test_solve_back_substitution_gf7():
    sol = gf.solve(np.array([[1, 1], [0, 1]]), np.array([3, 4]), 7)
    assert sol.particular.tolist() == [6, 4]
    assert sol.kernel_basis.shape[1] == 0


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        gf.check_prime(12)


def test_inverse_roundtrip():
    m = np.array([[2, 3], [1, 4]])
    inv = gf.inverse(m, 11)
    assert np.array_equal(gf.matmul(m, inv, 11), np.eye(2, dtype=np.int64))


def test_singular_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        gf.inverse(np.array([[1, 2], [2, 4]]), 5)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy_and_transpose(m):
    r = gf.rank(m, P)
    assert r == _rank_mod(m, P)
    assert r == gf.rank(m.T, P)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_and_image(m):
    prof = gf.rank_profile(m, P)
    assert prof.rank + prof.kernel_basis.shape[1] == m.shape[1]
    assert not np.any(gf.matmul(m, prof.kernel_basis, P))
    for col in prof.image_basis.T:
        gf.solve(m, col, P)  # raises if outside the column span


@settings(max_examples=60, deadline=None)
@given(matrices(), st.integers(0, 2**31))
def test_solve_solutions_satisfy_system(m, seed):
    rng = np.random.default_rng(seed)
    x0 = rng.integers(0, P, m.shape[1])
    b = gf.matmul(m, x0, P)
    sol = gf.solve(m, b, P)
    assert np.array_equal(gf.matmul(m, sol.particular, P), b)
    assert not np.any(gf.matmul(m, sol.kernel_basis, P))


# polynomials: coefficient lists, constant term first


def test_factor_x_squared():
    fac = gf.factor_square_free([0, 0, 1], 7)
    assert fac.factors == (((0, 1), 2),)


def test_factor_x2_plus_1_gf5():
    fac = gf.factor_square_free([1, 0, 1], 5)
    assert sorted(g for g, _ in fac.factors) == [(2, 1), (3, 1)]


def test_factor_x2_plus_1_gf3_irreducible():
    fac = gf.factor_square_free([1, 0, 1], 3)
    assert fac.factors == (((1, 0, 1), 1),)


def _sympy_factors(coeffs, p):
    x = sympy.symbols("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, modulus=p)
    _, facs = poly.factor_list()
    out = []
    for g, e in facs:
        c = [int(a) % p for a in reversed(g.all_coeffs())]
        lead = gf.inv(c[-1], p)
        out.append((tuple(a * lead % p for a in c), e))
    return sorted(out)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([2, 3, 5, 7, 101]), st.lists(st.integers(0, 100), min_size=2, max_size=9), st.integers(0, 1000))
def test_factorization_expands_and_matches_sympy(p, coeffs, seed):
    coeffs = [c % p for c in coeffs]
    if not any(coeffs[1:]):
        coeffs[-1] = 1
    f = gf.poly_trim(coeffs)
    if len(f) < 2:
        return
    fac = gf.factor_square_free(f, p, seed=seed)
    assert fac.expand(p) == f
    assert sorted(fac.factors) == _sympy_factors(f, p)
