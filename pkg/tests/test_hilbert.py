import itertools
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from critpoints.critsys import variable_matrix_minors
from critpoints.groebner import groebner_basis, hilbert_series_from_lm
from critpoints.hilbert import (
    InexactDivision,
    PowerSeries,
    SeriesMatrix,
    _det_bareiss,
    _det_cofactor,
    complexity_bound,
    complexity_ratio,
    deg_formula,
    det_A_at_one,
    det_series,
    dreg_formula,
    hs_determinantal,
    hs_unmixed,
    matrix_A,
    monomial_ideal_hilbert_numerator,
    series_add,
    series_divide_exact,
    series_from_numerator,
    series_mul,
)
from critpoints.reference import RATIO_ROWS

T = 12


def P(*c, trunc=T):
    return PowerSeries(list(c), trunc)


def test_series_examples():
    assert series_divide_exact(P(1, 0, -1), P(1, -1)) == P(1, 1)
    inv_sq = series_divide_exact(P(1), series_mul(P(1, -1), P(1, -1)))
    assert inv_sq.coeffs == list(range(1, T + 1))
    assert series_mul(P(1, 1), P(1, -1)) == P(1, 0, -1)
    assert series_add(P(1, 2), P(0, -2, 5)) == P(1, 0, 5)


def test_series_errors_and_truncation():
    with pytest.raises(InexactDivision):
        series_divide_exact(P(1), P(2, 1))
    with pytest.raises(ZeroDivisionError):
        series_divide_exact(P(1), P(0))
    s = P(1, 1, trunc=3) * P(1, 1, trunc=8)
    assert s.truncation == 3
    with pytest.raises(IndexError):
        s[3]
    with pytest.raises(ValueError):
        s.truncate(5)
    # leading zeros of the divisor are cancelled first
    assert series_divide_exact(P(0, 0, 3, 3), P(0, 1)).coeffs[:3] == [0, 3, 3]


poly_coeffs = st.lists(st.integers(-20, 20), min_size=1, max_size=6)


@settings(max_examples=100)
@given(poly_coeffs, poly_coeffs)
def test_product_then_divide_round_trip(a, b):
    if b[0] == 0:
        b = [1] + b
    prod = series_mul(P(*a), P(*b))
    assert series_divide_exact(prod, P(*b)) == P(*a)
    t = sympy.symbols("t")
    ref = sympy.Poly(sympy.Poly(a[::-1], t) * sympy.Poly(b[::-1], t), t).all_coeffs()[::-1]
    assert prod.coeffs[: len(ref)] == [int(c) for c in ref][:T]


def test_matrix_A_examples():
    assert matrix_A(5, 1).size == 0 and det_series(matrix_A(5, 1)).coeffs[0] == 1
    A = matrix_A(7, 2)
    assert A.size == 1 and A[0, 0].coeffs == [1, 5]
    A = matrix_A(4, 3)
    assert [[A[i, j].coeffs for j in range(2)] for i in range(2)] == [[[1, 4, 1], [1, 2]], [[1, 2], [1, 1]]]
    A2 = matrix_A(4, 3, e=2)
    assert A2[0, 0].coeffs == [1, 0, 4, 0, 1]


def test_det_examples():
    assert det_series(SeriesMatrix([])).coeffs == [1]
    assert det_series(SeriesMatrix([[P(1, 3, trunc=2)]])).coeffs == [1, 3]
    assert det_A_at_one(9, 1) == 1
    assert det_A_at_one(9, 4) == 56
    assert det_A_at_one(5, 2) == 4


def test_det_A_at_one_identity():
    for n in range(1, 26):
        for p in range(1, n + 1):
            assert det_A_at_one(n, p) == comb(n - 1, p - 1), (n, p)


@pytest.mark.parametrize("n,p", [(9, 5), (10, 7), (12, 8), (11, 9)])
def test_bareiss_matches_cofactor_and_sympy(n, p):
    A = matrix_A(n, p)
    m = [[list(A[i, j].coeffs) for j in range(A.size)] for i in range(A.size)]
    cof = _det_cofactor(m)
    bar = _det_bareiss(m)
    strip = lambda c: c[: max(i for i, x in enumerate(c) if x) + 1]
    assert strip(cof) == strip(bar)
    # a polynomial of degree d is fixed by d + 1 values: compare against integer determinants
    c = strip(cof)
    for x in range(len(c) + 1):
        S = sympy.Matrix([[sum(v * x**k for k, v in enumerate(e)) for e in row] for row in m])
        assert sum(v * x**k for k, v in enumerate(c)) == S.det(method="bareiss")


def test_hs_examples():
    assert hs_unmixed(2, 1, 2).coeffs[:4] == [1, 1, 0, 0]
    assert hs_determinantal(1, 5).coeffs == [1] + [0] * 15
    t = 16
    q22 = series_divide_exact(P(1, 0, -1, trunc=t), PowerSeries([1], t) * _pow1m(4, t))
    assert hs_determinantal(2, 2) == q22
    q23 = series_divide_exact(P(1, 2, trunc=t), _pow1m(4, t))
    assert hs_determinantal(2, 3) == q23


def _pow1m(k, t):
    out = PowerSeries([1], t)
    for _ in range(k):
        out = out * PowerSeries([1, -1], t)
    return out


@pytest.mark.parametrize("p,m", [(2, 2), (2, 3), (2, 4), (3, 4)])
def test_determinantal_series_against_groebner(p, m):
    S = variable_matrix_minors(p, m)
    G = groebner_basis(S)
    assert hilbert_series_from_lm(G, 11) == hs_determinantal(p, m, 11)


def test_formula_examples():
    assert dreg_formula(9, 4, 2) == 8
    assert dreg_formula(6, 4, 3) == 17
    assert dreg_formula(7, 2, 3) == 12
    assert deg_formula(9, 4, 2) == 896
    assert deg_formula(9, 1, 3) == 768
    assert deg_formula(15, 3, 2) == 728


GRID = [(n, p, D) for n in range(1, 13) for p in range(1, n + 1) for D in range(2, 5)]


def test_hs_value_at_one_is_deg():
    for n, p, D in GRID:
        hs = hs_unmixed(n, p, D)
        assert hs.value_at_one() == deg_formula(n, p, D), (n, p, D)
        assert all(c >= 0 for c in hs.coeffs)


def test_hs_degree_matches_regularity_below_square():
    for n, p, D in GRID:
        if p < n:
            assert hs_unmixed(n, p, D).degree() + 1 == dreg_formula(n, p, D), (n, p, D)


def test_square_case_is_complete_intersection():
    # with p = n there are no minors, so the series is ((1 - t^D)/(1 - t))^n
    for n in range(1, 8):
        for D in range(2, 5):
            t = n * (D - 1) + 4
            ci = PowerSeries([1], t)
            for _ in range(n):
                ci = ci * PowerSeries([1] * D, t)
            assert hs_unmixed(n, n, D, t) == ci


def test_quadratic_specialisation_degree():
    for n in range(2, 13):
        for p in range(1, n):
            assert hs_unmixed(n, p, 2).degree() == 2 * p - 1


def _count_standard(gens, n, d):
    return sum(1 for m in itertools.product(range(d + 1), repeat=n)
               if sum(m) == d and not any(all(a >= b for a, b in zip(m, g)) for g in gens))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=5))
def test_monomial_numerator_against_brute_force(gens):
    gens = [g for g in gens if any(g)] or [(1, 0, 0)]
    H = series_from_numerator(monomial_ideal_hilbert_numerator(gens, 3), 3, 9)
    assert H.coeffs == [_count_standard(gens, 3, d) for d in range(9)]


def test_complexity_bound_values():
    cb = complexity_bound(9, 4, 2)
    assert cb.change_of_order_exact == 9 * 56**3 * 2**12 == 6_473_908_224
    assert cb.binomial_exact == comb(9 + 8, 8)
    for n in (3, 6, 11):
        assert complexity_bound(n, 1, 2).binomial_exact == comb(n + 2, 2)
        for p in range(1, n):
            assert complexity_bound(n, p, 2).binomial_exact == comb(n + 2 * p, 2 * p)
    with pytest.raises(ValueError):
        complexity_bound(5, 2, 2, omega=1.5)
    huge = complexity_bound(10000, 4, 3, max_digits=100)
    assert huge.binomial_exact is None and huge.log10_linear_algebra > 100


@pytest.mark.parametrize("n,p,D,ratio", RATIO_ROWS)
def test_ratio_rows(n, p, D, ratio):
    assert round(complexity_ratio(n, p, D), 2) == ratio


@pytest.mark.parametrize("n,p,e", [(6, 3, 2), (8, 5, 3), (11, 8, 2)])
def test_substituted_determinant(n, p, e):
    plain = det_series(matrix_A(n, p, 1)).coeffs
    direct = det_series(matrix_A(n, p, e))
    assert direct.degree() == e * (len(plain) - 1)
    assert all(direct.coeffs[e * k] == c for k, c in enumerate(plain))
    assert sum(direct.coeffs) == sum(plain)
