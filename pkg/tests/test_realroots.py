import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from realfib.errors import NonMonicError, ZeroPolynomialError
from realfib.generators import random_monic
from realfib.linalg import rank, signature
from realfib.polys import UniPoly, squarefree_part
from realfib.realroots import (hermite_matrix, is_real_rooted, isolate_real_roots, negative_point, nonneg_on_reals,
                               power_sums, sturm_count, sturm_count_interval)

T = sympy.Symbol("t")
coeff_lists = st.lists(st.integers(-8, 8), min_size=2, max_size=8)


def sym(p: UniPoly):
    return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in p.coeffs])), T)


@settings(max_examples=80)
@given(coeff_lists)
def test_sturm_count_matches_sympy(cs):
    p = UniPoly(cs)
    if p.is_zero():
        return
    expected = len(set(sym(p).real_roots())) if p.degree > 0 else 0
    assert sturm_count(p) == expected


@settings(max_examples=60)
@given(coeff_lists)
def test_isolating_intervals(cs):
    p = UniPoly(cs)
    if p.is_zero() or p.degree < 1:
        return
    roots = sorted(set(sym(p).real_roots()))
    ivs = isolate_real_roots(p)
    assert len(ivs) == len(roots)
    for (lo, hi), r in zip(ivs, roots):
        if lo == hi:
            assert r == sympy.Rational(lo.numerator, lo.denominator)
        else:
            assert sympy.Rational(lo.numerator, lo.denominator) < r <= sympy.Rational(hi.numerator, hi.denominator)


def test_interval_count_is_half_open():
    p = UniPoly.from_roots([0, 1, 2])
    assert sturm_count_interval(p, 0, 2) == 2
    assert sturm_count_interval(p, -1, 0) == 1


def test_hermite_examples():
    # t^2 + 1: power sums 2, 0, -2
    assert hermite_matrix(UniPoly((1, 0, 1))) == [[2, 0], [0, -2]]
    H = hermite_matrix(UniPoly((0, -4, 0, 1)))
    assert H == [[3, 0, 8], [0, 8, 0], [8, 0, 32]]
    with pytest.raises(NonMonicError):
        hermite_matrix(UniPoly((1, 2)))


def test_power_sums_against_roots():
    p = UniPoly.from_roots([1, 2, -3])
    assert power_sums(p, 4) == [3, 0, 14, -18]


def test_hermite_sturm_agree_on_random_polys():
    rng = random.Random(5)
    for _ in range(60):
        p = random_monic(rng)
        q = squarefree_part(p)
        if q.degree < 1:
            continue
        H = hermite_matrix(q)
        sig = signature(H)
        assert sig.n_plus - sig.n_minus == sturm_count(p)
        assert rank(H) == q.degree


def test_real_rooted_verdicts():
    assert is_real_rooted(UniPoly.from_roots([1, 1, 2])).all_real
    assert not is_real_rooted(UniPoly((1, 0, 1))).all_real
    with pytest.raises(ZeroPolynomialError):
        is_real_rooted(UniPoly(()))


@pytest.mark.parametrize("coeffs,expected", [
    ((1, 0, 1), True),
    ((0, 0, 1), True),
    ((-1, 0, 1), False),
    ((1, 2, 1), True),
    ((0, 1), False),
    ((3,), True),
    ((-3,), False),
])
def test_nonneg(coeffs, expected):
    p = UniPoly(coeffs)
    assert nonneg_on_reals(p) is expected
    w = negative_point(p)
    if expected:
        assert w is None
    else:
        assert p(w) < 0


def test_negative_point_between_close_roots():
    p = UniPoly.from_roots([Fraction(1, 1000), Fraction(2, 1000)])
    w = negative_point(p)
    assert p(w) < 0
