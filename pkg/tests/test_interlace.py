import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from realfib.errors import CommonZeroError
from realfib.generators import random_interlacing_map, random_map, random_real_fibered_map
from realfib.interlace import (PairVerdict, RationalMapP1, bezoutian, classify_forms, classify_pair, compose,
                               mobius_power_map, pencil_member, real_ramification, wronskian)
from realfib.parsing import parse_poly
from realfib.polys import MultiPoly
from realfib.realroots import is_real_rooted


def P(text):
    return parse_poly(text, ("s", "t"))


def bezoutian_by_definition(f, g):
    """Coefficients of (f(s,t) g(u,v) - f(u,v) g(s,t)) / (s v - t u) in the
    monomials s^(n-1-i) t^i u^(n-1-j) v^j."""
    n = f.total_degree
    s, t, u, v = MultiPoly.gens(4)
    F1, G1 = f.compose([s, t]), g.compose([s, t])
    F2, G2 = f.compose([u, v]), g.compose([u, v])
    num = F1 * G2 - F2 * G1
    # divide by s v - t u, monomial by monomial, with s as the leading variable
    div = s * v - t * u
    quot = MultiPoly(4)
    rem = num
    while not rem.is_zero():
        lead = max(rem.terms)
        c = rem.coeff(lead)
        e = (lead[0] - 1, lead[1], lead[2], lead[3] - 1)
        assert min(e) >= 0
        mono = MultiPoly(4, {e: c})
        quot = quot + mono
        rem = rem - mono * div
    return [[quot.coeff((n - 1 - i, i, n - 1 - j, j)) for j in range(n)] for i in range(n)]


def test_twisted_cubic_pair():
    f, g = P("s^3 - 4*s*t^2"), P("s^2*t - t^3")
    B = bezoutian(f, g)
    assert B == [[1, 0, -1], [0, 3, 0], [-1, 0, 4]]
    cls = classify_pair(RationalMapP1(f, g))
    assert cls.verdict is PairVerdict.REAL_FIBERED
    assert cls.signature.as_tuple() == (3, 0, 0)


def test_squares_are_not_interlacing():
    m = RationalMapP1(P("s^2"), P("t^2"))
    assert bezoutian(m.f, m.g) == [[0, 1], [1, 0]]
    cls = classify_pair(m)
    assert cls.verdict is PairVerdict.NOT_REAL_FIBERED
    assert cls.witness == (1, 1)
    assert not is_real_rooted(pencil_member(m, *cls.witness)).all_real
    pts = {str(p) for p in real_ramification(m)}
    assert pts == {"(1:0)", "(0:1)"}


def test_common_zero():
    assert classify_forms(P("s^2"), P("s*t")).verdict is PairVerdict.COMMON_ZERO
    with pytest.raises(CommonZeroError):
        RationalMapP1(P("s^2"), P("s*t"))
    with pytest.raises(ValueError):
        RationalMapP1(P("s^2"), P("t^3"))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_bezoutian_matches_definition(seed):
    m = random_map(random.Random(seed))
    assert bezoutian(m.f, m.g) == bezoutian_by_definition(m.f, m.g)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_interlacing_maps_classify_real(seed):
    rng = random.Random(seed)
    m = random_interlacing_map(rng)
    assert classify_pair(m).real_fibered
    assert real_ramification(m) == []


def test_mobius_ladder():
    s, t = MultiPoly.gens(2)
    assert mobius_power_map(2).proportional_to(RationalMapP1(s * s - t * t, s * t * 2))
    for k in range(1, 6):
        assert classify_pair(mobius_power_map(k)).real_fibered
    assert classify_pair(compose(mobius_power_map(2), mobius_power_map(3))).real_fibered


def test_composition_degree():
    m = compose(mobius_power_map(2), mobius_power_map(3))
    assert m.degree == 6


def test_wronskian_of_identity_map():
    s, t = MultiPoly.gens(2)
    assert wronskian(RationalMapP1(s, t)) == MultiPoly.constant(1, 2)


def test_classification_is_invariant_under_target_swap():
    rng = random.Random(11)
    for _ in range(10):
        m = random_real_fibered_map(rng)
        assert classify_pair(RationalMapP1(m.g, m.f)).real_fibered


def test_non_real_fibered_has_failing_member_and_irrational_ramification():
    m = RationalMapP1(P("s^3 - s*t^2 + t^3"), P("s^2*t"))
    cls = classify_pair(m)
    assert cls.verdict is PairVerdict.NOT_REAL_FIBERED
    assert not is_real_rooted(pencil_member(m, *cls.witness)).all_real
    pts = real_ramification(m)
    assert len(pts) == 2 and any(p.exact is None for p in pts)


def test_ramification_points_are_critical():
    m = RationalMapP1(P("s^2"), P("t^2 + s*t"))
    W = wronskian(m)
    for p in real_ramification(m):
        if p.exact is not None:
            assert W(*p.exact) == 0
        else:
            lo, hi = p.interval
            assert W(Fraction(1), lo) * W(Fraction(1), hi) <= 0
