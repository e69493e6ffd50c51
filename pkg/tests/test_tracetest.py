import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from realfib.errors import NonCommutingError, NonMonicError, NotSelfAdjoint
from realfib.generators import random_map, random_real_fibered_map
from realfib.interlace import RationalMapP1, classify_pair, mobius_power_map
from realfib.linalg import identity, matadd, matmul, matscale
from realfib.parsing import parse_poly
from realfib.polys import MultiPoly, UniPoly
from realfib.realroots import power_sums
from realfib.tracetest import (FiberVerdict, FinitePresentation, evaluate_matrix, f_positivity_check,
                               map_to_presentation, mult_matrix, psd_on_reals, real_fibered_certificate,
                               regular_representation, trace_form)


def fp_of(text):
    return FinitePresentation.from_poly(parse_poly(text, ("t", "z")), 0)


def test_square_root_cover():
    fp = fp_of("t^2 - z")
    z = MultiPoly.var(0, 1)
    assert trace_form(fp) == [[MultiPoly.constant(2, 1), MultiPoly(1)], [MultiPoly(1), z * 2]]
    cert = real_fibered_certificate(fp)
    assert cert.verdict is FiberVerdict.NOT_REAL_FIBERED
    assert cert.witness == (-1,)
    assert cert.witness_signature == (1, 1, 0)
    assert cert.real_fiber_points == 0


@pytest.mark.parametrize("text,verdict", [
    ("t^2 - z^2 - 1", FiberVerdict.REAL_FIBERED),
    ("t^3 - 4*t", FiberVerdict.REAL_FIBERED),
    ("t^2 + 1", FiberVerdict.NOT_REAL_FIBERED),
    ("t^3 - z", FiberVerdict.NOT_REAL_FIBERED),
    ("t^2 - z^2", FiberVerdict.REAL_FIBERED),
])
def test_verdicts(text, verdict):
    assert real_fibered_certificate(fp_of(text)).verdict is verdict


def test_non_monic_rejected():
    with pytest.raises(NonMonicError):
        fp_of("z*t^2 - 1")


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=8), st.integers(-5, 5))
def test_trace_form_entries_are_power_sums(cs, z0):
    # q = t^m + sum c_i(z) t^i with c_i linear in z
    m = len(cs) // 2 + 1
    z = MultiPoly.var(0, 1)
    coeffs = [MultiPoly.constant(cs[i], 1) + z * cs[-1 - i] for i in range(m)] + [MultiPoly.constant(1, 1)]
    fp = FinitePresentation(1, coeffs)
    tf = evaluate_matrix(trace_form(fp), [z0])
    ps = power_sums(fp.at([z0]), 2 * m - 1)
    assert tf == [[ps[i + j] for j in range(m)] for i in range(m)]


def test_mult_matrix_satisfies_q():
    fp = fp_of("t^3 - z*t + 2")
    M = mult_matrix(fp, [MultiPoly(1), MultiPoly.constant(1, 1)])
    Mz = evaluate_matrix(M, [Fraction(3)])
    # Cayley-Hamilton: q(M) = 0 at z = 3
    q = fp.at([Fraction(3)])
    acc = [[Fraction(0)] * 3 for _ in range(3)]
    power = identity(3)
    for c in q.coeffs:
        acc = matadd(acc, matscale(c, power))
        power = matmul(power, Mz)
    assert not any(any(r) for r in acc)


class TestMaps:
    def test_presentations(self):
        s, t = MultiPoly.gens(2)
        fp = map_to_presentation(RationalMapP1(s, t))
        assert fp.m == 1
        assert real_fibered_certificate(map_to_presentation(mobius_power_map(2))).verdict is FiberVerdict.REAL_FIBERED
        fp = map_to_presentation(RationalMapP1(s * s, t * t))
        assert real_fibered_certificate(fp).verdict is FiberVerdict.NOT_REAL_FIBERED

    def test_agrees_with_pencil_classification(self):
        rng = random.Random(21)
        for i in range(16):
            m = random_real_fibered_map(rng) if i % 2 else random_map(rng)
            a = classify_pair(m).real_fibered
            b = real_fibered_certificate(map_to_presentation(m)).verdict is FiberVerdict.REAL_FIBERED
            assert a == b

    def test_bad_change(self):
        s, t = MultiPoly.gens(2)
        with pytest.raises(ValueError):
            map_to_presentation(RationalMapP1(s * s, t * t), change=[[1, 0], [1, 0]])


class TestPositivity:
    def test_regular_representation(self):
        acts, form = regular_representation(fp_of("t^2 - z^2 - 1"))
        assert f_positivity_check(acts, form).verdict is FiberVerdict.REAL_FIBERED

    def test_negative_form_is_inconclusive(self):
        acts = [[[0, 1], [1, 0]]]
        assert f_positivity_check(acts, [[-1, 0], [0, -1]], arity=0).verdict is FiberVerdict.INCONCLUSIVE
        assert f_positivity_check(acts, [[1, 0], [0, 1]], arity=0).verdict is FiberVerdict.REAL_FIBERED

    def test_degenerate_form(self):
        z = MultiPoly.var(0, 1)
        zero = MultiPoly(1)
        one = MultiPoly.constant(1, 1)
        acts = [[[z, zero], [zero, z]]]
        cert = f_positivity_check(acts, [[one, zero], [zero, zero]])
        assert cert.verdict is FiberVerdict.INCONCLUSIVE

    def test_not_self_adjoint(self):
        with pytest.raises(NotSelfAdjoint):
            f_positivity_check([[[0, 1], [0, 0]]], [[1, 0], [0, 1]], arity=0)

    def test_non_commuting(self):
        with pytest.raises(NonCommutingError):
            f_positivity_check([[[1, 0], [0, 2]], [[0, 1], [1, 0]]], [[1, 0], [0, 1]], arity=0)


def test_psd_univariate():
    z = MultiPoly.var(0, 1)
    one = MultiPoly.constant(1, 1)
    res = psd_on_reals([[one, z], [z, one]])
    assert res.psd is False
    w = res.witness[0]
    assert 1 - w * w < 0
    assert psd_on_reals([[z * z + 1, z], [z, one]]).psd is True


def test_multivariate_base_is_sampling_only():
    fp = FinitePresentation.from_poly(parse_poly("t^2 - z0^2 - z1^2 - 1", ("t", "z0", "z1")), 0)
    cert = real_fibered_certificate(fp)
    assert cert.verdict is FiberVerdict.INCONCLUSIVE
    fp = FinitePresentation.from_poly(parse_poly("t^2 - z0 - z1", ("t", "z0", "z1")), 0)
    assert real_fibered_certificate(fp).verdict is FiberVerdict.NOT_REAL_FIBERED


def test_univariate_fiber_at_point():
    fp = fp_of("t^2 - z")
    assert fp.at([Fraction(4)]) == UniPoly((-4, 0, 1))
