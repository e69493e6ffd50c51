import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from realfib import hyperbolic as hyp
from realfib.errors import CommonZeroError, InvalidBasePoint
from realfib.generators import random_symmetric_pencil
from realfib.interlace import classify_pair
from realfib.linalg import det
from realfib.parsing import parse_poly
from realfib.polys import MultiPoly

X = ("x0", "x1", "x2")


def P(text):
    return parse_poly(text, X)


class TestDirections:
    def test_lorentz_form(self):
        f = P("x2^2 - x0^2 - x1^2")
        assert hyp.direction_test(f, (0, 0, 1), (1, 2, 3))
        assert not hyp.direction_test(f, (1, 0, 0), (0, 1, 0))
        with pytest.raises(InvalidBasePoint):
            hyp.direction_test(f, (1, 0, 1), (0, 1, 0))

    def test_search_refutes(self):
        f = P("x0^4 + x1^4 + x2^4")
        v = hyp.hyperbolicity_search(f, (1, 0, 0), budget=50, seed=3)
        assert v.status is hyp.HypStatus.REFUTED
        assert not hyp.direction_test(f, (1, 0, 0), v.witness)

    def test_search_not_refuted_is_not_certified(self):
        f = P("x0*x1*x2")
        v = hyp.hyperbolicity_search(f, (1, 1, 1), budget=40)
        assert v.status is hyp.HypStatus.NOT_REFUTED
        assert v.samples == 40

    def test_definite_pencil(self):
        rng = random.Random(1)
        pencil = random_symmetric_pencil(rng, 2, 3)
        v = hyp.hyperbolicity_search(None, (1, 0, 0), pencil=pencil)
        assert v.status is hyp.HypStatus.CERTIFIED and v.reason == "DefinitePencil"
        D = hyp.pencil_determinant(pencil)
        x = (Fraction(2), Fraction(-1), Fraction(3))
        M = [[sum(x[i] * pencil[i][r][c] for i in range(3)) for c in range(3)] for r in range(3)]
        assert D(*x) == det(M)

    def test_pencil_and_form_must_agree(self):
        pencil = random_symmetric_pencil(random.Random(2), 2, 2)
        D = hyp.pencil_determinant(pencil)
        assert hyp.hyperbolicity_search(D * 3, (1, 0, 0), pencil=pencil).status is hyp.HypStatus.CERTIFIED
        with pytest.raises(ValueError):
            hyp.hyperbolicity_search(D + MultiPoly.var(0, 3) ** 2, (1, 0, 0), pencil=pencil)


class TestCurves:
    def test_twisted_cubic_projection(self):
        cc = hyp.CurveCenter(hyp.twisted_cubic(), ((1, 0, -4, 0), (0, 1, 0, -1)))
        m = hyp.project_curve(cc)
        s, t = MultiPoly.gens(2)
        assert m.f == s ** 3 - s * t ** 2 * 4 and m.g == s ** 2 * t - t ** 3
        assert classify_pair(m).real_fibered

    def test_center_meeting_curve(self):
        with pytest.raises(CommonZeroError):
            hyp.project_curve(hyp.CurveCenter(hyp.twisted_cubic(), ((0, 1, 0, 0), (0, 0, 1, 0))))


def line_product(rng, k):
    acc = MultiPoly.constant(1, 3)
    gens = MultiPoly.gens(3)
    for _ in range(k):
        coeffs = [rng.randint(-5, 5) for _ in range(3)]
        acc = acc * sum((g * c for g, c in zip(gens, coeffs)), MultiPoly(3))
    return acc


class TestIntersections:
    def test_circle_and_lines(self):
        circle = P("x0^2 + x1^2 - x2^2")
        assert hyp.curve_pair_real_intersections(circle, P("x0")).real_count == 2
        res = hyp.curve_pair_real_intersections(circle, P("x0*x2"))
        assert (res.real_count, res.total_count) == (2, 4)

    def test_concentric_circles(self):
        res = hyp.curve_pair_real_intersections(P("x0^2 + x1^2 - x2^2"), P("x0^2 + x1^2 - 4*x2^2"))
        assert res.real_count == 0 and res.total_count == 2
        assert not res.transversal

    def test_empty_real_conic(self):
        res = hyp.curve_pair_real_intersections(P("x0^2 + x1^2 + x2^2"), P("x0^2 - 2*x1^2 + x0*x2"))
        assert res.real_count == 0 and res.total_count == 4

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_line_arrangements(self, seed):
        rng = random.Random(seed)
        f, g = line_product(rng, 2), line_product(rng, 2)
        try:
            res = hyp.curve_pair_real_intersections(f, g, seed=seed)
        except CommonZeroError:
            return
        assert res.real_count == res.total_count <= 4

    def test_common_component(self):
        with pytest.raises(CommonZeroError):
            hyp.curve_pair_real_intersections(P("x0*x1"), P("x0*x2"))


def test_parity():
    assert hyp.dividing_parity(3, 1) == (hyp.Parity.IMPOSSIBLE, "g+1-s=3 odd")
    assert hyp.dividing_parity(3, 4)[0] is hyp.Parity.POSSIBLE
    assert hyp.dividing_parity(3, 2)[0] is hyp.Parity.POSSIBLE
    assert hyp.dividing_parity(1, 3)[0] is hyp.Parity.IMPOSSIBLE


class TestVeronese:
    def test_resultant_vanishes_on_common_point(self):
        rng = random.Random(4)
        p = (1, 2, -1)
        v = hyp.veronese_point(p)
        cons = []
        for _ in range(3):
            h = [rng.randint(-5, 5) for _ in range(6)]
            # shift the last coefficient so the conic passes through p
            h[5] -= sum(a * b for a, b in zip(h, v)) / v[5]
            cons.append(hyp.conic_from_dual(h))
        assert all(c(*p) == 0 for c in cons)
        assert hyp.three_conic_resultant(*cons) == 0

    def test_resultant_nonzero_without_common_point(self):
        x, y, z = MultiPoly.gens(3)
        assert hyp.three_conic_resultant(x * x, y * y, z * z) != 0
        assert hyp.three_conic_resultant(x * x - y * y, y * y - z * z, x * y) != 0

    def test_center_through_surface_rejected(self):
        center = [hyp.veronese_point((1, 1, 0)), [1, 0, 0, 0, 0, 2], [0, 0, 1, 0, 3, 0]]
        with pytest.raises(CommonZeroError):
            hyp.veronese_center_check(center)

    def test_refutation_witness_checked_numerically(self):
        rng = random.Random(0)
        center = hyp.random_veronese_center(rng)
        res = hyp.veronese_refutation(center, budget=100, seed=0)
        assert res.status is hyp.VeroneseStatus.FOUND
        U = [list(r) for r in center] + [list(res.witness)]
        basis = sympy.Matrix(U).nullspace()
        x, y = sympy.symbols("x y")
        conics = [sum(c * m for c, m in zip(b, [x * x, x * y, x, y * y, y, 1])) for b in basis]
        sols = sympy.solve(conics, [x, y], dict=True)
        nonreal = [s for s in sols if any(abs(sympy.im(sympy.N(v))) > 1e-9 for v in s.values())]
        assert nonreal


class TestEdge:
    def test_base_points(self):
        F = hyp.edge_quartic()
        assert [F(*p) for p in hyp.EDGE_BASE_POINTS] == [-27] * 4
        assert F(0, 0, 1) == 25
        for p in hyp.EDGE_BASE_POINTS:
            assert hyp.edge_pencil_member(2, 3)(*p) == 0

    def test_member(self):
        res = hyp.curve_pair_real_intersections(hyp.edge_quartic(), hyp.edge_pencil_member(1, 1))
        assert (res.real_count, res.total_count) == (8, 8)
