import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from realfib.errors import NonCommutingError, NonLinearEntry, NotSymmetricError
from realfib.hyperbolic import twisted_cubic
from realfib.interlace import bezoutian
from realfib.koszul import (check_symmetry_theorem, curve_pencil_system, exactness_probe,
                            generalized_joint_kernel, koszul, on_variety_point, random_symmetric_system,
                            validate_system, wedge_compose, wedge_koszul_route, wedge_permutation_formula)
from realfib.linalg import identity, matmul, transpose
from realfib.livsic import cycle_degree, Component, evaluate_at_center, hodge_dual, membership
from realfib.parsing import parse_poly

Z3 = ("z0", "z1", "z2")


def polymat(rows, names=Z3):
    return [[parse_poly(e, names) for e in row] for row in rows]


def test_homogenized_diagonal_example():
    # T_1 = z0 I - z1 diag(1, 2), a single pencil (r = 1) on P^2 with k = 1
    T1 = polymat([["z0 - z1", "0"], ["0", "z0 - 2*z1"]])
    sysm = validate_system(2, 1, [T1])
    assert sysm.joint_kernel_dim([1, 1, 0]) == 1
    assert sysm.joint_kernel_dim([2, 1, 5]) == 1
    assert sysm.joint_kernel_dim([3, 1, 0]) == 0


def test_non_commuting_rejected():
    A = polymat([["z1", "z2"], ["z2", "0"]])
    B = polymat([["z2", "0"], ["0", "z1"]])
    with pytest.raises(NonCommutingError) as e:
        validate_system(3 - 1, 0, [A, B])
    assert e.value.pair == (1, 2)


def test_nonlinear_entry_rejected():
    with pytest.raises(NonLinearEntry):
        validate_system(2, 1, [polymat([["z0^2", "0"], ["0", "z1"]])])


class TestRandomSystems:
    @settings(max_examples=10, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_complex_and_wedge(self, seed):
        rng = random.Random(seed)
        rs = random_symmetric_system(rng)
        sysm = rs.system
        cx = koszul(sysm)
        for j in range(1, sysm.r):
            p = [rng.randint(-5, 5) for _ in range(sysm.d + 1)]
            assert not any(any(row) for row in matmul(cx.evaluate(j, p), cx.evaluate(j + 1, p)))
        T = wedge_compose(sysm)
        assert check_symmetry_theorem(sysm, seed=seed)
        W = [[int(i == a) for i in range(sysm.d + 1)] for a in range(1, sysm.r + 1)]
        assert evaluate_at_center(T, W).matrix == identity(sysm.n)
        assert exactness_probe(cx, samples=10, seed=seed).ok

    def test_route_ratio(self):
        rng = random.Random(3)
        for r in (1, 2, 3):
            rs = random_symmetric_system(rng, d=r + 1, k=1)
            P = wedge_permutation_formula(rs.system)
            K = wedge_koszul_route(rs.system)
            T = wedge_compose(rs.system)
            c = T.composition_sign * {1: 1, 2: 2, 3: 6}[r]
            assert all(K[J] == [[c * a for a in row] for row in M] for J, M in P.items())
            # sign (-1)^(r choose 2)
            assert T.composition_sign == (-1) ** (r * (r - 1) // 2)

    def test_membership_matches_joint_eigenvalues(self):
        rng = random.Random(9)
        for _ in range(5):
            rs = random_symmetric_system(rng, d=3, k=1, n=2)
            gamma = hodge_dual(wedge_compose(rs.system))
            p = on_variety_point(rs, rng)
            assert p is not None
            member, dim = membership(gamma, p)
            assert member and dim == rs.system.generalized_kernel_dim(p)
            q = [rng.randint(-7, 7) for _ in range(4)]
            assert membership(gamma, q)[0] == (rs.system.generalized_kernel_dim(q) > 0)

    def test_exactness_with_members(self):
        rng = random.Random(12)
        rs = random_symmetric_system(rng, d=3, k=1, n=3)
        gamma = hodge_dual(wedge_compose(rs.system))
        members = [on_variety_point(rs, rng, i) for i in range(3)]
        rep = exactness_probe(koszul(rs.system), samples=10, seed=1, gamma=gamma, member_points=members)
        assert rep.ok
        assert sum(c.member for c in rep.checks) >= 3

    def test_nonsymmetric_system_rejected(self):
        sysm = validate_system(2, 1, [polymat([["z0", "z1"], ["0", "z0 + z2"]])])
        assert not sysm.is_entrywise_symmetric()
        with pytest.raises(NotSymmetricError):
            check_symmetry_theorem(sysm)
        # the wedge composition itself does not need symmetry
        assert wedge_compose(sysm).composition_sign == 1


def test_generalized_kernel_sees_jordan_blocks():
    N = [[0, 1], [0, 0]]
    assert generalized_joint_kernel([N])[0] == 2
    assert generalized_joint_kernel([[[1, 0], [0, 0]]])[0] == 1


class TestTwistedCubic:
    def setup_method(self):
        self.cs = curve_pencil_system(twisted_cubic(), [(1, 0, -4, 0), (0, 1, 0, -1)])

    def test_tensor_at_center_is_bezoutian(self):
        T = self.cs.symmetric_tensor()
        ev = evaluate_at_center(T, self.cs.center)
        s_t = parse_poly("s^3 - 4*s*t^2", ("s", "t")), parse_poly("s^2*t - t^3", ("s", "t"))
        assert ev.matrix == bezoutian(*s_t) == [[1, 0, -1], [0, 3, 0], [-1, 0, 4]]
        assert ev.verdict == "PositiveDefinite"
        assert all(M == transpose(M) for M in T.coeffs.values())

    def test_curve_points_are_members(self):
        gamma = hodge_dual(wedge_compose(self.cs.system))
        for a, b in [(1, 0), (0, 1), (2, -3), (Fraction(1, 2), 5)]:
            p = [a ** 3, a * a * b, a * b * b, b ** 3]
            assert membership(gamma, p) == (True, 1)
        assert not membership(gamma, [1, 0, 0, 1])[0]
        comp = Component.curve("C", twisted_cubic(), 3)
        assert cycle_degree(gamma, [comp]).admissible
