"""Commuting pencils of linear-form matrices, their Koszul complexes and the
antisymmetrized wedge composition producing dual Livsic tensors."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial
from typing import Sequence

from .errors import CrossCheckFailure, DimensionMismatch, NonCommutingError, NonLinearEntry, NotSymmetricError
from .interlace import RationalMapP1, bezoutian
from .linalg import (
    fmat,
    identity,
    inverse,
    is_symmetric,
    kernel_rank,
    matadd,
    matmul,
    matpow,
    matscale,
    matsub,
    rank,
    solve,
    transpose,
    vstack,
    zeros,
)
from .livsic import LivsicDual, _perm_sign, membership
from .polys import MultiPoly, as_poly, binary_coeffs

log = logging.getLogger(__name__)


def _is_zero(M) -> bool:
    return not any(any(r) for r in M)


class CommutingPencilSystem:
    """T_1..T_r (r = d-k) with T_a = sum_j C[a][j] z_j, pairwise commuting over Q[z]."""

    def __init__(self, d: int, k: int, coeffs: Sequence):
        r = d - k
        if not 0 <= k < d:
            raise ValueError("need 0 <= k < d")
        if len(coeffs) != r:
            raise DimensionMismatch(f"need {r} pencils, got {len(coeffs)}")
        C = [[fmat(M) for M in Ta] for Ta in coeffs]
        n = len(C[0][0])
        for Ta in C:
            if len(Ta) != d + 1 or any(len(M) != n or any(len(row) != n for row in M) for M in Ta):
                raise DimensionMismatch("each pencil needs d+1 coefficient matrices of one size")
        self.d, self.k, self.n, self.r = d, k, n, r
        self.C = C
        for a in range(r):
            for b in range(a + 1, r):
                self._check_pair(a, b)

    def _check_pair(self, a: int, b: int):
        C = self.C
        for j in range(self.d + 1):
            for l in range(j, self.d + 1):
                # coefficient of z_j z_l in T_a T_b - T_b T_a
                lhs = matmul(C[a][j], C[b][l])
                rhs = matmul(C[b][j], C[a][l])
                if l != j:
                    lhs = matadd(lhs, matmul(C[a][l], C[b][j]))
                    rhs = matadd(rhs, matmul(C[b][l], C[a][j]))
                if lhs != rhs:
                    diff = matsub(lhs, rhs)
                    i, s = next((i, s) for i in range(self.n) for s in range(self.n) if diff[i][s])
                    raise NonCommutingError(a + 1, b + 1, f"entry ({i},{s}) of the z{j}*z{l} coefficient")

    @classmethod
    def from_poly_matrices(cls, d: int, k: int, mats: Sequence) -> "CommutingPencilSystem":
        """Build from matrices whose entries are linear forms (MultiPoly in d+1 variables)."""
        coeffs = []
        for a, T in enumerate(mats):
            n = len(T)
            Ta = [zeros(n, n) for _ in range(d + 1)]
            for i, row in enumerate(T):
                for s, e in enumerate(row):
                    e = as_poly(e) if not isinstance(e, (int, Fraction)) else MultiPoly.constant(e, d + 1)
                    if e.is_zero():
                        continue
                    if e.nvars != d + 1:
                        raise DimensionMismatch(f"entry ({i},{s}) of T_{a + 1} has {e.nvars} variables")
                    for exp, c in e.items():
                        if sum(exp) != 1:
                            raise NonLinearEntry(f"entry ({i},{s}) of T_{a + 1} is not a linear form")
                        Ta[exp.index(1)][i][s] += c
            coeffs.append(Ta)
        return cls(d, k, coeffs)

    def poly_matrix(self, a: int) -> list[list[MultiPoly]]:
        gens = MultiPoly.gens(self.d + 1)
        n = self.n
        return [[sum((gens[j] * self.C[a][j][i][s] for j in range(self.d + 1) if self.C[a][j][i][s]),
                     MultiPoly(self.d + 1)) for s in range(n)] for i in range(n)]

    def evaluate(self, p: Sequence) -> list[list[list[Fraction]]]:
        p = [Fraction(c) for c in p]
        out = []
        for Ta in self.C:
            M = zeros(self.n, self.n)
            for j, c in enumerate(p):
                if c:
                    M = matadd(M, matscale(c, Ta[j]))
            out.append(M)
        return out

    def is_entrywise_symmetric(self) -> bool:
        return all(is_symmetric(M) for Ta in self.C for M in Ta)

    def joint_kernel_dim(self, p) -> int:
        return len(kernel_rank(vstack(self.evaluate(p)))[1])

    def generalized_kernel_dim(self, p) -> int:
        return generalized_joint_kernel(self.evaluate(p))[0]


def validate_system(d: int, k: int, mats: Sequence) -> CommutingPencilSystem:
    return CommutingPencilSystem.from_poly_matrices(d, k, mats)


# Koszul complexes


@dataclass
class KoszulComplex:
    """Differentials psi_1..psi_r as block matrices over the coefficient pencils.

    Each differential is stored as (row subsets, column subsets, blocks) with
    blocks[(A, B)] = (sign, a) meaning sign * T_a.
    """

    system: CommutingPencilSystem
    subsets: list = field(default_factory=list)
    maps: dict = field(default_factory=dict)

    def shape(self, j: int) -> tuple[int, int]:
        n = self.system.n
        return (len(self.subsets[j - 1]) * n, len(self.subsets[j]) * n)

    def evaluate(self, j: int, p) -> list[list[Fraction]]:
        """psi_j at a point, as a rational matrix."""
        n = self.system.n
        Tp = self.system.evaluate(p)
        rows_idx, cols_idx = self.subsets[j - 1], self.subsets[j]
        M = zeros(len(rows_idx) * n, len(cols_idx) * n)
        for (ri, ci), (sign, a) in self.maps[j].items():
            for u in range(n):
                for v in range(n):
                    M[ri * n + u][ci * n + v] = sign * Tp[a][u][v]
        return M

    def poly_matrix(self, j: int) -> list[list[MultiPoly]]:
        n = self.system.n
        nv = self.system.d + 1
        Ts = [self.system.poly_matrix(a) for a in range(self.system.r)]
        rows_idx, cols_idx = self.subsets[j - 1], self.subsets[j]
        M = [[MultiPoly(nv) for _ in range(len(cols_idx) * n)] for _ in range(len(rows_idx) * n)]
        for (ri, ci), (sign, a) in self.maps[j].items():
            for u in range(n):
                for v in range(n):
                    M[ri * n + u][ci * n + v] = Ts[a][u][v] * sign
        return M


def _poly_matmul(A, B, nv):
    out = []
    for row in A:
        new = []
        for col in zip(*B):
            acc = MultiPoly(nv)
            for x, y in zip(row, col):
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y
            new.append(acc)
        out.append(new)
    return out


def koszul(system: CommutingPencilSystem) -> KoszulComplex:
    """e_A -> sum over positions of a in A of (-1)^pos T_a e_(A - a); checks psi psi = 0."""
    r = system.r
    subsets = [list(combinations(range(r), j)) for j in range(r + 1)]
    maps = {}
    for j in range(1, r + 1):
        index = {A: i for i, A in enumerate(subsets[j - 1])}
        blocks = {}
        for ci, A in enumerate(subsets[j]):
            for pos, a in enumerate(A):
                rest = A[:pos] + A[pos + 1:]
                blocks[(index[rest], ci)] = ((-1) ** pos, a)
        maps[j] = blocks
    cx = KoszulComplex(system, subsets, maps)
    nv = system.d + 1
    for j in range(1, r):
        prod = _poly_matmul(cx.poly_matrix(j), cx.poly_matrix(j + 1), nv)
        if any(not e.is_zero() for row in prod for e in row):
            raise CrossCheckFailure(f"psi_{j} psi_{j + 1} is not zero")
    return cx


# wedge composition


def _wedge_product(mats: Sequence, d: int, n: int) -> dict:
    """Entrywise exterior product of matrices of linear forms (given by their
    coefficient lists), as {sorted subset: matrix}."""
    r = len(mats)
    out: dict = {}
    for J in combinations(range(d + 1), r):
        acc = zeros(n, n)
        for pi in permutations(range(r)):
            word = [J[i] for i in pi]
            prod = None
            for a in range(r):
                M = mats[a][word[a]]
                if _is_zero(M):
                    prod = None
                    break
                prod = M if prod is None else matmul(prod, M)
            if prod is None:
                continue
            s = _perm_sign(word)
            acc = matadd(acc, prod) if s > 0 else matsub(acc, prod)
        if not _is_zero(acc):
            out[J] = acc
    return out


def wedge_permutation_formula(system: CommutingPencilSystem) -> dict:
    """(1/r!) sum_sigma sgn(sigma) T_sigma(1) ^ ... ^ T_sigma(r), coefficientwise."""
    r, n, d = system.r, system.n, system.d
    total: dict = {}
    for sigma in permutations(range(r)):
        sg = _perm_sign(sigma)
        for J, M in _wedge_product([system.C[a] for a in sigma], d, n).items():
            prev = total.get(J, zeros(n, n))
            total[J] = matadd(prev, M) if sg > 0 else matsub(prev, M)
    scale = Fraction(1, factorial(r))
    return {J: matscale(scale, M) for J, M in total.items() if not _is_zero(M)}


def wedge_koszul_route(system: CommutingPencilSystem) -> dict:
    """psi_1 o ... o psi_r with entries multiplied as words in the tensor
    algebra, then antisymmetrized (words with repeated letters vanish)."""
    cx = koszul(system)
    n, r, d = system.n, system.r, system.d

    def block_entries(j):
        # {(row block, col block): {word: matrix}}
        out = {}
        for (ri, ci), (sign, a) in cx.maps[j].items():
            out[(ri, ci)] = {(jj,): matscale(sign, system.C[a][jj]) for jj in range(d + 1)
                             if not _is_zero(system.C[a][jj])}
        return out

    cur = block_entries(r)
    for j in range(r - 1, 0, -1):
        left = block_entries(j)
        nxt: dict = {}
        for (ri, mi), lw in left.items():
            for (mi2, ci), rw in cur.items():
                if mi != mi2:
                    continue
                slot = nxt.setdefault((ri, ci), {})
                for w1, M1 in lw.items():
                    for w2, M2 in rw.items():
                        w = w1 + w2
                        P = matmul(M1, M2)
                        slot[w] = matadd(slot[w], P) if w in slot else P
        cur = nxt
    words = cur.get((0, 0), {})
    out: dict = {}
    for w, M in words.items():
        if len(set(w)) < len(w):
            continue
        J = tuple(sorted(w))
        s = _perm_sign(w)
        prev = out.get(J, zeros(n, n))
        out[J] = matadd(prev, M) if s > 0 else matsub(prev, M)
    return {J: M for J, M in out.items() if not _is_zero(M)}


def wedge_compose(system: CommutingPencilSystem) -> LivsicDual:
    """Dual tensor from the permutation formula, cross-checked against the
    Koszul route.  The observed global factor between the two routes (a
    signed r!) is stored on the result as ``composition_sign``."""
    T = wedge_permutation_formula(system)
    K = wedge_koszul_route(system)
    r = system.r
    sign = None
    for s in (1, -1):
        c = s * factorial(r)
        if set(T) == set(K) and all(K[J] == matscale(c, M) for J, M in T.items()):
            sign = s
            break
    if sign is None:
        raise CrossCheckFailure("permutation formula and Koszul composition disagree")
    log.debug("wedge composition: Koszul route = %+d * %d! * permutation formula", sign, r)
    out = LivsicDual(system.d, system.k, system.n, T)
    out.composition_sign = sign
    return out


def check_symmetry_theorem(system: CommutingPencilSystem, seed: int = 0, trials: int = 3) -> bool:
    """Transpose identity for wedges of symmetric pencils, and symmetry of the composed tensor."""
    if not system.is_entrywise_symmetric():
        raise NotSymmetricError("every coefficient matrix must be symmetric")
    rng = random.Random(seed)
    r, n, d = system.r, system.n, system.d
    tau_sign = (-1) ** comb(r, 2)
    for _ in range(trials):
        sigma = list(range(r))
        rng.shuffle(sigma)
        lhs = _wedge_product([system.C[a] for a in sigma], d, n)
        rev = [[transpose(M) for M in system.C[a]] for a in reversed(sigma)]
        rhs = _wedge_product(rev, d, n)
        keys = set(lhs) | set(rhs)
        for J in keys:
            a = transpose(lhs.get(J, zeros(n, n)))
            b = matscale(tau_sign, rhs.get(J, zeros(n, n)))
            if a != b:
                raise CrossCheckFailure(f"transpose identity fails for sigma={sigma} at {J}")
    T = wedge_compose(system)
    if not all(is_symmetric(M) for M in T.coeffs.values()):
        raise CrossCheckFailure("composed tensor is not symmetric")
    return True


# exactness


@dataclass(frozen=True)
class PointCheck:
    point: tuple
    member: bool
    ranks: tuple
    exact: bool
    cokernel_dim: int
    kernel_dim: int | None


@dataclass(frozen=True)
class ExactnessReport:
    checks: tuple
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def probe_point(cx: KoszulComplex, p, gamma=None) -> PointCheck:
    sysm = cx.system
    n, r = sysm.n, sysm.r
    ranks = [0] + [rank(cx.evaluate(j, p)) for j in range(1, r + 1)] + [0]
    exact = all(ranks[j] + ranks[j + 1] == comb(r, j) * n for j in range(r + 1))
    coker = n - ranks[1]
    if gamma is not None:
        member, kd = membership(gamma, p)
    else:
        kd = None
        member = sysm.generalized_kernel_dim(p) > 0
    return PointCheck(tuple(Fraction(c) for c in p), member, tuple(ranks[1:-1]), exact, coker, kd)


def exactness_probe(cx: KoszulComplex, samples: int = 25, seed: int = 0, gamma=None,
                    points: Sequence | None = None, member_points: Sequence = ()) -> ExactnessReport:
    """Rank conditions of the evaluated complex.

    Off-variety points must give an exact complex.  At member points the
    cokernel of psi_1 must match the kernel of gamma ^ p (when ``gamma`` is
    given).  Random points are drawn off the variety, judged by the joint
    generalized kernel of the pencils.
    """
    rng = random.Random(seed)
    sysm = cx.system
    if points is None:
        points = []
        while len(points) < samples:
            p = [rng.randint(-9, 9) for _ in range(sysm.d + 1)]
            if any(p) and sysm.generalized_kernel_dim(p) == 0:
                points.append(p)
    checks, violations = [], []
    for p in list(points) + list(member_points):
        c = probe_point(cx, p, gamma)
        checks.append(c)
        if not c.member:
            if not c.exact:
                violations.append((c.point, f"not exact, ranks {c.ranks}"))
        elif gamma is not None and c.cokernel_dim != c.kernel_dim:
            violations.append((c.point, f"cokernel {c.cokernel_dim} vs kernel {c.kernel_dim}"))
    return ExactnessReport(tuple(checks), tuple(violations))


def generalized_joint_kernel(mats: Sequence) -> tuple[int, list]:
    """Common kernel of M_i^n (n the matrix size)."""
    mats = [fmat(M) for M in mats]
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            if matmul(mats[a], mats[b]) != matmul(mats[b], mats[a]):
                raise NonCommutingError(a + 1, b + 1)
    n = len(mats[0])
    _, basis = kernel_rank(vstack([matpow(M, n) for M in mats]))
    return len(basis), basis


# generators


def cayley_orthogonal(rng: random.Random, n: int, height: int = 3) -> list[list[Fraction]]:
    """Rational orthogonal matrix (I - S)(I + S)^-1 from a random skew S."""
    S = zeros(n, n)
    for i in range(n):
        for j in range(i + 1, n):
            v = Fraction(rng.randint(-height, height), rng.randint(1, 2))
            S[i][j], S[j][i] = v, -v
    I = identity(n)
    return matmul(matsub(I, S), inverse(matadd(I, S)))


@dataclass(frozen=True)
class RandomSystem:
    system: CommutingPencilSystem
    diagonals: tuple  # diagonals[a][i] = coefficient vector of the i-th eigen-form of T_a
    Q: tuple


def random_symmetric_system(rng: random.Random, d: int | None = None, k: int | None = None,
                            n: int | None = None, identity_center: bool = True) -> RandomSystem:
    """Q D_a Q^T with Q rational orthogonal and D_a diagonal of linear forms.

    With identity_center, T_a = z_{a+1} I - (terms free of z_1..z_r), so the
    composed tensor is the identity at span(delta_1..delta_r).
    """
    if d is None:
        d = rng.randint(2, 4)
    if k is None:
        k = rng.randint(max(0, d - 3), d - 1)
    if n is None:
        n = rng.randint(2, 3)
    r = d - k
    Q = cayley_orthogonal(rng, n)
    Qt = transpose(Q)
    free = [0] + list(range(r + 1, d + 1))
    diags = []
    coeffs = []
    for a in range(r):
        forms = []
        for i in range(n):
            v = [Fraction(0)] * (d + 1)
            if identity_center:
                v[a + 1] = Fraction(1)
                for j in free:
                    v[j] = Fraction(rng.randint(-4, 4))
            else:
                v = [Fraction(rng.randint(-4, 4)) for _ in range(d + 1)]
            forms.append(v)
        diags.append(tuple(tuple(v) for v in forms))
        Ta = []
        for j in range(d + 1):
            D = zeros(n, n)
            for i in range(n):
                D[i][i] = forms[i][j]
            Ta.append(matmul(matmul(Q, D), Qt))
        coeffs.append(Ta)
    return RandomSystem(CommutingPencilSystem(d, k, coeffs), tuple(diags), tuple(map(tuple, Q)))


def on_variety_point(rs: RandomSystem, rng: random.Random, i: int | None = None) -> list[Fraction] | None:
    """A random point where the i-th joint eigen-forms all vanish."""
    n = rs.system.n
    if i is None:
        i = rng.randrange(n)
    forms = [list(rs.diagonals[a][i]) for a in range(rs.system.r)]
    _, basis = kernel_rank(forms)
    if not basis:
        return None
    for _ in range(20):
        cs = [rng.randint(-5, 5) for _ in basis]
        p = [sum((c * v[j] for c, v in zip(cs, basis)), Fraction(0)) for j in range(rs.system.d + 1)]
        if any(p):
            return p
    return None


# curves given by a parametrization and a codimension-2 center


@dataclass(frozen=True)
class CurveSystem:
    system: CommutingPencilSystem
    gram: list
    center: list
    coordinates: list

    def symmetric_tensor(self) -> LivsicDual:
        """Composed tensor made symmetric by the invariant form; equals the gram at the center."""
        return wedge_compose(self.system).right_multiply(self.gram)


def curve_pencil_system(param: Sequence, center_forms: Sequence) -> CurveSystem:
    """Multiplication pencils on the degree-(n-1) part of Q[s,t] over Q[l0, l1].

    The curve is given by d+1 binary forms of degree n; l0, l1 cut out the
    center.  Coordinates are completed by standard basis vectors, the extra
    coordinates act on the basis s^(n-1), ..., t^(n-1) by matrices of linear
    forms in l0, l1, and the Bezoutian of the projected pair symmetrizes them.
    """
    param = [as_poly(p) for p in param]
    d = len(param) - 1
    l0, l1 = [[Fraction(c) for c in ell] for ell in center_forms]
    rows = [l0, l1]
    for i in range(d + 1):
        if len(rows) == d + 1:
            break
        cand = rows + [[Fraction(int(i == j)) for j in range(d + 1)]]
        if rank(cand) == len(cand):
            rows = cand
    L = rows

    def pull(ell):
        acc = MultiPoly(2)
        for c, p in zip(ell, param):
            if c:
                acc = acc + p * c
        return acc

    f, g = pull(l0), pull(l1)
    m = RationalMapP1(f, g)
    n = m.degree
    s, t = MultiPoly.gens(2)
    basis = [s ** (n - 1 - j) * t ** j for j in range(n)]
    A = transpose([binary_coeffs(f * b, 2 * n - 1) for b in basis] + [binary_coeffs(g * b, 2 * n - 1) for b in basis])
    coeffs = []
    for a in range(2, d + 1):
        Y = pull(L[a])
        alpha, beta = zeros(n, n), zeros(n, n)
        for j, b in enumerate(basis):
            x = solve(A, binary_coeffs(Y * b, 2 * n - 1))
            for i in range(n):
                alpha[i][j], beta[i][j] = x[i], x[n + i]
        # T_a = y_a I - alpha y_0 - beta y_1, with y = L x
        Ta = []
        for i in range(d + 1):
            M = matscale(L[a][i], identity(n))
            M = matsub(M, matscale(L[0][i], alpha))
            M = matsub(M, matscale(L[1][i], beta))
            Ta.append(M)
        coeffs.append(Ta)
    system = CommutingPencilSystem(d, 1, coeffs)
    Linv = inverse(L)
    center = [[Linv[i][a] for i in range(d + 1)] for a in range(2, d + 1)]
    return CurveSystem(system, bezoutian(f, g), center, L)
