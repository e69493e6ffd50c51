"""Livsic-type determinantal tensors.

A primal tensor gamma has n x n coefficient matrices on (k+1)-subsets of
{0..d}; its dual presentation T has them on (d-k)-subsets.  A point p lies on
the represented variety when gamma wedge p has a nontrivial kernel.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .errors import ComponentNotContained, DimensionMismatch, RankDeficient, SingularMatrix
from .linalg import det, fmat, is_symmetric, kernel_rank, matmul, rank, signature, zeros
from .polys import MultiPoly, as_poly

log = logging.getLogger(__name__)


def _perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation that sorts seq (entries distinct)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _clean(coeffs: dict, n: int) -> dict:
    out = {}
    for key, M in coeffs.items():
        M = fmat(M)
        if len(M) != n or any(len(r) != n for r in M):
            raise DimensionMismatch(f"coefficient {key} is not {n}x{n}")
        if any(any(r) for r in M):
            out[tuple(sorted(key))] = M
    return out


class _TensorBase:
    key_size: int

    def __init__(self, d: int, k: int, n: int, coeffs: dict):
        if not 0 <= k < d:
            raise ValueError("need 0 <= k < d")
        if n < 1:
            raise ValueError("need n >= 1")
        self.d, self.k, self.n = d, k, n
        size = self._key_size()
        for key in coeffs:
            if len(set(key)) != size or not all(0 <= i <= d for i in key):
                raise DimensionMismatch(f"key {key} is not a {size}-subset of 0..{d}")
        self.coeffs = _clean(coeffs, n)
        if not self.coeffs:
            raise ValueError("tensor has no nonzero coefficient")

    def _key_size(self) -> int:
        raise NotImplementedError

    def keys(self):
        return list(combinations(range(self.d + 1), self._key_size()))

    def coeff(self, key) -> list[list[Fraction]]:
        return self.coeffs.get(tuple(key), zeros(self.n, self.n))

    def transform(self, A, B):
        """The tensor A * gamma * B."""
        A, B = fmat(A), fmat(B)
        return type(self)(self.d, self.k, self.n, {key: matmul(matmul(A, M), B) for key, M in self.coeffs.items()})

    def right_multiply(self, B):
        return self.transform([[Fraction(int(i == j)) for j in range(self.n)] for i in range(self.n)], B)

    def __eq__(self, other):
        return (type(self) is type(other) and (self.d, self.k, self.n) == (other.d, other.k, other.n)
                and self.coeffs == other.coeffs)

    def __repr__(self):
        return f"{type(self).__name__}(d={self.d}, k={self.k}, n={self.n}, keys={sorted(self.coeffs)})"


class LivsicTensor(_TensorBase):
    """Primal form: coefficients on (k+1)-subsets."""

    def _key_size(self):
        return self.k + 1

    @classmethod
    def from_pencil(cls, mats: Sequence) -> "LivsicTensor":
        """Hypersurface case k = d-1 from a pencil A_0..A_d; gamma wedge p is sum p_i A_i."""
        d = len(mats) - 1
        n = len(mats[0])
        full = tuple(range(d + 1))
        coeffs = {}
        for i, A in enumerate(mats):
            key = tuple(j for j in full if j != i)
            coeffs[key] = [[(-1) ** i * Fraction(a) for a in row] for row in A]
        return cls(d, d - 1, n, coeffs)


class LivsicDual(_TensorBase):
    """Dual form: coefficients on (d-k)-subsets."""

    composition_sign: int | None = None

    def _key_size(self):
        return self.d - self.k


def hodge_dual(T):
    """Switch between primal and dual presentations.

    The coefficient on a subset moves to its complement, signed by the
    permutation (subset, complement).  Applying it twice gives back the tensor
    up to one global sign.
    """
    full = range(T.d + 1)
    out = {}
    for key, M in T.coeffs.items():
        comp = tuple(i for i in full if i not in key)
        sgn = _perm_sign(list(key) + list(comp))
        out[comp] = [[sgn * a for a in row] for row in M]
    target = LivsicTensor if isinstance(T, LivsicDual) else LivsicDual
    return target(T.d, T.k, T.n, out)


def wedge_with_point(gamma: LivsicTensor, p: Sequence) -> list[list[Fraction]]:
    """Stacked blocks (gamma ^ p)_J = sum_a (-1)^a p_{j_a} gamma_{J - j_a} over (k+2)-subsets J."""
    p = [Fraction(c) for c in p]
    if len(p) != gamma.d + 1:
        raise DimensionMismatch(f"point needs {gamma.d + 1} coordinates")
    if not any(p):
        raise ValueError("zero point")
    n = gamma.n
    rows = []
    for J in combinations(range(gamma.d + 1), gamma.k + 2):
        block = zeros(n, n)
        for a, j in enumerate(J):
            if p[j] == 0:
                continue
            key = J[:a] + J[a + 1:]
            M = gamma.coeffs.get(key)
            if M is None:
                continue
            c = p[j] if a % 2 == 0 else -p[j]
            for r in range(n):
                br, mr = block[r], M[r]
                for s in range(n):
                    if mr[s]:
                        br[s] += c * mr[s]
        rows.extend(block)
    return rows


def membership(gamma: LivsicTensor, p: Sequence) -> tuple[bool, int]:
    M = wedge_with_point(gamma, p)
    rk = rank(M)
    dim = gamma.n - rk
    return dim > 0, dim


def plucker(W: Sequence, J: Sequence[int]) -> Fraction:
    return det([[row[j] for j in J] for row in W])


@dataclass(frozen=True)
class CenterEvaluation:
    matrix: list = field(compare=True)
    verdict: str | None  # None for a nonsymmetric result


def evaluate_at_center(T: LivsicDual, W: Sequence) -> CenterEvaluation:
    """sum_J T_J det(W_J) for the (d-k) x (d+1) spanning matrix W."""
    W = fmat(W)
    r = T.d - T.k
    if len(W) != r or any(len(row) != T.d + 1 for row in W):
        raise DimensionMismatch(f"need {r} points with {T.d + 1} coordinates")
    if rank(W) != r:
        raise RankDeficient("spanning points are dependent")
    n = T.n
    out = zeros(n, n)
    for J, M in T.coeffs.items():
        c = plucker(W, J)
        if c:
            for i in range(n):
                for j in range(n):
                    out[i][j] += c * M[i][j]
    verdict = signature(out).definiteness() if is_symmetric(out) else None
    return CenterEvaluation(out, verdict)


def is_real_symmetric(T) -> bool:
    return all(is_symmetric(M) for M in T.coeffs.values())


def check_similarity(g1, g2, A, B) -> bool:
    """True iff g1_I = A g2_I B for every index set I."""
    if det(A) == 0 or det(B) == 0:
        raise SingularMatrix("similarity needs invertible A and B")
    if (g1.d, g1.k, g1.n) != (g2.d, g2.k, g2.n) or type(g1) is not type(g2):
        return False
    A, B = fmat(A), fmat(B)
    for key in set(g1.coeffs) | set(g2.coeffs):
        if g1.coeff(key) != matmul(matmul(A, g2.coeff(key)), B):
            return False
    return True


# cycles


@dataclass(frozen=True)
class Component:
    """A component given by d+1 forms in (dim+1) parameters, or a single point."""

    label: str
    parametrization: tuple
    degree: int

    @property
    def is_point(self) -> bool:
        return not isinstance(self.parametrization[0], MultiPoly)

    @property
    def dimension(self) -> int:
        return 0 if self.is_point else self.parametrization[0].nvars - 1

    @classmethod
    def point(cls, label: str, p: Sequence, degree: int = 1) -> "Component":
        return cls(label, tuple(Fraction(c) for c in p), degree)

    @classmethod
    def curve(cls, label: str, forms: Sequence, degree: int) -> "Component":
        return cls(label, tuple(as_poly(f) for f in forms), degree)

    @classmethod
    def hyperplane(cls, label: str, normal: Sequence) -> "Component":
        """The hyperplane {sum normal_i x_i = 0}, parametrized linearly."""
        _, basis = kernel_rank([[Fraction(c) for c in normal]])
        m = len(basis)
        gens = MultiPoly.gens(m)
        forms = []
        for i in range(len(normal)):
            acc = MultiPoly(m)
            for j, v in enumerate(basis):
                if v[i]:
                    acc = acc + gens[j] * v[i]
            forms.append(acc)
        return cls(label, tuple(forms), 1)


@dataclass(frozen=True)
class ComponentCycle:
    label: str
    kernel_dim: int
    degree: int
    dimension: int
    counted: bool
    samples_agree: bool


@dataclass(frozen=True)
class CycleReport:
    components: tuple
    total: int
    n: int

    @property
    def admissible(self) -> bool:
        return self.total == self.n


def _sample_points(comp: Component, samples: int, rng: random.Random):
    if comp.is_point:
        return [comp.parametrization]
    m = comp.parametrization[0].nvars
    pts = []
    attempts = 0
    while len(pts) < samples:
        attempts += 1
        if attempts > 50 * samples:
            raise ComponentNotContained(f"parametrization of {comp.label} keeps vanishing")
        u = [Fraction(rng.randint(-60, 60), rng.randint(1, 7)) for _ in range(m)]
        p = [f(*u) for f in comp.parametrization]
        if any(p):
            pts.append(p)
    return pts


def cycle_degree(gamma: LivsicTensor, components: Sequence[Component], samples: int = 25, seed: int = 0,
                 kernel_dim: Callable | None = None) -> CycleReport:
    """Generic kernel dimensions on each component, weighted by degree.

    Only components of dimension k count toward the total.  ``kernel_dim``
    replaces the plain kernel dimension of gamma ^ p, e.g. by generalized joint
    kernels for the Jordan variant.
    """
    rng = random.Random(seed)
    dim_at = kernel_dim or (lambda p: membership(gamma, p)[1])
    out = []
    total = 0
    for comp in components:
        if not comp.is_point and len(comp.parametrization) != gamma.d + 1:
            raise DimensionMismatch(f"component {comp.label} lives in the wrong projective space")
        dims = [dim_at(p) for p in _sample_points(comp, samples, rng)]
        nj = min(dims)
        if nj == 0:
            raise ComponentNotContained(
                f"{comp.label}: {sum(1 for x in dims if x)} of {len(dims)} sampled points are members")
        agree = len(set(dims)) == 1
        if not agree:
            log.warning("kernel dimensions on %s disagree across samples: %s", comp.label, sorted(set(dims)))
        if comp.dimension > gamma.k:
            raise DimensionMismatch(f"component {comp.label} has dimension {comp.dimension} > {gamma.k}")
        counted = comp.dimension == gamma.k
        if counted:
            total += nj * comp.degree
        out.append(ComponentCycle(comp.label, nj, comp.degree, comp.dimension, counted, agree))
    return CycleReport(tuple(out), total, gamma.n)
