"""Seeded random inputs for property checks and demos."""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import CommonZeroError
from .interlace import RationalMapP1, compose, mobius_power_map
from .linalg import det, matmul
from .livsic import Component, LivsicTensor
from .polys import MultiPoly, UniPoly


def random_rational(rng: random.Random, height: int = 9, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, den))


def random_monic(rng: random.Random, max_degree: int = 8, height: int = 6) -> UniPoly:
    n = rng.randint(1, max_degree)
    coeffs = [Fraction(rng.randint(-height, height)) for _ in range(n)] + [Fraction(1)]
    # occasionally force repeated or rational roots
    p = UniPoly(coeffs)
    if rng.random() < 0.25 and n >= 2:
        r = Fraction(rng.randint(-3, 3))
        p = UniPoly.from_roots([r, r]) * UniPoly(coeffs[: n - 2] + [Fraction(1)])
    return p


def _distinct_sorted(rng: random.Random, k: int, height: int = 12):
    vals = set()
    while len(vals) < k:
        vals.add(Fraction(rng.randint(-height, height), rng.randint(1, 3)))
    return sorted(vals)


def _linear_factors(roots) -> MultiPoly:
    s, t = MultiPoly.gens(2)
    acc = MultiPoly.constant(1, 2)
    for r in roots:
        acc = acc * (s - t * r)
    return acc


def random_mobius(rng: random.Random):
    while True:
        M = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
        if det(M) != 0:
            return M


def _source_change(m: RationalMapP1, M) -> RationalMapP1:
    s, t = MultiPoly.gens(2)
    subs = [s * M[0][0] + t * M[0][1], s * M[1][0] + t * M[1][1]]
    return RationalMapP1(m.f.compose(subs), m.g.compose(subs))


def _target_change(m: RationalMapP1, M) -> RationalMapP1:
    return RationalMapP1(m.f * M[0][0] + m.g * M[0][1], m.f * M[1][0] + m.g * M[1][1])


def random_interlacing_map(rng: random.Random, n: int | None = None) -> RationalMapP1:
    """Two real-rooted forms with alternating zeros, mixed by real Moebius changes."""
    if n is None:
        n = rng.randint(1, 4)
    pts = _distinct_sorted(rng, 2 * n)
    f = _linear_factors(pts[0::2])
    g = _linear_factors(pts[1::2])
    m = RationalMapP1(f, g)
    m = _source_change(m, random_mobius(rng))
    return _target_change(m, random_mobius(rng))


def random_real_fibered_map(rng: random.Random) -> RationalMapP1:
    """Either an interlacing pair or a composite with a ladder map."""
    kind = rng.randrange(3)
    if kind == 0:
        return random_interlacing_map(rng)
    if kind == 1:
        return compose(mobius_power_map(rng.randint(1, 3)), random_interlacing_map(rng, rng.randint(1, 2)))
    return compose(random_interlacing_map(rng, rng.randint(1, 2)), mobius_power_map(rng.randint(2, 3)))


def random_map(rng: random.Random, n: int | None = None, height: int = 5) -> RationalMapP1:
    """A random valid map with small integer coefficients."""
    if n is None:
        n = rng.randint(1, 4)
    while True:
        fc = [rng.randint(-height, height) for _ in range(n + 1)]
        gc = [rng.randint(-height, height) for _ in range(n + 1)]
        try:
            return RationalMapP1.from_coeffs(fc, gc)
        except (CommonZeroError, ValueError):
            continue


def random_symmetric(rng: random.Random, n: int, height: int = 5):
    A = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            A[i][j] = A[j][i] = Fraction(rng.randint(-height, height))
    return A


def random_symmetric_pencil(rng: random.Random, d: int | None = None, n: int | None = None):
    """A_0 = I and random symmetric A_1..A_d."""
    d = d or rng.randint(2, 3)
    n = n or rng.randint(2, 3)
    eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return [eye] + [random_symmetric(rng, n) for _ in range(d)]


def random_invertible(rng: random.Random, n: int, height: int = 4):
    while True:
        M = [[Fraction(rng.randint(-height, height)) for _ in range(n)] for _ in range(n)]
        if det(M) != 0:
            return M


def random_split_tensor(rng: random.Random):
    """A hypersurface tensor whose determinant is a product of linear forms.

    Returns (tensor, components).  Repeated forms give components with
    kernel dimension above one.
    """
    d = rng.randint(2, 3)
    n = rng.randint(2, 4)
    target = rng.randint(1, n)
    distinct = []
    while len(distinct) < target:
        v = tuple(rng.randint(-3, 3) for _ in range(d + 1))
        if any(v) and all(_independent(v, w) for w in distinct):
            distinct.append(v)
    forms = distinct + [rng.choice(distinct) for _ in range(n - len(distinct))]
    P, Q = random_invertible(rng, n), random_invertible(rng, n)
    mats = []
    for i in range(d + 1):
        D = [[Fraction(forms[r][i]) if r == c else Fraction(0) for c in range(n)] for r in range(n)]
        mats.append(matmul(matmul(P, D), Q))
    tensor = LivsicTensor.from_pencil(mats)
    comps = [Component.hyperplane(f"H{j}", v) for j, v in enumerate(distinct)]
    return tensor, comps


def _independent(v, w) -> bool:
    return any(v[i] * w[j] != v[j] * w[i] for i in range(len(v)) for j in range(len(v)))
