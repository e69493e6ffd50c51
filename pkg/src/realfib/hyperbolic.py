"""Hyperbolicity of forms and of parametrized curves with respect to linear centers."""

from __future__ import annotations

import enum
import itertools
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import (
    CommonZeroError,
    CrossCheckFailure,
    DimensionMismatch,
    InvalidBasePoint,
    NotSymmetricError,
    RankDeficient,
)
from .interlace import RationalMapP1
from .linalg import det, det_ring, fmat, is_symmetric, kernel_rank, rank, resultant_coeffs, signature
from .polys import MultiPoly, as_poly, interpolate, restrict_to_line, squarefree_part
from .realroots import is_real_rooted, sturm_count

log = logging.getLogger(__name__)


class HypStatus(str, enum.Enum):
    REFUTED = "Refuted"
    NOT_REFUTED = "NotRefuted"
    CERTIFIED = "Certified"


@dataclass(frozen=True)
class HyperbolicityVerdict:
    status: HypStatus
    witness: tuple | None = None
    samples: int = 0
    reason: str | None = None
    seed: int | None = None


def direction_test(f, e: Sequence, x: Sequence) -> bool:
    """True iff t -> f(e + t x) has only real roots (on the squarefree part)."""
    f = as_poly(f)
    if f(*e) == 0:
        raise InvalidBasePoint(f"f vanishes at the base point {tuple(e)}")
    p = restrict_to_line(f, e, x)
    return p.degree <= 0 or is_real_rooted(p).all_real


def lattice_shell(nvars: int, radius: int):
    """Integer vectors with max |x_i| = radius, in a fixed order."""
    rng = range(-radius, radius + 1)
    for v in itertools.product(rng, repeat=nvars):
        if max(abs(c) for c in v) == radius:
            yield v


def random_direction(rng: random.Random, nvars: int, height: int = 9) -> tuple:
    while True:
        v = tuple(Fraction(rng.randint(-height, height), rng.randint(1, 4)) for _ in range(nvars))
        if any(v):
            return v


def pencil_determinant(pencil: Sequence) -> MultiPoly:
    """det(x_0 A_0 + ... + x_d A_d) as a form in d+1 variables."""
    nv = len(pencil)
    n = len(pencil[0])
    gens = MultiPoly.gens(nv)
    M = [[sum((gens[i] * Fraction(pencil[i][r][c]) for i in range(nv)), MultiPoly(nv)) for c in range(n)]
         for r in range(n)]
    return det_ring(M, MultiPoly.constant(1, nv))


def definite_pencil_certificate(pencil: Sequence, e: Sequence) -> bool:
    """True iff every A_i is symmetric and sum e_i A_i is positive definite."""
    mats = [fmat(A) for A in pencil]
    if len(e) != len(mats):
        raise DimensionMismatch("base point and pencil sizes differ")
    if not all(is_symmetric(A) for A in mats):
        raise NotSymmetricError("pencil matrices must be symmetric")
    n = len(mats[0])
    S = [[sum((Fraction(e[i]) * mats[i][r][c] for i in range(len(mats))), Fraction(0)) for c in range(n)]
         for r in range(n)]
    return signature(S).n_plus == n


def hyperbolicity_search(f=None, e: Sequence = (), budget: int = 200, seed: int = 0,
                         pencil: Sequence | None = None) -> HyperbolicityVerdict:
    """Look for a direction whose restriction has a non-real root.

    With a definite symmetric pencil the form is certified without sampling.
    Otherwise the answer is at best NotRefuted.
    """
    if pencil is not None:
        det_form = pencil_determinant(pencil)
        if f is None:
            f = det_form
        else:
            f = as_poly(f)
            if f.nvars != det_form.nvars:
                raise DimensionMismatch("form and pencil have different numbers of variables")
            # f must be a nonzero multiple of the pencil determinant
            lead = max(det_form.terms)
            c = f.coeff(lead) / det_form.coeff(lead) if det_form.coeff(lead) else 0
            if c == 0 or f != det_form * c:
                raise ValueError("f is not the determinant of the given pencil")
    f = as_poly(f)
    if len(e) != f.nvars:
        raise DimensionMismatch(f"base point has {len(e)} coordinates, form has {f.nvars} variables")
    if f(*e) == 0:
        raise InvalidBasePoint(f"f vanishes at the base point {tuple(e)}")
    if pencil is not None and definite_pencil_certificate(pencil, e):
        return HyperbolicityVerdict(HypStatus.CERTIFIED, None, 0, "DefinitePencil", seed)

    rng = random.Random(seed)
    tested = 0

    def directions():
        shells = itertools.chain(lattice_shell(f.nvars, 1), lattice_shell(f.nvars, 2))
        yield from itertools.islice(shells, budget // 2)
        while True:
            yield random_direction(rng, f.nvars)

    for x in directions():
        if tested >= budget:
            break
        tested += 1
        if not direction_test(f, e, x):
            log.debug("refuted at direction %s after %d samples (seed %s)", x, tested, seed)
            return HyperbolicityVerdict(HypStatus.REFUTED, tuple(Fraction(c) for c in x), tested, None, seed)
    return HyperbolicityVerdict(HypStatus.NOT_REFUTED, None, tested, None, seed)


@dataclass(frozen=True)
class CurveCenter:
    """A curve given by d+1 binary forms and a center cut out by linear forms
    (coefficient vectors of length d+1)."""

    parametrization: tuple
    center_forms: tuple

    def __post_init__(self):
        param = tuple(as_poly(p) for p in self.parametrization)
        if not param or all(p.is_zero() for p in param):
            raise ValueError("parametrization is identically zero")
        degs = {p.total_degree for p in param if not p.is_zero()}
        if len(degs) != 1 or not all(p.is_zero() or p.is_homogeneous() for p in param):
            raise ValueError("parametrization must consist of binary forms of one degree")
        forms = tuple(tuple(Fraction(c) for c in ell) for ell in self.center_forms)
        if any(len(ell) != len(param) for ell in forms):
            raise DimensionMismatch("center forms must have one coefficient per coordinate")
        if rank([list(ell) for ell in forms]) != len(forms):
            raise RankDeficient("center forms are linearly dependent")
        object.__setattr__(self, "parametrization", param)
        object.__setattr__(self, "center_forms", forms)

    def pulled_back(self) -> list[MultiPoly]:
        out = []
        for ell in self.center_forms:
            acc = MultiPoly(2)
            for c, p in zip(ell, self.parametrization):
                if c:
                    acc = acc + p * c
            out.append(acc)
        return out


def twisted_cubic() -> tuple[MultiPoly, ...]:
    s, t = MultiPoly.gens(2)
    return (s ** 3, s ** 2 * t, s * t ** 2, t ** 3)


def rational_normal_curve(n: int) -> tuple[MultiPoly, ...]:
    s, t = MultiPoly.gens(2)
    return tuple(s ** (n - i) * t ** i for i in range(n + 1))


def project_curve(cc: CurveCenter) -> RationalMapP1:
    """Linear projection from the center, as a map P^1 -> P^1 (centers of codimension 2)."""
    if len(cc.center_forms) != 2:
        raise DimensionMismatch("projection to P^1 needs exactly two center forms")
    f, g = cc.pulled_back()
    if f.is_zero() or g.is_zero():
        raise CommonZeroError("the center contains the whole curve in one form")
    return RationalMapP1(f, g)


# plane curves


@dataclass(frozen=True)
class IntersectionCount:
    real_count: int
    total_count: int
    bezout_bound: int
    transversal: bool
    seeds: tuple = ()


def _ternary_change(rng: random.Random):
    while True:
        L = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        if det(L) != 0:
            return L


def _count_once(F: MultiPoly, G: MultiPoly, m: int, n: int, rng: random.Random):
    x, y, z = MultiPoly.gens(3)
    while True:
        L = _ternary_change(rng)
        col = [L[0][2], L[1][2], L[2][2]]
        if F(*col) != 0 and G(*col) != 0:
            break
    subs = [x * L[r][0] + y * L[r][1] + z * L[r][2] for r in range(3)]
    F2, G2 = F.compose(subs), G.compose(subs)
    # coefficient lists in z (highest first) at x = 1, y = y0
    fz = F2.coefficients_in(2)
    gz = G2.coefficients_in(2)
    fz += [MultiPoly(3)] * (m + 1 - len(fz))
    gz += [MultiPoly(3)] * (n + 1 - len(gz))
    ys = list(range(m * n + 1))
    vals = []
    for y0 in ys:
        a = [c(1, y0, 0) for c in reversed(fz)]
        b = [c(1, y0, 0) for c in reversed(gz)]
        vals.append(resultant_coeffs(a, b))
    r = interpolate(ys, vals)
    if r.is_zero():
        raise CommonZeroError("the curves share a component")
    at_infinity = 1 if r.degree < m * n else 0
    if r.degree <= 0:
        return at_infinity, at_infinity
    return sturm_count(r) + at_infinity, squarefree_part(r).degree + at_infinity


def curve_pair_real_intersections(f, g, seed: int = 0, tries: int = 3) -> IntersectionCount:
    """Distinct real and complex intersection points of two plane curves.

    The resultant after a random projective change of coordinates counts
    points exactly when the projection separates them; a degenerate change
    can only merge points, so the largest total seen over several seeds is
    kept and at least two seeds must reach it.
    """
    F, G = as_poly(f), as_poly(g)
    if F.nvars != 3 or G.nvars != 3:
        raise DimensionMismatch("plane curves need ternary forms")
    if F.is_zero() or G.is_zero():
        raise CommonZeroError("zero form")
    m, n = F.total_degree, G.total_degree
    if not F.is_homogeneous(m) or not G.is_homogeneous(n):
        raise ValueError("curves must be given by homogeneous forms")
    if m == 0 or n == 0:
        return IntersectionCount(0, 0, 0, True, ())
    results = []
    used = []
    s = seed
    while True:
        rng = random.Random(s)
        results.append(_count_once(F, G, m, n, rng))
        used.append(s)
        s += 1
        best = max(t for _, t in results)
        hits = [rc for rc, t in results if t == best]
        if len(results) >= tries and len(hits) >= 2:
            break
        if len(results) >= tries + 5:
            raise CrossCheckFailure(f"coordinate changes disagree on the intersection count: {results}")
    if len(set(hits)) != 1:
        raise CrossCheckFailure(f"real counts disagree at the maximal total: {results}")
    return IntersectionCount(hits[0], best, m * n, best == m * n, tuple(used))


class Parity(str, enum.Enum):
    POSSIBLE = "Possible"
    IMPOSSIBLE = "Impossible"


def dividing_parity(genus: int, components: int) -> tuple[Parity, str]:
    """Whether a real curve of genus g with s real components can be of dividing type."""
    if genus < 0 or components < 0:
        raise ValueError("genus and component count must be nonnegative")
    g, s = genus, components
    if s == 0:
        return Parity.IMPOSSIBLE, "no real points"
    if s > g + 1:
        return Parity.IMPOSSIBLE, f"s={s} exceeds the Harnack bound g+1={g + 1}"
    if (g + 1 - s) % 2:
        return Parity.IMPOSSIBLE, f"g+1-s={g + 1 - s} odd"
    return Parity.POSSIBLE, f"g+1-s={g + 1 - s} even"


# Veronese surface in P^5

VERONESE_MONOMIALS = ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


def veronese_point(p: Sequence) -> list[Fraction]:
    x, y, z = (Fraction(c) for c in p)
    return [x * x, x * y, x * z, y * y, y * z, z * z]


def conic_from_dual(h: Sequence) -> MultiPoly:
    """The conic h(nu(x, y, z)) for a linear form h on the space of quadrics."""
    return MultiPoly(3, {e: Fraction(c) for e, c in zip(VERONESE_MONOMIALS, h)})


def conic_vector(C: MultiPoly) -> list[Fraction]:
    return [C.coeff(e) for e in VERONESE_MONOMIALS]


def three_conic_resultant(C1: MultiPoly, C2: MultiPoly, C3: MultiPoly) -> Fraction:
    """A nonzero multiple of the resultant of three ternary conics.

    The partial derivatives of their Jacobian determinant are three more conics;
    the 6x6 coefficient determinant of all six vanishes iff the three conics
    share a projective zero.
    """
    cs = [C1, C2, C3]
    J = det_ring([[c.partial(i) for i in range(3)] for c in cs], MultiPoly.constant(1, 3))
    rows = [conic_vector(c) for c in cs] + [conic_vector(J.partial(i)) for i in range(3)]
    return det(rows)


class VeroneseStatus(str, enum.Enum):
    FOUND = "RefutationFound"
    EXHAUSTED = "Exhausted"


@dataclass(frozen=True)
class VeroneseResult:
    status: VeroneseStatus
    witness: tuple | None
    real_count: int | None
    total_count: int | None
    samples: int
    seed: int


def _annihilators(rows) -> list[list[Fraction]]:
    _, basis = kernel_rank(rows)
    return basis


def veronese_center_check(center: Sequence) -> list[list[Fraction]]:
    """Validate a center spanned by three points of Q^6; returns its three annihilating forms."""
    rows = fmat(center)
    if len(rows) != 3 or any(len(r) != 6 for r in rows):
        raise DimensionMismatch("the center is spanned by three points of Q^6")
    if rank(rows) != 3:
        raise RankDeficient("center points are dependent")
    hs = _annihilators(rows)
    if three_conic_resultant(*(conic_from_dual(h) for h in hs)) == 0:
        raise CommonZeroError("the center meets the Veronese surface")
    return hs


def random_veronese_center(rng: random.Random, height: int = 5) -> list[list[int]]:
    while True:
        center = [[rng.randint(-height, height) for _ in range(6)] for _ in range(3)]
        try:
            veronese_center_check(center)
        except (RankDeficient, CommonZeroError):
            continue
        return center


def veronese_refutation(center: Sequence, budget: int = 100, seed: int = 0) -> VeroneseResult:
    """Search for a real 3-space through the center meeting the Veronese surface
    in a non-real point."""
    rows = fmat(center)
    veronese_center_check(rows)
    rng = random.Random(seed)
    for i in range(budget):
        w = [rng.randint(-6, 6) for _ in range(6)]
        U = rows + [[Fraction(c) for c in w]]
        if rank(U) != 4:
            continue
        h1, h2 = _annihilators(U)
        try:
            res = curve_pair_real_intersections(conic_from_dual(h1), conic_from_dual(h2), seed=seed + i)
        except CommonZeroError:
            continue
        if res.real_count < res.total_count:
            return VeroneseResult(VeroneseStatus.FOUND, tuple(w), res.real_count, res.total_count, i + 1, seed)
    return VeroneseResult(VeroneseStatus.EXHAUSTED, None, None, None, budget, seed)


# Edge quartic


def edge_quartic() -> MultiPoly:
    x, y, z = MultiPoly.gens(3)
    return (x ** 4 + y ** 4 + z ** 4) * 25 - (x ** 2 * y ** 2 + x ** 2 * z ** 2 + y ** 2 * z ** 2) * 34


EDGE_BASE_POINTS = ((1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1))


def edge_pencil_member(lam, mu) -> MultiPoly:
    """lam (x^2 - z^2) + mu (y^2 - z^2): the conics through (+-1 : +-1 : 1)."""
    x, y, z = MultiPoly.gens(3)
    return (x ** 2 - z ** 2) * Fraction(lam) + (y ** 2 - z ** 2) * Fraction(mu)


def edge_pencil_members(seed: int, count: int) -> list[tuple[int, int]]:
    """Distinct seeded (lam, mu) giving smooth conics of the pencil."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        lam, mu = rng.randint(-9, 9), rng.randint(-9, 9)
        # lam = 0, mu = 0 or lam + mu = 0 give line pairs
        if not (lam and mu and lam + mu):
            continue
        g = gcd(lam, mu) * (1 if lam > 0 else -1)
        pair = (lam // g, mu // g)
        if pair not in out:
            out.append(pair)
    return out
