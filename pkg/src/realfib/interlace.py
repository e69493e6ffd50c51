"""Bezoutians, interlacing and real fiberedness of maps P^1 -> P^1.

A map is a pair (f, g) of binary forms of equal degree n without a common
projective zero.  It is real fibered exactly when every real pencil member
lambda*f + mu*g has only real zeros, which for coprime forms is equivalent to
the homogeneous Bezoutian being definite.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import CommonZeroError, CrossCheckFailure, DimensionMismatch
from .linalg import SignatureResult, det, resultant_coeffs, signature
from .polys import HomForm, MultiPoly, UniPoly, as_poly, binary_coeffs, binary_form, squarefree_part
from .realroots import isolate_real_roots, sturm_count

log = logging.getLogger(__name__)


class PairVerdict(str, enum.Enum):
    REAL_FIBERED = "RealFiberedInterlacing"
    COMMON_ZERO = "CommonZero"
    NOT_REAL_FIBERED = "NotRealFibered"


def _degree(f) -> int:
    if isinstance(f, HomForm):
        return f.degree
    d = f.total_degree
    if d < 0:
        raise ValueError("zero form has no degree")
    return d


def binary_resultant(f, g, n: int | None = None) -> Fraction:
    """Homogeneous resultant of two binary forms of formal degree n."""
    n = _degree(f) if n is None else n
    a = list(reversed(binary_coeffs(f, n)))
    b = list(reversed(binary_coeffs(g, n)))
    return resultant_coeffs(a, b)


class RationalMapP1:
    """The morphism (s:t) -> (f(s,t) : g(s,t))."""

    __slots__ = ("f", "g", "degree")

    def __init__(self, f, g):
        f, g = as_poly(f), as_poly(g)
        if f.nvars != 2 or g.nvars != 2:
            raise DimensionMismatch("maps P^1 -> P^1 need bivariate forms")
        if f.is_zero() or g.is_zero():
            raise CommonZeroError("a zero component shares every zero with the other")
        n = f.total_degree
        if not f.is_homogeneous(n) or not g.is_homogeneous(n):
            raise ValueError("f and g must be homogeneous of the same degree")
        if n < 1:
            raise ValueError("degree must be at least 1")
        if binary_resultant(f, g, n) == 0:
            raise CommonZeroError("f and g have a common projective zero")
        self.f = f
        self.g = g
        self.degree = n

    @classmethod
    def from_coeffs(cls, fc, gc) -> "RationalMapP1":
        """From coefficient lists a_k of s^(n-k) t^k."""
        return cls(binary_form(fc), binary_form(gc))

    def coeffs(self) -> tuple[list[Fraction], list[Fraction]]:
        return binary_coeffs(self.f, self.degree), binary_coeffs(self.g, self.degree)

    def __eq__(self, other):
        if not isinstance(other, RationalMapP1):
            return NotImplemented
        return self.f == other.f and self.g == other.g

    def __hash__(self):
        return hash((self.f, self.g))

    def proportional_to(self, other: "RationalMapP1") -> bool:
        """Equal up to one common nonzero scalar."""
        if self.degree != other.degree:
            return False
        a = self.coeffs()[0] + self.coeffs()[1]
        b = other.coeffs()[0] + other.coeffs()[1]
        k = next(i for i, x in enumerate(a) if x != 0)
        if b[k] == 0:
            return False
        c = b[k] / a[k]
        return all(c * x == y for x, y in zip(a, b))

    def __repr__(self):
        fc, gc = self.coeffs()
        return f"RationalMapP1({[str(c) for c in fc]}, {[str(c) for c in gc]})"


def bezoutian(f, g) -> list[list[Fraction]]:
    """Homogeneous Bezoutian in the basis s^(n-1), s^(n-2) t, ..., t^(n-1).

    Defined by f(s,t)g(u,v) - f(u,v)g(s,t) = (sv - tu) * sum B[i][j] s^(n-1-i) t^i u^(n-1-j) v^j.
    """
    n = _degree(f)
    if _degree(g) != n:
        raise ValueError(f"degree mismatch: {n} vs {_degree(g)}")
    if n < 1:
        raise ValueError("degree must be at least 1")
    a = binary_coeffs(f, n)
    b = binary_coeffs(g, n)
    B = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n + 1):
        for l in range(k + 1, n + 1):
            c = a[k] * b[l] - a[l] * b[k]
            if c == 0:
                continue
            # (t^k v^l - t^l v^k) / (v - t) = sum_m t^(l-1-m) v^(k+m)
            for m in range(l - k):
                B[l - 1 - m][k + m] += c
    return B


def pencil_member(m: RationalMapP1, lam, mu) -> UniPoly:
    """lambda*f + mu*g in the chart s = 1 (formal degree n)."""
    fc, gc = m.coeffs()
    return UniPoly(lam * x + mu * y for x, y in zip(fc, gc))


def member_real_rooted(m: RationalMapP1, lam, mu) -> bool:
    h = pencil_member(m, lam, mu)
    # zeros lost in the chart sit at (0:1), which is real
    if h.degree <= 0:
        return True
    # Sturm alone; the Bezoutian is the certificate and this is only a guard
    n_real = sturm_count(h)
    return n_real == h.degree or n_real == squarefree_part(h).degree


def pencil_grid(height: int = 7) -> list[tuple[int, int]]:
    """(lambda:mu) over signed Farey fractions p/q with |p|, q <= height, plus (1:0)."""
    pts = [(1, 0)]
    for q in range(1, height + 1):
        for p in range(-height, height + 1):
            if gcd(p, q) == 1:
                pts.append((p, q))
    return pts


@dataclass(frozen=True)
class PairClassification:
    verdict: PairVerdict
    signature: SignatureResult | None
    bezoutian: list = field(compare=False, default_factory=list)
    witness: tuple[int, int] | None = None
    samples: int = 0

    @property
    def real_fibered(self) -> bool:
        return self.verdict is PairVerdict.REAL_FIBERED


def _find_witness(m: RationalMapP1, max_height: int = 60):
    checked = 0
    seen = set()
    for h in range(1, max_height + 1):
        for lam, mu in pencil_grid(h):
            if (lam, mu) in seen:
                continue
            seen.add((lam, mu))
            checked += 1
            if not member_real_rooted(m, lam, mu):
                return (lam, mu), checked
    return None, checked


def classify_pair(m: RationalMapP1, height: int = 7) -> PairClassification:
    """Real fiberedness via Bezoutian definiteness, guarded by pencil sampling."""
    B = bezoutian(m.f, m.g)
    sig = signature(B)
    n = m.degree
    definite = sig.n_plus == n or sig.n_minus == n
    if definite:
        grid = pencil_grid(height)
        for lam, mu in grid:
            if not member_real_rooted(m, lam, mu):
                raise CrossCheckFailure(
                    f"definite Bezoutian but pencil member ({lam}:{mu}) is not real-rooted for {m}")
        return PairClassification(PairVerdict.REAL_FIBERED, sig, B, None, len(grid))
    witness, checked = _find_witness(m)
    if witness is None:
        raise CrossCheckFailure(f"indefinite Bezoutian {sig} but no failing pencil member found for {m}")
    return PairClassification(PairVerdict.NOT_REAL_FIBERED, sig, B, witness, checked)


def classify_forms(f, g) -> PairClassification:
    """Entry point for raw forms: reports CommonZero instead of raising."""
    try:
        m = RationalMapP1(f, g)
    except CommonZeroError:
        return PairClassification(PairVerdict.COMMON_ZERO, None, [], None, 0)
    return classify_pair(m)


def compose(m1: RationalMapP1, m2: RationalMapP1) -> RationalMapP1:
    """m1 after m2: (f1(f2, g2), g1(f2, g2))."""
    subs = [m2.f, m2.g]
    return RationalMapP1(m1.f.compose(subs), m1.g.compose(subs))


def mobius_power_map(k: int) -> RationalMapP1:
    """Phi^-1 o (z -> z^k) o Phi with Phi(z) = (z - i)/(z + i), over Q.

    Phi^-1(w) = i(1 + w)/(1 - w), so z = s/t maps to
    i((s+it)^k + (s-it)^k) / ((s+it)^k - (s-it)^k) = Re (s+it)^k / Im (s+it)^k.
    """
    if k < 1:
        raise ValueError("k must be positive")
    s, t = MultiPoly.gens(2)
    re, im = MultiPoly.constant(1, 2), MultiPoly(2)
    for _ in range(k):
        # (re + i im)(s + i t)
        re, im = re * s - im * t, re * t + im * s
    return RationalMapP1(re, im)


def wronskian(m: RationalMapP1) -> MultiPoly:
    """f_s g_t - f_t g_s, a form of degree 2n - 2 vanishing at ramification points."""
    return m.f.partial(0) * m.g.partial(1) - m.f.partial(1) * m.g.partial(0)


@dataclass(frozen=True)
class RealPoint:
    """A real point of P^1: exact coordinates when rational, else an isolating
    interval (lo, hi] for the affine coordinate t/s."""

    exact: tuple[Fraction, Fraction] | None
    interval: tuple[Fraction, Fraction] | None = None

    def __str__(self):
        if self.exact is not None:
            return f"({self.exact[0]}:{self.exact[1]})"
        return f"(1:t) with t in ({self.interval[0]}, {self.interval[1]}]"


def real_ramification(m: RationalMapP1) -> list[RealPoint]:
    """Real zeros of the ramification form (both affine charts)."""
    W = wronskian(m)
    if W.is_zero():
        raise CrossCheckFailure("identically vanishing Wronskian for a nonconstant map")
    d = 2 * m.degree - 2
    w = UniPoly(binary_coeffs(W, d))
    pts = []
    if w.degree > 0:
        for lo, hi in isolate_real_roots(w):
            if lo == hi:
                pts.append(RealPoint((Fraction(1), lo)))
            else:
                pts.append(RealPoint(None, (lo, hi)))
    if w.degree < d:
        pts.append(RealPoint((Fraction(0), Fraction(1))))
    return pts


def bezoutian_determinant(m: RationalMapP1) -> Fraction:
    return det(bezoutian(m.f, m.g))
