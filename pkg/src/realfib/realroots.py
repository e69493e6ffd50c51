"""Real-rootedness and nonnegativity of univariate polynomials, decided exactly."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import CrossCheckFailure, NonMonicError, ZeroPolynomialError
from .linalg import rank, signature
from .polys import UniPoly, squarefree_decomposition, squarefree_part


class RootVerdict(str, enum.Enum):
    ALL_REAL = "AllRealRoots"
    NOT_ALL_REAL = "NotAllReal"


@dataclass(frozen=True)
class RealRootCertificate:
    verdict: RootVerdict
    distinct_real_roots: int
    distinct_complex_roots: int
    method: str = "Sturm"

    @property
    def all_real(self) -> bool:
        return self.verdict is RootVerdict.ALL_REAL


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, integer lists lowest first."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    for _ in range(len(a) - len(b) + 1):
        if len(r) - 1 < db:
            r = [x * lb for x in r]
            continue
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j, y in enumerate(b):
            r[shift + j] -= lr * y
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def _primitive(a: list[int]) -> list[int]:
    g = 0
    for x in a:
        g = gcd(g, x)
    return [x // g for x in a] if g > 1 else a


def sturm_sequence(p: UniPoly) -> list[list[int]]:
    """Sturm chain with primitive integer members (sign-correct pseudo-remainders)."""
    if p.is_zero():
        raise ZeroPolynomialError("Sturm sequence of zero polynomial")
    a = p.primitive_int()
    if len(a) == 1:
        return [a]
    b = _primitive(p.derivative().primitive_int())
    seq = [a, b]
    while len(seq[-1]) > 1:
        prev, cur = seq[-2], seq[-1]
        delta = len(prev) - len(cur)
        r = _int_prem(prev, cur)
        if not r:
            break
        # prem = lc^(delta+1) * rem; we need -rem up to a positive factor
        if cur[-1] < 0 and (delta + 1) % 2 == 1:
            nxt = r
        else:
            nxt = [-x for x in r]
        seq.append(_primitive(nxt))
    return seq


def _variations(signs) -> int:
    s = [x for x in signs if x != 0]
    return sum(1 for a, b in zip(s, s[1:]) if (a > 0) != (b > 0))


def sturm_count(p: UniPoly) -> int:
    """Number of distinct real roots."""
    seq = sturm_sequence(p)
    at_pos = [q[-1] for q in seq]
    at_neg = [q[-1] * (-1) ** (len(q) - 1) for q in seq]
    return _variations(at_neg) - _variations(at_pos)


def _eval_int(q: list[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(q):
        acc = acc * x + c
    return acc


def sturm_count_interval(p: UniPoly, lo, hi) -> int:
    """Distinct real roots in the half-open interval (lo, hi]."""
    seq = sturm_sequence(p)
    lo, hi = Fraction(lo), Fraction(hi)
    return _variations([_eval_int(q, lo) for q in seq]) - _variations([_eval_int(q, hi) for q in seq])


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: all roots have |x| < bound."""
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def _refine(q: UniPoly, lo: Fraction, hi: Fraction, steps: int = 8):
    # a few bisections so that simple rational roots come back exact
    for _ in range(steps):
        if q(hi) == 0:
            return (hi, hi)
        mid = (lo + hi) / 2
        if q(mid) == 0:
            return (mid, mid)
        if sturm_count_interval(q, lo, mid):
            hi = mid
        else:
            lo = mid
    return (hi, hi) if q(hi) == 0 else (lo, hi)


def isolate_real_roots(p: UniPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], each containing exactly one distinct real root.

    Degenerate intervals lo == hi mark exact rational roots.
    """
    if p.is_zero():
        raise ZeroPolynomialError("root isolation of zero polynomial")
    q = squarefree_part(p)
    if q.degree <= 0:
        return []
    B = root_bound(q)
    out = []
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        n = sturm_count_interval(q, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append(_refine(q, lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out)


def power_sums(p: UniPoly, count: int) -> list[Fraction]:
    """s_0..s_{count-1} of the roots of a monic p, by Newton's identities."""
    n = p.degree
    # c[k] = coefficient of t^(n-k)
    c = [p[n - k] for k in range(n + 1)]
    s = [Fraction(n)]
    for k in range(1, count):
        acc = Fraction(0)
        for i in range(1, min(k, n + 1)):
            acc += c[i] * s[k - i]
        if k <= n:
            acc += k * c[k]
        s.append(-acc)
    return s


def hermite_matrix(p: UniPoly) -> list[list[Fraction]]:
    """Hankel matrix of root power sums of a monic polynomial."""
    if p.is_zero():
        raise ZeroPolynomialError("Hermite matrix of zero polynomial")
    n = p.degree
    if n < 1:
        raise ValueError("Hermite matrix needs degree >= 1")
    if p.lc != 1:
        raise NonMonicError(f"Hermite matrix needs a monic polynomial, leading coefficient is {p.lc}")
    s = power_sums(p, 2 * n - 1)
    return [[s[i + j] for j in range(n)] for i in range(n)]


def is_real_rooted(p: UniPoly) -> RealRootCertificate:
    """Decide whether every complex root is real, on the squarefree part.

    The Sturm count is cross-checked against the Hermite form signature; a
    disagreement raises CrossCheckFailure.
    """
    if p.is_zero():
        raise ZeroPolynomialError("real-rootedness of zero polynomial")
    q = squarefree_part(p)
    n_complex = q.degree
    n_real = sturm_count(p)
    if n_complex >= 1:
        H = hermite_matrix(q)
        sig = signature(H)
        if sig.n_plus - sig.n_minus != n_real or rank(H) != n_complex:
            raise CrossCheckFailure(f"Sturm ({n_real}) and Hermite ({sig}) disagree for {p}")
    verdict = RootVerdict.ALL_REAL if n_real == n_complex else RootVerdict.NOT_ALL_REAL
    return RealRootCertificate(verdict, n_real, n_complex, "Sturm+Hermite")


def nonneg_on_reals(p: UniPoly) -> bool:
    """True iff p(t) >= 0 for every real t."""
    if p.is_zero():
        raise ZeroPolynomialError("nonnegativity of zero polynomial")
    if p.degree == 0:
        return p.lc > 0
    if p.lc < 0 or p.degree % 2:
        return False
    for factor, mult in squarefree_decomposition(p):
        if mult % 2 and sturm_count(factor) > 0:
            return False
    return True


def gap_points(p: UniPoly) -> list[Fraction]:
    """One rational point in every open interval cut out by the distinct real
    roots of p (including the two unbounded ones)."""
    q = squarefree_part(p)
    ivs = isolate_real_roots(q)
    if not ivs:
        return [Fraction(0)]
    B = root_bound(q) + 1
    pts = [-B]
    for (lo, hi), (lo2, hi2) in zip(ivs, ivs[1:]):
        if lo != hi:
            pts.append(hi)
            continue
        r = hi
        a, b = lo2, hi2
        while True:
            if a > r:
                pts.append(a)
                break
            m = (a + b) / 2
            if q(m) == 0:
                pts.append((r + m) / 2)
                break
            if sturm_count_interval(q, a, m) == 0:
                a = m
            else:
                b = m
    pts.append(B)
    return pts


def negative_point(p: UniPoly) -> Fraction | None:
    """A rational t with p(t) < 0, or None if p is nonnegative on the reals.

    Small-height rationals are tried first so witnesses stay readable.
    """
    if p.is_zero() or nonneg_on_reals(p):
        return None
    for t in small_rationals(6):
        if p(t) < 0:
            return t
    for t in gap_points(p):
        if p(t) < 0:
            return t
    raise CrossCheckFailure(f"no negative value found for {p} although it is not nonnegative")


def small_rationals(max_height: int | None = None):
    """0, 1, -1, 2, -2, 1/2, -1/2, ... by increasing height max(|p|, q)."""
    yield Fraction(0)
    h = 1
    while max_height is None or h <= max_height:
        for q in range(1, h + 1):
            for p in range(1, h + 1):
                if max(p, q) == h and gcd(p, q) == 1:
                    yield Fraction(p, q)
                    yield Fraction(-p, q)
        h += 1
