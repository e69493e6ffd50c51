"""Trace forms of finite free algebras base[t]/(q) and positivity certificates.

The base is Q (arity 0) or Q[z] (arity 1); larger bases are accepted but can
only be sampled.  Base elements are MultiPoly in ``arity`` variables.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import CrossCheckFailure, DimensionMismatch, NonCommutingError, NonMonicError, NotSelfAdjoint, NotSymmetricError
from .interlace import RationalMapP1
from .linalg import det, det_ring, signature
from .polys import MultiPoly, UniPoly, as_poly, interpolate
from .realroots import negative_point, nonneg_on_reals, small_rationals, sturm_count


class FiberVerdict(str, enum.Enum):
    REAL_FIBERED = "RealFibered"
    NOT_REAL_FIBERED = "NotRealFibered"
    INCONCLUSIVE = "Inconclusive"


def _const(c, arity: int) -> MultiPoly:
    return MultiPoly.constant(c, arity)


def _base(x, arity: int) -> MultiPoly:
    if isinstance(x, MultiPoly):
        if x.nvars != arity:
            raise DimensionMismatch(f"base element has {x.nvars} variables, expected {arity}")
        return x
    if isinstance(x, UniPoly):
        if arity != 1:
            raise DimensionMismatch("univariate base elements need arity 1")
        return MultiPoly(1, {(i,): c for i, c in enumerate(x.coeffs)})
    return _const(x, arity)


class FinitePresentation:
    """The algebra base[t]/(q) with q monic of degree m >= 1 in t."""

    def __init__(self, arity: int, q_coeffs: Sequence):
        if arity < 0:
            raise ValueError("arity must be nonnegative")
        qc = [_base(c, arity) for c in q_coeffs]
        while len(qc) > 1 and qc[-1].is_zero():
            qc.pop()
        if len(qc) < 2:
            raise ValueError("q must have degree at least 1 in t")
        if qc[-1] != _const(1, arity):
            raise NonMonicError("q must be monic in t")
        self.arity = arity
        self.q = qc
        self.m = len(qc) - 1

    @classmethod
    def from_poly(cls, q: MultiPoly, t_index: int = 0) -> "FinitePresentation":
        """Split a polynomial in (t, base variables...) by powers of variable t_index."""
        q = as_poly(q)
        arity = q.nvars - 1
        cols = q.coefficients_in(t_index)
        coeffs = []
        for c in cols:
            terms = {tuple(k for i, k in enumerate(e) if i != t_index): v for e, v in c.items()}
            coeffs.append(MultiPoly(arity, terms))
        return cls(arity, coeffs)

    @classmethod
    def univariate(cls, p: UniPoly) -> "FinitePresentation":
        return cls(0, list(p.coeffs))

    def zero(self) -> MultiPoly:
        return MultiPoly(self.arity)

    def times_t(self, v: list) -> list:
        top = v[-1]
        out = [self.zero()] + v[:-1]
        if not top.is_zero():
            out = [a - top * c for a, c in zip(out, self.q[:-1])]
        return out

    def reduce(self, element: Sequence) -> list:
        """Coefficients (lowest first) of element mod q."""
        el = [_base(c, self.arity) for c in element]
        m = self.m
        acc = [self.zero() for _ in range(m)]
        power = [_const(1, self.arity)] + [self.zero() for _ in range(m - 1)]
        for c in el:
            if not c.is_zero():
                acc = [a + c * b for a, b in zip(acc, power)]
            power = self.times_t(power)
        return acc

    def at(self, z0: Sequence) -> UniPoly:
        """The fiber polynomial q(t, z0)."""
        return UniPoly(c(*z0) for c in self.q)

    def __repr__(self):
        return f"FinitePresentation(arity={self.arity}, q={self.q})"


def mult_matrix(fp: FinitePresentation, element: Sequence) -> list[list[MultiPoly]]:
    """Matrix of multiplication by element on the basis 1, t, ..., t^(m-1); columns are images."""
    col = fp.reduce(element)
    cols = []
    for _ in range(fp.m):
        cols.append(col)
        col = fp.times_t(col)
    return [[cols[j][i] for j in range(fp.m)] for i in range(fp.m)]


def _power_traces(fp: FinitePresentation, count: int) -> list[MultiPoly]:
    m = fp.m
    vec = [_const(1, fp.arity)] + [fp.zero() for _ in range(m - 1)]
    powers = []
    for _ in range(count + m):
        powers.append(vec)
        vec = fp.times_t(vec)
    traces = []
    for k in range(count):
        acc = fp.zero()
        for j in range(m):
            acc = acc + powers[k + j][j]
        traces.append(acc)
    return traces


def trace_form(fp: FinitePresentation) -> list[list[MultiPoly]]:
    """(i, j) -> trace of multiplication by t^(i+j)."""
    m = fp.m
    tr = _power_traces(fp, 2 * m - 1)
    return [[tr[i + j] for j in range(m)] for i in range(m)]


def evaluate_matrix(M, z0: Sequence) -> list[list[Fraction]]:
    return [[e(*z0) for e in row] for row in M]


@dataclass(frozen=True)
class PSDResult:
    psd: bool | None  # None: sampled only, nothing refuted
    minors: tuple = ()
    witness: tuple | None = None
    witness_signature: tuple | None = None


def _as_base_matrix(M, arity: int):
    return [[_base(e, arity) for e in row] for row in M]


class _Evaluations:
    """Values of a matrix over Q[z] at z = 0, 1, 2, ..., computed on demand."""

    def __init__(self, M):
        self.polys = [[e.to_unipoly(0) if not e.is_zero() else UniPoly() for e in row] for row in M]
        self.rowdeg = [max((e.degree for e in row), default=0) for row in self.polys]
        self.values: list = []

    def at(self, k: int):
        while len(self.values) <= k:
            x = Fraction(len(self.values))
            self.values.append([[e(x) for e in row] for row in self.polys])
        return self.values[k]

    def minor(self, S) -> UniPoly:
        bound = sum(max(self.rowdeg[i], 0) for i in S)
        xs = list(range(bound + 1))
        ys = [det([[self.at(x)[i][j] for j in S] for i in S]) for x in xs]
        return interpolate(xs, ys)


def psd_on_reals(M, arity: int = 1, samples: int = 200, seed: int = 0) -> PSDResult:
    """Whether M(z0) is positive semidefinite for every real z0.

    Exact for arity <= 1 via all principal minors; sampling otherwise.
    """
    M = _as_base_matrix(M, arity)
    N = len(M)
    if any(M[i][j] != M[j][i] for i in range(N) for j in range(i)):
        raise NotSymmetricError("form must be symmetric")
    if arity >= 2:
        rng = random.Random(seed)
        for _ in range(samples):
            z0 = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(arity))
            sig = signature(evaluate_matrix(M, z0))
            if sig.n_minus:
                return PSDResult(False, (), z0, sig.as_tuple())
        return PSDResult(None)
    minors = []
    failing = None
    ev = _Evaluations(M) if arity == 1 else None
    for size in range(1, N + 1):
        for S in combinations(range(N), size):
            if arity == 0:
                minor = UniPoly((det([[M[i][j]() for j in S] for i in S]),))
            else:
                minor = ev.minor(S)
            ok = minor.is_zero() or nonneg_on_reals(minor)
            minors.append((S, minor, ok))
            if not ok and failing is None:
                failing = minor
    if failing is None:
        return PSDResult(True, tuple(minors))
    if arity == 0:
        return PSDResult(False, tuple(minors), (), signature(evaluate_matrix(M, ())).as_tuple())
    for z in small_rationals(6):
        sig = signature(evaluate_matrix(M, (z,)))
        if sig.n_minus:
            return PSDResult(False, tuple(minors), (z,), sig.as_tuple())
    z = negative_point(failing)
    sig = signature(evaluate_matrix(M, (z,)))
    return PSDResult(False, tuple(minors), (z,), sig.as_tuple())


@dataclass(frozen=True)
class FiberednessCertificate:
    verdict: FiberVerdict
    evidence: PSDResult = field(repr=False)
    witness: tuple | None = None
    witness_signature: tuple | None = None
    real_fiber_points: int | None = None
    note: str = ""


def real_fibered_certificate(fp: FinitePresentation, seed: int = 0) -> FiberednessCertificate:
    tf = trace_form(fp)
    res = psd_on_reals(tf, fp.arity, seed=seed)
    if res.psd is None:
        return FiberednessCertificate(FiberVerdict.INCONCLUSIVE, res, note="positive on all samples")
    if res.psd:
        return FiberednessCertificate(FiberVerdict.REAL_FIBERED, res)
    fiber = fp.at(res.witness)
    n_real = sturm_count(fiber)
    n_plus, n_minus, _ = res.witness_signature
    if n_plus - n_minus != n_real:
        raise CrossCheckFailure(f"trace form signature {res.witness_signature} vs {n_real} real fiber points")
    return FiberednessCertificate(FiberVerdict.NOT_REAL_FIBERED, res, res.witness, res.witness_signature, n_real)


def _poly_matmul(A, B, zero):
    return [[sum((a * b for a, b in zip(row, col)), zero) for col in zip(*B)] for row in A]


def _transpose(A):
    return [list(c) for c in zip(*A)]


def f_positivity_check(actions: Sequence, form, arity: int = 1, seed: int = 0) -> FiberednessCertificate:
    """Positivity of a module form compatible with commuting base-linear actions.

    A positive semidefinite, generically nondegenerate, self-adjoint form
    certifies real fiberedness.  A form failing positivity proves nothing.
    """
    zero = MultiPoly(arity)
    form = _as_base_matrix(form, arity)
    acts = [_as_base_matrix(B, arity) for B in actions]
    N = len(form)
    if any(len(B) != N for B in acts):
        raise DimensionMismatch("actions and form have different sizes")
    if any(form[i][j] != form[j][i] for i in range(N) for j in range(i)):
        raise NotSymmetricError("form must be symmetric")
    for a in range(len(acts)):
        for b in range(a + 1, len(acts)):
            if _poly_matmul(acts[a], acts[b], zero) != _poly_matmul(acts[b], acts[a], zero):
                raise NonCommutingError(a + 1, b + 1)
    for i, B in enumerate(acts):
        if _poly_matmul(form, B, zero) != _poly_matmul(_transpose(B), form, zero):
            raise NotSelfAdjoint(f"form is not self-adjoint for action {i + 1}")
    res = psd_on_reals(form, arity, seed=seed)
    if res.psd is None:
        return FiberednessCertificate(FiberVerdict.INCONCLUSIVE, res, note="positive on all samples")
    if not res.psd:
        return FiberednessCertificate(FiberVerdict.INCONCLUSIVE, res, res.witness, res.witness_signature,
                                      note="form is not positive semidefinite; no conclusion")
    if det_ring(form, _const(1, arity)).is_zero():
        return FiberednessCertificate(FiberVerdict.INCONCLUSIVE, res, note="form is degenerate everywhere")
    return FiberednessCertificate(FiberVerdict.REAL_FIBERED, res)


def regular_representation(fp: FinitePresentation):
    """Action of t on the algebra together with its trace form."""
    t = [fp.zero(), _const(1, fp.arity)]
    return [mult_matrix(fp, t)], trace_form(fp)


def map_to_presentation(m: RationalMapP1, change: Sequence | None = None) -> FinitePresentation:
    """q(t, z) = f~(t) - z g~(t) after a real target change making f~ monic of
    degree n and deg g~ < n in the chart s = 1.

    ``change`` is [[alpha, beta], [gamma, delta]] giving f~ = alpha f + beta g,
    g~ = gamma f + delta g; by default the smallest admissible one is used.
    """
    fc, gc = m.coeffs()
    n = m.degree
    an, bn = fc[n], gc[n]
    if change is None:
        gam, dl = bn, -an
        for c in (gam, dl):
            if c:
                gam, dl = gam / abs(c), dl / abs(c)
                break
        if gam < 0 or (gam == 0 and dl < 0):
            gam, dl = -gam, -dl
        al, be = next((a, b) for a, b in ((1, 0), (0, 1), (1, 1), (1, -1)) if a * dl - b * gam != 0)
    else:
        (al, be), (gam, dl) = [[Fraction(x) for x in row] for row in change]
        if al * dl - be * gam == 0:
            raise ValueError("target change must be invertible")
        if gam * an + dl * bn != 0:
            raise ValueError("target change must make g~ drop degree")
    ft = [al * a + be * b for a, b in zip(fc, gc)]
    gt = [gam * a + dl * b for a, b in zip(fc, gc)]
    lc = ft[n]
    ft = [c / lc for c in ft]
    # coefficients in t: f~(t) - z g~(t), base Q[z]
    z = MultiPoly.var(0, 1)
    q = [_const(a, 1) - z * b for a, b in zip(ft, gt)]
    return FinitePresentation(1, q)
