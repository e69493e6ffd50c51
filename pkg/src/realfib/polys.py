"""Exact univariate and sparse multivariate polynomials over the rationals.

Both classes are immutable values: every operation returns a new object.
Coefficients are ``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, ZeroPolynomialError


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class UniPoly:
    """Univariate polynomial, coefficients stored lowest degree first."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [frac(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UniPoly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-frac(r), 1))
        return p

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    @property
    def lc(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def __getitem__(self, i: int) -> Fraction:
        return self._c[i] if 0 <= i < len(self._c) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == UniPoly((other,))._c
        return NotImplemented

    def __hash__(self):
        return hash(("UniPoly", self._c))

    def __repr__(self):
        return f"UniPoly({[str(a) for a in self._c]})"

    def __str__(self):
        return format_unipoly(self)

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly((other,))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self._c), len(other._c))
        return UniPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-a for a in self._c)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            other = frac(other)
            return UniPoly(a * other for a in self._c)
        if not self._c or not other._c:
            return UniPoly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(other._c):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = UniPoly((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for a in reversed(self._c):
            acc = acc * x + a
        return acc if self._c else Fraction(0)

    def derivative(self) -> "UniPoly":
        return UniPoly(i * a for i, a in enumerate(self._c) if i > 0)

    def monic(self) -> "UniPoly":
        if not self._c:
            raise ZeroPolynomialError("zero polynomial has no monic normalisation")
        return self * (1 / self.lc)

    def divmod(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        r = list(self._c)
        q = [Fraction(0)] * max(len(r) - other.degree, 0)
        inv = 1 / other.lc
        db = other.degree
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i] * inv
            if c == 0:
                continue
            q[i - db] = c
            for j, b in enumerate(other._c):
                r[i - db + j] -= c * b
        return UniPoly(q), UniPoly(r[:db] if db > 0 else ())

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def shift(self, k: int) -> "UniPoly":
        """Multiply by x^k."""
        return UniPoly((0,) * k + self._c) if self._c else UniPoly()

    def reflect(self) -> "UniPoly":
        """p(-x)."""
        return UniPoly(a if i % 2 == 0 else -a for i, a in enumerate(self._c))

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for a in reversed(self._c):
            acc = acc * other + a
        return acc

    def primitive_int(self) -> list[int]:
        """Integer coefficient list, positive-content-primitive, same sign as self."""
        if not self._c:
            return []
        den = 1
        for a in self._c:
            den = den * a.denominator // gcd(den, a.denominator)
        ints = [int(a * den) for a in self._c]
        g = 0
        for a in ints:
            g = gcd(g, a)
        return [a // g for a in ints]


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a if a.is_zero() else a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.is_zero():
        raise ZeroPolynomialError("squarefree part of zero polynomial")
    if p.degree <= 0:
        return UniPoly((1,))
    return (p // poly_gcd(p, p.derivative())).monic()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: monic coprime squarefree factors a_i with multiplicity i."""
    if p.is_zero():
        raise ZeroPolynomialError("squarefree decomposition of zero polynomial")
    out = []
    if p.degree <= 0:
        return out
    f = p.monic()
    a = poly_gcd(f, f.derivative())
    b = f // a
    c = f.derivative() // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def interpolate(xs: Sequence, ys: Sequence) -> UniPoly:
    """Newton interpolation through distinct rational nodes."""
    xs = [frac(x) for x in xs]
    coef = [frac(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = UniPoly((coef[-1],)) if n else UniPoly()
    for i in range(n - 2, -1, -1):
        p = p * UniPoly((-xs[i], 1)) + coef[i]
    return p


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables.

    ``terms`` maps exponent tuples (length ``nvars``) to nonzero Fractions.
    """

    __slots__ = ("nvars", "_t", "_hash")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        t = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise DimensionMismatch(f"exponent {e} has length != {nvars}")
                c = frac(c)
                if c != 0:
                    t[e] = t.get(e, Fraction(0)) + c
                    if t[e] == 0:
                        del t[e]
        self._t = t
        self._hash = None

    @classmethod
    def constant(cls, c, nvars: int) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i: int, nvars: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "MultiPoly":
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def gens(cls, nvars: int) -> list["MultiPoly"]:
        return [cls.var(i, nvars) for i in range(nvars)]

    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def is_zero(self) -> bool:
        return not self._t

    def coeff(self, exp) -> Fraction:
        return self._t.get(tuple(exp), Fraction(0))

    @property
    def total_degree(self) -> int:
        """Total degree; -1 for zero."""
        return max((sum(e) for e in self._t), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._t), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self._t}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == MultiPoly.constant(other, self.nvars)._t
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._t.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {{{', '.join(f'{e}: {c}' for e, c in sorted(self._t.items()))}}})"

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other
        return MultiPoly.constant(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self._t)
        for e, c in other._t.items():
            v = t.get(e, 0) + c
            if v == 0:
                t.pop(e, None)
            else:
                t[e] = v
        return _mp(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return _mp(self.nvars, {e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            other = frac(other)
            if other == 0:
                return MultiPoly(self.nvars)
            return _mp(self.nvars, {e: c * other for e, c in self._t.items()})
        other = self._coerce(other)
        t: dict = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v == 0:
                    t.pop(e, None)
                else:
                    t[e] = v
        return _mp(self.nvars, t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1 / frac(other))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = MultiPoly.constant(1, self.nvars), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point has {len(point)} coordinates, expected {self.nvars}")
        acc = Fraction(0)
        for e, c in self._t.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            acc += term
        return acc

    def compose(self, polys: Sequence) -> "MultiPoly":
        """Substitute ``polys[i]`` for variable i (all polys share one ring)."""
        if len(polys) != self.nvars:
            raise DimensionMismatch(f"need {self.nvars} substitutions, got {len(polys)}")
        polys = list(polys)
        target = polys[0].nvars if polys else 0
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = polys[i] ** k
            return cache[key]

        acc = MultiPoly(target)
        for e, c in self._t.items():
            term = MultiPoly.constant(c, target)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            acc = acc + term
        return acc

    def partial(self, i: int) -> "MultiPoly":
        t = {}
        for e, c in self._t.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                t[tuple(e2)] = c * e[i]
        return _mp(self.nvars, t)

    def coefficients_in(self, i: int) -> list["MultiPoly"]:
        """Coefficients as a polynomial in variable i (lowest first), same ring."""
        out: list[dict] = [dict() for _ in range(self.degree_in(i) + 1)]
        for e, c in self._t.items():
            e2 = list(e)
            k = e2[i]
            e2[i] = 0
            out[k][tuple(e2)] = c
        return [_mp(self.nvars, t) for t in out]

    def to_unipoly(self, i: int = 0) -> UniPoly:
        """Convert a polynomial involving only variable i."""
        c = [Fraction(0)] * (self.degree_in(i) + 1)
        for e, v in self._t.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial involves other variables")
            c[e[i]] += v
        return UniPoly(c)

    def restrict(self, base: Sequence, direction: Sequence) -> UniPoly:
        return restrict_to_line(self, base, direction)


def _mp(nvars: int, t: dict) -> MultiPoly:
    # trusted constructor: t already clean
    p = MultiPoly.__new__(MultiPoly)
    p.nvars = nvars
    p._t = t
    p._hash = None
    return p


class HomForm:
    """A homogeneous polynomial together with its degree."""

    __slots__ = ("poly", "degree")

    def __init__(self, poly: MultiPoly, degree: int | None = None):
        if degree is None:
            if poly.is_zero():
                raise ValueError("degree must be given for the zero form")
            degree = poly.total_degree
        if not poly.is_homogeneous(degree):
            raise ValueError(f"polynomial is not homogeneous of degree {degree}")
        self.poly = poly
        self.degree = degree

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    def __call__(self, *point):
        return self.poly(*point)

    def __eq__(self, other):
        if isinstance(other, HomForm):
            return self.degree == other.degree and self.poly == other.poly
        if isinstance(other, MultiPoly):
            return self.poly == other
        return NotImplemented

    def __hash__(self):
        return hash((self.degree, self.poly))

    def __repr__(self):
        return f"HomForm({self.poly!r}, degree={self.degree})"


def as_poly(f) -> MultiPoly:
    return f.poly if isinstance(f, HomForm) else f


def restrict_to_line(f, e: Sequence, x: Sequence) -> UniPoly:
    """The univariate polynomial t -> f(e + t*x)."""
    f = as_poly(f)
    if len(e) != f.nvars or len(x) != f.nvars:
        raise DimensionMismatch(f"form has {f.nvars} variables; got points of length {len(e)}, {len(x)}")
    lines = [UniPoly((frac(a), frac(b))) for a, b in zip(e, x)]
    acc = UniPoly()
    cache: dict = {}
    for exp, c in f.items():
        term = UniPoly((c,))
        for i, k in enumerate(exp):
            if k:
                key = (i, k)
                if key not in cache:
                    cache[key] = lines[i] ** k
                term = term * cache[key]
        acc = acc + term
    return acc


def binary_coeffs(f, n: int | None = None) -> list[Fraction]:
    """Coefficients a_k of s^(n-k) t^k for a bivariate form, k = 0..n."""
    f = as_poly(f)
    if f.nvars != 2:
        raise DimensionMismatch("expected a bivariate form")
    if n is None:
        n = f.degree if isinstance(f, HomForm) else f.total_degree
    out = [Fraction(0)] * (n + 1)
    for (i, j), c in f.items():
        if i + j != n:
            raise ValueError(f"not homogeneous of degree {n}")
        out[j] = c
    return out


def binary_form(coeffs: Sequence) -> MultiPoly:
    """Inverse of binary_coeffs."""
    n = len(coeffs) - 1
    return MultiPoly(2, {(n - k, k): c for k, c in enumerate(coeffs)})


def dehomogenize_binary(f, n: int | None = None) -> UniPoly:
    """f(1, t) keeping the formal degree bookkeeping outside."""
    return UniPoly(binary_coeffs(f, n))


VAR_ORDER = ("s", "t", "u", "v", "w") + tuple(f"x{i}" for i in range(10)) + ("z",) + tuple(f"z{i}" for i in range(10))


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: MultiPoly, variables: Sequence[str]) -> str:
    """Render in the input grammar; inverse of ``parse_poly``."""
    if len(variables) != p.nvars:
        raise DimensionMismatch("variable name count mismatch")
    if p.is_zero():
        return "0"
    order = sorted(p.items(), key=lambda ec: (-sum(ec[0]), tuple(-k for k in ec[0])))
    pieces = []
    for idx, (e, c) in enumerate(order):
        mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(variables, e) if k)
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{_fmt_coeff(a)}*{mono}"
        else:
            body = _fmt_coeff(a)
        if idx == 0:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces)


def format_unipoly(p: UniPoly, var: str = "t") -> str:
    return format_poly(MultiPoly(1, {(i,): c for i, c in enumerate(p.coeffs)}), (var,))
