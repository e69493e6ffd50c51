"""Exact dense linear algebra over the rationals (and division-free over rings).

Matrices are plain lists of rows.  Nothing here mutates its arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import DimensionMismatch, NotSymmetricError, SingularMatrix


@dataclass(frozen=True)
class SignatureResult:
    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def size(self) -> int:
        return self.n_plus + self.n_minus + self.n_zero

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_plus, self.n_minus, self.n_zero)

    def definiteness(self) -> str:
        n = self.size
        if self.n_plus == n:
            return "PositiveDefinite"
        if self.n_minus == n:
            return "NegativeDefinite"
        if self.n_zero:
            return "Singular"
        return "Indefinite"


def fmat(M) -> list[list[Fraction]]:
    return [[a if isinstance(a, Fraction) else Fraction(a) for a in row] for row in M]


def shape(M) -> tuple[int, int]:
    return (len(M), len(M[0]) if M else 0)


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> list[list[Fraction]]:
    return [[Fraction(0)] * n for _ in range(m)]


def transpose(M):
    return [list(col) for col in zip(*M)] if M else []


def matmul(A, B):
    if A and B and len(A[0]) != len(B):
        raise DimensionMismatch(f"cannot multiply {shape(A)} by {shape(B)}")
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]


def matadd(A, B):
    return [[a + b for a, b in zip(r, s)] for r, s in zip(A, B)]


def matsub(A, B):
    return [[a - b for a, b in zip(r, s)] for r, s in zip(A, B)]


def matscale(c, A):
    return [[c * a for a in row] for row in A]


def matvec(A, v):
    return [sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in A]


def matpow(A, k: int):
    R = identity(len(A))
    for _ in range(k):
        R = matmul(R, A)
    return R


def vstack(blocks):
    out = []
    for b in blocks:
        out.extend([list(r) for r in b])
    return out


def block_matrix(blocks):
    """Assemble a matrix from a 2-D grid of equally sized blocks."""
    out = []
    for brow in blocks:
        h = len(brow[0])
        for i in range(h):
            row = []
            for b in brow:
                row.extend(b[i])
            out.append(row)
    return out


def is_symmetric(M) -> bool:
    n = len(M)
    return all(len(row) == n for row in M) and all(M[i][j] == M[j][i] for i in range(n) for j in range(i))


def _integer_rows(M) -> list[list[int]]:
    rows = []
    for row in M:
        den = 1
        for a in row:
            a = Fraction(a)
            den = den * a.denominator // gcd(den, a.denominator)
        rows.append([int(Fraction(a) * den) for a in row])
    return rows


def bareiss_echelon(M):
    """Fraction-free row echelon form of an integer-scaled copy of M.

    Returns (echelon rows, pivot columns, number of row swaps).
    """
    A = _integer_rows(M)
    m, n = shape(A)
    prev = 1
    r = 0
    pivots = []
    swaps = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            A[r], A[p] = A[p], A[r]
            swaps += 1
        piv = A[r][c]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                A[i][j] = (piv * A[i][j] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        # entries in skipped columns left of c are already zero below row r
        prev = piv
        pivots.append(c)
        r += 1
    return A, pivots, swaps


def rank(M) -> int:
    if not M or not M[0]:
        return 0
    return len(bareiss_echelon(M)[1])


def kernel_rank(M):
    """Exact rank and a basis of the right kernel {v : M v = 0}."""
    m, n = shape(M)
    if n == 0:
        return 0, []
    if m == 0:
        return 0, [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    E, pivots, _ = bareiss_echelon(M)
    rk = len(pivots)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * n
        v[fcol] = Fraction(1)
        for r in range(rk - 1, -1, -1):
            pc = pivots[r]
            s = sum((E[r][j] * v[j] for j in range(pc + 1, n)), Fraction(0))
            v[pc] = -s / E[r][pc]
        basis.append(v)
    return rk, basis


def det(M) -> Fraction:
    """Determinant by Bareiss elimination."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in M):
        raise DimensionMismatch("determinant of non-square matrix")
    scale = Fraction(1)
    for row in M:
        den = 1
        for a in row:
            a = Fraction(a)
            den = den * a.denominator // gcd(den, a.denominator)
        scale *= den
    E, pivots, swaps = bareiss_echelon(M)
    if len(pivots) < n:
        return Fraction(0)
    d = Fraction(E[n - 1][n - 1])
    if swaps % 2:
        d = -d
    return d / scale


def charpoly(A, one=Fraction(1)):
    """Coefficients of det(x I - A), highest degree first (Berkowitz, division-free).

    Works over any commutative ring whose elements support +, -, *; ``one`` is the
    ring's unit.
    """
    n = len(A)
    zero = one - one
    if n == 0:
        return [one]
    c = [one, zero - A[0][0]]
    for r in range(1, n):
        a = A[r][r]
        R = A[r][:r]
        v = [A[i][r] for i in range(r)]
        M = [row[:r] for row in A[:r]]
        q = [one, zero - a]
        for _ in range(r):
            acc = zero
            for x, y in zip(R, v):
                acc = acc + x * y
            q.append(zero - acc)
            nv = []
            for row in M:
                s = zero
                for x, y in zip(row, v):
                    s = s + x * y
                nv.append(s)
            v = nv
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(min(i, r) + 1):
                s = s + q[i - j] * c[j]
            new.append(s)
        c = new
    return c


def det_ring(A, one=Fraction(1)):
    """Division-free determinant over a commutative ring."""
    n = len(A)
    c = charpoly(A, one)
    return c[n] if n % 2 == 0 else (one - one) - c[n]


def _sign_variations(seq) -> int:
    signs = [1 if a > 0 else -1 for a in seq if a != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature(M) -> SignatureResult:
    """Exact inertia of a rational symmetric matrix by congruence elimination.

    A zero diagonal next to a nonzero off-diagonal entry a_ij is repaired by
    adding row and column j to i, which puts 2 a_ij on the diagonal.
    """
    A = fmat(M)
    if not is_symmetric(A):
        raise NotSymmetricError("signature needs a symmetric matrix")
    pos = neg = 0
    while A:
        n = len(A)
        i = next((k for k in range(n) if A[k][k]), None)
        if i is None:
            pair = next(((k, l) for k in range(n) for l in range(k + 1, n) if A[k][l]), None)
            if pair is None:
                break
            k, l = pair
            A[k] = [a + b for a, b in zip(A[k], A[l])]
            for row in A:
                row[k] += row[l]
            i = k
        piv = A[i][i]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        prow = A[i]
        rest = [k for k in range(n) if k != i]
        A = [[A[r][c] - A[r][i] * prow[c] / piv if A[r][i] else A[r][c] for c in rest] for r in rest]
    return SignatureResult(pos, neg, len(A))


def signature_by_charpoly(M) -> SignatureResult:
    """Inertia from the characteristic polynomial and Descartes' rule (exact for
    symmetric matrices, whose eigenvalues are real).  Slower; kept as a cross-check."""
    M = fmat(M)
    n = len(M)
    if not is_symmetric(M):
        raise NotSymmetricError("signature needs a symmetric matrix")
    if n == 0:
        return SignatureResult(0, 0, 0)
    low_first = list(reversed(charpoly(M)))
    n_zero = next(i for i, a in enumerate(low_first) if a != 0)
    pos = _sign_variations(low_first)
    neg = _sign_variations([a if i % 2 == 0 else -a for i, a in enumerate(low_first)])
    return SignatureResult(pos, neg, n_zero)


def solve(A, b):
    """Unique solution of A x = b (A square, nonsingular)."""
    n = len(A)
    aug = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(A, b)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if p is None:
            raise SingularMatrix("system matrix is singular")
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [a * inv for a in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b_ for a, b_ in zip(aug[i], aug[c])]
    return [row[n] for row in aug]


def inverse(A):
    n = len(A)
    cols = [solve(A, [int(i == j) for i in range(n)]) for j in range(n)]
    return transpose(cols)


def sylvester(a: Sequence, b: Sequence):
    """Sylvester matrix of coefficient lists given highest degree first."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + [Fraction(x) for x in a] + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + [Fraction(x) for x in b] + [Fraction(0)] * (size - n - 1 - i))
    return rows


def resultant_coeffs(a: Sequence, b: Sequence) -> Fraction:
    """Resultant of two polynomials given as coefficient lists, highest first.

    With formal degrees len-1 this is also the homogeneous resultant of the
    corresponding binary forms.
    """
    if len(a) == 1 and len(b) == 1:
        return Fraction(1)
    return det(sylvester(a, b))
