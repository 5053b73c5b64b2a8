"""Exact rational and integer linear algebra.

Rationals are :class:`fractions.Fraction` (always reduced, denominator > 0),
integer vectors are tuples of ``int`` and matrices are lists of rows.  Nothing
in this module rounds.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Sequence

Rat = Fraction
IVec = tuple[int, ...]
QVec = tuple[Fraction, ...]


class ZeroVector(ValueError):
    pass


class RationalParseError(ValueError):
    pass


_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rat(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimals and ``q = 0`` are rejected."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise RationalParseError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise RationalParseError(f"not a rational: {text!r}")
    m = _RAT_RE.match(text)
    if m is None:
        pos = _first_bad_position(text)
        raise RationalParseError(f"invalid rational {text!r} at position {pos}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise RationalParseError(f"zero denominator in {text!r} at position {text.index('/') + 1}")
    return Fraction(num, den)


def _first_bad_position(text: str) -> int:
    seen_slash = False
    for i, ch in enumerate(text):
        if ch.isdigit() or ch.isspace():
            continue
        if ch in "+-" and i == len(text) - len(text.lstrip()):
            continue
        if ch == "/" and not seen_slash:
            seen_slash = True
            continue
        return i
    return len(text)


def format_rat(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def gcd_vec(v: Sequence[int]) -> int:
    """Gcd of the absolute values of the coordinates; 0 for the zero vector."""
    if len(v) == 0:
        raise ValueError("gcd_vec needs at least one coordinate")
    return math.gcd(*(int(x) for x in v))


def primitivize(v: Sequence[int]) -> tuple[IVec, int]:
    """Divide an integer vector by the gcd of its entries.

    Returns:
        ``(v / g, g)`` with ``g = gcd_vec(v)``.

    Raises:
        ZeroVector: if ``v`` is identically zero.
    """
    g = gcd_vec(v)
    if g == 0:
        raise ZeroVector("cannot primitivize the zero vector")
    return tuple(int(x) // g for x in v), g


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    cols = list(zip(*B))
    return [[dot(row, col) for col in cols] for row in A]


def transpose(A: Sequence[Sequence]) -> list[list]:
    return [list(r) for r in zip(*A)]


def hnf(M: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form.

    Args:
        M: an ``m x n`` integer matrix (list of rows).

    Returns:
        ``(H, U)`` with ``U`` unimodular (``m x m``) and ``H = U M`` in row
        echelon form: pivots positive, entries above each pivot reduced into
        ``[0, pivot)``, zero rows at the bottom.
    """
    H = [[int(x) for x in row] for row in M]
    m = len(H)
    n = len(H[0]) if m else 0
    U = identity(m)
    r = 0
    for c in range(n):
        if r >= m:
            break
        # Euclid on column c among rows r..m-1, mirroring every row op in U.
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][c]))
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                U[r], U[piv] = U[piv], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c] != 0:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][c] != 0:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        p = H[r][c]
        for i in range(r):
            q = H[i][c] // p
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return H, U


def det_exact(A: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in A):
        raise ValueError("det_exact needs a square matrix")
    dens = [Fraction(x).denominator for row in A for x in row]
    scale = math.lcm(*dens) if dens else 1
    M = [[int(Fraction(x) * scale) for x in row] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return Fraction(sign * M[n - 1][n - 1], scale**n)


class NoSolution:
    def __repr__(self) -> str:
        return "NoSolution"


class Underdetermined:
    def __repr__(self) -> str:
        return "Underdetermined"


NO_SOLUTION = NoSolution()
UNDERDETERMINED = Underdetermined()


def row_reduce(A: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns ``(R, pivot_columns)``."""
    R = [[Fraction(x) for x in row] for row in A]
    m = len(R)
    n = len(R[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        p = R[r][c]
        R[r] = [x / p for x in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    return len(row_reduce(A)[1])


def solve_exact(A: Sequence[Sequence], b: Sequence) -> QVec | NoSolution | Underdetermined:
    """Solve ``A x = b`` exactly.

    Returns the unique solution, ``NO_SOLUTION`` for an inconsistent system or
    ``UNDERDETERMINED`` when the solution set is a positive-dimensional flat.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = row_reduce(aug)
    if n in pivots:
        return NO_SOLUTION
    if len(pivots) < n:
        return UNDERDETERMINED
    x = [Fraction(0)] * n
    for row, c in zip(R, pivots):
        x[c] = row[n]
    return tuple(x)


def nullspace(A: Sequence[Sequence], n: int) -> list[QVec]:
    """Rational basis of ``{x : A x = 0}`` for ``A`` with ``n`` columns."""
    if not A:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    R, pivots = row_reduce(A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, c in zip(R, pivots):
            x[c] = -row[f]
        basis.append(tuple(x))
    return basis


def integer_kernel(A: Sequence[Sequence[int]], n: int) -> list[IVec]:
    """Lattice basis of ``{z in Z^n : A z = 0}`` via the HNF of ``A^T``."""
    if not A:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    H, U = hnf(transpose(A))
    r = sum(1 for row in H if any(row))
    return [tuple(U[i]) for i in range(r, n)]


def clear_denominators(v: Sequence[Fraction]) -> tuple[IVec, int]:
    """Scale a rational vector by the lcm of its denominators."""
    L = math.lcm(*(Fraction(x).denominator for x in v)) if v else 1
    return tuple(int(Fraction(x) * L) for x in v), L


def unimodular_completion(a: Sequence[int]) -> list[list[int]]:
    """Integer matrix with determinant +-1 whose last row is the primitive ``a``."""
    d = len(a)
    if gcd_vec(a) != 1:
        raise ValueError("unimodular_completion needs a primitive vector")
    # U a^T = e_1, so a^T is the first column of U^{-1}.
    H, U = hnf([[x] for x in a])
    V = integer_inverse(U)
    rows = transpose(V)
    rows = rows[1:] + [rows[0]]
    if tuple(rows[-1]) != tuple(a):
        rows[-1] = [-x for x in rows[-1]]
    return rows


def integer_inverse(U: Sequence[Sequence[int]]) -> list[list[int]]:
    """Inverse of a unimodular integer matrix."""
    n = len(U)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(U)]
    R, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    inv = [[R[i][n + j] for j in range(n)] for i in range(n)]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)
