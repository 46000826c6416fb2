"""Exact decisions about the Perron-Frobenius root of nonnegative matrices.

Every decision reduces to the M-matrix test: for nonnegative ``M``,
``rho(M) < 1`` holds exactly when ``I - M`` is nonsingular with an
entrywise nonnegative inverse.  The inverse is computed by fraction-free
Gauss-Jordan elimination on an integer matrix, so no rounding occurs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm

from .exactmath.matrix import (
    Matrix,
    NegativeEntry,
    NotSquare,
    check_nonnegative,
    check_square,
    inf_norm,
    is_zero_matrix,
    matmul,
    matpow,
)
from .exactmath.polynomial import Polynomial, poly_gcd

__all__ = [
    "NegativeEntry",
    "NotSquare",
    "SpectralEnclosure",
    "characteristic_polynomial",
    "exact_spectral_radius",
    "is_nilpotent",
    "rho_enclosure",
    "rho_less_than",
    "rho_power_less_than",
]

DEFAULT_WIDTH = Fraction(1, 1024)


@dataclass(frozen=True)
class SpectralEnclosure:
    """Rational bounds ``lo <= rho(A) <= hi``."""

    lo: Fraction
    hi: Fraction
    width_target: Fraction
    exact: bool = False

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty enclosure")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    @property
    def midpoint(self) -> float:
        return float((self.lo + self.hi) / 2)


def _validate(a: Matrix) -> int:
    n = check_square(a)
    check_nonnegative(a)
    return n


def _bareiss_inverse_nonnegative(k: list[list[int]]) -> bool:
    """True iff the integer matrix ``k`` is invertible with ``k^-1 >= 0``.

    Fraction-free Gauss-Jordan on ``[k | I]``: when it finishes, every
    diagonal entry of the left block equals the same nonzero integer ``d``
    and the right block equals ``d * k^-1``.
    """
    n = len(k)
    a = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(k)]
    prev = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return False
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
        pr = a[col]
        p = pr[col]
        for i in range(n):
            if i == col:
                continue
            row = a[i]
            f = row[col]
            for j in range(2 * n):
                # Sylvester's identity guarantees exact division
                row[j] = (p * row[j] - f * pr[j]) // prev
        prev = p
    d = a[0][0]
    for i in range(n):
        for j in range(n, 2 * n):
            if a[i][j] * d < 0:
                return False
    return True


def _shifted_integer_matrix(a: Matrix, theta: Fraction) -> list[list[int]]:
    # theta*I - A scaled to integers; same inverse sign pattern as I - A/theta
    n = len(a)
    den = reduce(lcm, (x.denominator for row in a for x in row), theta.denominator)
    t = int(theta * den)
    return [[(t if i == j else 0) - int(a[i][j] * den) for j in range(n)] for i in range(n)]


def rho_less_than(a: Matrix, theta: Fraction | int) -> bool:
    """Decide ``rho(a) < theta`` exactly; a boundary ``rho == theta`` gives False."""
    n = _validate(a)
    theta = Fraction(theta)
    if theta <= 0:
        raise ValueError("theta must be positive")
    if n == 0:
        return True
    return _bareiss_inverse_nonnegative(_shifted_integer_matrix(a, theta))


def rho_power_less_than(a: Matrix, k: int, theta: Fraction | int) -> bool:
    """Decide ``rho(a)**k < theta`` via ``rho(a**k) = rho(a)**k``."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    _validate(a)
    return rho_less_than(matpow(a, k), theta)


def is_nilpotent(a: Matrix) -> bool:
    n = check_square(a)
    if n == 0:
        return True
    return is_zero_matrix(matpow(a, n))


def rho_enclosure(a: Matrix, width_target: Fraction | int = DEFAULT_WIDTH, snap: bool = False) -> SpectralEnclosure:
    """Bisection on ``theta`` starting from ``[0, max row sum]``.

    With ``snap=True`` the enclosure collapses to a point whenever the
    spectral radius is rational (see ``exact_spectral_radius``).
    """
    _validate(a)
    width_target = Fraction(width_target)
    if width_target <= 0:
        raise ValueError("width target must be positive")
    lo, hi = Fraction(0), inf_norm(a)
    while hi - lo > width_target:
        mid = (lo + hi) / 2
        if rho_less_than(a, mid):
            hi = mid
        else:
            lo = mid
    enc = SpectralEnclosure(lo, hi, width_target)
    if snap and hi > lo:
        exact = exact_spectral_radius(a, enc)
        if exact is not None:
            return SpectralEnclosure(exact, exact, width_target, exact=True)
    elif hi == lo:
        return SpectralEnclosure(lo, hi, width_target, exact=True)
    return enc


def characteristic_polynomial(a: Matrix) -> Polynomial:
    """``det(x I - a)`` by the Faddeev-LeVerrier recurrence."""
    n = check_square(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    am: Matrix = tuple(tuple(row) for row in m)
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        m = [[am[i][j] + (c_prev if i == j else 0) for j in range(n)] for i in range(n)]
        am = matmul(a, tuple(tuple(r) for r in m))
        coeffs[n - k] = -sum((am[i][i] for i in range(n)), Fraction(0)) / k
    return Polynomial(coeffs)


def _sturm_sequence(p: Polynomial) -> list[Polynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _sign_changes(seq: list[Polynomial], x: Fraction) -> int:
    signs = [v for v in (q(x) for q in seq) if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u < 0) != (v < 0))


def exact_spectral_radius(a: Matrix, enclosure: SpectralEnclosure | None = None) -> Fraction | None:
    """Return ``rho(a)`` when it is rational, else ``None``.

    A rational root of the squarefree characteristic polynomial has a
    denominator dividing the leading coefficient ``L`` of its primitive
    integer form, so once ``rho`` is bracketed in an interval of width
    below ``1/(2L)`` there is at most one candidate ``k/L``.  The candidate
    is accepted if it is a root, ``rho >= candidate`` (exact M-matrix test)
    and no root lies between the candidate and the upper bound (Sturm).
    """
    n = _validate(a)
    if n == 0 or is_zero_matrix(a):
        return Fraction(0)
    p = characteristic_polynomial(a)
    s = p.exact_div(poly_gcd(p, p.derivative()))
    big_l = Polynomial(s.primitive_integer()).lead
    need = Fraction(1, 2 * int(big_l))
    if enclosure is None or enclosure.width > need:
        enclosure = rho_enclosure(a, need if enclosure is None else min(need, enclosure.width_target))
    lo, hi = enclosure.lo, enclosure.hi
    sturm = _sturm_sequence(s)
    k = (lo * big_l).__ceil__()
    while Fraction(k) / big_l <= hi:
        r = Fraction(k) / big_l
        k += 1
        if s(r) != 0:
            continue
        if r > 0 and rho_less_than(a, r):
            continue
        if _sign_changes(sturm, r) - _sign_changes(sturm, hi) == 0:
            return r
    return None
