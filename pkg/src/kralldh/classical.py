"""Classical Hahn and dual Hahn families on the quadratic lattice.

Both families are computed from their explicit terminating sums rather
than from three-term recurrences, so negative-integer parameters (which
this package uses heavily) need no special-casing: every coefficient is a
finite product of exact scalars.  All entry points are generic over the
coefficient field, so the parameters may be Fractions or rational
functions of the deformation variable s.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .exact import (
    Polynomial,
    PoleAtZeroError,
    RationalFunction,
    as_scalar,
    derivative_at_zero,
    pochhammer,
    pochhammer_pair,
)


def lambda_map(a, b, x):
    """Quadratic lattice point x (x + a + b + 1).

    Symmetric under x -> -x - a - b - 1, which is why distinct lattice
    indices can share a physical point.
    """
    a, b, x = as_scalar(a), as_scalar(b), as_scalar(x)
    return x * (x + a + b + 1)


def lambda_poly(a, b) -> Polynomial:
    """The lattice map as a polynomial in the index variable."""
    return Polynomial((0, as_scalar(a) + as_scalar(b) + 1, 1))


def dual_hahn_poly(n: int, a, b, N) -> Polynomial:
    """Dual Hahn polynomial of degree n in the lattice variable.

    Zero polynomial for n < 0 (the convention every determinantal formula
    below relies on).  Exact for arbitrary rational or deformed parameters.
    """
    if n < 0:
        return Polynomial.zero()
    a, b, N = as_scalar(a), as_scalar(b), as_scalar(N)
    total = Polynomial.zero()
    prod = Polynomial.one()  # prod_{i<j} (x - lambda(i))
    for j in range(n + 1):
        c = (
            pochhammer(-n, j)
            * pochhammer(-N + j, n - j)
            * pochhammer(a + j + 1, n - j)
            * Fraction((-1) ** j, factorial(n) * factorial(j))
        )
        if c:
            total = total + prod * c
        prod = prod * Polynomial((-lambda_map(a, b, j), 1))
    return total


def hahn_poly(n: int, a, b, N) -> Polynomial:
    """Hahn polynomial of degree at most n in x.

    The generic degree is exactly n; for negative-integer parameters the
    sum may collapse to lower degree or to zero, which is intended.
    """
    if n < 0:
        return Polynomial.zero()
    a, b, N = as_scalar(a), as_scalar(b), as_scalar(N)
    total = Polynomial.zero()
    falling = Polynomial.one()  # (-x)_j
    for j in range(n + 1):
        c = (
            pochhammer(-n, j)
            * pochhammer(a + b + n + 1, j)
            * pochhammer(-N + j, n - j)
            * pochhammer(a + j + 1, n - j)
            * Fraction(1, factorial(j))
        )
        if c:
            total = total + falling * c
        falling = falling * Polynomial((j, -1))
    return total


def phi_pair(u: int, a, b, N):
    """Deformed Hahn-type series and its exact s-derivative at s = 0.

    Returns ``(phi, dphi0)`` where ``phi`` is a polynomial in x with
    coefficients rational in s, namely the normalized terminating series
    whose parameter a is deformed to a + s, and ``dphi0`` is the
    coefficient-wise derivative d/ds at s = 0 (a plain rational
    polynomial).  Raises PoleAtZeroError when some coefficient has a pole
    at s = 0, which happens exactly when u > a - 1 for integer a.
    """
    if u < 0:
        raise ValueError("series order u must be nonnegative")
    a, b, N = as_scalar(a), as_scalar(b), as_scalar(N)
    s = RationalFunction.var()
    ab = a + b
    mx = u
    if isinstance(ab, Fraction) and ab.denominator == 1:
        mx = max(u, int(ab) - u - 1)
    prefactor = pochhammer_pair(-a + 1, -N, mx)
    total = Polynomial.zero()
    falling = Polynomial.one()  # (-x)_j
    for j in range(u + 1):
        if not pochhammer(-a + 1, j):
            raise PoleAtZeroError(
                f"series coefficient {j} has a pole at s = 0 (u = {u}, a = {a})"
            )
        den_n = pochhammer(-N, j)
        if not den_n:
            raise ValueError(f"series undefined: lower parameter -N hits zero at j = {j}")
        num = pochhammer(-u, j) * pochhammer(u - s - a - b + 1, j)
        den = pochhammer(-a - s + 1, j) * den_n * factorial(j)
        coeff = prefactor * num / den
        if coeff:
            total = total + falling * coeff
        falling = falling * Polynomial((j, -1))
    dphi0 = Polynomial(tuple(derivative_at_zero(c) for c in total.coeffs))
    return total, dphi0


@dataclass(frozen=True)
class DifferenceOperator2:
    """Second order difference operator A(x) S_{-1} + B(x) S_0 + C(x) S_1.

    ``kind`` records which of the three operators used in this package the
    instance is; for the two auxiliary kinds the middle coefficient must be
    B(x) = -A(x-1) - C(x+1).
    """

    kind: str
    minus: Polynomial
    zero: Polynomial
    plus: Polynomial

    def __post_init__(self):
        # For the auxiliary kinds the middle coefficient is pinned by the
        # outer two: with A the up-shift and C the down-shift coefficient,
        # B(x) = -A(x-1) - C(x+1).
        if self.kind in ("aux", "aux_mirror"):
            expected = -(self.plus.shift_argument(-1)) - self.minus.shift_argument(1)
            if self.zero != expected:
                raise ValueError("middle coefficient must be -A(x-1) - C(x+1)")


def gamma_hahn_operator(a, b, N) -> DifferenceOperator2:
    """The operator whose eigenfunctions are the Hahn polynomials.

    Eigenvalue on the degree-n polynomial is the lattice point of n.
    """
    a, b, N = as_scalar(a), as_scalar(b), as_scalar(N)
    up = Polynomial.from_roots((-a - 1, N))  # (x + a + 1)(x - N)
    down = Polynomial.from_roots((0, b + N + 1))  # x (x - b - N - 1)
    return DifferenceOperator2("gamma", down, -(up + down), up)


def aux_operator(a, b, N) -> DifferenceOperator2:
    """Second order operator diagonalized by g -> h_g^{-a,-b,-2-N}(-x-1).

    The eigenvalue on the g-th function is the lattice point of -g-1.
    The down-shift coefficient is (x-N-1)(x+a) and the up-shift one is
    (x+1)(x-b-N); attaching them the other way round breaks the eigenvalue
    by the additive constant a+b.
    """
    a, b, N = as_scalar(a), as_scalar(b), as_scalar(N)
    minus = Polynomial.from_roots((N + 1, -a))  # (x-N-1)(x+a)
    plus = Polynomial.from_roots((-1, b + N))  # (x+1)(x-b-N)
    zero = -(plus.shift_argument(-1)) - minus.shift_argument(1)
    return DifferenceOperator2("aux", minus, zero, plus)


def aux_operator_mirror(a, b, N) -> DifferenceOperator2:
    """Mirror-side analogue of aux_operator, with a and b exchanged in the
    coefficient roots; diagonalized by the mirrored auxiliary polynomials
    in the reflected argument a+N-x, again with eigenvalue at -f-1."""
    a, b, N = as_scalar(a), as_scalar(b), as_scalar(N)
    minus = Polynomial.from_roots((N + 1, -b))  # (x-N-1)(x+b)
    plus = Polynomial.from_roots((-1, a + N))  # (x+1)(x-a-N)
    zero = -(plus.shift_argument(-1)) - minus.shift_argument(1)
    return DifferenceOperator2("aux_mirror", minus, zero, plus)


def apply_operator(op: DifferenceOperator2, f, x):
    """Apply the operator to a function on lattice indices at the point x."""
    x = as_scalar(x)
    return op.minus(x) * f(x - 1) + op.zero(x) * f(x) + op.plus(x) * f(x + 1)
