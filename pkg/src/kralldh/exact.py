"""Exact scalar, polynomial, rational-function and matrix primitives.

Every quantity in this package is an exact rational number
(``fractions.Fraction``), a dense univariate polynomial over such numbers,
or a rational function of the deformation variable ``s``.  There is no
floating point anywhere; equality always means exact equality.

Representation conventions:

* rationals are ``fractions.Fraction`` (always reduced, denominator > 0);
* a polynomial is a tuple of coefficients in ascending degree with no
  trailing zeros, the zero polynomial being the empty tuple;
* a rational function is a reduced quotient ``num/den`` of polynomials in
  ``s`` with monic denominator, so equality testing is structural;
* matrices are small, dense and row major.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

Rational = Fraction


class ExactError(Exception):
    """Base class for failures of the exactness contract."""


class PoleAtZeroError(ExactError):
    """A rational function in s was evaluated (or limited) at a pole."""


class InexactDivisionError(ExactError):
    """A division that must be exact left a nonzero remainder."""


def as_scalar(value):
    """Coerce ints, strings and Fractions to an exact scalar.

    Fractions and RationalFunctions pass through unchanged.  Floats are
    rejected: they have no place in an exact computation.
    """
    if isinstance(value, (Fraction, RationalFunction)):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return scalar_from_str(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def scalar_from_str(text: str) -> Fraction:
    """Parse "p/q" or a plain integer literal into a Fraction."""
    return Fraction(text.strip())


def scalar_to_str(value) -> str:
    """Serialize a Fraction as "p/q" (integers are emitted as "p/1")."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def pochhammer(x, m: int):
    """Rising factorial (x)_m = x (x+1) ... (x+m-1), with (x)_0 = 1.

    Negative m uses the standard extension (x)_{-k} = 1/(x-k)_k, which
    keeps (x)_{m+n} = (x)_m (x+m)_n valid whenever no factor vanishes.
    Works for any scalar x, including rational functions in s.
    """
    if m < 0:
        return Fraction(1) / pochhammer(x + m, -m)
    acc = Fraction(1)
    for i in range(m):
        acc = acc * (x + i)
    return acc


def pochhammer_pair(x, y, m: int):
    """The paired rising factorial (x, y)_m = (x)_m (y)_m."""
    return pochhammer(x, m) * pochhammer(y, m)


def binomial_rational(z, k: int) -> Fraction:
    """Binomial coefficient C(z, k) for rational z and integer k >= 0."""
    if k < 0:
        raise ValueError("binomial lower index must be nonnegative")
    return pochhammer(z - k + 1, k) / factorial(k)


class Polynomial:
    """Dense univariate polynomial with exact coefficients.

    Coefficients live in any exact field (Fraction, or RationalFunction in
    s); mixed arithmetic coerces upward.  Immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, RationalFunction) else Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, power: int, coeff=1) -> "Polynomial":
        return cls((0,) * power + (coeff,))

    @classmethod
    def from_roots(cls, roots) -> "Polynomial":
        """Monic product prod (x - r) over the given roots."""
        acc = cls.one()
        for r in roots:
            acc = acc * cls((-as_scalar(r), 1))
        return acc

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, RationalFunction)):
            return self == Polynomial((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            tuple(self.coefficient(i) + other.coefficient(i) for i in range(n))
        )

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction, RationalFunction)):
            return Polynomial(tuple(c * other for c in self.coeffs))
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Polynomial":
        if isinstance(scalar, (int, Fraction, RationalFunction)):
            return Polynomial(tuple(c / scalar for c in self.coeffs))
        return NotImplemented

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        acc, base = Polynomial.one(), self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    @staticmethod
    def _coerce(other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction, RationalFunction)):
            return Polynomial((other,))
        return NotImplemented

    def __call__(self, point):
        """Exact evaluation by Horner's rule."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """Exact composition self(inner(x))."""
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + Polynomial((c,))
        return acc

    def shift_argument(self, c) -> "Polynomial":
        """Return p(x + c)."""
        return self.compose(Polynomial((c, 1)))

    def reflect_argument(self, c) -> "Polynomial":
        """Return p(c - x)."""
        return self.compose(Polynomial((c, -1)))

    def divmod(self, divisor: "Polynomial"):
        """Exact Euclidean division; returns (quotient, remainder)."""
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dcs = divisor.coeffs
        dn = len(dcs) - 1
        lead = dcs[-1]
        if len(rem) <= dn:
            return Polynomial(), self
        quot = [Fraction(0)] * (len(rem) - dn)
        for k in range(len(rem) - dn - 1, -1, -1):
            q = rem[k + dn] / lead
            quot[k] = q
            if q:
                for i, dc in enumerate(dcs):
                    rem[k + i] = rem[k + i] - q * dc
        return Polynomial(tuple(quot)), Polynomial(tuple(rem[:dn]))

    def divexact(self, divisor: "Polynomial") -> "Polynomial":
        """Division that must leave no remainder; anything else is a bug."""
        q, r = self.divmod(divisor)
        if not r.is_zero:
            raise InexactDivisionError(
                f"nonzero remainder of degree {r.degree} in exact division"
            )
        return q

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        return self / self.leading()

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"({c})*x")
            else:
                parts.append(f"({c})*x^{i}")
        return " + ".join(parts)


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd of two polynomials over the rationals."""
    a, b = p, q
    while not b.is_zero:
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero else a


class RationalFunction:
    """Reduced quotient of polynomials in the deformation variable s.

    Invariants: gcd(num, den) = 1 and den is monic, so two equal rational
    functions have identical representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Polynomial) else Polynomial._coerce(num)
        if num is NotImplemented:
            raise TypeError("rational function numerator must be polynomial-like")
        if den is None:
            den = Polynomial.one()
        else:
            den = den if isinstance(den, Polynomial) else Polynomial._coerce(den)
            if den is NotImplemented:
                raise TypeError("rational function denominator must be polynomial-like")
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            num, den = Polynomial(), Polynomial.one()
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.divexact(g), den.divexact(g)
            lead = den.leading()
            if lead != 1:
                num, den = num / lead, den / lead
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def var(cls) -> "RationalFunction":
        """The deformation variable s itself."""
        return cls(Polynomial.x())

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(Polynomial((other,)))
        if isinstance(other, Polynomial):
            return cls(other)
        return NotImplemented

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self) -> bool:
        return not self.num.is_zero

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def inverse(self) -> "RationalFunction":
        if self.is_zero:
            raise ZeroDivisionError("inverting the zero rational function")
        return RationalFunction(self.den, self.num)

    def __call__(self, point) -> Fraction:
        d = self.den(point)
        if not d:
            raise ZeroDivisionError(f"pole at s = {point}")
        return self.num(point) / d

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def is_regular_at_zero(self) -> bool:
        return bool(self.den(Fraction(0)))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        return f"({self.num})/({self.den})"


def limit_at_zero(f) -> Fraction:
    """Exact limit at s = 0 of a rational function of s.

    Common powers of s are already cancelled by the reduced representation,
    so a vanishing denominator at 0 is a genuine pole.
    """
    if isinstance(f, (int, Fraction)):
        return Fraction(f)
    if not isinstance(f, RationalFunction):
        raise TypeError(f"cannot take an s-limit of {f!r}")
    d = f.den(Fraction(0))
    if not d:
        raise PoleAtZeroError("pole at s = 0")
    return f.num(Fraction(0)) / d


def derivative_at_zero(f) -> Fraction:
    """d/ds at s = 0 for a rational function regular at 0."""
    if isinstance(f, (int, Fraction)):
        return Fraction(0)
    return limit_at_zero(f.derivative())


@dataclass(frozen=True)
class Matrix:
    """Small dense row-major matrix of exact scalars."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows * self.cols != len(self.entries):
            raise ValueError("entry count does not match matrix shape")

    @classmethod
    def from_rows(cls, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix rows")
        return cls(len(rows), ncols, tuple(c for r in rows for c in r))

    def to_rows(self):
        return [
            list(self.entries[i * self.cols : (i + 1) * self.cols])
            for i in range(self.rows)
        ]

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i * self.cols + j]


def det_exact(matrix) -> Fraction:
    """Exact determinant via fraction-free (Bareiss) elimination.

    Accepts a Matrix or a list of rows.  Intermediate entries are minors of
    the input, which bounds coefficient blow-up; works over any exact field
    (Fractions, or rational functions in s).
    """
    rows = matrix.to_rows() if isinstance(matrix, Matrix) else [list(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if not rows[k][k]:
            pivot_row = next((i for i in range(k + 1, n) if rows[i][k]), None)
            if pivot_row is None:
                return Fraction(0)
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]) / prev
            rows[i][k] = Fraction(0)
        prev = pivot
    return sign * rows[n - 1][n - 1]


def det_with_poly_row(top_row, numeric_rows) -> Polynomial:
    """Determinant with one polynomial row, expanded along that row.

    ``top_row`` holds Polynomials; ``numeric_rows`` the remaining scalar
    rows.  Each cofactor is a numeric determinant computed fraction-free.
    """
    n = len(top_row)
    if any(len(r) != n for r in numeric_rows) or len(numeric_rows) != n - 1:
        raise ValueError("cofactor expansion needs an n x n shape")
    acc = Polynomial()
    for j, p in enumerate(top_row):
        if p.is_zero:
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in numeric_rows]
        cof = det_exact(minor)
        if cof:
            acc = acc + p * ((-1) ** j * cof)
    return acc


def nullspace_exact(rows):
    """Basis of the right nullspace of a matrix over the rationals.

    Plain Gauss-Jordan elimination with exact arithmetic; returns a list of
    basis vectors (lists of Fractions), empty when the kernel is trivial.
    """
    m = [list(map(Fraction, r)) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if m[i][c]), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -m[row_idx][fc]
        basis.append(vec)
    return basis


@dataclass(frozen=True)
class IndexSet:
    """Strictly increasing finite set of integers.

    max (and min) of the empty set is -1 by convention, which makes the
    hatted parameter maps act as the identity on the empty set.
    """

    elements: tuple

    def __post_init__(self):
        els = tuple(self.elements)
        if any(not isinstance(e, int) for e in els):
            raise ValueError("index sets hold integers")
        if any(els[i] >= els[i + 1] for i in range(len(els) - 1)):
            raise ValueError("index set must be strictly increasing")
        object.__setattr__(self, "elements", els)

    @classmethod
    def of(cls, iterable) -> "IndexSet":
        return cls(tuple(sorted(set(int(e) for e in iterable))))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, e):
        return e in self.elements

    @property
    def max(self) -> int:
        return self.elements[-1] if self.elements else -1

    @property
    def min(self) -> int:
        return self.elements[0] if self.elements else -1


def involution(index_set: IndexSet) -> IndexSet:
    """The complement-reflection involution on finite sets of positive ints.

    F maps to {1, ..., max F} minus {max F - f : f in F}; applying it twice
    gives back F, and the image size is max F - |F| + 1.
    """
    els = index_set.elements
    if not els:
        return IndexSet(())
    if els[0] <= 0:
        raise ValueError("involution needs positive integers")
    top = els[-1]
    removed = {top - f for f in els}
    return IndexSet(tuple(e for e in range(1, top + 1) if e not in removed))


def vandermonde(index_set: IndexSet) -> Fraction:
    """Vandermonde product prod_{i<j} (f_j - f_i); 1 for empty/singleton."""
    els = index_set.elements
    acc = Fraction(1)
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            acc *= els[j] - els[i]
    return acc


def residue_inv(poly: Polynomial, z0) -> Fraction:
    """Residue of 1/poly at a root z0 of multiplicity one or two.

    For a simple root the residue is 1/poly'(z0); for a double root with
    poly = (x - z0)^2 Q it is -Q'(z0)/Q(z0)^2.
    """
    z0 = as_scalar(z0)
    linear = Polynomial((-z0, 1))
    q1, r1 = poly.divmod(linear)
    if not r1.is_zero:
        raise ValueError(f"{z0} is not a root")
    q2, r2 = q1.divmod(linear)
    if not r2.is_zero:
        return Fraction(1) / q1(z0)
    q3, r3 = q2.divmod(linear)
    if r3.is_zero:
        raise ValueError(f"root {z0} has multiplicity > 2")
    val = q2(z0)
    return -q2.derivative()(z0) / (val * val)


def poly_to_strings(poly: Polynomial):
    """Serialize a polynomial as a list of "p/q" strings, ascending degree."""
    return [scalar_to_str(c) for c in poly.coeffs]


def poly_from_strings(items) -> Polynomial:
    return Polynomial(tuple(scalar_from_str(t) for t in items))
