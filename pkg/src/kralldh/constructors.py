"""Determinantal construction of the orthogonal families.

Three representations of the same orthogonal family are built here:

* the direct one: a determinant with one polynomial row of dual Hahn
  polynomials, rows of auxiliary polynomials evaluated at shifted
  integers, and one row per Christoffel point, divided exactly by the
  Christoffel factor;
* the shifted-parameter one, whose rows are indexed by the involution
  image of the merged index set and whose dual Hahn polynomials take a
  translated argument;
* the mirrored one, built from the parameter-inverted auxiliary family
  evaluated on the other side of the lattice.

Existence of the family is equivalent to nonvanishing of the leading
minors, which are returned along with the polynomials and the closed-form
norms.  All determinants with a polynomial row are expanded by cofactors
along that row; the numeric minors are evaluated fraction-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .exact import (
    IndexSet,
    InexactDivisionError,
    Polynomial,
    as_scalar,
    det_exact,
    det_with_poly_row,
    involution,
    pochhammer,
)
from .classical import dual_hahn_poly, lambda_map
from .measures import (
    DiscreteMeasure,
    NuParams,
    christoffel_measure,
    inner_product,
    nu_basic,
    nu_u_transform,
)
from .wpoly import row_range, w_family


class FamilyExistenceError(ArithmeticError):
    """A leading minor vanished: no orthogonal family exists there."""


@dataclass(frozen=True)
class Family:
    """A constructed orthogonal family bundle.

    ``polys[n]`` has degree n, ``phis[n]`` is the leading minor (the norm
    of degree n needs phis[n] and phis[n+1]), ``norms[n]`` the closed-form
    squared norm.  ``measure`` is the orthogonality measure.  For the
    direct representation without Christoffel points the plain-normalized
    view (divided by the column scalings) is carried alongside, since its
    minor and norm formulas are the ones stated for the basic family.
    """

    representation: str
    params: NuParams
    U: tuple
    rows: tuple
    polys: list
    phis: list
    norms: list
    measure: DiscreteMeasure
    polys_plain: list = None
    phis_plain: list = None
    norms_plain: list = None

    @property
    def n_max(self) -> int:
        return len(self.polys) - 1


def _cached_dual_hahn(a, b, N):
    cache = {}

    def get(k: int) -> Polynomial:
        if k not in cache:
            cache[k] = dual_hahn_poly(k, a, b, N)
        return cache[k]

    return get


def _validate_pair_condition(a: int, b: int, U) -> tuple:
    U = tuple(as_scalar(u) for u in U)
    for u in U:
        for v in U:
            if u + v == -a - b - 1:
                raise ValueError(f"root doubling: ({u}) + ({v}) = -a-b-1")
    return U


def construct_selected_rows(params: NuParams, G, U=(), n_max=None, extend=False) -> Family:
    """Shared direct-representation constructor.

    G selects which auxiliary rows appear (the full row range gives the
    basic family); U adds one evaluation row per Christoffel point.  The
    orthogonality measure is the basic measure times the Christoffel
    factors of U and of the dropped rows' points.
    """
    if params.orientation != "standard":
        raise ValueError("constructions are stated for the standard orientation")
    a, b, N, free = params.a, params.b, params.N, params.free
    U = _validate_pair_condition(a, b, U)
    all_rows = list(row_range(a, b))
    G = sorted(G)
    if any(g not in all_rows for g in G):
        raise ValueError("selected rows must lie in the basic row range")
    dropped = [h for h in all_rows if h not in G]
    half_window = [h for h in dropped if h <= (a + b + 1) // 2 - 1]
    for h in half_window:
        if (a + b - 1 - h) not in dropped:
            raise ValueError(
                f"dropping row {h} needs its partner {a + b - 1 - h} dropped too"
            )
    n_u, n_g = len(U), len(G)
    wfam = w_family(a, b, N, free)
    R = _cached_dual_hahn(a, b, N)
    u_points = [lambda_map(a, b, u) for u in U]

    base = nu_basic(params)
    factor = Polynomial.from_roots(
        u_points + [lambda_map(a, b, -h - 1) for h in dropped]
    )
    measure = christoffel_measure(base, factor)
    if not measure.atoms:
        raise ValueError("transform annihilated the whole measure")
    if n_max is None:
        n_max = len(measure.atoms) - 1
    if not extend and n_max > len(measure.atoms) - 1:
        raise ValueError("n_max exceeds the support size of the measure")

    def phi_minor(n: int) -> Fraction:
        rows = []
        for g in G:
            rows.append(
                [
                    pochhammer(Fraction(b + N - n - n_u + j + 1), a + n_u - j)
                    * wfam[g](Fraction(-n - n_u + j - 1))
                    for j in range(1, n_g + n_u + 1)
                ]
            )
        for u, pt in zip(U, u_points):
            rows.append(
                [
                    Fraction((-1) ** j) * R(n + n_u - j)(pt)
                    for j in range(1, n_g + n_u + 1)
                ]
            )
        return det_exact(rows)

    divisor = Polynomial.from_roots(u_points)
    phis, polys, norms = [], [], []
    for n in range(n_max + 2):
        phis.append(phi_minor(n))
    for n in range(n_max + 1):
        beyond_support = n > len(measure.atoms) - 1
        if not phis[n] and not (extend and beyond_support):
            raise FamilyExistenceError(f"leading minor vanishes at n = {n}")
        top = [
            Fraction((-1) ** (j - 1)) * R(n + n_u - j + 1) for j in range(1, n_g + n_u + 2)
        ]
        rest = []
        for g in G:
            rest.append(
                [
                    pochhammer(Fraction(b + N - n - n_u + j), a + n_u + 1 - j)
                    * wfam[g](Fraction(-n - n_u + j - 2))
                    for j in range(1, n_g + n_u + 2)
                ]
            )
        for u, pt in zip(U, u_points):
            rest.append(
                [
                    Fraction((-1) ** (j - 1)) * R(n + n_u - j + 1)(pt)
                    for j in range(1, n_g + n_u + 2)
                ]
            )
        numerator = det_with_poly_row(top, rest)
        q = numerator.divexact(divisor)
        if phis[n] and (
            q.degree != n or q.leading() != phis[n] / factorial(n + n_u)
        ):
            raise InexactDivisionError(
                f"degree-{n} polynomial has wrong leading coefficient"
            )
        polys.append(q)
        # no norm beyond the support: orthogonality only holds there
        if n <= len(measure.atoms) - 1:
            norms.append(_selected_norm(a, b, N, n, n_u, n_g, phis[n], phis[n + 1]))
        else:
            norms.append(None)
    phis = phis[: n_max + 2]

    fam = Family(
        representation="direct",
        params=params,
        U=U,
        rows=tuple(G),
        polys=polys,
        phis=phis,
        norms=norms,
        measure=measure,
    )
    return fam


def _selected_norm(a, b, N, n, n_u, n_g, phi_n, phi_n1) -> Fraction:
    num = (
        Fraction((-1) ** n_u)
        * factorial(n)
        * pochhammer(Fraction(n + 1), a - n_g)
        * Fraction(factorial(N + b)) ** 2
        * Fraction(N + a + b - n) ** n_g
        * phi_n
        * phi_n1
    )
    den = (
        factorial(n + n_u)
        * factorial(N + n_g - n)
        * factorial(N + n_g + b - n)
    )
    return num / den


def _plain_column_scalings(a, b, N, n):
    """Column normalizations relating the Christoffel-ready direct minors
    and polynomials to the plain basic ones (empty U only)."""
    e = Fraction(1)
    for j in range(1, a + 1):
        e *= pochhammer(Fraction(b + N - n + j + 1), a - j)
    d = pochhammer(Fraction(b + N - n + 1), a) * e
    return d, e


def construct_basic(params: NuParams, U=(), n_max=None, extend=False) -> Family:
    """The direct-representation family for the (transformed) basic measure.

    With empty U the plain-normalized view (divided column scalings, whose
    minors never vanish spuriously at the top degree) is attached as
    polys_plain/phis_plain/norms_plain.
    """
    a, b, N = params.a, params.b, params.N
    fam = construct_selected_rows(params, row_range(a, b), U, n_max, extend)
    # the plain view's column scalings vanish beyond the top degree
    if U or fam.n_max > N + b:
        return fam
    polys_plain, phis_plain, norms_plain = [], [], []
    for n, phi in enumerate(fam.phis):
        _, e = _plain_column_scalings(a, b, N, n)
        phis_plain.append(phi / e)
    for n, q in enumerate(fam.polys):
        d, _ = _plain_column_scalings(a, b, N, n)
        p = q / d
        if p.leading() != phis_plain[n] / (
            pochhammer(Fraction(b + N - n + 1), a) * factorial(n)
        ):
            raise InexactDivisionError("plain leading coefficient mismatch")
        polys_plain.append(p)
        if n <= N + b:
            norms_plain.append(
                Fraction(factorial(N + b)) ** 2
                * phis_plain[n]
                * phis_plain[n + 1]
                / (
                    factorial(N + a - n)
                    * factorial(N + b - n)
                    * pochhammer(Fraction(N + b - n + 1), a) ** 2
                )
            )
        else:
            norms_plain.append(None)
    return Family(
        representation=fam.representation,
        params=fam.params,
        U=fam.U,
        rows=fam.rows,
        polys=fam.polys,
        phis=fam.phis,
        norms=fam.norms,
        measure=fam.measure,
        polys_plain=polys_plain,
        phis_plain=phis_plain,
        norms_plain=norms_plain,
    )


def construct_dropped_rows(params: NuParams, G, U=(), n_max=None) -> Family:
    """Direct-representation family with a proper subset of rows.

    The orthogonality measure gains one Christoffel factor per dropped
    row; dropped rows in the lower pairing window must come with their
    reflection partners, otherwise no orthogonal family exists on the
    resulting measure.
    """
    fam = construct_selected_rows(params, G, U, n_max)
    return Family(
        representation="dropped-rows",
        params=fam.params,
        U=fam.U,
        rows=fam.rows,
        polys=fam.polys,
        phis=fam.phis,
        norms=fam.norms,
        measure=fam.measure,
    )


@dataclass(frozen=True)
class AltParams:
    """Shifted parameters of the transformed representation.

    The shift is max(-1, max U) + 1; the merged index set combines the
    basic parameter block with the translated Christoffel points, and the
    row set is its involution image.  b_alt + N_alt is an invariant.
    """

    a_alt: int
    b_alt: int
    N_alt: int
    s_shift: Fraction
    F_merged: IndexSet
    G_rows: IndexSet

    @property
    def n_rows(self) -> int:
        return len(self.G_rows)


def alt_params(a: int, b: int, N: int, U) -> AltParams:
    """Derive the shifted parameters for integer Christoffel points.

    Every u must hit a removable support point (the index -1 and the
    deep-reflected representatives are rejected: the merged index set
    must consist of positive integers).
    """
    U = [int(u) for u in U]
    _validate_pair_condition(a, b, U)
    allowed = set(range(-a - b + 1, -a)) | set(range(-b, -1)) | set(range(0, N + 1))
    for u in U:
        if u not in allowed:
            raise ValueError(f"point index {u} outside the removable range")
    t = max(-1, max(U, default=-1)) + 1
    merged = IndexSet.of(list(range(a, a + b)) + [a + b + u for u in U])
    return AltParams(
        a_alt=a + t,
        b_alt=b + t,
        N_alt=N - t,
        s_shift=lambda_map(a, b, t),
        F_merged=merged,
        G_rows=involution(merged),
    )


def determinant_sizes(a: int, b: int, N: int, U) -> tuple:
    """Sizes of the three determinant representations for the same family."""
    alt = alt_params(a, b, N, U)
    return (a + len(U) + 1, alt.n_rows + 1, b + len(U) + 1)


def construct_shifted(params: NuParams, U, n_max=None) -> Family:
    """Second representation: shifted parameters and translated argument.

    Valid for integer Christoffel points only; orthogonal with respect to
    the same transformed measure as the direct representation.
    """
    if params.orientation != "standard":
        raise ValueError("constructions are stated for the standard orientation")
    a, b, N, free = params.a, params.b, params.N, params.free
    alt = alt_params(a, b, N, U)
    aU, bU, NU = alt.a_alt, alt.b_alt, alt.N_alt
    rows = list(alt.G_rows)
    n_g = len(rows)
    n_u = len(U)
    wfam = w_family(aU, bU, NU, free, rows=rows)
    R = _cached_dual_hahn(aU, bU, NU)
    measure = nu_u_transform(params, U).measure
    if n_max is None:
        n_max = len(measure.atoms) - 1
    if n_max > len(measure.atoms) - 1:
        raise ValueError("n_max exceeds the support size of the measure")

    def phi_minor(n: int) -> Fraction:
        return det_exact(
            [
                [wfam[g](Fraction(-n + j - 1)) for j in range(1, n_g + 1)]
                for g in rows
            ]
        )

    shift = Polynomial((-alt.s_shift, 1))
    phis, polys, norms = [], [], []
    for n in range(n_max + 2):
        phis.append(phi_minor(n))
    for n in range(n_max + 1):
        if not phis[n]:
            raise FamilyExistenceError(f"leading minor vanishes at n = {n}")
        top = []
        for j in range(1, n_g + 2):
            top.append(
                R(n - j + 1).compose(shift)
                * (
                    Fraction((-1) ** (j - 1))
                    / pochhammer(Fraction(b + N - n + j), n_g + 1 - j)
                )
            )
        rest = [
            [wfam[g](Fraction(-n + j - 2)) for j in range(1, n_g + 2)]
            for g in rows
        ]
        q = det_with_poly_row(top, rest)
        lead = phis[n] / (pochhammer(Fraction(b + N - n + 1), n_g) * factorial(n))
        if q.degree != n or q.leading() != lead:
            raise FamilyExistenceError(f"degree defect at n = {n}")
        polys.append(q)
        norms.append(
            phis[n]
            * phis[n + 1]
            * factorial(n + n_u)
            * Fraction(factorial(N + b)) ** 2
            * factorial(N + b - n)
            / (
                factorial(n)
                * factorial(N + a - n - n_u)
                * Fraction(factorial(N + b - n + n_g)) ** 2
            )
        )
    return Family(
        representation="shifted",
        params=params,
        U=tuple(Fraction(u) for u in U),
        rows=tuple(rows),
        polys=polys,
        phis=phis,
        norms=norms,
        measure=measure,
    )


def construct_mirror(params: NuParams, U=(), n_max=None) -> Family:
    """Third representation: parameter-inverted auxiliary rows.

    The auxiliary family takes the inverted free parameters and a negative
    N slot, evaluated on the reflected side; the polynomial row holds dual
    Hahn polynomials with a and b exchanged.
    """
    if params.orientation != "standard":
        raise ValueError("constructions are stated for the standard orientation")
    a, b, N, free = params.a, params.b, params.N, params.free
    U = _validate_pair_condition(a, b, U)
    n_u = len(U)
    inv_free = tuple(1 / m for m in free)
    wmir = w_family(a, b, -2 - N - a - b, inv_free, rows=range(a, a + b))
    R = _cached_dual_hahn(b, a, N)
    u_points = [lambda_map(a, b, u) for u in U]
    measure = nu_u_transform(params, U).measure if U else nu_basic(params)
    if n_max is None:
        n_max = len(measure.atoms) - 1
    if n_max > len(measure.atoms) - 1:
        raise ValueError("n_max exceeds the support size of the measure")

    def psi_minor(n: int) -> Fraction:
        rows = []
        for f in range(a, a + b):
            rows.append(
                [
                    pochhammer(Fraction(-N - a - b), n + j - 1)
                    * wmir[f](Fraction(N + a + b - n - j + 1))
                    for j in range(1, b + n_u + 1)
                ]
            )
        for pt in u_points:
            rows.append(
                [R(n - b + j - 1)(pt) for j in range(1, b + n_u + 1)]
            )
        return det_exact(rows)

    divisor = Polynomial.from_roots(u_points)
    phis, polys, norms = [], [], []
    for n in range(n_max + 2):
        phis.append(psi_minor(n))
    for n in range(n_max + 1):
        if not phis[n]:
            raise FamilyExistenceError(f"leading minor vanishes at n = {n}")
        top = [R(n - b + j - 1) for j in range(1, b + n_u + 2)]
        rest = []
        for f in range(a, a + b):
            rest.append(
                [
                    pochhammer(Fraction(-N - a - b), n + j - 1)
                    * wmir[f](Fraction(N + a + b - n - j + 1))
                    for j in range(1, b + n_u + 2)
                ]
            )
        for pt in u_points:
            rest.append([R(n - b + j - 1)(pt) for j in range(1, b + n_u + 2)])
        q = det_with_poly_row(top, rest).divexact(divisor)
        lead = Fraction((-1) ** (b + n_u)) * phis[n] / factorial(n + n_u)
        if q.degree != n or q.leading() != lead:
            raise FamilyExistenceError(f"degree defect at n = {n}")
        polys.append(q)
        norms.append(
            factorial(n)
            * pochhammer(Fraction(-N - a - b), n) ** 2
            * pochhammer(Fraction(N + b + 1 - n), a)
            * phis[n]
            * phis[n + 1]
            / (
                Fraction((-1) ** (n_u + b))
                * factorial(n + n_u)
                * pochhammer(Fraction(N + b + 1), a) ** 2
            )
        )
    return Family(
        representation="mirror",
        params=params,
        U=U,
        rows=tuple(range(a, a + b)),
        polys=polys,
        phis=phis,
        norms=norms,
        measure=measure,
    )


def recurrence_coeffs(fam: Family, n: int):
    """Closed-form lower and upper recurrence coefficients plus the exact
    diagonal one.

    The three-term recurrence for the direct representation reads
    x q_n = a_{n+1} q_{n+1} + b_n q_n + c_n q_{n-1}; a_n and c_n come from
    the stated minor ratios, b_n from the exact inner products (the stated
    closed form for b_n involves an undefined symbol and is not used).
    """
    if fam.representation != "direct":
        raise ValueError("recurrence coefficients apply to the direct representation")
    a, b, N = fam.params.a, fam.params.b, fam.params.N
    n_u = len(fam.U)
    if not (0 <= n <= fam.n_max and fam.phis[n] and fam.phis[n + 1]):
        raise ValueError("recurrence needs nonvanishing neighboring minors")
    a_n = (n + n_u) * fam.phis[n - 1] / fam.phis[n] if n >= 1 else None
    c_n = (
        n
        * (a + N - n + 1)
        * (a + b + N - n + 1)
        * Fraction(a + b + N - n, a + b + N - n + 1) ** a
        * fam.phis[n + 1]
        / fam.phis[n]
    )
    q_n = fam.polys[n]
    norm_n = inner_product(q_n, q_n, fam.measure)
    b_n = inner_product(Polynomial((0, 1)) * q_n, q_n, fam.measure) / norm_n
    return a_n, b_n, c_n
