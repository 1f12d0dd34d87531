"""Verification suites: identities, limits, Gram reports, operator search."""

from fractions import Fraction as F

import pytest

from kralldh.exact import IndexSet, Polynomial
from kralldh.classical import dual_hahn_poly
from kralldh.measures import NuParams, dual_hahn_measure, dual_hahn_norm
from kralldh.constructors import construct_basic
from kralldh.verify import (
    MOMENT_IDENTITIES,
    operator_search,
    orthogonality_report,
    triangular_product_report,
    verify_evaluation_limit,
    verify_measure_limit_basic,
    verify_measure_limit_transformed,
    verify_moment_identity,
    verify_quotient_identity,
    verify_row_parameter_limit,
    verify_row_window_limit,
)


FREE = {1: (F(2),), 2: (F(2), F(5)), 3: (F(2), F(5), F(1, 2))}


def test_basic_measure_moment_identities():
    for a, b, N in [(2, 1, 3), (1, 1, 2), (2, 2, 3)]:
        free = FREE[b]
        for m in range(0, 3):
            for s in range(m - a + 1, 3):
                rep = verify_moment_identity(
                    "nu-lower", a=a, b=b, N=N, free=free, m=m, s=s
                )
                assert rep.passed, rep.as_record()
        for n in range(0, N + a + 1):
            rep = verify_moment_identity("nu-diagonal", a=a, b=b, N=N, free=free, n=n)
            assert rep.passed, rep.as_record()


def test_christoffel_moment_identities_generic_parameters():
    for els in [(1,), (2,), (1, 2)]:
        Fset = IndexSet.of(els)
        a = F(Fset.max + 1) + F(1, 2)
        b = F(Fset.max + 1) + F(3, 2)
        N = 4
        n_g = Fset.max - len(Fset) + 1
        for m in range(0, 2):
            for s in range(m - n_g + 1, 3):
                rep = verify_moment_identity(
                    "christoffel-lower", a=a, b=b, N=N, F=Fset, m=m, s=s
                )
                assert rep.passed, rep.as_record()
        for n in range(0, N + n_g + 1):
            rep = verify_moment_identity(
                "christoffel-diagonal", a=a, b=b, N=N, F=Fset, n=n
            )
            assert rep.passed, rep.as_record()


def test_christoffel_lower_reduces_to_classical_orthogonality():
    # empty merge set: the right side has no rows, so the moments of the
    # degree-s polynomial below degree s vanish
    Fset = IndexSet(())
    a, b, N = F(3, 2), F(5, 2), 4
    for s in range(1, 4):
        for m in range(0, s):
            rep = verify_moment_identity(
                "christoffel-lower", a=a, b=b, N=N, F=Fset, m=m, s=s
            )
            assert rep.passed and rep.rhs == 0


def test_mirror_moment_identities():
    for a, b, N in [(2, 1, 3), (2, 2, 3)]:
        free = FREE[b]
        for m in range(0, 2):
            for s in range(max(0, m - b + 1), 3):
                rep = verify_moment_identity(
                    "mirror-lower", a=a, b=b, N=N, free=free, m=m, s=s
                )
                assert rep.passed, rep.as_record()
        for n in range(0, N + b + 1):
            rep = verify_moment_identity("mirror-diagonal", a=a, b=b, N=N, free=free, n=n)
            assert rep.passed, rep.as_record()


def test_transformed_moment_identities():
    from kralldh.constructors import alt_params

    for a, b, N, U in [(2, 1, 3, (1,)), (2, 2, 4, (-3,))]:
        free = FREE[b]
        n_g = len(alt_params(a, b, N, U).G_rows)
        for m in range(0, 2):
            for s in range(m - n_g + 1, 2):
                rep = verify_moment_identity(
                    "transformed-lower", a=a, b=b, N=N, free=free, U=U, m=m, s=s
                )
                assert rep.passed, rep.as_record()
        for n in range(0, 4):
            rep = verify_moment_identity(
                "transformed-diagonal", a=a, b=b, N=N, free=free, U=U, n=n
            )
            assert rep.passed, rep.as_record()


def test_moment_identity_dispatch():
    assert len(MOMENT_IDENTITIES) == 8
    with pytest.raises(ValueError):
        verify_moment_identity("nonsense")


def test_triangular_product_structure():
    rep = triangular_product_report(3, 2, 4, FREE[2])
    assert rep.passed


def test_measure_limit_basic():
    for a, b, N in [(1, 1, 2), (2, 1, 3), (2, 2, 3)]:
        rep = verify_measure_limit_basic(a, b, N, F(2))
        assert rep.passed, (a, b, N)


def test_measure_limit_transformed_is_proportional():
    for a, b, N, U in [(2, 1, 3, (1,)), (2, 2, 4, (-3,))]:
        rep = verify_measure_limit_transformed(a, b, N, F(2), U)
        assert rep.passed
        assert rep.params["constant"] != 0


def test_row_limits():
    assert verify_row_parameter_limit(2, 1, 3, 2, F(2)).passed
    assert verify_row_window_limit(3, 1, 4, 2).passed


def test_evaluation_and_quotient_limits():
    for n in (1, 2):
        assert verify_evaluation_limit(2, 1, 3, n, 2, F(2)).passed
    for n in (1, 2, 3):
        assert verify_quotient_identity(2, 1, 3, n).passed


def test_orthogonality_report_and_negative_control():
    a, b, N = 1, 1, 2
    mu = dual_hahn_measure(a, b, N)
    R = [dual_hahn_poly(n, a, b, N) for n in range(N + 1)]
    norms = [dual_hahn_norm(n, a, b, N) for n in range(N + 1)]
    good = orthogonality_report(R, mu, norms)
    assert good.passed
    # corrupt the degree-1 member: the report must flag it
    R_bad = [R[0], R[1] + Polynomial.one(), R[2]]
    bad = orthogonality_report(R_bad, mu, norms)
    assert not bad.passed and not bad.off_diagonal_ok


def test_operator_search_classical_three_term_structure():
    a, b, N = F(1, 2), F(3, 2), 6
    polys = [dual_hahn_poly(n, a, b, N) for n in range(6)]
    op = operator_search((polys, a, b), r=1, n_max=5)
    assert op is not None
    # the classical difference equation: eigenvalue n, rational coefficients
    assert op.gammas == tuple(F(n) for n in range(6))
    assert op.denominator.degree > 0
    assert op.maps_lattice_powers(3)


def test_operator_search_finds_rational_operator_for_basic_family():
    fam = construct_basic(NuParams(1, 1, 3, (F(2),)), n_max=6, extend=True)
    op = operator_search(fam, r=2)
    assert op is not None
    assert not op.numerators[-2].is_zero and not op.numerators[2].is_zero
    gammas = [g for g in op.gammas if g is not None]
    assert len(set(gammas)) == len(gammas)
    assert op.maps_lattice_powers(3)


def test_operator_search_negative_control():
    fam = construct_basic(NuParams(1, 1, 3, (F(2),)), n_max=6, extend=True)
    polys = list(fam.polys)
    # same-degree perturbation: no operator of this shift range can have
    # the tampered family as eigenfunctions
    polys[1] = polys[1] + Polynomial((0, F(1, 7)))
    assert operator_search((polys, 1, 1), r=2) is None


def test_verify_limits_dispatch():
    from kralldh.verify import LIMIT_KINDS, verify_limits

    assert len(LIMIT_KINDS) == 6
    assert verify_limits("measure-basic", a=1, b=1, N=2, M=F(2)).passed
    assert verify_limits("row-window", a=3, b=1, N=4, g=2).passed
    with pytest.raises(ValueError):
        verify_limits("nonsense")


def test_identity_report_record():
    rep = verify_moment_identity("nu-lower", a=1, b=1, N=2, free=(F(2),), m=0, s=0)
    rec = rep.as_record()
    assert rec["pass"] is True
    assert set(rec) == {"identity", "params", "lhs", "rhs", "pass"}
