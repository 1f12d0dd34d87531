"""Command line front end: generate families, run verification suites.

Exit codes: 0 all requested work passed, 1 a verification failed,
2 invalid configuration.  All emitted numbers are exact "p/q" strings;
output is byte-deterministic for identical configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .exact import (
    poly_from_strings,
    poly_to_strings,
    scalar_from_str,
    scalar_to_str,
)
from .measures import (
    DiscreteMeasure,
    NuParams,
    dual_hahn_measure,
    dual_hahn_norm,
    nu_basic,
)
from .classical import dual_hahn_poly
from .constructors import (
    Family,
    FamilyExistenceError,
    construct_basic,
    construct_dropped_rows,
    construct_mirror,
    construct_shifted,
    determinant_sizes,
)
from .wpoly import CrossCheckError, row_range, w_family
from .verify import (
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

REPRESENTATIONS = ("basic", "dropped", "shifted", "mirror")
SUITES = (
    "orthogonality",
    "identities",
    "limits",
    "equivalence",
    "sizes",
    "operator",
    "flip",
    "all",
)


def measure_to_json(measure: DiscreteMeasure) -> dict:
    return {
        "lattice": {"a": scalar_to_str(measure.a), "b": scalar_to_str(measure.b)},
        "atoms": [
            {"i": i, "point": scalar_to_str(p), "mass": scalar_to_str(m)}
            for i, p, m in measure.atoms
        ],
    }


def measure_from_json(data: dict) -> DiscreteMeasure:
    a = scalar_from_str(data["lattice"]["a"])
    b = scalar_from_str(data["lattice"]["b"])
    return DiscreteMeasure.from_masses(
        a, b, [(atom["i"], scalar_from_str(atom["mass"])) for atom in data["atoms"]]
    )


def family_to_json(fam: Family) -> dict:
    data = {
        "representation": fam.representation,
        "a": fam.params.a,
        "b": fam.params.b,
        "N": fam.params.N,
        "M": [scalar_to_str(m) for m in fam.params.free],
        "U": [scalar_to_str(u) for u in fam.U],
        "rows": list(fam.rows),
        "polys": [
            {
                "n": n,
                "q": poly_to_strings(fam.polys[n]),
                "phi": scalar_to_str(fam.phis[n]),
                "norm": scalar_to_str(fam.norms[n]) if fam.norms[n] is not None else None,
            }
            for n in range(len(fam.polys))
        ],
        "phi_top": scalar_to_str(fam.phis[len(fam.polys)]),
        "measure": measure_to_json(fam.measure),
    }
    if fam.polys_plain is not None:
        data["plain"] = {
            "polys": [poly_to_strings(p) for p in fam.polys_plain],
            "phis": [scalar_to_str(p) for p in fam.phis_plain],
            "norms": [
                scalar_to_str(v) if v is not None else None for v in fam.norms_plain
            ],
        }
    return data


def family_from_json(data: dict) -> Family:
    params = NuParams(
        data["a"], data["b"], data["N"], tuple(scalar_from_str(m) for m in data["M"])
    )
    polys = [poly_from_strings(rec["q"]) for rec in data["polys"]]
    phis = [scalar_from_str(rec["phi"]) for rec in data["polys"]]
    phis.append(scalar_from_str(data["phi_top"]))
    norms = [
        scalar_from_str(rec["norm"]) if rec["norm"] is not None else None
        for rec in data["polys"]
    ]
    plain = data.get("plain")
    return Family(
        representation=data["representation"],
        params=params,
        U=tuple(scalar_from_str(u) for u in data["U"]),
        rows=tuple(data["rows"]),
        polys=polys,
        phis=phis,
        norms=norms,
        measure=measure_from_json(data["measure"]),
        polys_plain=(
            [poly_from_strings(q) for q in plain["polys"]] if plain else None
        ),
        phis_plain=(
            [scalar_from_str(p) for p in plain["phis"]] if plain else None
        ),
        norms_plain=(
            [scalar_from_str(v) if v is not None else None for v in plain["norms"]]
            if plain
            else None
        ),
    )


def family_to_csv(fam: Family) -> str:
    lines = ["n,phi,norm,coefficients-ascending"]
    for n in range(len(fam.polys)):
        norm = scalar_to_str(fam.norms[n]) if fam.norms[n] is not None else ""
        cells = [str(n), scalar_to_str(fam.phis[n]), norm]
        cells.extend(poly_to_strings(fam.polys[n]))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _parse_fraction_list(text: str):
    if not text:
        return ()
    return tuple(scalar_from_str(t) for t in text.split(","))


def _parse_int_list(text: str):
    if not text:
        return ()
    return tuple(int(t) for t in text.split(","))


def _build_family(args) -> Family:
    params = NuParams(args.a, args.b, args.N, _parse_fraction_list(args.M))
    U = _parse_fraction_list(args.U)
    if args.rep == "basic":
        return construct_basic(params, U=U, n_max=args.nmax)
    if args.rep == "dropped":
        rows = _parse_int_list(args.G)
        if not rows:
            raise ValueError("--rep dropped needs --G with the kept row indices")
        return construct_dropped_rows(params, rows, U=U, n_max=args.nmax)
    if args.rep == "shifted":
        return construct_shifted(params, [int(u) for u in U], n_max=args.nmax)
    if args.rep == "mirror":
        return construct_mirror(params, U=U, n_max=args.nmax)
    raise ValueError(f"unknown representation {args.rep!r}")


def run_generate(args) -> int:
    fam = _build_family(args)
    if args.format == "json":
        payload = json.dumps(family_to_json(fam), indent=2, sort_keys=True) + "\n"
    else:
        payload = family_to_csv(fam)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 0


def _emit(records, out) -> int:
    text = "\n".join(json.dumps(r, sort_keys=True) for r in records) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r.get("pass", False) for r in records) else 1


def _gram_record(name, polys, measure, norms, extra=None) -> dict:
    rep = orthogonality_report(polys, measure, norms)
    rec = {"suite": "orthogonality", "case": name, "pass": rep.passed}
    if extra:
        rec.update(extra)
    return rec


def _suite_orthogonality(args):
    records = []
    cases = (
        [(args.a, args.b, args.N, _parse_fraction_list(args.M))]
        if args.a
        else [(1, 1, 2, (Fraction(2),)), (2, 1, 3, (Fraction(2),)), (2, 2, 3, (Fraction(2), Fraction(3)))]
    )
    for a, b, N, M in cases:
        mu = dual_hahn_measure(a, b, N)
        R = [dual_hahn_poly(n, a, b, N) for n in range(N + 1)]
        records.append(
            _gram_record(
                f"classical a={a} b={b} N={N}",
                R,
                mu,
                [dual_hahn_norm(n, a, b, N) for n in range(N + 1)],
            )
        )
        fam = construct_basic(NuParams(a, b, N, M))
        records.append(
            _gram_record(
                f"basic a={a} b={b} N={N} M={[str(m) for m in M]}",
                fam.polys,
                fam.measure,
                fam.norms,
            )
        )
    return records


def _suite_identities(args):
    records = []
    a = args.a or 2
    b = args.b or 1
    N = args.N or 3
    M = _parse_fraction_list(args.M) or (Fraction(2),) * min(a, b)
    for m in range(0, 3):
        for s in range(m - a + 1, 3):
            records.append(
                verify_moment_identity("nu-lower", a=a, b=b, N=N, free=M, m=m, s=s).as_record()
            )
    for n in range(0, N + a + 1):
        records.append(
            verify_moment_identity("nu-diagonal", a=a, b=b, N=N, free=M, n=n).as_record()
        )
    for m in range(0, 2):
        for s in range(max(0, m - b + 1), 3):
            records.append(
                verify_moment_identity("mirror-lower", a=a, b=b, N=N, free=M, m=m, s=s).as_record()
            )
    for n in range(0, N + b + 1):
        records.append(
            verify_moment_identity("mirror-diagonal", a=a, b=b, N=N, free=M, n=n).as_record()
        )
    rec = triangular_product_report(a, b, N, M).as_record()
    records.append(rec)
    for r in records:
        r["suite"] = "identities"
    return records


def _suite_limits(args):
    records = []
    a = args.a or 2
    b = args.b or 1
    N = args.N or 3
    M = (_parse_fraction_list(args.M) or (Fraction(2),))[0]
    records.append(verify_measure_limit_basic(a, b, N, M).as_record())
    for g in row_range(a, b):
        if a <= g <= a + b - 1:
            records.append(verify_row_parameter_limit(a, b, N, g, M).as_record())
    from .wpoly import mid_range

    for g in mid_range(a, b):
        records.append(verify_row_window_limit(a, b, N, g).as_record())
    for n in range(b, b + 2):
        for f in range(a, a + b):
            records.append(verify_evaluation_limit(a, b, N, n, f, M).as_record())
    for n in range(b, b + 3):
        records.append(verify_quotient_identity(a, b, N, n).as_record())
    U = tuple(int(u) for u in _parse_fraction_list(args.U)) or (1,)
    records.append(verify_measure_limit_transformed(a, b, N, M, U).as_record())
    for r in records:
        r["suite"] = "limits"
    return records


def _suite_equivalence(args):
    a = args.a or 2
    b = args.b or 1
    N = args.N or 3
    M = _parse_fraction_list(args.M) or (Fraction(2),) * min(a, b)
    U = tuple(int(u) for u in _parse_fraction_list(args.U)) or (1,)
    params = NuParams(a, b, N, M)
    f_direct = construct_basic(params, U=U)
    f_shift = construct_shifted(params, U)
    f_mirror = construct_mirror(params, U=U)
    ok = True
    for n in range(min(f_direct.n_max, f_shift.n_max, f_mirror.n_max) + 1):
        for other in (f_shift, f_mirror):
            c = f_direct.polys[n].leading() / other.polys[n].leading()
            if f_direct.polys[n] != other.polys[n] * c:
                ok = False
            if f_direct.norms[n] != c * c * other.norms[n]:
                ok = False
    sizes = determinant_sizes(a, b, N, U)
    return [
        {
            "suite": "equivalence",
            "params": {"a": a, "b": b, "N": N, "U": list(U)},
            "sizes": list(sizes),
            "pass": ok,
        }
    ]


def _suite_sizes(args):
    if not args.a:
        raise ValueError("--suite sizes needs --a --b --N --U")
    U = tuple(int(u) for u in _parse_fraction_list(args.U))
    sizes = determinant_sizes(args.a, args.b, args.N, U)
    return [
        {
            "suite": "sizes",
            "params": {"a": args.a, "b": args.b, "N": args.N, "U": list(U)},
            "sizes": list(sizes),
            "pass": True,
        }
    ]


def _suite_operator(args):
    a = args.a or 1
    b = args.b or 1
    N = args.N or 3
    M = _parse_fraction_list(args.M) or (Fraction(2),) * min(a, b)
    r = a * b + 1
    n_max = 2 * r + 2
    if N + b + 2 <= n_max:
        n_max += 1
    fam = construct_basic(NuParams(a, b, N, M), n_max=n_max, extend=True)
    op = operator_search(fam, r=r)
    rec = {
        "suite": "operator",
        "params": {"a": a, "b": b, "N": N, "M": [str(m) for m in M]},
        "shift_range": r,
        "pass": op is not None,
    }
    if op is not None:
        rec["eigenvalues"] = [str(g) if g is not None else None for g in op.gammas]
        rec["denominator_degree"] = op.denominator.degree
        rec["algebra_membership"] = op.maps_lattice_powers(3)
        rec["pass"] = rec["pass"] and rec["algebra_membership"]
    return [rec]


def _suite_flip(args):
    records = []
    pairs = [(args.a, args.b)] if args.a else [(1, 2), (1, 3), (2, 3)]
    for a, b in pairs:
        N = args.N or max(a, b) + 1
        M = _parse_fraction_list(args.M) or tuple(
            Fraction(2) + i for i in range(min(a, b))
        )
        params = NuParams(a, b, N, M)
        nu = nu_basic(params)
        fam_fl = w_family(a, b, N, M, orientation="flipped")
        inv = tuple(1 / m for m in M)
        fam_std = w_family(b, a, N, inv)
        sym = all(
            fam_fl[g] * Fraction((-1) ** g)
            == fam_std[g].reflect_argument(Fraction(-2 - N))
            for g in row_range(a, b)
        )
        records.append(
            {
                "suite": "flip",
                "params": {"a": a, "b": b, "N": N, "M": [str(m) for m in M]},
                "atoms": len(nu.atoms),
                "sign_exponent": "g",
                "pass": sym and len(nu.atoms) == min(a, b) + N + 1,
            }
        )
    return records


def run_verify(args) -> int:
    suites = {
        "orthogonality": _suite_orthogonality,
        "identities": _suite_identities,
        "limits": _suite_limits,
        "equivalence": _suite_equivalence,
        "sizes": _suite_sizes,
        "operator": _suite_operator,
        "flip": _suite_flip,
    }
    if args.suite == "all":
        records = []
        for name in ("orthogonality", "identities", "limits", "equivalence", "operator", "flip"):
            records.extend(suites[name](args))
    else:
        records = suites[args.suite](args)
    records.sort(key=lambda r: json.dumps(r, sort_keys=True))
    return _emit(records, args.out)


def _add_common(parser):
    parser.add_argument("--a", type=int, default=None)
    parser.add_argument("--b", type=int, default=None)
    parser.add_argument("--N", type=int, default=None)
    parser.add_argument("--M", type=str, default="", help="comma list of rationals")
    parser.add_argument("--U", type=str, default="", help="comma list of rationals")
    parser.add_argument("--nmax", type=int, default=None)
    parser.add_argument("--out", type=str, default=None)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="kralldh",
        description="exact Krall dual Hahn families: generation and verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    gen = sub.add_parser("generate", help="construct a family and emit it")
    _add_common(gen)
    gen.add_argument("--rep", choices=REPRESENTATIONS, default="basic")
    gen.add_argument("--G", type=str, default="", help="kept rows for --rep dropped")
    gen.add_argument("--format", choices=("json", "csv"), default="json")
    ver = sub.add_parser("verify", help="run a verification suite")
    _add_common(ver)
    ver.add_argument("--suite", choices=SUITES, default="all")
    args = parser.parse_args(argv)
    try:
        if args.command == "generate":
            if args.a is None or args.b is None or args.N is None:
                raise ValueError("generate needs --a --b --N --M")
            return run_generate(args)
        return run_verify(args)
    except (ValueError, CrossCheckError, FamilyExistenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
