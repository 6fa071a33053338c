"""Command-line front end emitting deterministic JSON.

Exit codes: 0 = success / all checks pass, 1 = verification failures
present, 2 = usage or parse errors.  Rational numbers are serialized as
exact strings "p/q"; the only floats are Gauss-sum diagnostics, kept in
explicitly tagged fields.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import discform, lattice, polytope, singularity
from .catalog import (
    ParseError,
    load_all_tables,
    load_propdefn,
    load_weights,
    make_parser,
    parse_form,
    parse_form_specs,
)
from .catalog.tables import TABLE_IDS
from .catalog.verify import (
    reclassify_blocks,
    verify_elliptic,
    verify_entry,
    verify_formula,
    verify_propdefn,
    verify_reclassify_block,
)
from .lattice import DEFAULT_E8_LABELING, E8_LABELINGS


def _frac(x: Fraction | int) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _emit(obj, pretty: bool) -> None:
    if pretty:
        print(json.dumps(obj, indent=2))
    else:
        print(json.dumps(obj, separators=(",", ":")))


def _form_json(form: discform.FiniteQuadraticForm) -> dict:
    return {
        "group": list(form.orders),
        "q": [_frac(x) for x in form.q],
        "b": [[_frac(x) for x in row] for row in form.b],
        "fundamental": discform.canonical_expr(form),
    }


def _env_default(name: str, fallback):
    return os.environ.get(f"K3LAT_{name}", fallback)


def build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="k3lat", description=__doc__)
    ap.add_argument("--pretty", action="store_true", help="indent the JSON output")
    ap.add_argument(
        "--bound",
        type=int,
        default=int(_env_default("BOUND", 10)),
        help="coordinate bound for isotropic-vector searches",
    )
    ap.add_argument(
        "--labeling",
        default=_env_default("LABELING", DEFAULT_E8_LABELING),
        help=f"E8 labeling ({'|'.join(E8_LABELINGS)}|all)",
    )
    ap.add_argument(
        "--data",
        default=_env_default("DATA", None),
        help="path to an external weight-system file",
    )
    ap.add_argument("--table", default=_env_default("TABLE", None), help="restrict to one table id")
    ap.add_argument(
        "--jobs",
        type=int,
        default=int(_env_default("JOBS", 1)),
        help="worker threads for verification fan-out",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    lat = sub.add_parser("lattice", help="lattice invariants").add_subparsers(
        dest="subcommand", required=True
    )
    p = lat.add_parser("info", help="rank, signature, determinant, discriminant form")
    p.add_argument("expr")
    p = lat.add_parser("isotropic", help="does the lattice represent zero?")
    p.add_argument("expr")

    qf = sub.add_parser("qform", help="finite quadratic forms").add_subparsers(
        dest="subcommand", required=True
    )
    p = qf.add_parser("sig", help="signature mod 8 by both computation paths")
    p.add_argument("expr")
    p = qf.add_parser("iso", help="isomorphism test with witness")
    p.add_argument("expr1")
    p.add_argument("expr2")
    p = qf.add_parser("enumerate", help="all classes for a (rho, delta) pair")
    p.add_argument("rho", type=int)
    p.add_argument("delta", type=int)

    nik = sub.add_parser("nikulin", help="existence/uniqueness criteria").add_subparsers(
        dest="subcommand", required=True
    )
    p = nik.add_parser("check", help="run both criteria for (t+, t-, q)")
    p.add_argument("t_plus", type=int)
    p.add_argument("t_minus", type=int)
    p.add_argument("expr")

    sing = sub.add_parser("sing", help="quasi-homogeneous singularities").add_subparsers(
        dest="subcommand", required=True
    )
    for name, help_ in [
        ("poincare", "Poincare series of the Milnor algebra"),
        ("seifert", "real Seifert block form"),
        ("charpoly", "monodromy characteristic polynomial"),
        ("newton", "Newton polytope and edge lattice count"),
    ]:
        p = sing.add_parser(name, help=help_)
        p.add_argument("weights")
        if name == "seifert":
            p.add_argument("--n", type=int, default=3, help="fiber dimension")

    ver = sub.add_parser("verify", help="machine-check the embedded tables").add_subparsers(
        dest="subcommand", required=True
    )
    ver.add_parser("tables", help="verify every table row and Reclassify block")
    ver.add_parser("propdefn", help="verify the representation lattices per labeling")
    ver.add_parser("c2", help="verify c2 = l(edges) - 3 = 20 - rho")
    ver.add_parser("elliptic", help="isotropy verdicts for the classification lattices")
    return ap


# ---------------------------------------------------------------------------
# subcommand implementations


def cmd_lattice_info(args) -> int:
    parser = make_parser(args.labeling)
    lat = parser.parse(args.expr)
    inv = lattice.invariants(lat)
    form = lattice.discriminant_form(lat)
    _emit(
        {
            "command": "lattice info",
            "expr": args.expr,
            "rank": inv.rank,
            "signature": list(inv.signature),
            "det": inv.det,
            "disc_group": list(form.orders),
            "disc_form": discform.canonical_expr(form),
        },
        args.pretty,
    )
    return 0


def cmd_lattice_isotropic(args) -> int:
    parser = make_parser(args.labeling)
    lat = parser.parse(args.expr)
    res = lattice.find_isotropic(lat, bound=args.bound)
    _emit(
        {
            "command": "lattice isotropic",
            "expr": args.expr,
            "verdict": res.verdict,
            "witness": list(res.witness) if res.witness else None,
            "certificate": res.certificate,
            "bound": res.bound,
        },
        args.pretty,
    )
    return 0


def cmd_qform_sig(args) -> int:
    specs = parse_form_specs(args.expr)
    form = discform.form_from_specs(specs)
    sigma_formula = discform.signature_formula(specs)
    sigma_gauss = discform.signature_gauss(form)
    _emit(
        {
            "command": "qform sig",
            "expr": args.expr,
            "sigma_formula": sigma_formula,
            "sigma_gauss": sigma_gauss,
            "agree": sigma_formula == sigma_gauss,
            "group": list(form.orders),
        },
        args.pretty,
    )
    return 0


def cmd_qform_iso(args) -> int:
    a = parse_form(args.expr1)
    b = parse_form(args.expr2)
    witness = discform.iso_test(a, b)
    _emit(
        {
            "command": "qform iso",
            "expr1": args.expr1,
            "expr2": args.expr2,
            "isomorphic": witness is not None,
            "witness": [list(x) for x in witness] if witness else None,
        },
        args.pretty,
    )
    return 0


def cmd_qform_enumerate(args) -> int:
    classes = discform.enumerate_forms(args.rho, args.delta)
    _emit(
        {
            "command": "qform enumerate",
            "rho": args.rho,
            "delta": args.delta,
            "count": len(classes),
            "classes": [
                {"group": list(f.orders), "form": discform.str_of_specs(s)}
                for f, s in classes
            ],
        },
        args.pretty,
    )
    return 0


def cmd_nikulin_check(args) -> int:
    form = parse_form(args.expr)
    ex = discform.nikulin_exists(args.t_plus, args.t_minus, form)
    un = discform.nikulin_unique(args.t_plus, args.t_minus, form)
    _emit(
        {
            "command": "nikulin check",
            "t_plus": args.t_plus,
            "t_minus": args.t_minus,
            "form": args.expr,
            "exists": bool(ex.verdict),
            "exists_conditions": [{"condition": c, "ok": ok} for c, ok in ex.conditions],
            "uniqueness": un.verdict,
            "uniqueness_conditions": [{"condition": c, "ok": ok} for c, ok in un.conditions],
        },
        args.pretty,
    )
    return 0


def cmd_sing_poincare(args) -> int:
    w = singularity.WeightSystem.parse(args.weights)
    series = singularity.poincare_series(w)
    _emit(
        {
            "command": "sing poincare",
            "weights": str(w),
            "level": series.level,
            "terms": {_frac(a): c for a, c in series.terms()},
            "milnor_number": singularity.milnor_number(w),
        },
        args.pretty,
    )
    return 0


def cmd_sing_seifert(args) -> int:
    w = singularity.WeightSystem.parse(args.weights)
    s = singularity.real_seifert(w, n=args.n)
    consistency = singularity.seifert_consistency(s)
    dims = singularity.eigen_dims(s)
    _emit(
        {
            "command": "sing seifert",
            "weights": str(w),
            "n": s.n,
            "blocks": [
                {"alpha": _frac(b.alpha), "multiplicity": b.multiplicity, "kind": b.kind}
                for b in s.blocks
            ],
            "rank": s.rank(),
            "det_sign": s.determinant_sign(),
            "eigenspace_dims": {"plus_one": dims[0], "minus_one": dims[1]},
            "float_diagnostics": {
                "det": consistency["det"],
                "monodromy_residual": consistency["residual"],
            },
            "consistency_ok": consistency["det_ok"]
            and consistency["monodromy_preserves_intersection"],
        },
        args.pretty,
    )
    return 0


def cmd_sing_charpoly(args) -> int:
    w = singularity.WeightSystem.parse(args.weights)
    cp = singularity.monodromy_char_poly(w)
    _emit(
        {
            "command": "sing charpoly",
            "weights": str(w),
            "level": cp.level,
            "cyclotomic_exponents": {str(d): e for d, e in cp.exponents},
            "degree": cp.degree(),
            "pretty": str(cp),
        },
        args.pretty,
    )
    return 0


def cmd_sing_newton(args) -> int:
    w = singularity.WeightSystem.parse(args.weights)
    points = polytope.enumerate_points(w)
    try:
        poly = polytope.convex_hull(points)
    except polytope.DegenerateDimensionError as exc:
        _emit(
            {
                "command": "sing newton",
                "weights": str(w),
                "points": [list(p) for p in points],
                "degenerate": True,
                "reason": str(exc),
            },
            args.pretty,
        )
        return 0
    _emit(
        {
            "command": "sing newton",
            "weights": str(w),
            "point_count": len(poly.points),
            "vertices": [list(v) for v in poly.vertices],
            "edges": [list(e) for e in poly.edges],
            "edge_lattice_count": polytope.edge_lattice_count(poly),
        },
        args.pretty,
    )
    return 0


def cmd_verify_tables(args) -> int:
    parser = make_parser(args.labeling)
    tables = load_all_tables()
    table_ids = [args.table] if args.table else list(TABLE_IDS)
    out_tables = {}
    ok = True
    for tid in table_ids:
        entries = tables[tid]
        reports = _parallel(
            args.jobs, [(verify_entry, (e, parser, args.bound)) for e in entries]
        )
        rows = []
        for e, rep in zip(entries, reports):
            rows.append(
                {
                    "lattice": e.lattice_expr,
                    "rho": e.rho,
                    "delta": e.delta,
                    "passed": rep.passed,
                    "failed_checks": [c.name for c in rep.checks if not c.ok],
                    "disputed": sorted(e.disputed),
                    "disputed_notes": [
                        {"check": c.name, "ok": c.ok, "detail": c.detail}
                        for c in rep.disputed_notes
                    ],
                }
            )
            ok = ok and rep.passed
        table_report = {"rows": rows, "passed": all(r["passed"] for r in rows)}
        if tid == "reclassify":
            blocks = []
            for (rho, delta), rows_ in sorted(reclassify_blocks(entries).items()):
                br = verify_reclassify_block(rho, delta, rows_, parser)
                blocks.append(
                    {
                        "rho": rho,
                        "delta": delta,
                        "classes": br.enumerated,
                        "printed_classes": br.printed_classes,
                        "patched_classes": br.patched,
                        "duplicate_printed_rows": br.duplicates,
                        "missing_from_catalog": br.missing_from_catalog,
                        "unexpected_in_catalog": br.unexpected_in_catalog,
                        "passed": br.passed,
                    }
                )
                ok = ok and br.passed
            table_report["blocks"] = blocks
        out_tables[tid] = table_report
    _emit({"command": "verify tables", "tables": out_tables, "passed": ok}, args.pretty)
    return 0 if ok else 1


def cmd_verify_propdefn(args) -> int:
    labelings = tuple(E8_LABELINGS) if args.labeling == "all" else (args.labeling,)
    entries = load_propdefn()
    out = []
    ok = True
    for e in entries:
        rep = verify_propdefn(e, labelings=labelings)
        out.append(
            {
                "form": e.form_expr,
                "ambient": e.ambient,
                "disputed": sorted(e.disputed),
                "outcomes": {
                    lab: {"ok": c.ok, "detail": c.detail} for lab, c in rep.outcomes.items()
                },
            }
        )
        if not e.disputed:
            ok = ok and rep.ok_somewhere
    _emit({"command": "verify propdefn", "entries": out, "passed": ok}, args.pretty)
    return 0 if ok else 1


def cmd_verify_c2(args) -> int:
    builtin = [
        ("1/3,1/4,1/4,1/6", 12),
        ("1/4,1/4,1/4,1/4", 1),
        ("1/6,1/6,1/6,1/2", 1),
    ]
    rows = []
    ok = True
    for text, rho in builtin:
        w = singularity.WeightSystem.parse(text)
        l = polytope.edge_lattice_count(polytope.newton_polytope(w))
        rep = singularity.verify_c2_identity(w, rho=rho, l_edges=l)
        rows.append(
            {
                "weights": text,
                "rho": rho,
                "c2": rep.c2,
                "edge_points_minus_3": rep.edge_points_minus_3,
                "twenty_minus_rho": rep.twenty_minus_rho,
                "passed": rep.passed,
            }
        )
        ok = ok and rep.passed
    result = {"command": "verify c2", "builtin": rows}
    if args.data:
        records = load_weights(args.data)
        summary = verify_formula(records)
        result["external"] = {
            "path": args.data,
            "passed": summary.passed,
            "failed": summary.failed,
            "skipped": summary.skipped,
            "failures": summary.failures,
        }
        ok = ok and summary.failed == 0
    result["passed"] = ok
    _emit(result, args.pretty)
    return 0 if ok else 1


def cmd_verify_elliptic(args) -> int:
    parser = make_parser(args.labeling)
    rows = verify_elliptic(parser=parser, bound=args.bound)
    out = [
        {
            "table": r.table_id,
            "rho": r.rho,
            "delta": r.delta,
            "lattice": r.lattice_expr,
            "verdict": r.verdict,
            "witness": list(r.witness) if r.witness else None,
            "expected": r.expected,
            "passed": r.ok,
        }
        for r in rows
    ]
    ok = all(r.ok for r in rows)
    _emit({"command": "verify elliptic", "rows": out, "passed": ok}, args.pretty)
    return 0 if ok else 1


def _parallel(jobs: int, calls):
    """Run (fn, args) pairs, optionally on a thread pool, preserving order."""
    if jobs <= 1:
        return [fn(*a) for fn, a in calls]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=jobs) as tp:
        futures = [tp.submit(fn, *a) for fn, a in calls]
        return [f.result() for f in futures]


HANDLERS = {
    ("lattice", "info"): cmd_lattice_info,
    ("lattice", "isotropic"): cmd_lattice_isotropic,
    ("qform", "sig"): cmd_qform_sig,
    ("qform", "iso"): cmd_qform_iso,
    ("qform", "enumerate"): cmd_qform_enumerate,
    ("nikulin", "check"): cmd_nikulin_check,
    ("sing", "poincare"): cmd_sing_poincare,
    ("sing", "seifert"): cmd_sing_seifert,
    ("sing", "charpoly"): cmd_sing_charpoly,
    ("sing", "newton"): cmd_sing_newton,
    ("verify", "tables"): cmd_verify_tables,
    ("verify", "propdefn"): cmd_verify_propdefn,
    ("verify", "c2"): cmd_verify_c2,
    ("verify", "elliptic"): cmd_verify_elliptic,
}


def main(argv=None) -> int:
    ap = build_argparser()
    args = ap.parse_args(argv)
    handler = HANDLERS[(args.command, args.subcommand)]
    try:
        return handler(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
