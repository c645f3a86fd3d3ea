"""Command-line front end.

Exit codes: 0 verified, 2 hypothesis or parameter violation, 3 verification
failure (a promised bound was not met).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import gf_tower
from .errors import ContainmentFailure, RankMetricError, VerificationFailure
from .gf_tower import GF
from .list_witness import (
    WitnessReport,
    analyze_decodability,
    build_witness,
    gaussian_binomial,
    general_bound,
    johnson_like_radius,
    verify_report,
)
from .report import (
    EXIT_HYPOTHESIS,
    EXIT_OK,
    EXIT_VERIFICATION,
    VERDICT_EXIT,
    bundled_recipes,
    claims_csv,
    code_from,
    dumps,
    execute_claims,
    field_from,
    load_recipe,
    plot_list_sizes,
    run_recipe,
    validate,
    witness_document,
    witness_spec_from,
    write_atomic,
)
from .rm_codes import DEFAULT_BUDGET, CodeDescriptor, build_code, min_distance, singleton_check
from .sigma_poly import SigmaPoly, adjoint, has_max_kernel, is_subspace_poly
from .subspace_families import FamilySpec, generate
from .subspace_lift import verify_lift_ball

FORCED_MAX_ORDER = 1 << 26
FORCED_BUDGET = 1 << 62


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _emit(doc, out: str | None) -> None:
    text = dumps(doc) if not isinstance(doc, str) else doc
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _budget(args) -> int:
    return FORCED_BUDGET if getattr(args, "force", False) else DEFAULT_BUDGET


def _field(args) -> GF:
    return GF.get(args.p, args.m, args.ell, args.s)


def _add_field_args(p: argparse.ArgumentParser, m_required: bool = True) -> None:
    p.add_argument("--p", type=int, required=True, help="characteristic")
    p.add_argument("--m", type=int, required=m_required, help="extension degree over GF(q)")
    p.add_argument("--ell", type=int, default=1, help="q = p^ell")
    p.add_argument("--s", type=int, default=1, help="sigma = x -> x^(q^s)")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_field(args) -> int:
    F = _field(args)
    doc = {"params": F.to_dict(), "q": F.q, "order": F.order, "generator": F.generator,
           "subfields": [r for r in range(1, F.m + 1) if F.m % r == 0]}
    if args.element is not None:
        a = args.element
        doc["element"] = {"value": a, "coords": list(F.coords(a)), "log": F.log(a) if a else None,
                          "sigma": F.frob(a, 1), "inverse": F.inv(a) if a else None,
                          "trace": F.rel_trace(a, 1), "norm": F.rel_norm(a, 1)}
    _emit(doc, args.out)
    return EXIT_OK


def cmd_poly(args) -> int:
    F = _field(args)
    f = SigmaPoly(F, _ints(args.coeffs))
    ker = f.kernel()
    doc = {"coeffs": list(f.coeffs), "sigma_degree": f.degree, "kernel_dim": f.kernel_dim(),
           "kernel_basis": list(ker.fq_basis()) if hasattr(ker, "fq_basis") else None,
           "max_kernel": has_max_kernel(f), "subspace_polynomial": is_subspace_poly(f),
           "adjoint": list(adjoint(f).coeffs)}
    if args.eval is not None:
        doc["eval"] = {str(x): f.eval_int(x) for x in _ints(args.eval)}
    _emit(doc, args.out)
    return EXIT_OK


def cmd_family(args) -> int:
    spec = FamilySpec(args.kind, args.p, args.n, ell=args.ell, m=args.m, s=args.s, t=args.t,
                      k=args.k, r=args.r, g=args.g, rank=args.rank, adjoint=args.adjoint)
    fam = generate(spec)
    doc = {"spec": spec.to_dict(), "expected_size": fam.expected_size, "actual_size": fam.actual_size,
           "size_ok": fam.size_ok(), "sigma_degree": fam.sigma_degree, "note": fam.note}
    if args.check:
        doc["all_max_kernel"] = fam.all_max_kernel()
        doc["all_subspace_polynomials"] = fam.all_subspace_polys()
    if args.members:
        doc["members"] = [list(f.coeffs) for f in fam.members]
    _emit(doc, args.out)
    ok = fam.size_ok() and (not args.check or doc["all_max_kernel"])
    return EXIT_OK if ok else EXIT_VERIFICATION


def _code_from_args(args):
    if args.recipe:
        rec = load_recipe(args.recipe)
        F = field_from(rec["field"])
        return code_from(F, rec["code"], rec.get("points"))
    F = _field(args)
    d = {"kind": args.kind}
    for name in ("k", "h", "j", "eta", "twist"):
        v = getattr(args, name)
        if v is not None:
            d[name] = v
    pts = _ints(args.points) if args.points else {"subfield_basis": args.n or F.m, "beta": args.beta}
    return code_from(F, d, pts)


def cmd_code(args) -> int:
    code = _code_from_args(args)
    d = min_distance(code, _budget(args))
    sing = singleton_check(code, d)
    doc = {"descriptor": code.descriptor.to_dict(), "points": list(code.points), "n": code.n, "m": code.m,
           "size": code.size, "dim_over_p": code.dim_p, "d": d, "singleton": sing.to_dict(),
           "mrd_condition": code.mrd_condition, "eta_condition": code.eta_condition}
    _emit(json.loads(json.dumps(doc, default=str)), args.out)
    return EXIT_OK


def cmd_witness_build(args) -> int:
    rec = load_recipe(args.spec)
    F = field_from(rec["field"])
    code = code_from(F, rec["code"], rec.get("points"))
    wd = dict(rec["witness"])
    if args.mode:
        wd["mode"] = args.mode
    spec = witness_spec_from(code, wd)
    rep = build_witness(spec, _budget(args))
    ver = verify_report(rep, code, exhaustive=args.exhaustive, budget=_budget(args))
    doc = witness_document(rep, ver, verify_lift_ball(rep, F).to_dict())
    validate(doc, "witness")
    _emit(doc, args.out)
    return EXIT_OK if rep.verified and ver["verified"] else EXIT_VERIFICATION


def cmd_witness_verify(args) -> int:
    doc = json.loads(Path(args.report).read_text())
    validate(doc, "witness")
    rep = WitnessReport.from_dict(doc)
    code_d = doc["spec"]["code"]
    code = build_code(CodeDescriptor.from_dict(code_d["descriptor"]), code_d["points"])
    ver = verify_report(rep, code, exhaustive=args.exhaustive, budget=_budget(args))
    _emit(ver, args.out)
    return EXIT_OK if ver["verified"] else EXIT_VERIFICATION


def cmd_bounds(args) -> int:
    if args.which == "johnson":
        r = johnson_like_radius(args.m, args.n, args.h, Fraction(args.eps))
        doc = r.to_dict()
    elif args.which == "gaussian":
        doc = {"n": args.n, "r": args.r, "q": args.q, "value": gaussian_binomial(args.n, args.r, args.q)}
    else:
        doc = {"n": args.n, "tau": args.tau, "h": args.h, "q": args.q, "m": args.m,
               "value": general_bound(args.n, args.tau, args.h, args.q, args.m)}
    _emit(doc, args.out)
    return EXIT_OK


def cmd_lift(args) -> int:
    doc = json.loads(Path(args.report).read_text())
    rep = WitnessReport.from_dict(doc)
    res = verify_lift_ball(rep)
    n, m = len(rep.w), CodeDescriptor.from_dict(doc["spec"]["code"]["descriptor"]).field.m
    out = {"lifted_ambient_dim": n + m, "lifted_dim": n, "rank_radius": rep.radius,
           "rank_list_size": rep.list_size, **res.to_dict()}
    _emit(out, args.out)
    return EXIT_OK if res.passed else EXIT_VERIFICATION


def cmd_analyze(args) -> int:
    code = _code_from_args(args)
    budget = _budget(args)
    claims = analyze_decodability(code, budget=budget)
    rows, ok = execute_claims(code, claims, args.exhaustive, budget) if args.execute else (
        [c.to_dict() for c in claims], True)
    if args.format == "csv":
        _emit(claims_csv(rows), args.out)
    else:
        _emit({"claims": rows}, args.out)
    return EXIT_OK if ok else EXIT_VERIFICATION


def cmd_run(args) -> int:
    if args.list:
        sys.stdout.write("\n".join(bundled_recipes()) + "\n")
        return EXIT_OK
    if not args.recipe:
        raise SystemExit("run: a recipe name or path is required (see --list)")
    recipe = load_recipe(args.recipe)
    doc = run_recipe(recipe, _budget(args))
    validate(doc, "experiment")
    name = recipe.get("name", Path(args.recipe).stem)
    out_dir = Path(args.out_dir)
    write_atomic(out_dir / f"{name}.json", dumps(doc))
    write_atomic(out_dir / f"{name}_claims.csv", claims_csv(doc.get("claims", [])))
    fig = None if args.no_figure else plot_list_sizes(doc, out_dir / f"{name}_list_sizes.png")
    if args.format == "csv":
        sys.stdout.write(claims_csv(doc.get("claims", [])))
    else:
        summary = {"recipe": name, "verdict": doc["verdict"], "error": doc["error"],
                   "report": str(out_dir / f"{name}.json"), "figure": str(fig) if fig else None}
        sys.stdout.write(dumps(summary))
    if doc["error"]:
        sys.stderr.write(f"{doc['error']['type']}: {doc['error']['message']}\n")
    return VERDICT_EXIT[doc["verdict"]]


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rmwitness",
                                 description="Rank-metric list-decoding witnesses at desk scale.")
    ap.add_argument("--force", action="store_true",
                    help="lift the desk-scale guards (field size 2^20, exhaustive scans 2^24)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="field parameters and element arithmetic")
    _add_field_args(p)
    p.add_argument("--element", type=int, help="inspect one element (int encoding)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("poly", help="kernel, adjoint and evaluation of a sigma-polynomial")
    _add_field_args(p)
    p.add_argument("--coeffs", required=True, help="coefficients a_0,a_1,... as field ints")
    p.add_argument("--eval", help="points to evaluate at")
    p.add_argument("--out")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("family", help="enumerate a subspace-polynomial family")
    p.add_argument("--kind", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--s", type=int, default=1)
    for name in ("t", "k", "r", "g", "rank"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--adjoint", action="store_true", help="use shifted adjoints of the members")
    p.add_argument("--check", action="store_true", help="brute-force the maximum-kernel property")
    p.add_argument("--members", action="store_true", help="list member coefficients")
    p.add_argument("--out")
    p.set_defaults(func=cmd_family)

    def code_args(p):
        p.add_argument("--recipe", help="take field and code from a recipe")
        p.add_argument("--p", type=int)
        p.add_argument("--m", type=int)
        p.add_argument("--ell", type=int, default=1)
        p.add_argument("--s", type=int, default=1)
        p.add_argument("--kind", default="Gabidulin")
        for name in ("k", "h", "j", "eta", "twist", "n"):
            p.add_argument(f"--{name}", type=int)
        p.add_argument("--beta", type=int, default=1, help="points span beta*GF(q^n)")
        p.add_argument("--points", help="explicit evaluation points")

    p = sub.add_parser("code", help="build a code and brute-force its minimum distance")
    code_args(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("witness", help="build or verify witness reports")
    wsub = p.add_subparsers(dest="action", required=True)
    b = wsub.add_parser("build", help="construct a witness from a recipe or spec file")
    b.add_argument("--spec", required=True, help="recipe name or JSON path with field, code and witness")
    b.add_argument("--mode", choices=["GeneralBasis", "SubfieldBasis", "SubfieldBasisHat"])
    b.add_argument("--exhaustive", action="store_true")
    b.add_argument("--out")
    b.set_defaults(func=cmd_witness_build)
    v = wsub.add_parser("verify", help="re-check a witness report")
    v.add_argument("report")
    v.add_argument("--exhaustive", action="store_true")
    v.add_argument("--out")
    v.set_defaults(func=cmd_witness_verify)

    p = sub.add_parser("bounds", help="radius and list-size calculators")
    bsub = p.add_subparsers(dest="which", required=True)
    j = bsub.add_parser("johnson", help="first radius past the Johnson-like threshold")
    j.add_argument("--m", type=int, required=True)
    j.add_argument("--n", type=int, required=True)
    j.add_argument("--h", type=int, required=True)
    j.add_argument("--eps", default="0", help="rational 0 <= eps < 1")
    g = bsub.add_parser("gaussian", help="Gaussian binomial [n r]_q")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--r", type=int, required=True)
    g.add_argument("--q", type=int, required=True)
    lb = bsub.add_parser("list", help="ceil([n n-tau]_q / q^(m(n-tau-h)))")
    for name in ("n", "tau", "h", "q", "m"):
        lb.add_argument(f"--{name}", type=int, required=True)
    for sp in (j, g, lb):
        sp.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("lift", help="lift a witness report and check the subspace-ball injection")
    p.add_argument("report")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("analyze", help="evaluate theorem hypotheses on a code")
    code_args(p)
    p.add_argument("--execute", action="store_true", help="run every emitted witness recipe")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("run", help="replay a recipe: JSON report, claims CSV and list-size figure")
    p.add_argument("recipe", nargs="?", help="bundled recipe name or JSON path")
    p.add_argument("--list", action="store_true", help="list bundled recipes")
    p.add_argument("--out-dir", default="rmwitness_out")
    p.add_argument("--format", choices=["json", "csv"], default="json", help="what to print on stdout")
    p.add_argument("--no-figure", action="store_true")
    p.set_defaults(func=cmd_run)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.force:
        gf_tower.MAX_ORDER = FORCED_MAX_ORDER
    try:
        return args.func(args)
    except (ContainmentFailure, VerificationFailure) as exc:
        sys.stderr.write(f"verification failure: {exc}\n")
        return EXIT_VERIFICATION
    except RankMetricError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_HYPOTHESIS
    except FileNotFoundError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
