"""Experiment recipes, report assembly and file emission.

A recipe names a field, a code, optionally a witness construction, and a
verification level.  :func:`run_recipe` replays it into a JSON-ready report
whose only non-deterministic content sits under ``"timestamps"``.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
import time
from datetime import datetime, timezone
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from .errors import (
    BudgetExceeded,
    ContainmentFailure,
    HypothesisViolation,
    RankMetricError,
    VerificationFailure,
)
from .gf_tower import GF
from .list_witness import (
    WitnessReport,
    WitnessSpec,
    analyze_decodability,
    build_witness,
    gaussian_binomial,
    johnson_like_radius,
    unique_decoding_control,
    unique_decoding_radius,
    verify_report,
)
from .rm_codes import (
    DEFAULT_BUDGET,
    AdditiveMap,
    CodeDescriptor,
    EvalCode,
    build_code,
    min_distance,
    singleton_check,
    subfield_points,
)
from .subspace_families import FamilySpec, generate
from .subspace_lift import lift_code, verify_lift_ball

SCHEMA_VERSION = "1.0"
EXIT_OK, EXIT_HYPOTHESIS, EXIT_VERIFICATION = 0, 2, 3
VERDICT_EXIT = {"verified": EXIT_OK, "hypothesis_violation": EXIT_HYPOTHESIS,
                "verification_failure": EXIT_VERIFICATION}
LIFT_PAIR_LIMIT = 1 << 16


# ---------------------------------------------------------------------------
# bundled data
# ---------------------------------------------------------------------------

def _data(kind: str):
    return resources.files("rmwitness").joinpath(kind)


def bundled_recipes() -> list[str]:
    return sorted(p.name[:-5] for p in _data("recipes").iterdir() if p.name.endswith(".json"))


def load_recipe(name_or_path: str) -> dict:
    """A bundled recipe by name, or a JSON file by path."""
    path = Path(name_or_path)
    if path.suffix == ".json" or path.exists():
        return json.loads(path.read_text())
    res = _data("recipes").joinpath(f"{name_or_path}.json")
    if not res.is_file():
        raise FileNotFoundError(f"no bundled recipe {name_or_path!r}; have {bundled_recipes()}")
    return json.loads(res.read_text())


def load_schema(name: str) -> dict:
    return json.loads(_data("schemas").joinpath(f"{name}.schema.json").read_text())


def validate(doc: dict, name: str) -> None:
    """Raise ``jsonschema.ValidationError`` if ``doc`` does not match the named schema."""
    jsonschema.validate(doc, load_schema(name))


# ---------------------------------------------------------------------------
# recipe parsing
# ---------------------------------------------------------------------------

def field_from(d: dict) -> GF:
    return GF.get(d["p"], d["m"], d.get("ell", 1), d.get("s", 1))


def _element(F: GF, v) -> int:
    if v == "generator":
        return F.generator
    return int(v)


def points_from(F: GF, d, n: int | None = None) -> list[int]:
    """``{"subfield_basis": n, "beta": b}`` or an explicit list of field elements."""
    if isinstance(d, list):
        return [int(x) for x in d]
    if d is None:
        return subfield_points(F, n if n is not None else F.m)
    if "explicit" in d:
        return [int(x) for x in d["explicit"]]
    return subfield_points(F, d.get("subfield_basis", n or F.m), _element(F, d.get("beta", 1)))


def code_from(F: GF, d: dict, points=None) -> EvalCode:
    d = dict(d)
    pts = d.pop("points", points)
    n = d.pop("n", None)
    if "eta" in d:
        d["eta"] = _element(F, d["eta"])
    for name in ("f1", "f2"):
        if name in d:
            d[name] = AdditiveMap.from_dict(d[name])
    desc = CodeDescriptor(field=F.params, **d)
    return build_code(desc, points_from(F, pts, n))


def family_from(code: EvalCode, d: dict) -> FamilySpec:
    F = code.field
    full = {"p": F.p, "n": code.n, "ell": F.ell, "m": F.m, "s": F.s}
    full.update(d)
    return FamilySpec.from_dict(full)


def witness_spec_from(code: EvalCode, d: dict) -> WitnessSpec:
    d = dict(d)
    fam = d.pop("family", None)
    if "beta" in d:
        d["beta"] = _element(code.field, d["beta"])
    return WitnessSpec(code=code, family=family_from(code, fam) if fam else None, **d)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------

def _error_dict(exc: Exception) -> dict:
    out = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, HypothesisViolation):
        out["hypothesis"] = exc.hypothesis
    return out


def execute_claims(code: EvalCode, claims, exhaustive: bool, budget: int) -> tuple[list[dict], bool]:
    """Run every claim's witness recipe; returns claim rows and whether all verified."""
    rows, ok = [], True
    for cl in claims:
        row = cl.to_dict()
        if cl.witness_recipe is not None:
            try:
                rep = build_witness(cl.witness_recipe, budget)
                ver = verify_report(rep, code, exhaustive=exhaustive and code.size <= budget, budget=budget)
                row["executed"] = {"verified": rep.verified and ver["verified"], "list_size": rep.list_size,
                                   "bound": rep.bound, "radius": rep.radius,
                                   "ball_size": ver.get("ball_size")}
            except RankMetricError as exc:
                row["executed"] = {"verified": False, "error": _error_dict(exc)}
            ok = ok and row["executed"]["verified"]
        rows.append(row)
    return rows, ok


def run_recipe(recipe: dict, budget: int = DEFAULT_BUDGET) -> dict:
    """Replay a recipe into a report dict (see ``schemas/experiment.schema.json``)."""
    started = datetime.now(timezone.utc)
    t0 = time.perf_counter()
    exhaustive = recipe.get("verification", "constructive") == "exhaustive"
    out: dict = {"schema_version": SCHEMA_VERSION, "report_type": "experiment",
                 "recipe": recipe, "verdict": "verified", "error": None}
    counters = {"codewords": 0, "ball_scans": 0, "family_members": 0, "lift_pairs": 0}
    try:
        F = field_from(recipe["field"])
        out["field"] = F.to_dict()
        code = code_from(F, recipe["code"], recipe.get("points"))
        d = min_distance(code, budget)
        sing = singleton_check(code, d)
        counters["codewords"] = code.size
        out["code"] = {"descriptor": code.descriptor.to_dict(), "points": list(code.points),
                       "n": code.n, "m": code.m, "size": code.size, "d": d,
                       "singleton": sing.to_dict(), "mrd_condition": code.mrd_condition}
        bounds: dict = {"unique_decoding_radius": unique_decoding_radius(d),
                        "singleton_log_q": sing.bound_log_q}
        out["bounds"] = bounds
        out["family"] = out["witness"] = out["verification"] = out["lift"] = None
        out["unique_decoding"] = None
        wd = recipe.get("witness")
        if wd is not None:
            spec = witness_spec_from(code, wd)
            h = spec.h
            try:
                bounds["johnson"] = johnson_like_radius(code.m, code.n, h, recipe.get("eps", 0)).to_dict()
            except RankMetricError as exc:
                bounds["johnson"] = {"error": _error_dict(exc)}
            if spec.tau is not None:
                bounds["gaussian_binomial"] = {"n": code.n, "r": code.n - spec.tau, "q": F.q,
                                               "value": gaussian_binomial(code.n, code.n - spec.tau, F.q)}
            if spec.family is not None:
                fam = generate(spec.family)
                counters["family_members"] = fam.actual_size
                out["family"] = {"spec": spec.family.to_dict(), "expected_size": fam.expected_size,
                                 "actual_size": fam.actual_size, "all_max_kernel": fam.all_max_kernel()}
            rep = build_witness(spec, budget)
            bounds["witness_bound"] = rep.bound
            out["witness"] = rep.to_dict()
            ver = verify_report(rep, code, exhaustive=exhaustive, budget=budget)
            out["verification"] = ver
            if exhaustive:
                counters["ball_scans"] += 1
                sizes = unique_decoding_control(code, d, samples=20, seed=recipe.get("seed", 0), budget=budget)
                counters["ball_scans"] += len(sizes)
                out["unique_decoding"] = {"radius": unique_decoding_radius(d), "ball_sizes": sizes,
                                          "all_one": all(s == 1 for s in sizes)}
            lb = verify_lift_ball(rep, F)
            counters["lift_pairs"] += len(rep.words)
            out["lift"] = lb.to_dict()
            if not (rep.verified and ver["verified"] and lb.passed
                    and (out["unique_decoding"] is None or out["unique_decoding"]["all_one"])):
                out["verdict"] = "verification_failure"
        if recipe.get("lift_code") and code.size * (code.size - 1) // 2 <= LIFT_PAIR_LIMIT:
            lc = lift_code(code, budget)
            counters["lift_pairs"] += lc.pairs
            out["lifted_code"] = lc.to_dict()
            if not lc.law_holds:
                out["verdict"] = "verification_failure"
        if recipe.get("analyze", True):
            rows, ok = execute_claims(code, analyze_decodability(code, d, budget), exhaustive, budget)
            out["claims"] = rows
            if not ok:
                out["verdict"] = "verification_failure"
        else:
            out["claims"] = []
    except (ContainmentFailure, VerificationFailure) as exc:
        out["verdict"] = "verification_failure"
        out["error"] = _error_dict(exc)
    except (RankMetricError, KeyError, TypeError) as exc:
        if isinstance(exc, BudgetExceeded):
            exc = BudgetExceeded(f"{exc} (use --force to lift desk-scale guards)")
        out["verdict"] = "hypothesis_violation"
        out["error"] = _error_dict(exc)
    out["counters"] = counters
    out["timestamps"] = {"started_utc": started.isoformat(),
                         "finished_utc": datetime.now(timezone.utc).isoformat(),
                         "wall_clock_s": round(time.perf_counter() - t0, 6)}
    return _jsonable(out)


def witness_document(report: WitnessReport, verification: dict | None = None,
                     lift: dict | None = None) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "report_type": "witness", **report.to_dict()}
    doc["verification"] = verification
    doc["lift"] = lift
    return _jsonable(doc)


def strip_timestamps(doc: dict) -> dict:
    return {k: v for k, v in doc.items() if k != "timestamps"}


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------

def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def write_atomic(path: str | os.PathLike, text: str | bytes) -> Path:
    """Write via a temporary file in the same directory and rename into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    mode = "wb" if isinstance(text, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, mode) as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


CLAIM_COLUMNS = ["theorem_id", "applicable", "radius_threshold", "at_all", "failed_hypothesis",
                 "recipe_mode", "executed_verified", "list_size", "bound", "ball_size", "note"]


def claims_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CLAIM_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        ex = r.get("executed") or {}
        w.writerow({
            "theorem_id": r["theorem_id"],
            "applicable": r["applicable"],
            "radius_threshold": r["radius_threshold"],
            "at_all": r["at_all"],
            "failed_hypothesis": r["failed_hypothesis"] or "",
            "recipe_mode": (r["witness_recipe"] or {}).get("mode", ""),
            "executed_verified": ex.get("verified", ""),
            "list_size": ex.get("list_size", ""),
            "bound": ex.get("bound", ""),
            "ball_size": ex.get("ball_size", "") if ex.get("ball_size") is not None else "",
            "note": r["note"],
        })
    return buf.getvalue()


def list_size_rows(doc: dict) -> list[tuple[str, int, int, int | None]]:
    """``(label, list size, bound, exhaustive ball size)`` for the witness and each executed claim."""
    rows = []
    if doc.get("witness"):
        ver = doc.get("verification") or {}
        rows.append(("recipe witness", doc["witness"]["list_size"], doc["witness"]["bound"],
                     ver.get("ball_size")))
    for r in doc.get("claims", []):
        ex = r.get("executed")
        if ex and "list_size" in ex:
            rows.append((r["theorem_id"], ex["list_size"], ex["bound"], ex.get("ball_size")))
    return rows


def plot_list_sizes(doc: dict, path: str | os.PathLike) -> Path | None:
    """Grouped bars of bound, constructed list size and exhaustive ball size per witness."""
    rows = list_size_rows(doc)
    if not rows:
        return None
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = [r[0] for r in rows]
    x = range(len(rows))
    width = 0.27
    fig, ax = plt.subplots(figsize=(max(6.0, 1.1 * len(rows) + 2), 4.2))
    ax.bar([i - width for i in x], [r[2] for r in rows], width, label="bound", color="0.7")
    ax.bar(list(x), [r[1] for r in rows], width, label="list size", color="tab:blue")
    balls = [r[3] if r[3] is not None else 0 for r in rows]
    if any(balls):
        ax.bar([i + width for i in x], balls, width, label="|C n B(w)| (exhaustive)", color="tab:orange")
    ax.set_xticks(list(x))
    ax.set_xticklabels(labels, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("codewords")
    ax.set_ylim(0, 1.3 * max(max(r[1], r[2], r[3] or 0) for r in rows))
    code = doc.get("code") or {}
    ax.set_title(f"{doc['recipe'].get('name', 'recipe')}: n={code.get('n')}, m={code.get('m')}, d={code.get('d')}",
                 fontsize=10)
    ax.legend(fontsize=8, frameon=False, ncol=3, loc="upper center")
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    buf = io.BytesIO()
    fig.savefig(buf, format="png", dpi=120, metadata={"Software": None})
    plt.close(fig)
    return write_atomic(path, buf.getvalue())

