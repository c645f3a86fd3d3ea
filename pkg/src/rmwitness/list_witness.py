"""Witness words with many codewords in a small rank-metric ball.

Three constructions share one assembly step: a set ``S`` of sigma-polynomials
with kernels of the right dimension inside the span of the evaluation points,
pairwise differences lying in a Gabidulin-type subcode.  With ``R`` the
canonically first member, ``w = c_R`` lies outside the code and every
``c_{R-P}`` (``P`` in ``S``) is a codeword at distance ``rk(c_P)`` from ``w``.

* ``GeneralBasis``: ``S`` is the largest group of subspace polynomials (kernel in the
  point span) agreeing on their top coefficients, raised to ``sigma^j``.
* ``SubfieldBasis``: points form a GF(q)-basis of ``beta GF(q^n)`` and ``S`` comes
  from an explicit family with support ``{0..h-1, l}``, monic at ``l``.
* ``SubfieldBasisHat``: as ``SubfieldBasis`` with support ``{0} u {l-h+1..l}`` and the
  coefficient of ``x`` equal to 1.

Every hypothesis the construction consumes is a hard gate raising
:class:`HypothesisViolation` with the inequality named.
"""

from __future__ import annotations

import dataclasses
import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    BudgetExceeded,
    ContainmentFailure,
    FamilyNotInPol,
    HypothesisViolation,
    NegativeRadicand,
    ParamViolation,
    RankMetricError,
)
from .gf_tower import GF
from .rm_codes import (
    DEFAULT_BUDGET,
    cj_mbound,
    CodeDescriptor,
    EvalCode,
    build_code,
    contains_monomials,
    contains_power_gabidulin,
    is_subfield_basis,
    min_distance,
    rank_distance,
    rank_weight,
)
from .sigma_poly import SigmaPoly, has_max_kernel
from .subspace_families import (
    FamilySpec,
    gaussian_binomial,
    generate,
    is_power_of,
    p_sum,
    pigeonhole_family,
    scale_transform,
    scale_transform_at_x,
)

__all__ = [
    "gaussian_binomial", "johnson_like_radius", "JohnsonRadius", "WitnessSpec",
    "WitnessReport", "build_witness", "build_witness_general", "build_witness_subfield",
    "build_witness_subfield_hat", "verify_report", "ball_count", "analyze_decodability",
    "Claim", "unique_decoding_radius", "unique_decoding_control", "check_hypotheses",
]

MODES = ("GeneralBasis", "SubfieldBasis", "SubfieldBasisHat")
MODE_ALIASES = {"general": "GeneralBasis", "subfield": "SubfieldBasis", "subfield_hat": "SubfieldBasisHat"}
PIGEONHOLE_LIMIT = 200_000  # subspaces enumerated by the general construction


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JohnsonRadius:
    value: float
    first_integer: int
    radicand: Fraction

    def to_dict(self) -> dict:
        return {"value": self.value, "first_integer": self.first_integer, "radicand": str(self.radicand)}


def johnson_like_radius(m: int, n: int, h: int, eps=0) -> JohnsonRadius:
    """``(m+n)/2 - sqrt((m+n)^2/4 - m (n - h + 1 - eps))`` and the first integer radius above it.

    The ceiling is decided exactly with rationals; ``eps`` may be any
    rational-convertible value (``Fraction``, int, decimal string).
    """
    eps = Fraction(eps)
    if not 0 <= eps < 1:
        raise ParamViolation(f"need 0 <= eps < 1 (eps={eps})")
    if not 0 <= h <= n <= m:
        raise ParamViolation(f"need 0 <= h <= n <= m (h={h}, n={n}, m={m})")
    a = Fraction(m + n, 2)
    rad = a * a - m * (n - h + 1 - eps)
    if rad < 0:
        raise NegativeRadicand(f"(m+n)^2/4 - m(n-h+1-eps) = {rad} < 0")
    value = float(a) - math.sqrt(rad)
    # smallest integer tau with a - tau <= sqrt(rad)
    tau = math.floor(value) - 1
    while not (a - tau <= 0 or (a - tau) ** 2 <= rad):
        tau += 1
    return JohnsonRadius(value, tau, rad)


def unique_decoding_radius(d: int) -> int:
    return (d - 1) // 2


def general_bound(n: int, tau: int, h: int, q: int, m: int) -> int:
    """``ceil([n, n-tau]_q / q^(m (n - tau - h)))``."""
    num = gaussian_binomial(n, n - tau, q)
    e = m * (n - tau - h)
    if e >= 0:
        return -(-num // q ** e)
    return num * q ** (-e)


# ---------------------------------------------------------------------------
# specs and reports
# ---------------------------------------------------------------------------

@dataclass
class WitnessSpec:
    code: EvalCode
    mode: str
    h: int
    j: int = 0
    tau: int | None = None
    l: int | None = None
    family: FamilySpec | None = None
    beta: int | None = None
    d: int | None = None

    def __post_init__(self) -> None:
        self.mode = MODE_ALIASES.get(self.mode, self.mode)
        if self.mode not in MODES:
            raise ParamViolation(f"unknown witness mode {self.mode!r}")

    def params_dict(self) -> dict:
        d = {"mode": self.mode, "h": self.h, "j": self.j}
        for name in ("tau", "l", "beta", "d"):
            v = getattr(self, name)
            if v is not None:
                d[name] = v
        if self.family is not None:
            d["family"] = self.family.to_dict()
        return d

    def to_dict(self) -> dict:
        d = self.params_dict()
        d["code"] = {"descriptor": self.code.descriptor.to_dict(), "points": list(self.code.points)}
        return d

    @classmethod
    def from_dict(cls, d: dict, code: EvalCode | None = None) -> "WitnessSpec":
        d = dict(d)
        cd = d.pop("code", None)
        if code is None:
            if cd is None:
                raise ParamViolation("witness spec needs a code")
            code = build_code(CodeDescriptor.from_dict(cd["descriptor"]), cd["points"])
        fam = d.pop("family", None)
        return cls(code=code, family=FamilySpec.from_dict(fam) if fam else None, **d)


@dataclass
class WitnessReport:
    mode: str
    w: tuple[int, ...]
    radius: int
    words: list[tuple[int, ...]]
    bound: int
    verified: bool
    d: int
    checks: dict
    trace: dict
    spec: dict
    exhaustive: dict | None = None

    @property
    def list_size(self) -> int:
        return len(self.words)

    def to_dict(self) -> dict:
        out = {
            "mode": self.mode,
            "radius": self.radius,
            "d": self.d,
            "bound": self.bound,
            "list_size": self.list_size,
            "verified": self.verified,
            "w": list(self.w),
            "list": [list(c) for c in self.words],
            "checks": self.checks,
            "construction_trace": self.trace,
            "spec": self.spec,
        }
        if self.exhaustive is not None:
            out["exhaustive"] = self.exhaustive
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "WitnessReport":
        return cls(mode=d["mode"], w=tuple(d["w"]), radius=d["radius"],
                   words=[tuple(c) for c in d["list"]], bound=d["bound"], verified=d["verified"],
                   d=d["d"], checks=d["checks"], trace=d["construction_trace"], spec=d["spec"],
                   exhaustive=d.get("exhaustive"))


# ---------------------------------------------------------------------------
# gates
# ---------------------------------------------------------------------------

def _gate(cond: bool, hypothesis: str, detail: str = "") -> None:
    if not cond:
        raise HypothesisViolation(hypothesis, detail)


def _distance(spec: WitnessSpec, budget: int) -> int:
    if spec.d is not None:
        return spec.d
    code = spec.code
    if code.min_distance_cache is None:
        min_distance(code, budget)
    return code.min_distance_cache


def _gate_subfield_common(spec: WitnessSpec, d: int) -> tuple[int, int]:
    code = spec.code
    F = code.field
    n, m, l, h, j = code.n, code.m, spec.l, spec.h, spec.j
    _gate(l is not None, "l is given")
    _gate(m % n == 0, "n | m", f"n={n}, m={m}")
    ok, beta0 = is_subfield_basis(F, code.points, n)
    _gate(ok, "points form an F_q-basis of beta*F_{q^n}")
    beta = spec.beta if spec.beta is not None else beta0
    _gate(beta != 0 and all(F.in_subfield(F.div(a, beta), n) for a in code.points),
          "points lie in beta*F_{q^n}", f"beta={beta}")
    ud = unique_decoding_radius(d)
    _gate(n - d + 1 <= l <= n - ud - 1, "n-d+1 <= l <= n-floor((d-1)/2)-1", f"n={n}, d={d}, l={l}")
    _gate(h >= 1 and l >= h, "1 <= h <= l", f"h={h}, l={l}")
    _gate(j >= 0, "j >= 0", f"j={j}")
    return ud, beta


def _family_members(spec: WitnessSpec) -> list[SigmaPoly]:
    code = spec.code
    F = code.field
    fs = spec.family
    _gate(fs is not None, "a family is given")
    _gate((fs.p, fs.ell, fs.s) == (F.p, F.ell, F.s),
          "family field matches the code field", f"family (p,ell,s)=({fs.p},{fs.ell},{fs.s})")
    _gate(fs.n == code.n, "family level equals the code length n", f"family n={fs.n}, n={code.n}")
    if fs.m != F.m:
        fs = dataclasses.replace(fs, m=F.m)
    return generate(fs).members


def _in_level(F: GF, f: SigmaPoly, n: int) -> bool:
    return all(F.in_subfield(c, n) for c in f.coeffs if c)


def check_pol(f: SigmaPoly, n: int, l: int, h: int) -> bool:
    """Membership in ``x^(sigma^l) + a_(h-1) x^(sigma^(h-1)) + ... + a_0 x``, coefficients in GF(q^n)."""
    allowed = set(range(h)) | {l}
    return (f.degree == l and f.coeff(l) == 1 and set(f.support) <= allowed
            and _in_level(f.field, f, n))


def check_pol_hat(f: SigmaPoly, n: int, l: int, h: int) -> bool:
    """Membership in ``a_l x^(sigma^l) + ... + a_(l-h+1) x^(sigma^(l-h+1)) + x``, coefficients in GF(q^n)."""
    allowed = {0} | set(range(l - h + 1, l + 1))
    return (f.degree <= l and f.coeff(0) == 1 and set(f.support) <= allowed
            and _in_level(f.field, f, n))


def _difference_exponents(members: Sequence[SigmaPoly], fixed: int) -> set[int]:
    return {i for f in members for i in f.support if i != fixed}


def check_hypotheses(spec: WitnessSpec, budget: int = DEFAULT_BUDGET) -> int:
    """Run every gate of the spec's construction without building; returns ``d``."""
    d = _distance(spec, budget)
    code = spec.code
    n, m, h, j = code.n, code.m, spec.h, spec.j
    if spec.mode == "GeneralBasis":
        tau = spec.tau
        _gate(tau is not None, "tau is given")
        ud = unique_decoding_radius(d)
        _gate(ud + 1 <= tau <= d - 1, "floor((d-1)/2)+1 <= tau <= d-1", f"d={d}, tau={tau}")
        _gate(j >= 0 and j < tau, "0 <= j < tau", f"j={j}, tau={tau}")
        _gate(h >= 1 and h <= n - tau, "1 <= h <= n-tau (agreement count n-h-tau+1 >= 1)",
              f"h={h}, n={n}, tau={tau}")
        _gate(j <= m - h, "j <= m-h", f"j={j}, m={m}, h={h}")
        _gate(contains_power_gabidulin(code, h, j), "(G_{m,h,sigma})^(sigma^j) is a subcode",
              f"h={h}, j={j}")
        work = gaussian_binomial(n, n - tau, code.field.q)
        if work > PIGEONHOLE_LIMIT:
            raise BudgetExceeded(f"{work} subspaces to enumerate exceeds {PIGEONHOLE_LIMIT}")
        return d
    _gate_subfield_common(spec, d)
    l = spec.l
    if spec.mode == "SubfieldBasis":
        _gate(j < n - l, "j < n-l", f"j={j}, n={n}, l={l}")
        shift, fixed, window = j, l, f"(G_{{n,{h},sigma}})^(sigma^{j})"
    else:
        _gate(j < n - 2 * l + h - 1, "j < n-2l+h-1", f"j={j}, n={n}, l={l}, h={h}")
        shift, fixed, window = l - h + 1 + j, 0, f"(G_{{n,{h},sigma}})^(sigma^{l - h + 1 + j})"
    if contains_power_gabidulin(code, h, shift):
        return d
    # the differences R - P only use the family's non-fixed exponents; their
    # shifted monomials lying in the code is all the construction consumes
    exps = _difference_exponents(_family_members(spec), fixed)
    _gate(contains_monomials(code, [i + j for i in exps]),
          f"{window} or every monomial in the shifted difference support is a subcode",
          f"difference exponents {sorted(exps)}, shift {j}")
    return d


# ---------------------------------------------------------------------------
# assembly and verification
# ---------------------------------------------------------------------------

def _assemble(spec: WitnessSpec, d: int, S: list[SigmaPoly], radius: int, bound: int,
              trace: dict) -> WitnessReport:
    code = spec.code
    F = code.field
    S = sorted(set(S), key=lambda f: f.sort_key())
    R = S[0]
    w = code.codeword(R)
    words: list[tuple[int, ...]] = []
    dist_ok = True
    for P in S:
        f = R - P
        c = code.codeword(f)
        if not code.contains(c):
            raise ContainmentFailure(f"c_(R-P) is not a codeword for R-P = {f!r}")
        if rank_distance(F, w, c) != radius:
            dist_ok = False
        words.append(c)
    rk_w = rank_weight(F, w)
    w_in = code.contains(w)
    distinct = len(set(words)) == len(words)
    checks = {
        "rank_w": rk_w,
        "rank_w_equals_radius": rk_w == radius,
        "radius_below_d": radius < d,
        "w_not_in_code": not w_in,
        "all_in_code": True,
        "all_at_exact_radius": dist_ok,
        "pairwise_distinct": distinct,
        "meets_bound": len(words) >= bound,
    }
    verified = all(v for k, v in checks.items() if isinstance(v, bool))
    trace = dict(trace)
    trace["R"] = R.to_list()
    trace["S_size"] = len(S)
    return WitnessReport(spec.mode, w, radius, words, bound, verified, d, checks, trace,
                         spec.to_dict())


def build_witness_general(spec: WitnessSpec, budget: int = DEFAULT_BUDGET) -> WitnessReport:
    """Pigeonhole witness over arbitrary GF(q)-independent points."""
    if spec.mode != "GeneralBasis":
        raise ParamViolation("build_witness_general needs mode GeneralBasis")
    d = check_hypotheses(spec, budget)
    code = spec.code
    F = code.field
    n, m, tau, h, j = code.n, code.m, spec.tau, spec.h, spec.j
    res = pigeonhole_family(F, code.points, n - tau, n - h - tau + 1)
    # (G)^(sigma^j) = x^(sigma^j) o G, so P -> P^(sigma^j) keeps kernels in the point span
    S = [f.sigma_power(j) for f in res.members]
    bound = general_bound(n, tau, h, F.q, m)
    trace = {"family": "pigeonhole", "group_key": list(res.key), "group_count": res.groups,
             "subspaces": res.total, "tie_break": res.tie_break,
             "agreement": n - h - tau + 1}
    return _assemble(spec, d, S, tau, bound, trace)


def build_witness_subfield(spec: WitnessSpec, budget: int = DEFAULT_BUDGET) -> WitnessReport:
    """Witness from an explicit family inside ``Pol_{l,h}``; points a basis of ``beta GF(q^n)``."""
    if spec.mode != "SubfieldBasis":
        raise ParamViolation("build_witness_subfield needs mode SubfieldBasis")
    d = check_hypotheses(spec, budget)
    code = spec.code
    n, l, h, j = code.n, spec.l, spec.h, spec.j
    _, beta = _gate_subfield_common(spec, d)
    members = _family_members(spec)
    for f in members:
        if not check_pol(f, n, l, h):
            raise FamilyNotInPol("family members lie in Pol_{l,h}", f"l={l}, h={h}, member {f!r}")
        _gate(has_max_kernel(f), "family members have maximum kernel", repr(f))
    S = [scale_transform(P, beta).sigma_power(j) for P in members]
    trace = {"family": spec.family.to_dict(), "family_size": len(members), "beta": beta}
    return _assemble(spec, d, S, n - l, len(members), trace)


def build_witness_subfield_hat(spec: WitnessSpec, budget: int = DEFAULT_BUDGET) -> WitnessReport:
    """Witness from a family normalized at ``x`` with support ``{0} u {l-h+1..l}``."""
    if spec.mode != "SubfieldBasisHat":
        raise ParamViolation("build_witness_subfield_hat needs mode SubfieldBasisHat")
    d = check_hypotheses(spec, budget)
    code = spec.code
    n, l, h, j = code.n, spec.l, spec.h, spec.j
    _, beta = _gate_subfield_common(spec, d)
    members = _family_members(spec)
    for f in members:
        if not check_pol_hat(f, n, l, h):
            raise FamilyNotInPol("family members lie in the x-normalized set with support {0} u {l-h+1..l}",
                                 f"l={l}, h={h}, member {f!r}")
        _gate(f.degree == l and has_max_kernel(f), "family members have maximum kernel of dimension l",
              repr(f))
    # beta P(beta^-1 x) keeps the x coefficient and has kernel beta ker P
    S = [scale_transform_at_x(P, beta).sigma_power(j) for P in members]
    trace = {"family": spec.family.to_dict(), "family_size": len(members), "beta": beta}
    return _assemble(spec, d, S, n - l, len(members), trace)


def build_witness(spec: WitnessSpec, budget: int = DEFAULT_BUDGET) -> WitnessReport:
    return {"GeneralBasis": build_witness_general, "SubfieldBasis": build_witness_subfield,
            "SubfieldBasisHat": build_witness_subfield_hat}[spec.mode](spec, budget)


def ball_count(code: EvalCode, w: Sequence[int], radius: int, budget: int = DEFAULT_BUDGET) -> int:
    """``|C n B_radius(w)|`` by scanning every codeword."""
    if code.size > budget:
        raise BudgetExceeded(f"{code.size} codewords exceeds budget {budget}")
    F = code.field
    return sum(1 for c in code.iter_codewords() if rank_distance(F, w, c) <= radius)


def verify_report(report: WitnessReport, code: EvalCode, exhaustive: bool = False,
                  budget: int = DEFAULT_BUDGET) -> dict:
    """Re-check a report from scratch against ``code``; optionally scan the whole ball."""
    F = code.field
    w = tuple(report.w)
    words = [tuple(c) for c in report.words]
    out = {
        "w_not_in_code": not code.contains(w),
        "all_in_code": all(code.contains(c) for c in words),
        "all_within_radius": all(rank_distance(F, w, c) <= report.radius for c in words),
        "pairwise_distinct": len(set(words)) == len(words),
        "meets_bound": len(words) >= report.bound,
    }
    if exhaustive:
        cnt = ball_count(code, w, report.radius, budget)
        out["ball_size"] = cnt
        out["ball_covers_list"] = cnt >= len(words)
        out["ball_meets_bound"] = cnt >= report.bound
    out["verified"] = all(v for v in out.values() if isinstance(v, bool))
    return out


def unique_decoding_control(code: EvalCode, d: int, samples: int = 20, seed: int = 0,
                            budget: int = DEFAULT_BUDGET) -> list[int]:
    """Ball sizes at radius ``floor((d-1)/2)`` around random codewords (each should be 1)."""
    rng = random.Random(seed)
    F = code.field
    ud = unique_decoding_radius(d)
    out = []
    for _ in range(samples):
        digits = [rng.randrange(F.p) for _ in range(code.dim_p)]
        c = (0,) * code.n
        for dg, b in zip(digits, code.basis_words):
            for _ in range(dg):
                c = tuple(F.add(x, y) for x, y in zip(c, b))
        out.append(ball_count(code, c, ud, budget))
    return out


# ---------------------------------------------------------------------------
# analyzer
# ---------------------------------------------------------------------------

@dataclass
class Claim:
    theorem_id: str
    description: str
    applicable: bool
    radius_threshold: int | None = None
    at_all: bool = False
    witness_recipe: WitnessSpec | None = None
    failed_hypothesis: str | None = None
    params: dict = dc_field(default_factory=dict)
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "description": self.description,
            "applicable": self.applicable,
            "radius_threshold": self.radius_threshold,
            "at_all": self.at_all,
            "witness_recipe": self.witness_recipe.params_dict() if self.witness_recipe else None,
            "failed_hypothesis": self.failed_hypothesis,
            "params": self.params,
            "note": self.note,
        }


class _Ctx:
    def __init__(self, code: EvalCode, d: int) -> None:
        self.code = code
        self.F = code.field
        self.n, self.m, self.q, self.p = code.n, code.m, self.F.q, self.F.p
        self.d = d
        self.ud = unique_decoding_radius(d)
        self.sub_ok, self.beta = is_subfield_basis(self.F, code.points, self.n)
        self.desc = code.descriptor
        self._cache: dict[tuple[int, int], bool] = {}

    def contains(self, h: int, j: int) -> bool:
        key = (h, j)
        if key not in self._cache:
            self._cache[key] = contains_power_gabidulin(self.code, h, j)
        return self._cache[key]

    def find_j(self, h: int, j_bound: int) -> int | None:
        for j in range(max(j_bound, 0)):
            if self.contains(h, j):
                return j
        return None

    def recipe(self, **kw) -> tuple[WitnessSpec | None, str]:
        spec = WitnessSpec(code=self.code, d=self.d, **kw)
        try:
            check_hypotheses(spec)
        except RankMetricError as exc:
            return None, f"recipe rejected: {exc}"
        return spec, ""

    def family(self, kind: str, **kw) -> FamilySpec:
        F = self.F
        return FamilySpec(kind, F.p, self.n, ell=F.ell, m=self.m, s=F.s, **kw)


def _divisors(n: int) -> list[int]:
    return [t for t in range(1, n + 1) if n % t == 0]


def _subfield_gate(c: _Ctx, tid: str, desc: str) -> Claim | None:
    if c.m % c.n:
        return Claim(tid, desc, False, failed_hypothesis="n | m")
    if not c.sub_ok:
        return Claim(tid, desc, False, failed_hypothesis="points form an F_q-basis of beta*F_{q^n}")
    return None


def _claim_general(c: _Ctx) -> Claim:
    tid, desc = "pigeonhole_general", "pigeonhole list bound over arbitrary independent points"
    for tau in range(c.ud + 1, c.d):
        for h in range(c.n - tau, 0, -1):
            j = c.find_j(h, min(tau, c.m - h + 1))
            if j is None:
                continue
            bound = general_bound(c.n, tau, h, c.q, c.m)
            params = {"tau": tau, "h": h, "j": j, "bound": bound}
            try:
                params["johnson_first_radius"] = johnson_like_radius(c.m, c.n, h).first_integer
            except (NegativeRadicand, ParamViolation):
                params["johnson_first_radius"] = None
            spec, note = c.recipe(mode="GeneralBasis", h=h, j=j, tau=tau)
            return Claim(tid, desc, True, tau, False, spec, params=params, note=note)
    return Claim(tid, desc, False,
                 failed_hypothesis="some floor((d-1)/2)+1 <= tau <= d-1 with (G_{m,h})^(sigma^j) a subcode, j < tau, h <= n-tau")


def _claim_binomial(c: _Ctx) -> Claim:
    tid, desc = "binomial_family", "binomial subspace polynomials x^(sigma^t) - a x"
    bad = _subfield_gate(c, tid, desc)
    if bad:
        return bad
    failed = "n-d+1 <= t <= n-floor((d-1)/2)-1 with t | n"
    for t in sorted(_divisors(c.n), reverse=True):
        if not (c.n - c.d + 1 <= t <= c.n - c.ud - 1) or t >= c.n:
            continue
        j = c.find_j(1, c.n - t)
        if j is None:
            failed = "(G_{n,1,sigma})^(sigma^j) is a subcode with j < n-t"
            continue
        at_all = c.n % 2 == 0 and c.d == c.n - 1
        spec, note = c.recipe(mode="SubfieldBasis", h=1, j=j, l=t, family=c.family("Binomial_N", t=t),
                              beta=c.beta)
        return Claim(tid, desc, True, c.n - t, at_all, spec,
                     params={"t": t, "j": j, "bound": (c.q ** c.n - 1) // (c.q ** t - 1)}, note=note)
    return Claim(tid, desc, False, failed_hypothesis=failed)


def _trace_recipe(c: _Ctx, t: int, j_bound: int) -> tuple[WitnessSpec | None, int | None, str]:
    h = c.n - 2 * t + 1
    j = c.find_j(h, j_bound)
    if j is None:
        # trace-family differences only use the exponents 0, t, ..., n-2t
        exps = range(0, c.n - t, t)
        j = next((j for j in range(j_bound) if contains_monomials(c.code, [i + j for i in exps])), None)
    if j is None:
        return None, None, f"no j < {j_bound} with the shifted difference monomials in the code"
    spec, note = c.recipe(mode="SubfieldBasis", h=h, j=j, l=c.n - t, family=c.family("Trace_T", t=t),
                          beta=c.beta)
    return spec, j, note


def _claim_trace(c: _Ctx) -> Claim:
    tid, desc = "trace_family", "relative-trace subspace polynomials"
    bad = _subfield_gate(c, tid, desc)
    if bad:
        return bad
    failed = "floor((d-1)/2)+1 <= t <= d-1 with t | n"
    for t in sorted(_divisors(c.n)):
        if not (c.ud + 1 <= t <= c.d - 1) or t >= c.n:
            continue
        if c.n - 2 * t + 1 < 1:
            failed = "n-2t+1 >= 1"
            continue
        h = c.n - 2 * t + 1
        j = c.find_j(h, t - 1)
        if j is None:
            failed = "(G_{n,n-2t+1,sigma})^(sigma^j) is a subcode with j < t-1"
            continue
        spec, note = c.recipe(mode="SubfieldBasis", h=h, j=j, l=c.n - t, family=c.family("Trace_T", t=t),
                              beta=c.beta)
        at_all = c.n % (c.ud + 1) == 0 and t == c.ud + 1
        return Claim(tid, desc, True, t, at_all, spec,
                     params={"t": t, "h": h, "j": j, "bound": (c.q ** c.n - 1) // (c.q ** t - 1)},
                     note=note)
    return Claim(tid, desc, False, failed_hypothesis=failed)


def _claim_trinomial(c: _Ctx, even: bool) -> Claim:
    if even:
        tid, desc = "trinomial_even", "trinomials with n = t^2 - 1 in characteristic 2"
    else:
        tid, desc = "trinomial_odd", "trinomials with n = t(t-1) + 1"
    bad = _subfield_gate(c, tid, desc)
    if bad:
        return bad
    if even:
        if c.p != 2:
            return Claim(tid, desc, False, failed_hypothesis="q is a power of 2")
        ts = [t for t in range(2, c.n + 1) if t * t - 1 == c.n]
        if not ts or not is_power_of(ts[0], 2):
            return Claim(tid, desc, False, failed_hypothesis="n = t^2-1 with t a power of 2")
    else:
        ts = [t for t in range(2, c.n + 1) if t * (t - 1) + 1 == c.n]
        if not ts or not is_power_of(ts[0] - 1, c.p):
            return Claim(tid, desc, False,
                         failed_hypothesis="n = t(t-1)+1 with t-1 a power of the characteristic")
    t = ts[0]
    if not (c.n - c.d + 1 <= t <= c.n - c.ud - 1):
        return Claim(tid, desc, False, failed_hypothesis="n-d+1 <= t <= n-floor((d-1)/2)-1")
    j = c.find_j(2, c.n - t)
    if j is None:
        return Claim(tid, desc, False,
                     failed_hypothesis="(G_{n,2,sigma})^(sigma^j) is a subcode with j < n-t")
    spec, note = c.recipe(mode="SubfieldBasis", h=2, j=j, l=t, family=c.family("Tri2" if even else "Tri1", t=t),
                          beta=c.beta)
    return Claim(tid, desc, True, c.n - t, False, spec,
                 params={"t": t, "j": j, "bound": (c.q ** c.n - 1) // (c.q - 1)}, note=note)


def _huang_params(n: int, p: int) -> Iterator[tuple[int, int, int]]:
    """All ``(r, k, t)`` with ``t p_k = n`` (``r = 0`` gives ``p_k = k + 1``)."""
    r = 0
    while True:
        qp = p ** r
        if p_sum(qp, 1) > n:
            return
        k = 1
        while p_sum(qp, k) <= n:
            if n % p_sum(qp, k) == 0:
                yield r, k, n // p_sum(qp, k)
            k += 1
        r += 1


def _claim_huang(c: _Ctx, adjoint: bool) -> Claim:
    if adjoint:
        tid, desc = "huang_adjoint_family", "adjoints of the generalized-trace subspace polynomials"
    else:
        tid, desc = "huang_family", "generalized-trace subspace polynomials x + sum x^(sigma^(t p_i))"
    bad = _subfield_gate(c, tid, desc)
    if bad:
        return bad
    best = None
    failed = "n = t p_k and floor((d-1)/2)+1 <= t q'^k <= d-1"
    for r, k, t in _huang_params(c.n, c.p):
        qp = c.p ** r
        tau0 = t * qp ** k
        if not (c.ud + 1 <= tau0 <= c.d - 1):
            continue
        l = t * p_sum(qp, k - 1)
        h = t * (p_sum(qp, k - 1) - 1) + 1 if adjoint else t * p_sum(qp, k - 2) + 1
        j = c.find_j(h, tau0)
        if j is None:
            failed = f"(G_{{n,{h},sigma}})^(sigma^j) is a subcode with j < t q'^k"
            continue
        cand = (tau0, r, k, t, l, h, j)
        if best is None or cand < best:
            best = cand
    if best is None:
        return Claim(tid, desc, False, failed_hypothesis=failed)
    tau0, r, k, t, l, h, j = best
    fam = c.family("Q_prime" if adjoint else "Q", t=t, k=k, r=r)
    spec, note = c.recipe(mode="SubfieldBasis", h=h, j=j, l=l, family=fam, beta=c.beta)
    return Claim(tid, desc, True, tau0, False, spec,
                 params={"r": r, "k": k, "t": t, "l": l, "h": h, "j": j,
                         "bound": (c.q ** c.n - 1) // (c.q ** t - 1)}, note=note)


def _claim_gabidulin_trace(c: _Ctx) -> Claim:
    tid, desc = "gabidulin_trace", "generalized Gabidulin codes via the trace family"
    if c.desc.kind != "Gabidulin":
        return Claim(tid, desc, False, failed_hypothesis="code is a generalized Gabidulin code")
    bad = _subfield_gate(c, tid, desc)
    if bad:
        return bad
    for t in sorted(_divisors(c.n)):
        if not (c.ud + 1 <= t <= c.d - 1) or t >= c.n:
            continue
        if c.n - 2 * t + 1 < 1:
            continue
        spec, j, note = _trace_recipe(c, t, t)
        return Claim(tid, desc, True, t, c.d == 2 * t, spec,
                     params={"t": t, "j": j, "bound": (c.q ** c.n - 1) // (c.q ** t - 1)}, note=note)
    return Claim(tid, desc, False,
                 failed_hypothesis="t | n, t < n, floor((d-1)/2)+1 <= t <= d-1 and n-2t+1 >= 1")


def _claim_h_code(c: _Ctx, defect: bool, tid: str, desc: str, k: int) -> Claim:
    """Shared logic for the additive-form and omitted-monomial codes."""
    n, d, ud = c.n, c.d, c.ud
    if not defect:
        if d != n - k + 1:
            return Claim(tid, desc, False, failed_hypothesis="d = n-k+1", params={"d": d})
        t_min = ud + 1 if (n - k) % 2 == 0 else ud + 2
        ok = lambda t: t_min <= t <= d - 1
    else:
        if d != n - k:
            return Claim(tid, desc, False, failed_hypothesis="d = n-k", params={"d": d})
        ok = lambda t: ud + 1 < t <= d - 1
    for t in sorted(_divisors(n)):
        if not ok(t) or t >= n:
            continue
        at_all = (not defect) and d == 2 * t - 1
        params = {"t": t, "d": d, "bound": (c.q ** n - 1) // (c.q ** t - 1)}
        if d == 2 * t - 2 or (defect and d == 2 * t - 3):
            params["radius_from"] = ud + 2
        if n - 2 * t + 1 < 1:
            return Claim(tid, desc, True, t, at_all, None, params=params,
                         note="n-2t+1 < 1: no trace-family recipe")
        spec, j, note = _trace_recipe(c, t, t)
        params["j"] = j
        return Claim(tid, desc, True, t, at_all, spec, params=params, note=note)
    return Claim(tid, desc, False, failed_hypothesis="t | n in the admissible radius range")


def _claim_h_codes(c: _Ctx) -> list[Claim]:
    ids = [("additive_form_mrd_distance", "additive-form codes with d = n-k+1", False),
           ("additive_form_defect_distance", "additive-form codes with d = n-k", True)]
    out = []
    for tid, desc, defect in ids:
        if not c.desc.is_additive_form or c.desc.f2.is_zero():
            out.append(Claim(tid, desc, False, failed_hypothesis="code has the additive form with f2 nonzero"))
            continue
        bad = _subfield_gate(c, tid, desc)
        out.append(bad if bad else _claim_h_code(c, defect, tid, desc, c.desc.k))
    return out


def _claim_cj(c: _Ctx) -> list[Claim]:
    out = []
    tid, desc = "omitted_monomial_general", "codes spanned by x^(sigma^i), i < k, i != j"
    tid2, desc2 = "omitted_monomial_penultimate", "omitted-monomial codes with j = k-2"
    if c.desc.kind != "Cj":
        return [Claim(tid, desc, False, failed_hypothesis="code omits one monomial"),
                Claim(tid2, desc2, False, failed_hypothesis="code omits one monomial")]
    k, j0 = c.desc.k, c.desc.j
    mb = None
    if c.q > 5 and k >= 3:
        mb = cj_mbound(c.q, c.F.s, k)
    extra = {"m_bound": mb, "m_bound_holds": (c.m >= mb) if mb is not None else None}
    bad = _subfield_gate(c, tid, desc)
    if bad:
        out.append(bad)
    elif not 1 <= j0 <= k - 2:
        out.append(Claim(tid, desc, False, failed_hypothesis="1 <= j <= k-2"))
    else:
        M = max(j0, k - j0 - 1)
        lo = Fraction(c.n - j0 + 1, 2) if M == j0 else Fraction(c.n - k + j0, 2) + 1
        claim = Claim(tid, desc, False, failed_hypothesis="t | n with t >= the M-dependent bound and "
                      "floor((d-1)/2)+1 <= t <= d-1")
        for t in sorted(_divisors(c.n)):
            if t < lo or not (c.ud + 1 <= t <= c.d - 1) or t >= c.n:
                continue
            params = {"t": t, "M": M, **extra, "bound": (c.q ** c.n - 1) // (c.q ** t - 1)}
            if c.n - 2 * t + 1 < 1:
                claim = Claim(tid, desc, True, t, False, None, params=params,
                              note="n-2t+1 < 1: no trace-family recipe")
                break
            spec, j, note = _trace_recipe(c, t, t)
            params["j"] = j
            claim = Claim(tid, desc, True, t, False, spec, params=params, note=note)
            break
        out.append(claim)
    if j0 != k - 2 or k < 3:
        out.append(Claim(tid2, desc2, False, failed_hypothesis="j = k-2 with k >= 3"))
    else:
        bad = _subfield_gate(c, tid2, desc2)
        if bad:
            out.append(bad)
        else:
            first = _claim_h_code(c, False, tid2, desc2, k)
            cl = first if first.applicable else _claim_h_code(c, True, tid2, desc2, k)
            cl.params.update(extra)
            out.append(cl)
    return out


def analyze_decodability(code: EvalCode, d: int | None = None, budget: int = DEFAULT_BUDGET) -> list[Claim]:
    """Evaluate every theorem's arithmetic hypotheses on ``code``.

    Each applicable claim carries a witness recipe whose gates were already
    checked, so it runs through :func:`build_witness` unchanged.
    """
    if d is None:
        d = code.min_distance_cache if code.min_distance_cache is not None else min_distance(code, budget)
    c = _Ctx(code, d)
    claims = [
        _claim_general(c),
        _claim_binomial(c),
        _claim_trace(c),
        _claim_trinomial(c, even=False),
        _claim_trinomial(c, even=True),
        _claim_huang(c, adjoint=False),
        _claim_huang(c, adjoint=True),
        _claim_gabidulin_trace(c),
    ]
    claims.extend(_claim_h_codes(c))
    claims.extend(_claim_cj(c))
    return claims
