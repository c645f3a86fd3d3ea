"""Enumerable families of sigma-subspace polynomials.

Every family is generated at level ``n`` (coefficients in GF(q^n)) inside the
working field GF(q^m), ``n | m``; with ``m == n`` this is the plain family in
L_{n,sigma}.  Families indexed by a scalar ``beta`` are deduplicated by the
resulting polynomial, keeping the smallest ``beta`` (in the field's int
order) as representative.
"""

from __future__ import annotations

import itertools
import dataclasses
import math
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from .errors import ParamViolation, ZeroScalar
from .gf_tower import GF, exponent_reduce, is_prime
from .sigma_poly import (
    SigmaPoly,
    has_max_kernel,
    is_subspace_poly,
    moore_subspace_poly,
    shifted_adjoint,
)

KINDS = ("Binomial_N", "Trace_T", "Tri1", "Tri1_hat", "Tri2", "Tri2_hat",
         "Huang_F", "Huang_G", "Q", "Q_prime", "PigeonholeF")


def gaussian_binomial(n: int, r: int, q: int) -> int:
    """Number of ``r``-dimensional subspaces of GF(q)^n (0 when out of range)."""
    if r < 0 or r > n or n < 0:
        return 0
    row = [1]  # row[j] = [i j]_q for the current i
    for i in range(1, n + 1):
        new = [1] * (i + 1)
        for j in range(1, i):
            new[j] = row[j - 1] + q ** j * row[j]
        row = new
    return row[r]


def is_power_of(x: int, base: int) -> bool:
    """True iff ``x = base^e`` for some ``e >= 0``."""
    if x < 1:
        return False
    while x % base == 0:
        x //= base
    return x == 1


def p_sum(qp: int, i: int) -> int:
    """``1 + q' + ... + q'^i``; 0 for ``i < 0``."""
    return sum(qp ** j for j in range(i + 1)) if i >= 0 else 0


@dataclass(frozen=True)
class FamilySpec:
    """Parameters of a family; ``m`` defaults to ``n`` (no lift)."""

    kind: str
    p: int
    n: int
    ell: int = 1
    m: int | None = None
    s: int = 1
    t: int | None = None
    k: int | None = None
    r: int | None = None
    g: int | None = None
    rank: int | None = None  # subspace dimension for PigeonholeF
    adjoint: bool = False  # replace every member by its shifted adjoint

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ParamViolation(f"unknown family kind {self.kind!r}")
        if self.m is None:
            object.__setattr__(self, "m", self.n)
        if not is_prime(self.p):
            raise ParamViolation(f"p={self.p} is not prime")
        if self.n < 1 or self.m % self.n:
            raise ParamViolation(f"n={self.n} must divide m={self.m}")
        if math.gcd(self.s, self.n) != 1 or math.gcd(self.s, self.m) != 1:
            raise ParamViolation(f"s={self.s} must be coprime with n={self.n} and m={self.m}")

    @property
    def q(self) -> int:
        return self.p ** self.ell

    def field(self) -> GF:
        return GF.get(self.p, self.m, self.ell, self.s)

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None and v is not False}

    @classmethod
    def from_dict(cls, d: dict) -> "FamilySpec":
        return cls(**d)


@dataclass
class SubspacePolyFamily:
    spec: FamilySpec
    members: list[SigmaPoly]
    expected_size: int
    sigma_degree: int
    exact_size: bool = True
    representatives: list[int] = dc_field(default_factory=list)
    note: str = ""

    @property
    def actual_size(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[SigmaPoly]:
        return iter(self.members)

    def size_ok(self) -> bool:
        if self.exact_size:
            return self.actual_size == self.expected_size
        return self.actual_size >= self.expected_size

    def all_max_kernel(self) -> bool:
        """Every member has kernel dimension equal to the family's sigma-degree."""
        return all(f.degree == self.sigma_degree and has_max_kernel(f) for f in self.members)

    def all_subspace_polys(self) -> bool:
        return all(f.degree == self.sigma_degree and is_subspace_poly(f) for f in self.members)

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "field": self.spec.field().to_dict(),
            "members": [f.to_list() for f in self.members],
            "expected_size": self.expected_size,
            "actual_size": self.actual_size,
            "sigma_degree": self.sigma_degree,
            "all_max_kernel": self.all_max_kernel(),
            "note": self.note,
        }


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _sig(q: int, s: int, i: int) -> int:
    return q ** (s * i)


def _dedup(F: GF, indexed: Iterator[tuple[int, SigmaPoly]]) -> tuple[list[SigmaPoly], list[int]]:
    seen: dict[tuple, int] = {}
    polys: list[SigmaPoly] = []
    reps: list[int] = []
    for beta, f in indexed:
        if f.coeffs in seen:
            continue
        seen[f.coeffs] = beta
        polys.append(f)
        reps.append(beta)
    return polys, reps


def _nonzero_level(F: GF, n: int) -> list[int]:
    return F.subfield_elements(n)[1:]


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ParamViolation(msg)


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

def gen_binomials(spec: FamilySpec) -> SubspacePolyFamily:
    n, t = spec.n, spec.t
    _need(t is not None and 1 <= t <= n - 1, f"need 1 <= t <= n-1 (t={t}, n={n})")
    _need(n % t == 0, f"t={t} must divide n={n}")
    F = spec.field()
    members, reps = [], []
    for a0 in _nonzero_level(F, n):
        if F.rel_norm(a0, t, n) == 1:
            members.append(SigmaPoly.from_terms(F, {0: F.neg(a0), t: 1}))
            reps.append(a0)
    q = spec.q
    return SubspacePolyFamily(spec, members, (q ** n - 1) // (q ** t - 1), t, representatives=reps)


def gen_trace_family(spec: FamilySpec) -> SubspacePolyFamily:
    n, t = spec.n, spec.t
    _need(t is not None and 1 <= t <= n - 1, f"need 1 <= t <= n-1 (t={t}, n={n})")
    _need(n % t == 0, f"t={t} must divide n={n}")
    F = spec.field()
    q, s = spec.q, spec.s
    top = _sig(q, s, n - t)

    def gen():
        for beta in _nonzero_level(F, n):
            terms = {i * t: F.pow(beta, _sig(q, s, i * t) - top) for i in range(n // t)}
            yield beta, SigmaPoly.from_terms(F, terms)

    members, reps = _dedup(F, gen())
    return SubspacePolyFamily(spec, members, (q ** n - 1) // (q ** t - 1), n - t,
                              representatives=reps)


def _norm_level_elements(F: GF, n: int, target: int) -> list[int]:
    return [a for a in _nonzero_level(F, n) if F.rel_norm(a, 1, n) == target]


def _trinomials(spec: FamilySpec, hat: bool, first: bool) -> SubspacePolyFamily:
    F = spec.field()
    n, t, q, s, p = spec.n, spec.t, spec.q, spec.s, spec.p
    if first:
        _need(t is not None and t >= 2, "Tri1 needs t >= 2")
        _need(n == t * (t - 1) + 1, f"Tri1 needs n = t(t-1)+1 (t={t}, n={n})")
        _need(is_power_of(t - 1, p), f"t-1={t - 1} must be a power of the characteristic {p}")
        target = 1 if (t - 1) % 2 == 0 else F.neg(1)
        # b = -a^(1 + (sigma^n - sigma)/(sigma^t - 1)); without the extra factor a
        # the trinomials do not split (checked exhaustively for q in {2, 3, 4})
        e = exponent_reduce(_sig(q, s, n) - _sig(q, s, 1) + _sig(q, s, t) - 1,
                            _sig(q, s, t) - 1, q ** n - 1)
        sign = -1
    else:
        _need(p == 2, f"Tri2 needs q a power of 2 (q={q})")
        _need(t is not None and t >= 2 and is_power_of(t, 2), f"Tri2 needs t a power of 2 (t={t})")
        _need(n == t * t - 1, f"Tri2 needs n = t^2 - 1 (t={t}, n={n})")
        target = 1
        # b = a^(-(sigma^(t^2) - sigma^t)/(sigma^t - 1))
        e = -exponent_reduce(_sig(q, s, t * t) - _sig(q, s, t), _sig(q, s, t) - 1, q ** n - 1)
        sign = 1
    members, reps = [], []
    for a in _norm_level_elements(F, n, target):
        b = F.pow(a, e)
        if sign < 0:
            b = F.neg(b)
        if hat:
            # summed rather than built from a dict: t - 1 may be 1 or collide with 0
            f = (SigmaPoly.identity(F)
                 + SigmaPoly.monomial(F, t - 1, F.frob(F.neg(b), t - 1))
                 + SigmaPoly.monomial(F, t, F.frob(F.neg(a), t)))
        else:
            f = (SigmaPoly.monomial(F, 0, F.neg(a)) + SigmaPoly.monomial(F, 1, F.neg(b))
                 + SigmaPoly.monomial(F, t, 1))
        members.append(f)
        reps.append(a)
    return SubspacePolyFamily(spec, members, (q ** n - 1) // (q - 1), t, representatives=reps,
                              note="x-normalized (hat) family" if hat else "")


def gen_tri1(spec: FamilySpec) -> SubspacePolyFamily:
    return _trinomials(spec, hat=False, first=True)


def gen_tri1_hat(spec: FamilySpec) -> SubspacePolyFamily:
    return _trinomials(spec, hat=True, first=True)


def gen_tri2(spec: FamilySpec) -> SubspacePolyFamily:
    return _trinomials(spec, hat=False, first=False)


def gen_tri2_hat(spec: FamilySpec) -> SubspacePolyFamily:
    return _trinomials(spec, hat=True, first=False)


def _huang_params(spec: FamilySpec) -> tuple[int, int, int]:
    t, k, r = spec.t, spec.k, spec.r
    _need(t is not None and t >= 1, "need t >= 1")
    _need(k is not None and k >= 1, "need k >= 1")
    _need(r is not None and r >= 0, "need r >= 0")
    qp = spec.p ** r
    _need(spec.n == t * p_sum(qp, k), f"need n = t*p_k = {t * p_sum(qp, k)} (got n={spec.n})")
    return t, k, qp


def gen_huang(spec: FamilySpec) -> SigmaPoly:
    """``x + sum_{i<k} x^(sigma^(t p_i))``; sigma-degree ``t p_(k-1)``."""
    t, k, qp = _huang_params(spec)
    F = spec.field()
    terms = {0: 1}
    for i in range(k):
        terms[t * p_sum(qp, i)] = 1
    return SigmaPoly.from_terms(F, terms)


def gen_huang_adjoint(spec: FamilySpec) -> SigmaPoly:
    """Shifted adjoint of :func:`gen_huang`.

    Its support is ``{t p_(k-1)} u {t (p_(k-1) - p_i) : 0 <= i <= k-1}``; the
    ``i = 0`` term ``x^(sigma^(t (p_(k-1) - 1)))`` is required for the kernel
    to stay maximal.
    """
    return shifted_adjoint(gen_huang(spec))


def scale_transform(f: SigmaPoly, alpha) -> SigmaPoly:
    """``alpha^(sigma^k) f(alpha^-1 x)`` with ``k = deg f``: kernel becomes ``alpha ker f``."""
    F = f.field
    alpha = int(alpha)
    if alpha == 0:
        raise ZeroScalar("scale_transform needs alpha != 0")
    k = f.degree
    top = F.frob(alpha, k)
    out = {}
    for i, a in enumerate(f.coeffs):
        if a:
            out[i] = F.mul(a, F.div(top, F.frob(alpha, i)))
    return SigmaPoly.from_terms(F, out)


def scale_transform_at_x(f: SigmaPoly, alpha) -> SigmaPoly:
    """``alpha f(alpha^-1 x)``: keeps the coefficient of ``x`` (hat normalization)."""
    F = f.field
    alpha = int(alpha)
    if alpha == 0:
        raise ZeroScalar("scale needs alpha != 0")
    out = {}
    for i, a in enumerate(f.coeffs):
        if a:
            out[i] = F.mul(a, F.div(alpha, F.frob(alpha, i)))
    return SigmaPoly.from_terms(F, out)


def _q_family(spec: FamilySpec, base: SigmaPoly) -> SubspacePolyFamily:
    F = spec.field()
    t, _, _ = _huang_params(spec)

    def gen():
        for beta in _nonzero_level(F, spec.n):
            # beta^(-sigma^K) base(beta x) = scale_transform(base, beta^-1)
            yield beta, scale_transform(base, F.inv(beta))

    members, reps = _dedup(F, gen())
    q = spec.q
    return SubspacePolyFamily(spec, members, (q ** spec.n - 1) // (q ** t - 1), base.degree,
                              representatives=reps)


def gen_Q(spec: FamilySpec) -> SubspacePolyFamily:
    return _q_family(spec, gen_huang(spec))


def gen_Q_prime(spec: FamilySpec) -> SubspacePolyFamily:
    return _q_family(spec, gen_huang_adjoint(spec))


# ---------------------------------------------------------------------------
# subspace enumeration and the pigeonhole family
# ---------------------------------------------------------------------------

def iter_echelon_matrices(n: int, r: int, scalars: Sequence[int]) -> Iterator[list[list[int]]]:
    """All ``r x n`` reduced row-echelon matrices of rank ``r`` over the scalars.

    ``scalars`` lists the field's elements with ``scalars[0] == 0`` and
    ``scalars[1] == 1`` (GF(q) inside the working field).  Yields
    ``[n r]_q`` matrices, each subspace exactly once.
    """
    for pivots in itertools.combinations(range(n), r):
        pivset = set(pivots)
        free = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivset]
        for values in itertools.product(scalars, repeat=len(free)):
            mat = [[0] * n for _ in range(r)]
            for i, pc in enumerate(pivots):
                mat[i][pc] = 1
            for (i, c), v in zip(free, values):
                mat[i][c] = v
            yield mat


def iter_subspaces(F: GF, S: Sequence[int], r: int) -> Iterator[list[int]]:
    """GF(q)-bases of every ``r``-dim subspace of span(S), one per subspace."""
    scalars = F.fq_elements()
    for mat in iter_echelon_matrices(len(S), r, scalars):
        basis = []
        for row in mat:
            acc = 0
            for c, sv in zip(row, S):
                if c:
                    acc = F.add(acc, F.mul(c, sv))
            basis.append(acc)
        yield basis


@dataclass
class PigeonholeResult:
    members: list[SigmaPoly]
    key: tuple[int, ...]
    total: int
    bound: int
    groups: int
    tie_break: str = "smallest coefficient key among maximal groups"


def pigeonhole_family(F: GF, S: Sequence[int], r: int, g: int) -> PigeonholeResult:
    """Largest set of subspace polynomials with kernel in span(S) sharing the top ``g`` coefficients.

    Positions ``r-g+1 .. r`` are compared (the monic leader included).
    """
    n = len(S)
    if not (1 <= g <= r < n <= F.m):
        raise ParamViolation(f"need 1 <= g <= r < n <= m (g={g}, r={r}, n={n}, m={F.m})")
    if F.fq_rank(list(S)) != n:
        raise ParamViolation("S is not GF(q)-linearly independent")
    groups: dict[tuple[int, ...], list[SigmaPoly]] = {}
    total = 0
    for basis in iter_subspaces(F, S, r):
        f = moore_subspace_poly((F, basis))
        key = tuple(f.coeff(i) for i in range(r - g + 1, r + 1))
        groups.setdefault(key, []).append(f)
        total += 1
    best_key = min(groups, key=lambda k: (-len(groups[k]), k))
    q = F.q
    num = gaussian_binomial(n, r, q)
    den = q ** (F.m * (g - 1))
    return PigeonholeResult(groups[best_key], best_key, total, -(-num // den), len(groups))


def pigeonhole_as_family(spec: FamilySpec) -> SubspacePolyFamily:
    F = spec.field()
    _need(spec.rank is not None and spec.g is not None, "PigeonholeF needs rank and g")
    gen = F.subfield_generator(spec.n)
    S, v = [], 1
    for _ in range(spec.n):
        S.append(v)
        v = F.mul(v, gen)
    res = pigeonhole_family(F, S, spec.rank, spec.g)
    return SubspacePolyFamily(spec, res.members, res.bound, spec.rank, exact_size=False,
                              note=f"group key {list(res.key)}; {res.groups} groups; {res.tie_break}")


_GENERATORS = {
    "Binomial_N": gen_binomials,
    "Trace_T": gen_trace_family,
    "Tri1": gen_tri1,
    "Tri1_hat": gen_tri1_hat,
    "Tri2": gen_tri2,
    "Tri2_hat": gen_tri2_hat,
    "Q": gen_Q,
    "Q_prime": gen_Q_prime,
    "PigeonholeF": pigeonhole_as_family,
}


def generate(spec: FamilySpec) -> SubspacePolyFamily:
    """Dispatch on ``spec.kind``; single polynomials come back as a one-member family.

    With ``spec.adjoint`` each member ``f`` is replaced by ``shifted_adjoint(f)``,
    which has the same sigma-degree and a maximum kernel whenever ``f`` does.
    """
    if spec.adjoint:
        base = generate(dataclasses.replace(spec, adjoint=False))
        members = sorted({shifted_adjoint(f) for f in base.members}, key=lambda f: f.sort_key())
        return SubspacePolyFamily(spec, members, base.expected_size, base.sigma_degree,
                                  base.exact_size, note="shifted adjoints")
    if spec.kind in ("Huang_F", "Huang_G"):
        f = gen_huang(spec) if spec.kind == "Huang_F" else gen_huang_adjoint(spec)
        return SubspacePolyFamily(spec, [f], 1, f.degree)
    return _GENERATORS[spec.kind](spec)
