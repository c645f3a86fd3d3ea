"""Lifting rank-metric codewords to constant-dimension subspaces.

A word ``v`` in GF(q^m)^n is stored as the ``n x m`` GF(q) matrix whose row
``i`` holds the coordinates of ``v_i`` in the basis ``1, x, ..., x^(m-1)``
(rows indexed by evaluation points).  Its lift is the row space of
``[I_n | X]`` inside GF(q)^(n+m), kept in reduced row-echelon form so equal
subspaces compare equal.

The subspace distance is ``d_s(U, V) = 2 dim(U + V) - dim U - dim V``; for
lifts it equals twice the rank distance of the underlying words.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from .errors import AmbientMismatch, BudgetExceeded, DegenerateCode, DimensionMismatch, FieldMismatch
from .gf_tower import GF
from .linalg import PrimeField, rank, rref
from .rm_codes import DEFAULT_BUDGET, CodeDescriptor, EvalCode, min_distance, rank_distance
from .subspace_families import iter_echelon_matrices

__all__ = [
    "SubspaceCodeword", "lift", "subspace_distance", "LiftedCode", "lift_code",
    "LiftBallResult", "verify_lift_ball", "grassmannian", "CONVENTION",
]

CONVENTION = "rows indexed by evaluation points: v -> n x m matrix X over GF(q); lift = rowspace [I_n | X]"


def _scalars(F: GF):
    """Arithmetic for GF(q) entries in F's encoding (plain ints mod p when q = p)."""
    return PrimeField(F.p) if F.ell == 1 else F


@dataclass(frozen=True)
class SubspaceCodeword:
    """A GF(q)-subspace of GF(q)^ambient_dim given by its RREF basis."""

    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]
    field: GF = dc_field(compare=False, hash=False, repr=False)
    field_key: tuple = dc_field(default=())

    @classmethod
    def from_rows(cls, F: GF, rows: Sequence[Sequence[int]], ambient_dim: int | None = None) -> "SubspaceCodeword":
        rows = [list(r) for r in rows]
        if ambient_dim is None:
            if not rows:
                raise DimensionMismatch("ambient dimension needed for the zero subspace")
            ambient_dim = len(rows[0])
        if any(len(r) != ambient_dim for r in rows):
            raise DimensionMismatch(f"rows must have length {ambient_dim}")
        red, _ = rref(rows, _scalars(F))
        return cls(ambient_dim, tuple(tuple(r) for r in red), F, (F.p, F.ell))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_dict(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "dim": self.dim, "basis": [list(r) for r in self.basis]}


def _word_matrix(F: GF, v: Sequence[int]) -> list[list[int]]:
    return [list(F.fq_coords(a)) for a in v]


def lift(F: GF, v: Sequence, m: int | None = None) -> SubspaceCodeword:
    """Row space of ``[I_n | X]``.

    ``v`` is either a rank vector (sequence of GF(q^m) elements) or an
    ``n x m`` matrix of GF(q) entries given as a sequence of rows.
    """
    if v and isinstance(v[0], (list, tuple)):
        X = [list(r) for r in v]
        m = len(X[0]) if m is None else m
        if any(len(r) != m for r in X):
            raise DimensionMismatch(f"matrix rows must all have length {m}")
    else:
        if m is not None and m != F.m:
            raise DimensionMismatch(f"vector entries live in GF(q^{F.m}), not GF(q^{m})")
        X = _word_matrix(F, v)
        m = F.m
    n = len(X)
    if n == 0:
        raise DimensionMismatch("cannot lift an empty word")
    rows = [[1 if c == i else 0 for c in range(n)] + X[i] for i in range(n)]
    # [I_n | X] is already in reduced row-echelon form
    return SubspaceCodeword(n + m, tuple(tuple(r) for r in rows), F, (F.p, F.ell))


def subspace_distance(U: SubspaceCodeword, V: SubspaceCodeword) -> int:
    """``dim U + dim V - 2 dim(U n V)``, via the rank of the stacked bases."""
    if U.ambient_dim != V.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions {U.ambient_dim} and {V.ambient_dim} differ")
    if U.field_key != V.field_key:
        raise FieldMismatch("subspaces over different fields")
    F = U.field if U.field is not None else V.field
    joint = rank(list(U.basis) + list(V.basis), _scalars(F))
    return 2 * joint - U.dim - V.dim


def grassmannian(F: GF, N: int, r: int) -> Iterator[SubspaceCodeword]:
    """Every ``r``-dim subspace of GF(q)^N, once each."""
    for mat in iter_echelon_matrices(N, r, F.fq_elements()):
        yield SubspaceCodeword(N, tuple(tuple(row) for row in mat), F, (F.p, F.ell))


@dataclass
class LiftedCode:
    ambient_dim: int
    size: int
    d_s: int
    dim: int
    q: int
    d_R: int
    distinct: bool
    law_holds: bool
    pairs: int
    convention: str = CONVENTION
    words: list[SubspaceCodeword] = dc_field(default_factory=list, repr=False)

    @property
    def params(self) -> tuple[int, int, int, int]:
        """``(n+m, M_s, d_s, n)``."""
        return (self.ambient_dim, self.size, self.d_s, self.dim)

    def to_dict(self) -> dict:
        return {
            "params": list(self.params),
            "q": self.q,
            "d_R": self.d_R,
            "distinct": self.distinct,
            "distance_law_holds": self.law_holds,
            "pairs_checked": self.pairs,
            "convention": self.convention,
        }


def lift_code(code: EvalCode, budget: int = DEFAULT_BUDGET) -> LiftedCode:
    """Lift every codeword and check ``d_s = 2 rank distance`` on all pairs."""
    M = code.size
    if M < 2:
        raise DegenerateCode("a code with fewer than two words has no minimum distance")
    pairs = M * (M - 1) // 2
    if pairs > budget:
        raise BudgetExceeded(f"{pairs} codeword pairs exceeds budget {budget}")
    F = code.field
    words = list(code.iter_codewords())
    lifts = [lift(F, w) for w in words]
    d_R = code.min_distance_cache if code.min_distance_cache is not None else min_distance(code, budget)
    law = True
    d_s = None
    for i in range(M):
        for k in range(i + 1, M):
            ds = subspace_distance(lifts[i], lifts[k])
            if ds != 2 * rank_distance(F, words[i], words[k]):
                law = False
            d_s = ds if d_s is None else min(d_s, ds)
    distinct = len(set(lifts)) == M
    return LiftedCode(code.n + code.m, M, d_s, code.n, F.q, d_R, distinct, law and d_s == 2 * d_R,
                      pairs, words=lifts)


@dataclass
class LiftBallResult:
    passed: bool
    radius: int
    subspace_radius: int
    lifted_list_bound: int
    distances: list[int]
    convention: str = CONVENTION

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "radius": self.radius,
            "subspace_radius": self.subspace_radius,
            "lifted_list_bound": self.lifted_list_bound,
            "max_distance": max(self.distances, default=0),
            "convention": self.convention,
        }


def _report_field(report) -> GF:
    desc = report.spec["code"]["descriptor"]
    return CodeDescriptor.from_dict(desc).gf()


def verify_lift_ball(report, field: GF | None = None) -> LiftBallResult:
    """Check that every listed codeword lifts into the subspace ball of radius ``2 tau`` around ``lift(w)``.

    This is the pointwise injection behind ``|C n B_tau(w)| <= |I(C) n B^s_2tau(I(w))|``;
    distinct listed words have distinct lifts, so the lifted list is at least
    as long as the rank list.  An empty list passes vacuously.
    """
    F = field if field is not None else _report_field(report)
    tau = report.radius
    Lw = lift(F, report.w)
    lifts = [lift(F, c) for c in report.words]
    distances = [subspace_distance(Lw, L) for L in lifts]
    passed = all(ds <= 2 * tau for ds in distances)
    return LiftBallResult(passed, tau, 2 * tau, len(set(lifts)) if passed else 0, distances)
