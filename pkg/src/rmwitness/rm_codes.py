"""Rank-metric codes as spaces of sigma-polynomials and their evaluation codes.

A code is described by a :class:`CodeDescriptor` (which polynomial space) and
realized as an :class:`EvalCode` (that space evaluated at ``n`` GF(q)-independent
points of GF(q^m)).  Every supported space is GF(p)-linear, so it is stored by a
GF(p)-basis of polynomials; codewords are streamed as GF(p)-combinations of the
evaluated basis.  Words are tuples of field ints.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import (
    BudgetExceeded,
    DegenerateCode,
    DependentPoints,
    LengthMismatch,
    ParamViolation,
)
from .gf_tower import GF, FieldParams
from .linalg import FpSpace
from .sigma_poly import SigmaPoly

CODE_KINDS = ("Gabidulin", "PowerGabidulin", "H_f1f2", "TwistedSheekey", "Cj")
MAP_KINDS = ("zero", "id", "twist_q", "twist_p", "half", "matrix")
DEFAULT_BUDGET = 1 << 24


# ---------------------------------------------------------------------------
# additive maps f1, f2
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdditiveMap:
    """An additive map of GF(q^m).

    kinds: ``zero``; ``id``; ``twist_q`` (``eta a^(q^e)``); ``twist_p``
    (``eta a^(p^e)``); ``half`` (``eta (theta a + (theta a)^(q^(m/2)))``);
    ``matrix`` (``images`` of the GF(p)-basis ``p^i`` of the field).
    """

    kind: str = "id"
    eta: int = 1
    e: int = 0
    theta: int = 1
    images: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in MAP_KINDS:
            raise ParamViolation(f"unknown additive map kind {self.kind!r}")
        object.__setattr__(self, "images", tuple(self.images))

    def __call__(self, F: GF, a: int) -> int:
        k = self.kind
        if k == "zero" or a == 0:
            return 0
        if k == "id":
            return a
        if k == "twist_q":
            return F.mul(self.eta, F.qpow(a, self.e))
        if k == "twist_p":
            return F.mul(self.eta, F.pow(a, F.p ** self.e))
        if k == "half":
            if F.m % 2:
                raise ParamViolation("the half-trace map needs m even")
            b = F.mul(self.theta, a)
            return F.mul(self.eta, F.add(b, F.qpow(b, F.m // 2)))
        # matrix: linear combination of basis images by the digits of a
        if len(self.images) != F.D:
            raise ParamViolation(f"matrix map needs {F.D} images, got {len(self.images)}")
        acc = 0
        for dgt, img in zip(F.coords(a), self.images):
            if dgt:
                acc = F.add(acc, F.scale_int(img, dgt))
        return acc

    def is_zero(self) -> bool:
        return self.kind == "zero" or self.eta == 0 or (self.kind == "matrix" and not any(self.images))

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.kind in ("twist_q", "twist_p", "half"):
            d["eta"] = self.eta
        if self.kind in ("twist_q", "twist_p"):
            d["e"] = self.e
        if self.kind == "half":
            d["theta"] = self.theta
        if self.kind == "matrix":
            d["images"] = list(self.images)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "AdditiveMap":
        return cls(**d)


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CodeDescriptor:
    """Which space of sigma-polynomials.

    ``Gabidulin``: sigma-degree < k.  ``PowerGabidulin``: span of
    ``x^(sigma^i)``, ``j <= i < j + h``.  ``H_f1f2``: ``f1(a) x + sum_{0<i<k}
    a_i x^(sigma^i) + f2(a) x^(sigma^k)``.  ``TwistedSheekey``: ``H_f1f2`` with
    ``f1 = id`` and ``f2 = eta a^(q^twist)``.  ``Cj``: span of ``x^(sigma^i)``,
    ``i < k``, ``i != j``.
    """

    kind: str
    field: FieldParams
    k: int | None = None
    h: int | None = None
    j: int | None = None
    f1: AdditiveMap | None = None
    f2: AdditiveMap | None = None
    eta: int | None = None
    twist: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in CODE_KINDS:
            raise ParamViolation(f"unknown code kind {self.kind!r}")
        m = self.field.m
        if self.kind == "PowerGabidulin":
            if self.h is None or self.j is None or self.h < 1 or self.j < 0:
                raise ParamViolation("PowerGabidulin needs h >= 1 and j >= 0")
            if self.h + self.j > m:
                raise ParamViolation(f"window j+h={self.h + self.j} exceeds m={m}")
            return
        if self.k is None or not (1 <= self.k <= m - 1):
            if not (self.kind == "Gabidulin" and self.k == m):
                raise ParamViolation(f"need 1 <= k <= m-1 (k={self.k}, m={m})")
        if self.kind == "TwistedSheekey":
            if self.eta is None or self.twist is None:
                raise ParamViolation("TwistedSheekey needs eta and twist")
            object.__setattr__(self, "f1", AdditiveMap("id"))
            object.__setattr__(self, "f2", AdditiveMap("twist_q", eta=self.eta, e=self.twist))
        if self.kind == "H_f1f2":
            if self.f1 is None or self.f2 is None:
                raise ParamViolation("H_f1f2 needs f1 and f2")
        if self.kind == "Cj" and (self.j is None or not 0 <= self.j < self.k):
            raise ParamViolation(f"Cj needs 0 <= j < k (j={self.j}, k={self.k})")

    # convenience constructors
    @classmethod
    def gabidulin(cls, F: GF, k: int) -> "CodeDescriptor":
        return cls("Gabidulin", F.params, k=k)

    @classmethod
    def power_gabidulin(cls, F: GF, h: int, j: int) -> "CodeDescriptor":
        return cls("PowerGabidulin", F.params, h=h, j=j)

    @classmethod
    def twisted(cls, F: GF, k: int, eta: int, twist: int) -> "CodeDescriptor":
        return cls("TwistedSheekey", F.params, k=k, eta=eta, twist=twist)

    @classmethod
    def h_code(cls, F: GF, k: int, f1: AdditiveMap, f2: AdditiveMap) -> "CodeDescriptor":
        return cls("H_f1f2", F.params, k=k, f1=f1, f2=f2)

    @classmethod
    def cj(cls, F: GF, k: int, j: int) -> "CodeDescriptor":
        return cls("Cj", F.params, k=k, j=j)

    def gf(self) -> GF:
        return GF.from_params(self.field)

    @property
    def is_additive_form(self) -> bool:
        return self.kind in ("H_f1f2", "TwistedSheekey")

    @property
    def fqm_linear(self) -> bool:
        """True when the space is closed under GF(q^m)-scalars (monomial spans)."""
        return self.kind in ("Gabidulin", "PowerGabidulin", "Cj")

    def free_exponents(self) -> frozenset[int]:
        """Exponents ``i`` with ``a x^(sigma^i)`` in the space for every ``a``."""
        if self.kind == "Gabidulin":
            return frozenset(range(self.k))
        if self.kind == "PowerGabidulin":
            return frozenset(range(self.j, self.j + self.h))
        if self.kind == "Cj":
            return frozenset(i for i in range(self.k) if i != self.j)
        # a -> (f1(a), f2(a)) is injective, so b x is reachable for every b
        # exactly when f2 vanishes identically (and symmetrically at sigma^k)
        free = set(range(1, self.k))
        if self.f2.is_zero():
            free.add(0)
        if self.f1.is_zero():
            free.add(self.k)
        return frozenset(free)

    def max_sigma_degree(self) -> int:
        if self.kind == "PowerGabidulin":
            return self.j + self.h - 1
        return self.k if self.is_additive_form else self.k - 1

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind, "field": self.field.to_dict()}
        for name in ("k", "h", "j", "eta", "twist"):
            v = getattr(self, name)
            if v is not None:
                d[name] = v
        if self.kind == "H_f1f2":
            d["f1"] = self.f1.to_dict()
            d["f2"] = self.f2.to_dict()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CodeDescriptor":
        d = dict(d)
        d["field"] = FieldParams.from_dict(d["field"])
        for name in ("f1", "f2"):
            if name in d:
                d[name] = AdditiveMap.from_dict(d[name])
        return cls(**d)


def mrd_condition(desc: CodeDescriptor) -> bool | None:
    """``N(f1(a)) != (-1)^(mk) N(f2(a))`` for all nonzero ``a`` (additive forms only)."""
    if not desc.is_additive_form:
        return None
    F = desc.gf()
    sign = F.neg(1) if (F.m * desc.k) % 2 else 1
    for a in range(1, F.order):
        lhs = F.rel_norm(desc.f1(F, a), 1)
        rhs = F.mul(sign, F.rel_norm(desc.f2(F, a), 1))
        if lhs == rhs:
            return False
    return True


def eta_condition(desc: CodeDescriptor) -> bool | None:
    """Closed-form MRD condition of the twisted family: ``N_{q^m/q}(eta) != (-1)^(mk)``."""
    if desc.kind != "TwistedSheekey":
        return None
    F = desc.gf()
    sign = F.neg(1) if (F.m * desc.k) % 2 else 1
    return F.rel_norm(desc.eta, 1) != sign


def poly_basis(desc: CodeDescriptor) -> list[SigmaPoly]:
    """A GF(p)-basis of the polynomial space."""
    F = desc.gf()
    pbasis = [F.p ** i for i in range(F.D)]  # digits e_i
    out: list[SigmaPoly] = []
    if desc.is_additive_form:
        f1, f2, k = desc.f1, desc.f2, desc.k
        pairs = FpSpace(F.p, 2 * F.D)
        for b in pbasis:
            c0, ck = f1(F, b), f2(F, b)
            if not pairs.add(_pack_digits(F, (c0, ck))):
                raise ParamViolation("|Im(f1) x Im(f2)| != q^m: a -> (f1(a), f2(a)) is not injective")
            out.append(SigmaPoly.from_terms(F, {0: c0, k: ck}))
        exps = range(1, k)
    else:
        exps = sorted(desc.free_exponents())
    for i in exps:
        for b in pbasis:
            out.append(SigmaPoly.monomial(F, i, b))
    return out


# ---------------------------------------------------------------------------
# packing words into GF(p)-vectors
# ---------------------------------------------------------------------------

def _pack_digits(F: GF, word: Sequence[int]):
    """Concatenated GF(p) coordinates of ``word`` (a bitmask int when p == 2)."""
    if F.p == 2:
        acc = 0
        for i, v in enumerate(word):
            acc |= int(v) << (F.D * i)
        return acc
    out: list[int] = []
    for v in word:
        out.extend(F.coords(int(v)))
    return out


# ---------------------------------------------------------------------------
# rank weight
# ---------------------------------------------------------------------------

def rank_weight(F: GF, v: Sequence[int]) -> int:
    """dim over GF(q) of the span of the entries."""
    return F.fq_rank([int(x) for x in v if int(x)])


def rank_distance(F: GF, u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise LengthMismatch(f"lengths {len(u)} and {len(v)} differ")
    return rank_weight(F, [F.sub(int(a), int(b)) for a, b in zip(u, v)])


def word_sub(F: GF, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    if len(u) != len(v):
        raise LengthMismatch(f"lengths {len(u)} and {len(v)} differ")
    return tuple(F.sub(a, b) for a, b in zip(u, v))


def word_add(F: GF, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    if len(u) != len(v):
        raise LengthMismatch(f"lengths {len(u)} and {len(v)} differ")
    return tuple(F.add(a, b) for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# evaluation codes
# ---------------------------------------------------------------------------

@dataclass
class EvalCode:
    descriptor: CodeDescriptor
    points: tuple[int, ...]
    field: GF
    basis_polys: list[SigmaPoly]
    basis_words: list[tuple[int, ...]]
    min_distance_cache: int | None = None
    mrd_condition: bool | None = None
    eta_condition: bool | None = None
    _word_space: FpSpace | None = dc_field(default=None, repr=False)
    _poly_space: FpSpace | None = dc_field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def dim_p(self) -> int:
        """Dimension over GF(p); ``|C| = p^dim_p``."""
        return len(self.basis_words)

    @property
    def size(self) -> int:
        return self.field.p ** self.dim_p

    @property
    def log_q_size(self) -> Fraction:
        return Fraction(self.dim_p, self.field.ell)

    def codeword(self, f: SigmaPoly) -> tuple[int, ...]:
        """``c_f = (f(alpha_1), ..., f(alpha_n))``."""
        return tuple(f.eval_int(a) for a in self.points)

    def iter_codewords(self) -> Iterator[tuple[int, ...]]:
        """All codewords, streamed (zero first)."""
        F = self.field
        n = self.n
        basis = self.basis_words
        if F.p == 2:
            # Gray code: one addition per step
            cur = (0,) * n
            yield cur
            for i in range(1, 1 << len(basis)):
                bit = (i & -i).bit_length() - 1
                cur = tuple(a ^ b for a, b in zip(cur, basis[bit]))
                yield cur
            return
        multiples = [[tuple(F.scale_int(x, c) for x in b) for c in range(F.p)] for b in basis]

        def rec(idx: int, acc: tuple[int, ...]):
            if idx == len(basis):
                yield acc
                return
            for c in range(F.p):
                yield from rec(idx + 1, acc if c == 0 else word_add(F, acc, multiples[idx][c]))

        yield from rec(0, (0,) * n)

    def iter_polys(self) -> Iterator[SigmaPoly]:
        F = self.field
        for digits in itertools.product(range(F.p), repeat=self.dim_p):
            f = SigmaPoly(F, [])
            for c, b in zip(digits, self.basis_polys):
                if c:
                    f = f + b.scalar_mul(c)
            yield f

    def _space(self) -> FpSpace:
        if self._word_space is None:
            sp = FpSpace(self.field.p, self.field.D * self.n)
            for w in self.basis_words:
                sp.add(_pack_digits(self.field, w))
            self._word_space = sp
        return self._word_space

    def contains(self, word: Sequence[int]) -> bool:
        """Exact membership of a word (GF(p)-linear algebra, no enumeration)."""
        if len(word) != self.n:
            raise LengthMismatch(f"word length {len(word)} != n={self.n}")
        return self._space().contains(_pack_digits(self.field, [int(x) for x in word]))

    def contains_poly(self, f: SigmaPoly) -> bool:
        """Membership of a polynomial in the descriptor's polynomial space."""
        if self._poly_space is None:
            sp = FpSpace(self.field.p, self.field.D * self.field.m)
            for b in self.basis_polys:
                sp.add(_pack_digits(self.field, _padded(b, self.field.m)))
            self._poly_space = sp
        return self._poly_space.contains(_pack_digits(self.field, _padded(f, self.field.m)))

    def to_dict(self) -> dict:
        return {
            "descriptor": self.descriptor.to_dict(),
            "points": list(self.points),
            "n": self.n,
            "log_q_size": str(self.log_q_size),
            "mrd_condition": self.mrd_condition,
            "eta_condition": self.eta_condition,
        }


def _padded(f: SigmaPoly, m: int) -> list[int]:
    c = list(f.coeffs)
    return c + [0] * (m - len(c))


def build_code(desc: CodeDescriptor, points: Sequence[int], *, check_mrd: bool = True) -> EvalCode:
    """Evaluate the descriptor's space at ``points``."""
    F = desc.gf()
    pts = tuple(int(a) for a in points)
    n = len(pts)
    if n == 0 or n > F.m:
        raise ParamViolation(f"need 1 <= n <= m (n={n}, m={F.m})")
    if F.fq_rank(list(pts)) != n:
        raise DependentPoints("evaluation points are GF(q)-linearly dependent")
    if desc.max_sigma_degree() >= F.m:
        raise ParamViolation("sigma-degree of the space reaches m")
    polys = poly_basis(desc)
    words = [tuple(f.eval_int(a) for a in pts) for f in polys]
    code = EvalCode(desc, pts, F, polys, words)
    if check_mrd:
        code.mrd_condition = mrd_condition(desc)
        code.eta_condition = eta_condition(desc)
    return code


def subfield_points(F: GF, n: int, beta: int = 1) -> list[int]:
    """``beta * gamma^i`` (``i < n``) with ``gamma`` primitive in GF(q^n): a basis of beta GF(q^n)."""
    if beta == 0:
        raise ParamViolation("beta must be nonzero")
    gamma = F.subfield_generator(n)
    out, v = [], beta
    for _ in range(n):
        out.append(v)
        v = F.mul(v, gamma)
    return out


def is_subfield_basis(F: GF, points: Sequence[int], n: int | None = None) -> tuple[bool, int | None]:
    """Whether the points form a GF(q)-basis of ``beta GF(q^n)``; returns ``(ok, beta)``."""
    pts = [int(a) for a in points]
    n = len(pts) if n is None else n
    if len(pts) != n or F.m % n or not pts or pts[0] == 0:
        return False, None
    beta = pts[0]
    binv = F.inv(beta)
    if not all(F.in_subfield(F.mul(a, binv), n) for a in pts):
        return False, None
    if F.fq_rank(pts) != n:
        return False, None
    return True, beta


# ---------------------------------------------------------------------------
# distance
# ---------------------------------------------------------------------------

def _projective_polys(code: EvalCode) -> Iterator[SigmaPoly]:
    """One representative per GF(q^m)*-orbit of nonzero polynomials (monomial spans)."""
    F = code.field
    exps = sorted(code.descriptor.free_exponents())
    for lead_pos in range(len(exps)):
        rest = exps[lead_pos + 1:]
        for tail in itertools.product(range(F.order), repeat=len(rest)):
            terms = {exps[lead_pos]: 1}
            terms.update({e: c for e, c in zip(rest, tail) if c})
            yield SigmaPoly.from_terms(F, terms)


def weight_enumeration_size(code: EvalCode) -> int:
    if code.descriptor.fqm_linear:
        k = len(code.descriptor.free_exponents())
        q_m = code.field.order
        return (q_m ** k - 1) // (q_m - 1)
    return code.size - 1


def min_distance(code: EvalCode, budget: int = DEFAULT_BUDGET) -> int:
    """Exact minimum rank distance by weight enumeration.

    Monomial-span codes are GF(q^m)-linear and rank weight is invariant under
    GF(q^m)* scaling, so one word per projective point suffices.
    """
    if code.dim_p == 0:
        raise DegenerateCode("a one-word code has no pair of distinct codewords")
    work = weight_enumeration_size(code)
    if work > budget:
        raise BudgetExceeded(f"{work} weights to enumerate exceeds budget {budget}")
    F = code.field
    best = min(code.n, code.m) + 1
    if code.descriptor.fqm_linear:
        it = (code.codeword(f) for f in _projective_polys(code))
    else:
        it = code.iter_codewords()
        next(it)  # skip zero
    for w in it:
        r = rank_weight(F, w)
        if r < best:
            best = r
            if best == 1:
                break
    code.min_distance_cache = best
    return best


def pairwise_min_distance(code: EvalCode, budget: int = DEFAULT_BUDGET) -> int:
    """Minimum over distinct pairs (generic fallback; quadratic)."""
    if code.dim_p == 0:
        raise DegenerateCode("a one-word code has no pair of distinct codewords")
    if code.size ** 2 > budget:
        raise BudgetExceeded(f"{code.size}^2 pairs exceeds budget {budget}")
    words = list(code.iter_codewords())
    return min(rank_distance(code.field, u, v) for u, v in itertools.combinations(words, 2))


@dataclass(frozen=True)
class SingletonResult:
    is_mrd: bool
    defect: Fraction
    d: int
    bound_log_q: int
    log_q_size: Fraction
    degenerate: bool = False

    def to_dict(self) -> dict:
        return {"is_MRD": self.is_mrd, "defect": str(self.defect), "d": self.d,
                "bound_log_q": self.bound_log_q, "log_q_size": str(self.log_q_size),
                "degenerate": self.degenerate}


def singleton_check(code: EvalCode, d: int | None = None, budget: int = DEFAULT_BUDGET) -> SingletonResult:
    """Compare ``|C|`` with ``q^(max(m,n) (min(m,n) - d + 1))``.

    A one-word code takes ``d = min(m, n) + 1`` so the bound is ``q^0 = |C|``;
    it is flagged ``degenerate``.
    """
    m, n = code.m, code.n
    degenerate = code.dim_p == 0
    if degenerate:
        d = min(m, n) + 1
    elif d is None:
        d = code.min_distance_cache if code.min_distance_cache is not None else min_distance(code, budget)
    bound = max(m, n) * (min(m, n) - d + 1)
    defect = bound - code.log_q_size
    return SingletonResult(defect == 0, defect, d, bound, code.log_q_size, degenerate)


def distance_sandwich(code: EvalCode, d: int, k: int, h: int) -> bool:
    """``n - h <= d <= n - k + 1`` for a space of size q^(mk) with distance m - h."""
    return code.n - h <= d <= code.n - k + 1


def cj_mbound(q: int, s: int, k: int) -> int:
    """Smallest ``m`` above the threshold under which the omitted-monomial code is not MRD."""
    if q <= 5:
        raise ParamViolation(f"need q > 5 (q={q})")
    if k < 3:
        raise ParamViolation(f"need k >= 3 (k={k})")
    if s < 1:
        raise ParamViolation("need s >= 1")
    if k == 3:
        return 12 * s + 3
    # m > 13 s k / 3 + log_q(13 * 2^(10/3)); the log term is irrational, so
    # floor + 1 is the smallest strictly larger integer
    thr = Fraction(13 * s * k, 3) + math.log(13 * 2 ** (10 / 3), q)
    return math.floor(thr) + 1


def contains_monomials(code: EvalCode, exponents: Iterable[int], structural: bool = True) -> bool:
    """Whether ``a x^(sigma^i)`` lies in the code for every ``a`` in GF(q^m) and every listed ``i``.

    The structural route reads the free exponents of the descriptor; the other
    route tests each ``b x^(sigma^i)`` (b in a GF(p)-basis) for membership.
    """
    exps = sorted(set(exponents))
    if any(i < 0 or i >= code.m for i in exps):
        return False
    if structural:
        free = code.descriptor.free_exponents()
        return all(i in free for i in exps)
    F = code.field
    return all(code.contains_poly(SigmaPoly.monomial(F, i, F.p ** e))
               for i in exps for e in range(F.D))


def contains_power_gabidulin(code: EvalCode, h: int, j: int, structural: bool = True) -> bool:
    """Whether ``(G_{m,h,sigma})^(sigma^j)`` (all ``sum_{j<=i<j+h} a_i x^(sigma^i)``) lies in the code."""
    if h < 1 or j < 0:
        return False
    return contains_monomials(code, range(j, j + h), structural)
