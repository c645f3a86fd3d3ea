"""sigma-linearized polynomials over GF(q^m) and their kernels.

A :class:`SigmaPoly` ``sum a_i x^(sigma^i)`` is stored as its coefficient tuple
(ints in the field encoding), always reduced modulo ``x^(sigma^m) - x`` and
trimmed so the last coefficient is nonzero.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

from .errors import DependentBasis, FieldMismatch, ParamViolation, ZeroPolynomial
from .gf_tower import GF, FieldElement
from .linalg import PrimeField, nullspace, rref, solve


def _as_int(F: GF, c) -> int:
    if isinstance(c, FieldElement):
        F._check(c)
        return c.value
    return int(c)


class SigmaPoly:
    """``sum_i a_i x^(sigma^i)`` in L_{m,sigma}, with sigma = x -> x^(q^s)."""

    __slots__ = ("field", "coeffs", "__dict__")

    def __init__(self, field: GF, coeffs: Iterable = ()) -> None:
        m = field.m
        red = [0] * m
        for i, c in enumerate(coeffs):
            c = _as_int(field, c)
            if c:
                red[i % m] = field.add(red[i % m], c)
        while red and red[-1] == 0:
            red.pop()
        self.field = field
        self.coeffs = tuple(red)

    # -- constructors -----------------------------------------------------

    @classmethod
    def monomial(cls, field: GF, i: int, coeff: int = 1) -> "SigmaPoly":
        c = [0] * (i % field.m + 1)
        c[i % field.m] = coeff
        return cls(field, c)

    @classmethod
    def identity(cls, field: GF) -> "SigmaPoly":
        return cls(field, [1])

    @classmethod
    def from_terms(cls, field: GF, terms: dict[int, int]) -> "SigmaPoly":
        size = max(terms) + 1 if terms else 0
        c = [0] * max(size, 0)
        for i, a in terms.items():
            c[i] = a
        return cls(field, c)

    # -- basic protocol ---------------------------------------------------

    @property
    def degree(self) -> int:
        """sigma-degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c)

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def coefficients(self) -> list[FieldElement]:
        return [FieldElement(self.field, c) for c in self.coeffs]

    def __eq__(self, other) -> bool:
        return (isinstance(other, SigmaPoly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.field._key, self.coeffs))

    def __lt__(self, other: "SigmaPoly") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        return (len(self.coeffs), self.coeffs[::-1])

    def __repr__(self) -> str:
        if not self.coeffs:
            return "SigmaPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "x" if i == 0 else f"x^(s^{i})"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "SigmaPoly(" + " + ".join(reversed(terms)) + ")"

    def to_list(self) -> list[list[int]]:
        """Serialization: coefficients low-to-high as GF(p) coordinate vectors."""
        return [list(self.field.coords(c)) for c in self.coeffs]

    @classmethod
    def from_list(cls, field: GF, data: Sequence[Sequence[int]]) -> "SigmaPoly":
        return cls(field, [field.from_coords(c) for c in data])

    def _same(self, other: "SigmaPoly") -> None:
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    # -- algebra ----------------------------------------------------------

    def __add__(self, other: "SigmaPoly") -> "SigmaPoly":
        self._same(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return SigmaPoly(F, [F.add(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __neg__(self) -> "SigmaPoly":
        F = self.field
        return SigmaPoly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other: "SigmaPoly") -> "SigmaPoly":
        self._same(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return SigmaPoly(F, [F.sub(self.coeff(i), other.coeff(i)) for i in range(n)])

    def scalar_mul(self, c) -> "SigmaPoly":
        F = self.field
        c = _as_int(F, c)
        return SigmaPoly(F, [F.mul(c, a) for a in self.coeffs])

    def compose(self, g: "SigmaPoly") -> "SigmaPoly":
        """``self o g`` reduced mod ``x^(sigma^m) - x``."""
        self._same(g)
        F = self.field
        m = F.m
        out = [0] * m
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(g.coeffs):
                if b:
                    k = (i + j) % m
                    out[k] = F.add(out[k], F.mul(a, F.frob(b, i)))
        return SigmaPoly(F, out)

    __matmul__ = compose

    def sigma_power(self, j: int) -> "SigmaPoly":
        """``f(x)^(sigma^j)``, i.e. ``x^(sigma^j) o f``."""
        F = self.field
        out = {}
        for i, a in enumerate(self.coeffs):
            if a:
                out[(i + j) % F.m] = F.frob(a, j)
        return SigmaPoly.from_terms(F, out) if out else SigmaPoly(F)

    def shift(self, j: int) -> "SigmaPoly":
        """``f o x^(sigma^j)``: same coefficients, exponents moved up by ``j``."""
        F = self.field
        out = {}
        for i, a in enumerate(self.coeffs):
            if a:
                out[(i + j) % F.m] = a
        return SigmaPoly.from_terms(F, out) if out else SigmaPoly(F)

    # -- evaluation -------------------------------------------------------

    def __call__(self, x):
        if isinstance(x, FieldElement):
            return FieldElement(self.field, self.eval_int(_as_int(self.field, x)))
        return self.eval_int(x)

    def eval_int(self, x: int) -> int:
        F = self.field
        if x == 0:
            return 0
        acc = 0
        for i, a in enumerate(self.coeffs):
            if a:
                acc = F.add(acc, F.mul(a, F.frob(x, i)))
        return acc

    # -- kernel / rank ----------------------------------------------------

    def fp_matrix_columns(self) -> list[int]:
        """Images of the GF(p) power basis ``p^0, ..., p^(D-1)``."""
        F = self.field
        return [self.eval_int(F.p ** i) for i in range(F.D)]

    @cached_property
    def _kernel(self) -> "FqSubspace":
        F = self.field
        if not self.coeffs:
            raise ZeroPolynomial("kernel of the zero polynomial is the whole field")
        cols = [F.coords(v) for v in self.fp_matrix_columns()]
        D = F.D
        rows = [[cols[j][i] for j in range(D)] for i in range(D)]
        null = nullspace(rows, D, PrimeField(F.p))
        return FqSubspace.from_fp_vectors(F, [F.from_coords(v) for v in null])

    def kernel(self) -> "FqSubspace":
        return self._kernel

    def kernel_dim(self) -> int:
        return self._kernel.dim

    def rank(self) -> int:
        return self.field.m - self.kernel_dim()


# ---------------------------------------------------------------------------
# GF(q)-subspaces of GF(q^m)
# ---------------------------------------------------------------------------

class FqSubspace:
    """A GF(q)-subspace of GF(q^m), canonicalized by its GF(p) echelon basis.

    Two subspaces are equal iff their ``key`` tuples are equal (the reduced
    row-echelon basis of the underlying GF(p)-space is unique).
    """

    __slots__ = ("field", "key", "dim")

    def __init__(self, field: GF, key: tuple[int, ...], dim: int) -> None:
        self.field = field
        self.key = key
        self.dim = dim

    @classmethod
    def from_fp_vectors(cls, F: GF, vecs: Sequence[int]) -> "FqSubspace":
        rows = [F.coords(v) for v in vecs if v]
        if rows:
            # pivot on the highest coordinate first so the key is a sorted tuple
            rev = [list(reversed(r)) for r in rows]
            red, _ = rref(rev, PrimeField(F.p))
            key = tuple(sorted(F.from_coords(list(reversed(r))) for r in red))
        else:
            key = ()
        if len(key) % F.ell:
            raise ParamViolation("span is not closed under GF(q)")
        return cls(F, key, len(key) // F.ell)

    @classmethod
    def span(cls, F: GF, elements: Iterable) -> "FqSubspace":
        elems = [_as_int(F, e) for e in elements]
        basis = F.fq_basis_p
        return cls.from_fp_vectors(F, [F.mul(c, e) for e in elems for c in basis])

    def __eq__(self, other) -> bool:
        return isinstance(other, FqSubspace) and self.field == other.field and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"FqSubspace(dim={self.dim}, key={self.key})"

    def fq_basis(self) -> list[int]:
        """A GF(q)-basis, chosen greedily from the GF(p) key rows."""
        F = self.field
        out: list[int] = []
        for v in self.key:
            if F.fq_rank(out + [v]) > len(out):
                out.append(v)
        return out

    def elements(self) -> list[int]:
        """All elements (GF(p)-combinations of the key rows)."""
        F = self.field
        pts = [0]
        for v in self.key:
            new = []
            for c in range(1, F.p):
                cv = F.scale_int(v, c)
                new.extend(F.add(x, cv) for x in pts)
            pts = pts + new
        return sorted(pts)

    def __contains__(self, x) -> bool:
        F = self.field
        x = _as_int(F, x)
        return FqSubspace.from_fp_vectors(F, list(self.key) + [x]).key == self.key

    def issubset(self, other: "FqSubspace") -> bool:
        return all(v in other for v in self.key)

    def scaled(self, alpha: int) -> "FqSubspace":
        F = self.field
        return FqSubspace.from_fp_vectors(F, [F.mul(alpha, v) for v in self.key])


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def evaluate(f: SigmaPoly, x):
    return f(x)


def compose(f: SigmaPoly, g: SigmaPoly) -> SigmaPoly:
    return f.compose(g)


def adjoint(f: SigmaPoly) -> SigmaPoly:
    """``sum a_i^(sigma^(m-i)) x^(sigma^(m-i))`` (trace-form adjoint)."""
    if f.is_zero():
        raise ZeroPolynomial("adjoint of the zero polynomial")
    F = f.field
    m = F.m
    out = [0] * m
    for i, a in enumerate(f.coeffs):
        if a:
            k = (m - i) % m
            out[k] = F.add(out[k], F.frob(a, m - i))
    return SigmaPoly(F, out)


def shifted_adjoint(f: SigmaPoly) -> SigmaPoly:
    """``(f^)^(sigma^k) = sum_i a_(k-i)^(sigma^i) x^(sigma^i)`` with ``k = deg f``."""
    if f.is_zero():
        raise ZeroPolynomial("shifted adjoint of the zero polynomial")
    F = f.field
    k = f.degree
    return SigmaPoly(F, [F.frob(f.coeff(k - i), i) for i in range(k + 1)])


def kernel(f: SigmaPoly) -> FqSubspace:
    return f.kernel()


def rank(f: SigmaPoly) -> int:
    return f.rank()


def kernel_by_roots(f: SigmaPoly) -> list[int]:
    """Root enumeration over the whole field (test oracle, O(q^m))."""
    return [x for x in f.field.elements() if f.eval_int(x) == 0]


def moore_matrix(F: GF, u: Sequence[int], cols: int) -> list[list[int]]:
    return [[F.frob(ui, j) for j in range(cols)] for ui in u]


def moore_determinant(F: GF, u: Sequence[int]) -> int:
    """det of the square Moore matrix ``(u_i^(sigma^j))`` by elimination."""
    M = moore_matrix(F, u, len(u))
    det = 1
    n = len(M)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = F.neg(det)
        det = F.mul(det, M[c][c])
        inv = F.inv(M[c][c])
        for r in range(c + 1, n):
            if M[r][c]:
                f = F.mul(M[r][c], inv)
                M[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[r], M[c])]
    return det


def moore_subspace_poly(U) -> SigmaPoly:
    """The monic sigma-polynomial of sigma-degree ``dim U`` vanishing exactly on ``U``.

    ``U`` is an :class:`FqSubspace` or a sequence ``(field, basis)``.  The lower
    coefficients solve ``sum_{i<r} a_i u^(sigma^i) = -u^(sigma^r)`` over the
    basis; that Moore system is singular exactly when the basis is dependent.
    """
    if isinstance(U, FqSubspace):
        F, basis = U.field, U.fq_basis()
    else:
        F, basis = U
        basis = [_as_int(F, b) for b in basis]
    r = len(basis)
    if r == 0:
        return SigmaPoly.identity(F)
    if r >= F.m:
        raise ParamViolation(f"subspace dimension {r} must be < m={F.m}")
    M = moore_matrix(F, basis, r)
    rhs = [F.neg(F.frob(u, r)) for u in basis]
    sol = solve(M, rhs, F)
    if sol is None:
        raise DependentBasis("Moore matrix is singular: basis is GF(q)-dependent")
    return SigmaPoly(F, sol + [1])


def is_subspace_poly(f: SigmaPoly) -> bool:
    """Monic and ``dim ker f == deg_sigma f``."""
    if f.is_zero() or not f.is_monic():
        return False
    return f.kernel_dim() == f.degree


def has_max_kernel(f: SigmaPoly) -> bool:
    return not f.is_zero() and f.kernel_dim() == f.degree


def trace_poly(F: GF, n: int | None = None, t: int = 1) -> SigmaPoly:
    """sum_{i < n/t} x^(sigma^(i t)); Tr_{q^n/q^t} when s = 1."""
    n = F.m if n is None else n
    return SigmaPoly.from_terms(F, {i * t: 1 for i in range(n // t)})
