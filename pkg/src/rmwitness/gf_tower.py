"""Exact arithmetic in the tower GF(p) <= GF(q) <= GF(q^m), q = p^ell.

Elements of GF(q^m) are stored once, over the prime field: an element is the
int whose base-``p`` digits are its coordinates in the power basis
``1, x, ..., x^(D-1)`` of ``GF(p)[x]/(modulus)``, ``D = ell*m``.  Subfields are
not separate types; membership in GF(q^r) is the fixed-point test
``a^(q^r) == a``.

Multiplication, inversion, powering and Frobenius maps go through discrete
log tables of a primitive element; addition is XOR in characteristic two and a
Zech-logarithm lookup otherwise.  Table size is ``q^m``, which is why fields
above 2^20 elements are refused.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import (
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    NonDivisorDegree,
    NonIntegerExponent,
    ParamViolation,
)

MAX_ORDER = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# GF(p)[x] helpers on digit lists (low-to-high), only used during setup
# ---------------------------------------------------------------------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _poly_trim([x % p for x in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _poly_trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _poly_mod(prod, f, p)


def _poly_powmod(a: list[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(list(a), f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _poly_trim([x % p for x in a])
    b = _poly_trim([x % p for x in b])
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic ``f`` (digits low-to-high) over GF(p)."""
    D = len(f) - 1
    if D < 1:
        return False
    if D == 1:
        return True
    x = [0, 1]
    # x^(p^D) == x mod f
    h = x
    for _ in range(D):
        h = _poly_powmod(h, p, f, p)
    if _poly_sub(h, x, p):
        return False
    for r in prime_factors(D):
        h = x
        for _ in range(D // r):
            h = _poly_powmod(h, p, f, p)
        g = _poly_gcd(list(f), _poly_sub(h, x, p), p)
        if len(g) > 1:
            return False
    return True


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _poly_trim([(u - v) % p for u, v in zip(a, b)])


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, D: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``D`` over GF(p).

    Candidates are ordered by the base-``p`` value of their lower coefficients,
    i.e. compared from ``x^(D-1)`` down to the constant term.
    """
    for low in range(p ** D):
        digits = []
        v = low
        for _ in range(D):
            digits.append(v % p)
            v //= p
        f = digits + [1]
        if D > 1 and f[0] == 0:
            continue
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# log tables for GF(p^D)
# ---------------------------------------------------------------------------

class _Tables:
    __slots__ = ("p", "D", "N", "modulus", "gen", "exp", "log", "zech", "half")

    def __init__(self, p: int, D: int, modulus: tuple[int, ...]) -> None:
        self.p, self.D, self.modulus = p, D, modulus
        N = p ** D
        self.N = N
        gen = self._find_generator()
        self.gen = gen
        exp = [0] * (2 * (N - 1))
        log = [-1] * N
        v = 1
        gdig = self._digits(gen)
        for i in range(N - 1):
            exp[i] = v
            log[v] = i
            v = self._mul_slow(v, gen, gdig)
        assert v == 1, "generator order mismatch"
        exp[N - 1:] = exp[: N - 1]
        self.exp, self.log = exp, log
        self.half = (N - 1) // 2 if p != 2 else 0
        if p == 2:
            self.zech = None
        else:
            zech = [-1] * (N - 1)
            for d in range(N - 1):
                e = exp[d]
                one_plus = e + 1 if e % p != p - 1 else e - (p - 1)
                zech[d] = log[one_plus]
            self.zech = zech

    def _digits(self, v: int) -> list[int]:
        out = []
        for _ in range(self.D):
            out.append(v % self.p)
            v //= self.p
        return _poly_trim(out)

    def _from_digits(self, d: Sequence[int]) -> int:
        v = 0
        for x in reversed(d):
            v = v * self.p + x
        return v

    def _mul_slow(self, a: int, b: int, bdig: list[int] | None = None) -> int:
        p = self.p
        if p == 2:
            # carry-less multiply then reduce
            r = 0
            x = a
            y = b
            while y:
                if y & 1:
                    r ^= x
                x <<= 1
                y >>= 1
            mod = self._from_digits(self.modulus)
            D = self.D
            while r.bit_length() > D:
                r ^= mod << (r.bit_length() - 1 - D)
            return r
        prod = _poly_mulmod(self._digits(a), bdig if bdig is not None else self._digits(b),
                            self.modulus, p)
        return self._from_digits(prod)

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        N = self.N
        if N == 2:
            return 1
        factors = prime_factors(N - 1)
        for g in range(2, N):
            if all(self._pow_slow(g, (N - 1) // r) != 1 for r in factors):
                return g
        raise AssertionError("no primitive element")  # pragma: no cover


@lru_cache(maxsize=None)
def _tables(p: int, D: int) -> _Tables:
    return _Tables(p, D, smallest_irreducible(p, D))


# ---------------------------------------------------------------------------
# public field object
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldParams:
    """Serializable description of the tower ``GF(p) <= GF(p^ell) <= GF(p^(ell*m))``."""

    p: int
    ell: int
    m: int
    s: int
    modulus: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"p": self.p, "ell": self.ell, "m": self.m, "s": self.s,
                "modulus": list(self.modulus)}

    @classmethod
    def from_dict(cls, d: dict) -> "FieldParams":
        return cls(int(d["p"]), int(d["ell"]), int(d["m"]), int(d.get("s", 1)),
                   tuple(int(c) for c in d["modulus"]))


class GF:
    """The field GF(q^m), q = p^ell, with Frobenius step ``sigma: x -> x^(q^s)``.

    Use :meth:`GF.get` for cached instances.  Int-level methods (``add``,
    ``mul``, ``frob`` ...) are what the rest of the package uses in inner
    loops; :meth:`__call__` wraps an int as a :class:`FieldElement`.
    """

    def __init__(self, p: int, m: int, ell: int = 1, s: int = 1,
                 max_order: int | None = None) -> None:
        if not is_prime(p):
            raise ParamViolation(f"p={p} is not prime")
        if ell < 1 or m < 1:
            raise ParamViolation("ell and m must be positive")
        if math.gcd(s, m) != 1:
            raise ParamViolation(f"gcd(s={s}, m={m}) != 1: sigma does not generate Gal")
        D = ell * m
        if max_order is None:
            max_order = MAX_ORDER  # read at call time so the CLI's --force can raise it
        if p ** D > max_order:
            raise FieldTooLarge(f"q^m = {p}^{D} exceeds the desk-scale limit {max_order}")
        self.p, self.ell, self.m, self.s = p, ell, m, s % m if m > 1 else s
        self.q = p ** ell
        self.D = D
        self.order = p ** D
        t = _tables(p, D)
        self._t = t
        self.modulus = t.modulus
        self.generator = t.gen
        self._exp, self._log = t.exp, t.log
        self._n1 = self.order - 1
        # q^j mod (order-1), j = 0..m-1
        self._qpow = [pow(self.q, j, self._n1) if self._n1 > 1 else 1 for j in range(m)]
        self.params = FieldParams(p, ell, m, s, t.modulus)
        self._key = (p, ell, m, s)

    @classmethod
    @lru_cache(maxsize=None)
    def get(cls, p: int, m: int, ell: int = 1, s: int = 1) -> "GF":
        return cls(p, m, ell, s)

    @classmethod
    def from_params(cls, params: FieldParams | dict) -> "GF":
        if isinstance(params, dict):
            params = FieldParams.from_dict(params)
        F = cls.get(params.p, params.m, params.ell, params.s)
        if tuple(params.modulus) != F.modulus:
            raise FieldMismatch(f"modulus {params.modulus} differs from canonical {F.modulus}")
        return F

    def to_dict(self) -> dict:
        return self.params.to_dict()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.D}; q={self.q}, m={self.m}, s={self.s})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    # -- element helpers --------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            self._check(value)
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_coords(value))
        v = int(value)
        if not 0 <= v < self.order:
            raise ParamViolation(f"{v} is not an element encoding of {self}")
        return FieldElement(self, v)

    def _check(self, e: "FieldElement") -> None:
        if e.field is not self and e.field != self:
            raise FieldMismatch(f"{e.field} vs {self}")

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> range:
        """All element encodings, in the canonical total order (by int value)."""
        return range(self.order)

    def coords(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.D):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coords(self, c: Sequence[int]) -> int:
        if len(c) != self.D:
            raise ParamViolation(f"expected {self.D} coordinates, got {len(c)}")
        v = 0
        for x in reversed(c):
            v = v * self.p + (int(x) % self.p)
        return v

    # -- int-level arithmetic --------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self._log[a], self._log[b]
        d = lb - la
        if d < 0:
            d += self._n1
        z = self._t.zech[d]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self._exp[self._log[a] + self._t.half]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0")
        la = self._log[a]
        return self._exp[(self._n1 - la) % self._n1]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        """``a**e`` for an arbitrary-precision (possibly negative) exponent."""
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise DivisionByZero("0 to a negative power")
        return self._exp[(self._log[a] * (e % self._n1)) % self._n1]

    def log(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("log of 0")
        return self._log[a]

    def exp(self, i: int) -> int:
        return self._exp[i % self._n1]

    def sum(self, values) -> int:
        acc = 0
        for v in values:
            acc = self.add(acc, v)
        return acc

    def scale_int(self, a: int, c: int) -> int:
        """``c * a`` for an integer ``c`` (repeated addition, reduced mod p)."""
        c %= self.p
        if c == 0 or a == 0:
            return 0
        if c == 1:
            return a
        return self.mul(a, c)  # the int c < p encodes the prime-field element c

    # -- Frobenius, trace, norm -------------------------------------------

    def frob(self, a: int, i: int = 1) -> int:
        """``a^(sigma^i) = a^(q^(s*i mod m))``."""
        if a == 0:
            return 0
        j = (self.s * i) % self.m
        if j == 0:
            return a
        return self._exp[(self._log[a] * self._qpow[j]) % self._n1]

    def qpow(self, a: int, j: int) -> int:
        """``a^(q^j)`` (plain q-Frobenius, independent of ``s``)."""
        if a == 0:
            return 0
        j %= self.m
        if j == 0:
            return a
        return self._exp[(self._log[a] * self._qpow[j]) % self._n1]

    def _level(self, n: int | None) -> int:
        n = self.m if n is None else n
        if n < 1 or self.m % n:
            raise NonDivisorDegree(f"level {n} does not divide m={self.m}")
        return n

    def in_subfield(self, a: int, r: int) -> bool:
        """True iff ``a`` lies in GF(q^r); ``r`` must divide ``m``."""
        self._level(r)
        return self.qpow(a, r) == a

    def subfield_elements(self, r: int) -> list[int]:
        """GF(q^r) inside GF(q^m): 0 followed by ``g^(k (N-1)/(q^r-1))``."""
        r = self._level(r)
        size = self.q ** r
        step = self._n1 // (size - 1)
        return [0] + sorted(self._exp[k * step] for k in range(size - 1))

    def subfield_generator(self, r: int) -> int:
        r = self._level(r)
        return self._exp[self._n1 // (self.q ** r - 1)]

    def rel_trace(self, a: int, r: int, n: int | None = None) -> int:
        """Tr_{q^n/q^r}(a) = sum_{i < n/r} a^(q^(i r))."""
        n = self._level(n)
        if r < 1 or n % r:
            raise NonDivisorDegree(f"r={r} does not divide n={n}")
        acc = 0
        for i in range(n // r):
            acc = self.add(acc, self.qpow(a, i * r))
        return acc

    def rel_norm(self, a: int, r: int, n: int | None = None) -> int:
        """N_{q^n/q^r}(a) = a^((q^n - 1)/(q^r - 1))."""
        n = self._level(n)
        if r < 1 or n % r:
            raise NonDivisorDegree(f"r={r} does not divide n={n}")
        if a == 0:
            return 0
        return self.pow(a, (self.q ** n - 1) // (self.q ** r - 1))

    def order_of(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative order")
        return self._n1 // math.gcd(self._log[a], self._n1)

    # -- GF(q)-structure ----------------------------------------------------

    def fq_elements(self) -> list[int]:
        return self.subfield_elements(1)

    @property
    def fq_basis_p(self) -> list[int]:
        """A GF(p)-basis ``1, c, ..., c^(ell-1)`` of GF(q)."""
        c = self.subfield_generator(1)
        out, v = [], 1
        for _ in range(self.ell):
            out.append(v)
            v = self.mul(v, c)
        return out

    def fq_rank(self, values: Sequence[int]) -> int:
        """dim over GF(q) of the GF(q)-span of ``values``."""
        if self.ell == 1:
            spanning = values
        else:
            basis = self.fq_basis_p
            spanning = [self.mul(c, v) for v in values for c in basis]
        if self.p == 2:
            from .linalg import gf2_rank
            r = gf2_rank(spanning)
        else:
            from .linalg import PrimeField, rank
            r = rank([self.coords(v) for v in spanning if v], PrimeField(self.p))
        return r // self.ell

    def fq_coords(self, a: int) -> tuple[int, ...]:
        """Coordinates of ``a`` in the GF(q)-basis ``1, x, ..., x^(m-1)``.

        Entries are GF(q) elements in this field's encoding.
        """
        if self.ell == 1:
            return self.coords(a)
        dual = self._dual_basis()
        return tuple(self.rel_trace(self.mul(a, b), 1) for b in dual)

    def fq_basis(self) -> list[int]:
        """The GF(q)-basis ``1, x, ..., x^(m-1)`` of GF(q^m) (``x`` encodes as ``p``)."""
        x = self.p if self.D > 1 else 1
        out, v = [], 1
        for _ in range(self.m):
            out.append(v)
            v = self.mul(v, x)
        return out

    @lru_cache(maxsize=None)
    def _dual_basis(self) -> tuple[int, ...]:
        from .linalg import rref
        basis = self.fq_basis()
        m = self.m
        gram = [[self.rel_trace(self.mul(bi, bj), 1) for bj in basis] for bi in basis]
        aug = [gram[i] + [1 if i == j else 0 for j in range(m)] for i in range(m)]
        red, piv = rref(aug, self)
        assert piv[:m] == list(range(m)), "trace form degenerate"
        ginv = [row[m:] for row in red]
        dual = []
        for i in range(m):
            acc = 0
            for j in range(m):
                acc = self.add(acc, self.mul(ginv[i][j], basis[j]))
            dual.append(acc)
        return tuple(dual)

    def from_fq_coords(self, c: Sequence[int]) -> int:
        acc = 0
        for ci, b in zip(c, self.fq_basis()):
            acc = self.add(acc, self.mul(ci, b))
        return acc


class FieldElement:
    """Immutable element of a :class:`GF`; supports the usual operators."""

    __slots__ = ("field", "value")

    def __init__(self, field: GF, value: int) -> None:
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def coords(self) -> tuple[int, ...]:
        return self.field.coords(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            self.field._check(other)
            return other.value
        if isinstance(other, int):
            return self.field.scale_int(1, other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(o, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(o, self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, int(e)))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def frobenius(self, i: int = 1) -> "FieldElement":
        return FieldElement(self.field, self.field.frob(self.value, i))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.value == other.value and self.field == other.field
        if isinstance(other, int):
            return self.value == self.field.scale_int(1, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field._key, self.value))

    def __lt__(self, other: "FieldElement") -> bool:
        return self.value < other.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"FieldElement({self.value}, {self.field!r})"


# ---------------------------------------------------------------------------
# free functions mirroring the operation list
# ---------------------------------------------------------------------------

def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def frobenius(a: FieldElement, i: int) -> FieldElement:
    return a.frobenius(i)


def rel_trace(a: FieldElement, r: int, n: int | None = None) -> FieldElement:
    return FieldElement(a.field, a.field.rel_trace(a.value, r, n))


def rel_norm(a: FieldElement, r: int, n: int | None = None) -> FieldElement:
    return FieldElement(a.field, a.field.rel_norm(a.value, r, n))


def sigma_power(q: int, s: int, i: int) -> int:
    """The integer ``sigma^i`` stands for as an exponent: ``q^(s i)``."""
    return q ** (s * i)


def exponent_reduce(num: int, den: int, modulus_order: int) -> int:
    """``(num / den) mod modulus_order`` where the division must be exact."""
    if den == 0:
        raise NonIntegerExponent("zero denominator")
    quo, rem = divmod(num, den)
    if rem:
        raise NonIntegerExponent(f"{num} / {den} is not an integer")
    return quo % modulus_order


def iter_nonzero(F: GF) -> Iterator[int]:
    return iter(range(1, F.order))
