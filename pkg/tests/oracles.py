"""Brute-force reference implementations used to derive and cross-check test values.

Nothing here imports the package's arithmetic: elements are ints whose base-p
digits are polynomial coefficients (the package's documented encoding) and
products are schoolbook polynomial products reduced by the modulus.
"""

from __future__ import annotations

import itertools
from math import log


class SchoolbookField:
    def __init__(self, p: int, modulus, q: int | None = None, s: int = 1):
        self.p = p
        self.modulus = list(modulus)  # low-to-high, monic
        self.D = len(self.modulus) - 1
        self.order = p ** self.D
        self.q = q if q is not None else p
        self.s = s
        self.m = round(log(self.order, self.q))

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.D):
            out.append(a % self.p)
            a //= self.p
        return out

    def value(self, d) -> int:
        v = 0
        for x in reversed(d):
            v = v * self.p + x
        return v

    def add(self, a: int, b: int) -> int:
        return self.value([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        return self.value([(-x) % self.p for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.D)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        for k in range(len(prod) - 1, self.D - 1, -1):
            c = prod[k]
            if c:
                for i, mc in enumerate(self.modulus):
                    prod[k - self.D + i] = (prod[k - self.D + i] - c * mc) % self.p
        return self.value(prod[: self.D])

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        return self.pow(a, self.order - 2)

    def frob(self, a: int, i: int) -> int:
        """a^(q^(s i)), computed by repeated q-th powering."""
        for _ in range((self.s * i) % self.m):
            a = self.pow(a, self.q)
        return a

    def sigma_eval(self, coeffs, x: int) -> int:
        acc, xi = 0, x
        for c in coeffs:
            acc = self.add(acc, self.mul(c, xi))
            xi = self.frob(xi, 1)
        return acc

    def fq_elements(self) -> list[int]:
        return [a for a in range(self.order) if self.pow(a, self.q) == a]

    def trace(self, a: int) -> int:
        """Absolute trace to GF(p)."""
        acc, x = 0, a
        for _ in range(self.D):
            acc = self.add(acc, x)
            x = self.pow(x, self.p)
        return acc


def kernel_roots(F: SchoolbookField, coeffs) -> list[int]:
    return [x for x in range(F.order) if F.sigma_eval(coeffs, x) == 0]


def fq_span(F: SchoolbookField, elems) -> set[int]:
    """The GF(q)-span of ``elems`` as a set, by closure."""
    scalars = F.fq_elements()
    span = {0}
    for v in elems:
        span = {F.add(s, F.mul(c, v)) for s in span for c in scalars}
    return span


def rank_weight(F: SchoolbookField, word) -> int:
    return round(log(len(fq_span(F, word)), F.q))


def rank_distance(F: SchoolbookField, u, v) -> int:
    return rank_weight(F, [F.sub(a, b) for a, b in zip(u, v)])


def poly_irreducible(p: int, f) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    D = len(f) - 1
    for d in range(1, D // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            r = list(f)
            for k in range(len(r) - 1, d - 1, -1):
                c = r[k]
                if c:
                    for i, gc in enumerate(g):
                        r[k - d + i] = (r[k - d + i] - c * gc) % p
            if not any(r[:d]):
                return False
    return True


def smallest_irreducible(p: int, D: int):
    """First monic irreducible, coefficients compared from x^(D-1) down to x^0."""
    for high_to_low in itertools.product(range(p), repeat=D):
        f = list(reversed(high_to_low)) + [1]
        if (f[0] or D == 1) and poly_irreducible(p, f):
            return tuple(f)
    raise AssertionError("no irreducible found")


def count_subspaces(q_elems, n: int, r: int) -> int:
    """Distinct spans of r-tuples in GF(q)^n (prime q), counted as sets of vectors."""
    p = len(q_elems)
    vecs = list(itertools.product(range(p), repeat=n))

    def span(basis):
        out = set()
        for coef in itertools.product(range(p), repeat=len(basis)):
            out.add(tuple(sum(c * b[i] for c, b in zip(coef, basis)) % p for i in range(n)))
        return frozenset(out)

    seen = set()
    for basis in itertools.combinations(vecs, r):
        s = span(basis)
        if len(s) == p ** r:
            seen.add(s)
    return len(seen)


def gf2_span(rows) -> frozenset:
    out = {0}
    for r in rows:
        out |= {x ^ r for x in out}
    return frozenset(out)


def subspace_distance_sets(U: frozenset, V: frozenset) -> int:
    du, dv, di = len(U).bit_length() - 1, len(V).bit_length() - 1, len(U & V).bit_length() - 1
    return du + dv - 2 * di
