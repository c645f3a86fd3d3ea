"""Small dense linear algebra over a finite field given by its int-level ops.

The routines accept any object exposing ``add``, ``sub``, ``mul``, ``inv`` and
``neg`` on ints with ``0``/``1`` as the neutral elements -- both
:class:`PrimeField` and :class:`rmwitness.gf_tower.GF` qualify.  Matrices are
lists of rows (lists of ints).
"""

from __future__ import annotations

from typing import Iterable, Sequence


class PrimeField:
    """Arithmetic mod a prime ``p`` on plain ints."""

    __slots__ = ("p",)

    def __init__(self, p: int) -> None:
        self.p = p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


def rref(rows: Iterable[Sequence[int]], F) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form; returns the nonzero rows and pivot columns."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        lead = mat[r][c]
        if lead != 1:
            li = F.inv(lead)
            mat[r] = [F.mul(li, x) for x in mat[r]]
        row_r = mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                row_i = mat[i]
                mat[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(row_i, row_r)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Iterable[Sequence[int]], F) -> int:
    return len(rref(rows, F)[1])


def nullspace(rows: Sequence[Sequence[int]], ncols: int, F) -> list[list[int]]:
    """Basis of ``{x : A x = 0}`` for the matrix ``A`` given by ``rows``."""
    red, pivots = rref(rows, F) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(red, pivots):
            if row[fc]:
                v[pc] = F.neg(row[fc])
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence[int]], b: Sequence[int], F) -> list[int] | None:
    """Solve the square system ``A x = b``; ``None`` if ``A`` is singular."""
    n = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    red, pivots = rref(aug, F)
    if pivots != list(range(n)):
        return None
    return [red[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# GF(2) on bitmasks: the hot path for rank weights in characteristic two
# ---------------------------------------------------------------------------

def xor_basis_insert(basis: dict[int, int], v: int) -> bool:
    """Insert ``v`` into a GF(2) basis keyed by leading bit; True if it grew."""
    while v:
        hb = v.bit_length() - 1
        b = basis.get(hb)
        if b is None:
            basis[hb] = v
            return True
        v ^= b
    return False


def gf2_rank(vectors: Iterable[int]) -> int:
    basis: dict[int, int] = {}
    r = 0
    for v in vectors:
        if xor_basis_insert(basis, v):
            r += 1
    return r


class FpSpace:
    """Incrementally built GF(p)-subspace of GF(p)^dim with membership tests.

    Vectors are given as digit sequences of length ``dim`` (or as bitmask ints
    when ``p == 2``).
    """

    def __init__(self, p: int, dim: int) -> None:
        self.p = p
        self.dim = dim
        self._F = PrimeField(p)
        self._xor: dict[int, int] = {}
        self._rows: dict[int, list[int]] = {}  # pivot column -> normalized row

    def __len__(self) -> int:
        return len(self._xor) if self.p == 2 else len(self._rows)

    def _reduce(self, v):
        if self.p == 2:
            v = int(v)
            while v:
                hb = v.bit_length() - 1
                b = self._xor.get(hb)
                if b is None:
                    return v, hb
                v ^= b
            return 0, None
        v = [x % self.p for x in v]
        F = self._F
        for c in range(self.dim):
            if v[c]:
                row = self._rows.get(c)
                if row is None:
                    return v, c
                f = v[c]
                v = [F.sub(x, F.mul(f, y)) for x, y in zip(v, row)]
        return v, None

    def add(self, v) -> bool:
        red, pc = self._reduce(v)
        if pc is None:
            return False
        if self.p == 2:
            self._xor[pc] = red
        else:
            li = self._F.inv(red[pc])
            self._rows[pc] = [self._F.mul(li, x) for x in red]
        return True

    def contains(self, v) -> bool:
        return self._reduce(v)[1] is None
