from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import SchoolbookField, smallest_irreducible
from rmwitness.errors import (
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    NonDivisorDegree,
    NonIntegerExponent,
    ParamViolation,
)
from rmwitness.gf_tower import GF, FieldElement, arith, exponent_reduce, frobenius, rel_norm, rel_trace


def oracle(F: GF) -> SchoolbookField:
    return SchoolbookField(F.p, F.modulus, q=F.q, s=F.s)


@pytest.mark.parametrize("p,D", [(2, 1), (2, 4), (2, 6), (2, 8), (3, 1), (3, 3), (3, 4), (5, 2), (7, 2)])
def test_modulus_is_smallest_irreducible(p, D):
    assert GF.get(p, D).modulus == smallest_irreducible(p, D)


def test_gf16_modulus_frozen():
    # x^4 + x + 1 [DERIVED: trial-division oracle]
    assert GF.get(2, 4).modulus == (1, 1, 0, 0, 1)
    assert GF.get(3, 3).modulus == (1, 2, 0, 1)


@pytest.mark.parametrize("p,m,ell", [(2, 4, 1), (3, 3, 1), (2, 2, 2), (5, 2, 1)])
def test_multiplication_matches_schoolbook(p, m, ell):
    F = GF.get(p, m, ell)
    O = oracle(F)
    for a in range(F.order):
        for b in range(F.order):
            assert F.mul(a, b) == O.mul(a, b)
            assert F.add(a, b) == O.add(a, b)


def test_multiplication_sampled_gf2_12():
    F = GF.get(2, 12)
    O = oracle(F)
    rng = random.Random(7)
    for _ in range(500):
        a, b = rng.randrange(F.order), rng.randrange(F.order)
        assert F.mul(a, b) == O.mul(a, b)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 26), st.integers(0, 26))
def test_field_axioms_gf27(a, b):
    F = GF.get(3, 3)
    assert F.add(a, 0) == a
    assert F.sub(F.add(a, b), b) == a
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.mul(F.div(b, a), a) == b


def test_char2_doubling_vanishes():
    F = GF.get(2, 4)
    assert all(F.add(a, a) == 0 for a in range(16))


def test_division_by_zero():
    F = GF.get(2, 4)
    with pytest.raises(DivisionByZero):
        F.inv(0)
    with pytest.raises(DivisionByZero):
        F.div(3, 0)
    with pytest.raises(DivisionByZero):
        F.pow(0, -1)
    with pytest.raises(DivisionByZero):
        F(5) / F(0)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        GF.get(2, 4)(3) + GF.get(2, 3)(3)


def test_field_element_wrapper_roundtrip():
    F = GF.get(3, 2)
    a, b = F(4), F(7)
    assert isinstance(a * b, FieldElement)
    assert int(arith(a, b, "mul")) == F.mul(4, 7)
    assert int(arith(a, b, "div")) == F.div(4, 7)
    assert a ** 8 == F.one
    assert (a - a) == F.zero


def test_pow_large_and_negative_exponents():
    F = GF.get(2, 7)
    g = F.generator
    assert F.pow(g, 127 * 10 ** 30 + 5) == F.pow(g, 5)
    assert F.mul(F.pow(g, -3), F.pow(g, 3)) == 1


def test_field_too_large():
    with pytest.raises(FieldTooLarge):
        GF(2, 21)
    with pytest.raises(ParamViolation):
        GF(4, 2)
    with pytest.raises(ParamViolation):
        GF(2, 4, s=2)


# -- Frobenius -------------------------------------------------------------

def test_frobenius_fixed_set_gf16():
    F = GF.get(2, 4)
    # [DERIVED: schoolbook a^2 == a over all 16 elements]
    assert [a for a in range(16) if F.frob(a, 1) == a] == [0, 1]
    O = oracle(F)
    assert [a for a in range(16) if O.frob(a, 1) == a] == [0, 1]


@pytest.mark.parametrize("p,m,ell,s", [(2, 4, 1, 1), (2, 4, 1, 3), (3, 3, 1, 2), (2, 2, 2, 1), (2, 6, 1, 5)])
def test_frobenius_matches_repeated_powering(p, m, ell, s):
    F = GF.get(p, m, ell, s)
    O = oracle(F)
    for a in range(F.order):
        assert F.frob(a, 0) == a
        assert F.frob(a, m) == a
        assert F.frob(a, 1) == O.frob(a, 1)
        assert F.frob(a, -1) == F.frob(a, m - 1)


def test_frobenius_is_automorphism_exhaustive_gf64():
    F = GF.get(2, 6)
    for a, b in itertools.product(range(64), repeat=2):
        assert F.frob(F.mul(a, b), 1) == F.mul(F.frob(a, 1), F.frob(b, 1))
        assert F.frob(F.add(a, b), 2) == F.add(F.frob(a, 2), F.frob(b, 2))


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 4095), st.integers(0, 4095), st.integers(-20, 20))
def test_frobenius_automorphism_gf4096(a, b, i):
    F = GF.get(2, 12, s=5)
    assert F.frob(F.mul(a, b), i) == F.mul(F.frob(a, i), F.frob(b, i))
    assert F.frob(F.add(a, b), i) == F.add(F.frob(a, i), F.frob(b, i))


def test_frobenius_over_gf4_fixes_gf4():
    F = GF.get(2, 2, ell=2)  # GF(16) over GF(4)
    fixed = [a for a in range(16) if F.frob(a, 1) == a]
    assert fixed == F.fq_elements() and len(fixed) == 4


def test_frobenius_wrapper():
    F = GF.get(3, 3)
    assert int(frobenius(F(5), 1)) == F.pow(5, 3)


# -- trace and norm --------------------------------------------------------

def test_trace_gf4_of_one():
    F = GF.get(2, 2)
    assert F.rel_trace(1, 1) == 0


def test_norm_gf4_generator():
    F = GF.get(2, 2)
    assert F.rel_norm(F.generator, 1) == 1
    assert F.rel_norm(0, 1) == 0


@pytest.mark.parametrize("p,m,r,n", [(2, 4, 1, 4), (2, 4, 2, 4), (2, 6, 2, 6), (2, 6, 1, 3), (3, 4, 2, 4), (3, 3, 1, 3)])
def test_trace_lands_in_subfield_and_is_onto(p, m, r, n):
    F = GF.get(p, m)
    level = F.subfield_elements(n)
    images = [F.rel_trace(a, r, n) for a in level]
    assert set(images) == set(F.subfield_elements(r))
    # balanced: every value hit equally often
    counts = {v: images.count(v) for v in set(images)}
    assert len(set(counts.values())) == 1


@pytest.mark.parametrize("p,m,r", [(2, 4, 2), (2, 6, 3), (3, 4, 2)])
def test_trace_linear_norm_multiplicative(p, m, r):
    F = GF.get(p, m)
    sub = F.subfield_elements(r)
    rng = random.Random(p * m + r)
    for _ in range(200):
        a, b = rng.randrange(F.order), rng.randrange(F.order)
        c = rng.choice(sub)
        assert F.rel_trace(F.add(F.mul(c, a), b), r) == F.add(F.mul(c, F.rel_trace(a, r)), F.rel_trace(b, r))
        assert F.rel_norm(F.mul(a, b), r) == F.mul(F.rel_norm(a, r), F.rel_norm(b, r))
        if a:
            assert (F.q ** r - 1) % F.order_of(F.rel_norm(a, r)) == 0


def test_absolute_trace_matches_schoolbook():
    F = GF.get(2, 6)
    O = oracle(F)
    assert all(F.rel_trace(a, 1) == O.trace(a) for a in range(64))


def test_trace_wrappers_and_non_divisor():
    F = GF.get(2, 6)
    assert int(rel_trace(F(9), 2)) == F.rel_trace(9, 2)
    assert int(rel_norm(F(9), 3)) == F.rel_norm(9, 3)
    with pytest.raises(NonDivisorDegree):
        F.rel_trace(3, 4)
    with pytest.raises(NonDivisorDegree):
        F.rel_norm(3, 4, 6)
    with pytest.raises(NonDivisorDegree):
        F.in_subfield(3, 4)


def test_subfield_lattice():
    F = GF.get(2, 6)
    for r in (1, 2, 3, 6):
        elems = F.subfield_elements(r)
        assert len(elems) == 2 ** r
        assert all(F.in_subfield(a, r) for a in elems)
    assert set(F.subfield_elements(2)) & set(F.subfield_elements(3)) == {0, 1}


# -- exponents and GF(q)-coordinates ---------------------------------------

def test_exponent_reduce_examples():
    assert exponent_reduce(2 - 2, 5, 127) == 0
    # (2^7 - 2)/(2^3 - 1) = 126/7 [DERIVED: integer arithmetic]
    assert exponent_reduce(2 ** 7 - 2, 2 ** 3 - 1, 2 ** 7 - 1) == 18
    assert exponent_reduce(5 * (3 ** 4 - 1), 1, 3 ** 4 - 1) == 0
    with pytest.raises(NonIntegerExponent):
        exponent_reduce(10, 3, 7)
    with pytest.raises(NonIntegerExponent):
        exponent_reduce(10, 0, 7)


@pytest.mark.parametrize("p,m,ell", [(2, 4, 1), (2, 3, 2), (3, 2, 2)])
def test_fq_coordinates_roundtrip(p, m, ell):
    F = GF.get(p, m, ell)
    fq = set(F.fq_elements())
    for a in range(F.order):
        c = F.fq_coords(a)
        assert len(c) == m and set(c) <= fq
        assert F.from_fq_coords(c) == a


def test_fq_rank():
    F = GF.get(2, 3, ell=2)  # GF(64) over GF(4)
    g = F.generator
    c = F.fq_elements()[2]
    assert F.fq_rank([1, c]) == 1
    assert F.fq_rank([1, g, F.mul(g, g)]) == 3
    assert F.fq_rank([0, 0]) == 0
