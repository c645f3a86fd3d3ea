from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import gf2_span, subspace_distance_sets
from rmwitness.errors import AmbientMismatch, DegenerateCode, DimensionMismatch, FieldMismatch
from rmwitness.gf_tower import GF
from rmwitness.list_witness import WitnessReport, WitnessSpec, build_witness
from rmwitness.rm_codes import CodeDescriptor, build_code, rank_distance, subfield_points
from rmwitness.subspace_families import FamilySpec
from rmwitness.subspace_lift import (
    SubspaceCodeword,
    grassmannian,
    lift,
    lift_code,
    subspace_distance,
    verify_lift_ball,
)

F2 = GF.get(2, 2)


def as_set(U: SubspaceCodeword) -> frozenset:
    """GF(2) subspace as a set of bitmask vectors (oracle side)."""
    return gf2_span([sum(b << i for i, b in enumerate(row)) for row in U.basis])


def gab(m: int, k: int, n: int | None = None):
    F = GF.get(2, m)
    return build_code(CodeDescriptor.gabidulin(F, k), subfield_points(F, n or m))


# -- lift ------------------------------------------------------------------

def test_lift_zero_is_identity_block():
    U = lift(F2, [[0, 0], [0, 0]])
    assert U.basis == ((1, 0, 0, 0), (0, 1, 0, 0))
    assert U.ambient_dim == 4 and U.dim == 2


def test_lift_vector_matches_coordinate_matrix():
    F = GF.get(2, 4)
    v = (3, 5)
    assert lift(F, v) == lift(F, [list(F.fq_coords(a)) for a in v], m=4)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 15), min_size=3, max_size=3), st.lists(st.integers(0, 15), min_size=3, max_size=3))
def test_lift_is_injective_and_doubles_rank_distance(a, b):
    F = GF.get(2, 4)
    La, Lb = lift(F, a), lift(F, b)
    assert (La == Lb) == (a == b)
    assert subspace_distance(La, Lb) == 2 * rank_distance(F, a, b)


def test_lift_shape_errors():
    with pytest.raises(DimensionMismatch):
        lift(F2, [[0, 1], [1]])
    with pytest.raises(DimensionMismatch):
        lift(F2, [1, 2], m=3)
    with pytest.raises(DimensionMismatch):
        lift(F2, [])


# -- distance --------------------------------------------------------------

def test_distance_examples():
    U = lift(F2, [[1, 0], [0, 1]])
    assert subspace_distance(U, U) == 0
    A = SubspaceCodeword.from_rows(F2, [[1, 0, 0, 0], [0, 1, 0, 0]])
    B = SubspaceCodeword.from_rows(F2, [[0, 0, 1, 0], [0, 0, 0, 1]])
    assert subspace_distance(A, B) == 4
    with pytest.raises(AmbientMismatch):
        subspace_distance(A, SubspaceCodeword.from_rows(F2, [[1, 0, 0]]))
    with pytest.raises(FieldMismatch):
        subspace_distance(A, SubspaceCodeword.from_rows(GF.get(3, 2), [[1, 0, 0, 0], [0, 1, 0, 0]]))


def test_from_rows_canonical_form():
    a = SubspaceCodeword.from_rows(F2, [[1, 1, 0, 0], [0, 1, 1, 0]])
    b = SubspaceCodeword.from_rows(F2, [[1, 0, 1, 0], [1, 1, 0, 0]])
    assert a == b


def test_metric_on_grassmannian_g2_4_2():
    subs = list(grassmannian(F2, 4, 2))
    assert len(subs) == 35
    sets = [as_set(U) for U in subs]
    assert len(set(sets)) == 35
    D = [[subspace_distance(U, V) for V in subs] for U in subs]
    for i, j in itertools.product(range(35), repeat=2):
        # [DERIVED: intersection sizes of the spanned sets]
        assert D[i][j] == subspace_distance_sets(sets[i], sets[j])
        assert D[i][j] == D[j][i]
        assert (D[i][j] == 0) == (i == j)
    for i, j, k in itertools.product(range(35), repeat=3):
        assert D[i][k] <= D[i][j] + D[j][k]


# -- lifted codes ----------------------------------------------------------

def test_lift_gabidulin_q2_n2_k1():
    lc = lift_code(gab(2, 1))
    assert lc.params == (4, 4, 4, 2)
    assert lc.d_R == 2 and lc.distinct and lc.law_holds and lc.pairs == 6


def test_lift_gabidulin_q2_n2_k1_four_distinct_subspaces():
    lc = lift_code(gab(2, 1))
    assert len({as_set(U) for U in lc.words}) == 4


def test_lift_gabidulin_n4_k2_law():
    lc = lift_code(gab(4, 2))
    assert lc.params == (8, 256, 6, 4) and lc.law_holds


def test_lift_gf9_code():
    F = GF.get(3, 2)
    code = build_code(CodeDescriptor.gabidulin(F, 1), subfield_points(F, 2))
    lc = lift_code(code)
    assert lc.params == (4, 9, 4, 2) and lc.law_holds


def test_lift_degenerate_code():
    code = gab(2, 1)
    code.basis_words, code.basis_polys = [], []
    with pytest.raises(DegenerateCode):
        lift_code(code)


# -- lifted witness balls --------------------------------------------------

def _reports():
    code3 = gab(4, 2)
    yield build_witness(WitnessSpec(code=code3, mode="GeneralBasis", h=2, tau=2))
    code4 = gab(4, 1)
    fam = FamilySpec("Binomial_N", 2, 4, t=2)
    yield build_witness(WitnessSpec(code=code4, mode="SubfieldBasis", h=1, l=2, family=fam))
    F8 = GF.get(2, 8)
    code4b = build_code(CodeDescriptor.gabidulin(F8, 1), subfield_points(F8, 4, F8.generator))
    yield build_witness(WitnessSpec(code=code4b, mode="SubfieldBasis", h=1, l=2, family=fam))


@pytest.mark.parametrize("idx", [0, 1, 2])
def test_verify_lift_ball_on_witnesses(idx):
    rep = list(_reports())[idx]
    res = verify_lift_ball(rep)
    assert res.passed and res.subspace_radius == 2 * rep.radius
    assert res.lifted_list_bound >= rep.list_size
    assert all(ds == 2 * rep.radius for ds in res.distances)


def test_verify_lift_ball_after_json_roundtrip():
    rep = next(_reports())
    again = WitnessReport.from_dict(rep.to_dict())
    assert verify_lift_ball(again).passed


def test_verify_lift_ball_negative_control():
    rep = WitnessReport.from_dict(next(_reports()).to_dict())
    F = GF.get(2, 4)
    rng = random.Random(1)
    while True:
        far = tuple(rng.randrange(16) for _ in range(4))
        if rank_distance(F, rep.w, far) > rep.radius:
            break
    rep.words[3] = far
    res = verify_lift_ball(rep)
    assert not res.passed and res.lifted_list_bound == 0


def test_verify_lift_ball_empty_list_is_vacuous():
    rep = WitnessReport.from_dict(next(_reports()).to_dict())
    rep.words = []
    rep.radius = 0
    assert verify_lift_ball(rep).passed
