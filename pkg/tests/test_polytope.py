from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import poly
from realehrhart.polytope import (
    DimensionMismatch,
    EmptyPolytope,
    FacetKind,
    NotCodimensionOne,
    NotFullDimensional,
    UnboundedPolytope,
    ZeroNormal,
    affine_hull,
    box,
    faces_report,
    flatten_codim1,
    from_json,
    ppyr_membership,
    ppyr_volume,
    rvol,
    translate,
    validate,
    vertices,
    volume,
)

F = Fraction


def test_validate_segment():
    P = poly(1, [((1,), "1"), ((-1,), "0")])
    assert vertices(P) == [(F(0),), (F(1),)]


def test_validate_rejects_unbounded():
    with pytest.raises(UnboundedPolytope):
        poly(1, [((1,), "1")])


def test_validate_rejects_empty():
    with pytest.raises(EmptyPolytope):
        poly(1, [((1,), "0"), ((-1,), "-1")])


def test_validate_rejects_zero_normal_and_bad_length():
    with pytest.raises(ZeroNormal):
        poly(1, [((0,), "1"), ((1,), "1"), ((-1,), "0")])
    with pytest.raises(DimensionMismatch):
        poly(2, [((1,), "1")])


def test_validate_normalizes_and_merges():
    P = poly(1, [((2,), "2"), ((1,), "3"), ((-1,), "0")])
    assert P.ineqs == (((1,), F(1)), ((-1,), F(0)))


def test_from_json_roundtrip(small_square):
    assert from_json(small_square.to_json()) == small_square


def test_translate(small_square):
    Q = translate(small_square, (1, -1))
    assert Q.ineqs[0] == ((1, 0), F(2))
    assert set(vertices(Q)) == {(x + 1, y - 1) for x, y in vertices(small_square)}


def test_vertices_square(small_square):
    assert vertices(small_square) == [(F(2, 3), F(0)), (F(2, 3), F(1, 3)), (F(1), F(0)), (F(1), F(1, 3))]


@pytest.mark.parametrize(
    "P, v",
    [
        (box([0, 0, 0], [1, 1, 1]), F(1)),
        (poly(2, [((-1, 0), "0"), ((0, -1), "0"), ((1, 1), "1")]), F(1, 2)),
    ],
)
def test_volume_examples(P, v):
    assert volume(P) == v


def test_volume_square(small_square):
    assert volume(small_square) == F(1, 9)


def test_faces_report_square(small_square):
    kinds = [f.kind for f in faces_report(small_square)]
    assert kinds == [FacetKind.FRONT, FacetKind.FRONT, FacetKind.BACK, FacetKind.NEUTRAL]
    assert all(f.is_facet for f in faces_report(small_square))


def test_faces_report_redundant():
    P = poly(2, [((1, 0), "1"), ((-1, 0), "0"), ((0, 1), "1"), ((0, -1), "0"), ((1, 1), "5")])
    assert faces_report(P)[-1].face_dim == -1
    assert not faces_report(P)[-1].is_facet


def test_ppyr_membership(shifted_square):
    assert ppyr_membership(shifted_square, (0, 0), 0)
    assert ppyr_membership(shifted_square, (0, 0), 7)
    assert ppyr_membership(shifted_square, (1, 1), 1)
    assert not ppyr_membership(shifted_square, (2, 1), F(1, 2))


def test_ppyr_volume(shifted_square, small_square):
    assert ppyr_volume(shifted_square) == (F(3, 2), F(3, 2))
    assert ppyr_volume(small_square) == (F(2, 9), F(2, 9))


def test_ppyr_volume_needs_full_dimension():
    with pytest.raises(NotFullDimensional):
        ppyr_volume(box([1, 0], [1, 1]))


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=2, max_size=2),
    st.lists(st.fractions(min_value=F(1, 5), max_value=2, max_denominator=5), min_size=2, max_size=2),
)
def test_ppyr_volume_two_ways_agree(lo, widths):
    P = box(lo, [l + w for l, w in zip(lo, widths)])
    dec, hull = ppyr_volume(P)
    assert dec == hull


def test_affine_hull_examples():
    ah = affine_hull(box([1, 0], [1, 1]))
    assert ah.hull_dim == 1 and [tuple(abs(x) for x in d) for d in ah.lattice_dirs] == [(0, 1)]
    seg = poly(2, [((1, 1), "1"), ((-1, -1), "-1"), ((-1, 0), "0"), ((0, -1), "0")])
    ah = affine_hull(seg)
    assert ah.hull_dim == 1
    d = ah.lattice_dirs[0]
    assert d in ((1, -1), (-1, 1))


@pytest.mark.parametrize(
    "P, r",
    [
        (box([1, 0], [1, 1]), F(1)),
        (poly(2, [((1, 1), "1"), ((-1, -1), "-1"), ((-1, 0), "0"), ((0, -1), "0")]), F(1)),
        (box([0, 0], [2, 0]), F(2)),
        (box([F(1, 3), 5], [F(1, 3), 5]), F(1)),
    ],
)
def test_rvol_examples(P, r):
    assert rvol(P) == r


def test_rvol_full_dim_is_volume(small_square):
    assert rvol(small_square) == volume(small_square)


def test_flatten_codim1_segment():
    P = box([0, F(1, 2)], [1, F(1, 2)])
    fl = flatten_codim1(P)
    assert fl.a == (0, 1) and fl.b == F(1, 2)
    assert volume(fl.pprime) == 1
    assert fl.on_grid((0, 0), 2) and not fl.on_grid((0, 0), 1)
    assert fl.reassemble(fl.pprime) == P


def test_flatten_codim1_rejects_full_dimensional(small_square):
    with pytest.raises(NotCodimensionOne):
        flatten_codim1(small_square)


@settings(max_examples=30, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_flatten_shift_and_level(w0, w1, t):
    fl = flatten_codim1(box([0, F(1, 3)], [2, F(1, 3)]))
    w = fl.lift_translation((w0,), t)
    assert fl.shift(w) == (w0,)
    assert fl.level(w) == fl.b + t
