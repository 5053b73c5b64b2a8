import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import poly
from realehrhart.ehrhart import (
    Breakpoint,
    NotABreakpoint,
    QStepFunction,
    WindowTooLarge,
    count,
    csv_lines,
    facet_point_count,
    facet_point_counts,
    jumps,
    lift_at,
    lifespan,
    lifespans_reference,
    lifting,
    ppyr_step_function,
    step_function,
    window_function,
)
from realehrhart.polytope import FacetKind, NotFullDimensional, box

F = Fraction


def square_closed_form(s):
    """Product of the two 1-d counts for [2/3, 1] x [0, 1/3]."""
    s = F(s)
    xs = max(0, math.floor(s) - math.ceil(F(2, 3) * s) + 1)
    return xs * (math.floor(s / 3) + 1)


def test_lifespan_examples(small_square, unit_square):
    ls = lifespan(small_square, (1, 0))
    assert (ls.alpha, ls.beta) == (1, F(3, 2))
    ls = lifespan(small_square, (2, 1))
    assert (ls.alpha, ls.beta) == (3, 3)
    assert lifespan(unit_square, (0, 0)).unbounded
    assert lifespan(small_square, (-1, 0)).empty


def test_square_breakpoints(small_square):
    f = step_function(small_square, F(7, 2))
    assert [b.s for b in f.breaks] == [1, F(3, 2), 2, 3]
    assert [(b.at, b.after) for b in f.breaks] == [(1, 1), (1, 0), (1, 1), (4, 2)]


def test_square_closed_form(small_square):
    f = step_function(small_square, 12)
    rng = random.Random(1)
    for _ in range(200):
        s = F(rng.randint(1, 1200), rng.randint(1, 100))
        if s <= 12:
            assert f(s) == square_closed_form(s)
    for b in f.breaks:
        assert b.at == square_closed_form(b.s)


def test_shifted_square_small_window(shifted_square):
    f = step_function(shifted_square, F(5, 4))
    assert f.base == 0
    assert f.breaks[0] == Breakpoint(F(1, 2), 1, 1)
    assert f.breaks[1] == Breakpoint(F(1), 4, 2)


def test_unit_segment():
    P = box([0], [1])
    f = step_function(P, 3)
    for k in range(1, 301):
        s = F(k, 100)
        assert f(s) == math.floor(s) + 1 == count(P, s)


def test_count_examples(small_square, unit_square):
    assert count(small_square, 3) == 4
    assert count(small_square, 0) == 1
    assert count(unit_square, 2) == 9


def test_jumps_square(small_square):
    f = step_function(small_square, F(7, 2))
    by_s = {r.s0: r for r in jumps(f)}
    assert (by_s[3].left_jump, by_s[3].right_jump) == (3, 2)
    assert (by_s[3].entering, by_s[3].leaving) == (3, 2)
    assert (by_s[1].left_jump, by_s[1].right_jump) == (1, 0)
    assert (by_s[F(3, 2)].left_jump, by_s[F(3, 2)].right_jump) == (0, 1)


def test_facet_counts_square(small_square):
    assert facet_point_count(small_square, 3, FacetKind.FRONT) == 3
    assert facet_point_count(small_square, 3, FacetKind.BACK) == 2
    assert facet_point_counts(small_square, [1, F(3, 2), 2, 3], FacetKind.FRONT) == [1, 0, 1, 3]
    assert facet_point_counts(small_square, [1, F(3, 2), 2, 3], FacetKind.BACK) == [0, 1, 0, 2]


def test_facet_count_needs_full_dimension():
    with pytest.raises(NotFullDimensional):
        facet_point_count(box([0, 0], [1, 0]), 1, FacetKind.FRONT)


def test_origin_interior_never_drops():
    P = box([F(-1, 2), F(-1, 3)], [F(3, 4), F(2, 5)])
    for r in jumps(step_function(P, 6)):
        assert r.right_jump == 0


@pytest.mark.parametrize("P", [box([F(2, 3), 0], [1, F(1, 3)]), box([1, 0], [2, 1]), box([F(-1, 2), F(1, 3)], [F(1, 2), F(3, 2)])])
def test_jump_lemma_examples(P):
    f = step_function(P, 8)
    reps = jumps(f)
    ss = [r.s0 for r in reps]
    assert [r.left_jump for r in reps] == facet_point_counts(P, ss, FacetKind.FRONT)
    assert [r.right_jump for r in reps] == facet_point_counts(P, ss, FacetKind.BACK)
    assert [r.left_jump for r in reps] == [facet_point_count(P, s, FacetKind.FRONT) for s in ss]


def test_lift_at_indicator():
    f = QStepFunction(F(0), F(3), 1, (Breakpoint(F(1), 1, 0),))
    g = lift_at(f, 1)
    assert all(g(F(k, 4)) == 1 for k in range(1, 13))
    with pytest.raises(NotABreakpoint):
        lift_at(f, 2)


def test_lift_at_continuous_breakpoint_is_identity():
    f = QStepFunction(F(0), F(3), 1, (Breakpoint(F(1), 2, 2),))
    assert lift_at(f, 1) == f


def test_lift_at_square(small_square):
    g = lift_at(step_function(small_square, F(7, 2)), F(3, 2))
    assert g.limit_right(F(3, 2)) == 1


def test_lifting_shifted_square(shifted_square):
    g = lifting(step_function(shifted_square, F(5, 4)))
    assert g.base == 1
    assert g(F(1, 2)) == 2 and g(1) == 5
    assert g == ppyr_step_function(shifted_square, F(5, 4))


def test_lifting_monotone_unchanged():
    f = QStepFunction(F(1), F(4), 2, (Breakpoint(F(2), 3, 3), Breakpoint(F(3), 5, 5)))
    assert lifting(f) == f


@pytest.mark.parametrize("P", [box([F(2, 3), 0], [1, F(1, 3)]), box([F(1, 2), F(-1, 3), 1], [F(3, 2), F(1, 2), F(7, 4)])])
def test_lifting_matches_ppyr(P):
    S = 5
    assert lifting(step_function(P, S)).first_difference(ppyr_step_function(P, S)) is None


def test_reference_sweep_agrees(small_square):
    assert lifespans_reference(small_square, 9) == step_function(small_square, 9)


def test_window_function_restricts(small_square):
    full = step_function(small_square, 10)
    assert window_function(small_square, F(5, 2), 10) == full.restrict(F(5, 2), 10)


def test_budget_guard(unit_square):
    with pytest.raises(WindowTooLarge):
        step_function(unit_square, 1000, budget=100)
    with pytest.raises(WindowTooLarge):
        count(unit_square, 1000, budget=100)


def test_json_and_csv_roundtrip(small_square):
    f = step_function(small_square, F(7, 2))
    assert QStepFunction.from_json(f.to_json()) == f
    lines = csv_lines(f)
    assert len(lines) >= 1 + len(f.breaks)


triangles = st.tuples(
    st.fractions(min_value=-2, max_value=2, max_denominator=4),
    st.fractions(min_value=-2, max_value=2, max_denominator=4),
    st.integers(1, 3),
    st.integers(1, 3),
    st.fractions(min_value=F(1, 2), max_value=3, max_denominator=4),
)


@settings(max_examples=25, deadline=None)
@given(triangles, st.randoms(use_true_random=False))
def test_oracle_agreement(params, rnd):
    x0, y0, p, q, c = params
    P = poly(2, [((-1, 0), -x0), ((0, -1), -y0), ((p, q), p * x0 + q * y0 + c)])
    S = F(4)
    f = step_function(P, S)
    for _ in range(25):
        s = F(rnd.randint(1, 400), 100)
        assert f(s) == count(P, s)
    for b in f.breaks:
        assert b.at == count(P, b.s)
