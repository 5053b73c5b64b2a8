import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realehrhart.ehrhart import Breakpoint, QStepFunction, window_function
from realehrhart.exactmath import dot
from realehrhart.polytope import box, translate, validate
from realehrhart.reconstruct import (
    EhrhartOracle,
    EmptyCandidates,
    KnownFacet,
    LinearlyDependent,
    OracleBudgetExceeded,
    ReconstructionConfig,
    Verdict,
    WindowClass,
    choose_w0,
    clean,
    dirichlet_simultaneous,
    gcd_sequence_period,
    pseudo_diophantine_solve,
    recover,
    window_scan,
)

F = Fraction
AXES = [(1, 0), (0, 1), (-1, 0), (0, -1)]


def test_choose_w0_square_normals():
    plan = choose_w0(AXES)
    plan.check()
    assert all(dot(a, plan.w0) != 0 for a in AXES)
    assert plan.top == plan.tau
    lo, hi = plan.window(8)
    assert 8 < lo < hi


def test_choose_w0_opposite_pair():
    plan = choose_w0([(1, 0), (-1, 0)])
    assert plan.w0[0] != 0


def test_choose_w0_rejects_non_primitive_and_order():
    with pytest.raises(ValueError):
        choose_w0([(2, 0), (0, 1)])
    with pytest.raises(ValueError):
        choose_w0([(1, 0), (1, 1)])


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=2, max_size=6, unique=True))
def test_choose_w0_invariants(raw):
    normals = [a for a in raw if math.gcd(*a) == 1]
    if not normals:
        return
    normals.sort(key=lambda a: -dot(a, a))
    choose_w0(normals).check()


def test_window_scan_square_isolates_first_facet():
    hidden = validate(2, [((1, 0), F(1)), ((0, 1), F(1, 3)), ((-1, 0), F(-2, 3)), ((0, -1), F(0))])
    plan = choose_w0(AXES)
    oracle = EhrhartOracle(hidden)
    k = 24
    obs = window_scan(oracle, plan, k)
    lo, hi = obs.window
    c = plan.top
    for s, _ in obs.discontinuities:
        assert (s * (F(1) + k * c)).denominator == 1
    truth = [s for s in window_function(translate(hidden, [k * x for x in plan.w0]), lo, hi).breaks
             if s.s < hi and (s.s * (1 + k * c)).denominator == 1]
    assert 1 <= len(obs.discontinuities) <= 2
    assert {s for s, _ in obs.discontinuities} == {b.s for b in truth}


def test_window_scan_empty_window_is_bad():
    # (1, 0) supports only a vertex of this triangle, so its windows stay flat
    hidden = validate(2, [((-1, 0), 0), ((0, -1), 0), ((1, 1), 1)])
    plan = choose_w0(AXES)
    for k in (8, 16):
        obs = window_scan(EhrhartOracle(hidden), plan, k)
        assert obs.discontinuities == ()
        assert obs.classification is WindowClass.BAD and obs.vk == 0


def test_clean_empty_known_is_identity():
    f = QStepFunction(F(1), F(2), 0, (Breakpoint(F(3, 2), 2, 2),))
    assert clean(f, [], 2) is f


def test_clean_zero_gamma_is_noop():
    f = QStepFunction(F(1), F(2), 0, (Breakpoint(F(3, 2), 2, 2),))
    assert clean(f, [(F(1, 2), F(0), 3)], 2) == f


def test_clean_removes_known_staircase():
    # a single front facet at level 1 in d = 1: jump of 1 at every integer
    f = QStepFunction(F(1, 2), F(7, 2), 1, tuple(Breakpoint(F(m), m + 1, m + 1) for m in (1, 2, 3)))
    g = clean(f, [(F(1), F(1), 0)], 1)
    assert all(g(F(k, 4)) == 1 for k in range(3, 15))


def test_pseudo_diophantine_collapses():
    b = F(1, 3)
    s1 = F(21, 10)
    assert s1 * (b + 3) == 7
    bounds = (F(-4), F(4), 12)
    assert len(pseudo_diophantine_solve([(s1, 3)], 1, bounds)) > 1
    assert pseudo_diophantine_solve([(s1, 3), (F(30, 13), 4)], 1, bounds) == [b]


def test_pseudo_diophantine_errors():
    with pytest.raises(ValueError):
        pseudo_diophantine_solve([(F(2), 1)], 1, (F(-1), F(1), 4))
    with pytest.raises(ValueError):
        pseudo_diophantine_solve([], 1, (F(-1), F(1), 4))
    with pytest.raises(EmptyCandidates):
        pseudo_diophantine_solve([(F(1, 2), 0), (F(1, 3), 0)], 1, (F(1, 10), F(9, 10), 1))


@settings(max_examples=40, deadline=None)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=12), st.integers(1, 5), st.integers(1, 4), st.integers(1, 40))
def test_pseudo_diophantine_contains_truth(b, c, K, m):
    x = b + K * c
    if x <= 0:
        return
    s = F(m) / x
    if s.denominator == 1:
        return
    assert b in pseudo_diophantine_solve([(s, K)], c, (F(-3), F(3), 12))


@pytest.mark.parametrize(
    "args, out",
    [((2, 1, 3, 2), (1, [1])), ((1, 0, 1, 2), (2, [1, 2])), ((0, 5, 1, 0), (5, [1, 1, 1, 1, 5]))],
)
def test_gcd_sequence_period_examples(args, out):
    assert gcd_sequence_period(*args) == out


def test_gcd_sequence_period_dependent():
    with pytest.raises(LinearlyDependent):
        gcd_sequence_period(2, 4, 1, 2)


@settings(max_examples=60)
@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))
def test_gcd_sequence_period_property(z, g, x, e):
    if z * e - g * x == 0:
        return
    p, prof = gcd_sequence_period(z, g, x, e)
    assert abs(z * e - g * x) % p == 0
    for k in range(1, 5 * p + 1):
        assert math.gcd(z * k + g, x * k + e) == prof[(k - 1) % p]


def _dirichlet_brute(b, N):
    return next(k for k in range(1, N ** len(b) + 1)
                if all(abs(k * x - round(k * x)) < F(1, N) for x in b))


def test_dirichlet_examples():
    assert dirichlet_simultaneous([F(1, 3)], 3) == 3
    assert dirichlet_simultaneous([F(1, 2), F(1, 3)], 6) == 6
    k = dirichlet_simultaneous([F(2, 7), F(3, 5)], 4)
    assert k == _dirichlet_brute([F(2, 7), F(3, 5)], 4) and k <= 16


def test_oracle_caches_and_budgets():
    o = EhrhartOracle(box([0, 0], [1, 1]), max_length=F(3))
    o.query((1, 1), 1, 2)
    o.query((1, 1), 1, 2)
    assert o.calls == 1 and o.total_length == 1
    with pytest.raises(OracleBudgetExceeded):
        o.query((0, 0), 1, 4)


def test_config_json():
    cfg = ReconstructionConfig.from_json({"theta": "1/50", "schedule": [8, 16]})
    assert cfg.theta == F(1, 50) and cfg.schedule == [8, 16]
    assert ReconstructionConfig.from_json(cfg.to_json()) == cfg
    with pytest.raises(ValueError):
        ReconstructionConfig.from_json({"nope": 1})


def test_recover_square():
    hidden = validate(2, [((1, 0), F(1)), ((0, 1), F(1, 3)), ((-1, 0), F(-2, 3)), ((0, -1), F(0))])
    rep = recover(EhrhartOracle(hidden), AXES)
    assert rep.passed
    assert rep.b == [1, F(1, 3), F(-2, 3), 0]
    assert all(r.verdict is Verdict.FACET for r in rep.results)
    assert [r.rvol for r in rep.results] == [F(1, 3)] * 4
    assert rep.polytope == hidden


def test_recover_redundant_direction():
    hidden = box([0, 0], [1, 1])
    rep = recover(EhrhartOracle(hidden), AXES + [(1, 1)])
    assert rep.passed
    assert rep.results[-1].verdict is Verdict.NON_FACET
    assert rep.results[-1].b == 2


def test_recover_short_schedule_unresolved():
    hidden = validate(2, [((1, 0), F(1)), ((0, 1), F(1, 3)), ((-1, 0), F(-2, 3)), ((0, -1), F(0))])
    rep = recover(EhrhartOracle(hidden), AXES, ReconstructionConfig(schedule=[8], extensions=[]))
    assert not rep.passed
    assert rep.unresolved


def test_recover_rejects_bad_normals():
    o = EhrhartOracle(box([0, 0], [1, 1]))
    with pytest.raises(ValueError):
        recover(o, [(1, 0)])
    with pytest.raises(ValueError):
        recover(o, [(2, 0), (-1, 0), (0, 1), (0, -1)])
    with pytest.raises(ValueError):
        recover(o, [(1, 0, 0), (-1, 0, 0)])
