"""Recover right-hand sides of a hidden polytope from translated Ehrhart data.

The engine only sees the hidden polytope through :class:`EhrhartOracle`.  For
each normal (longest first) it picks a translation direction ``w0`` so that, in
the windows ``(alpha_k, alpha_k + eps_k)`` of ``L_{P + k w0}``, the
left-discontinuities come from the current facet.  Jump positions give
pseudo-Diophantine equations for ``b_j``; jump sizes estimate ``rvol F_j``.
Limits are replaced by a finite schedule of ``k`` and every answer is checked
against fresh oracle windows before it is reported as verified.
"""

from __future__ import annotations

import enum
import itertools
import json
import math
import random
import statistics
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from .ehrhart import Breakpoint, QStepFunction, window_function
from .exactmath import IVec, dot, format_rat, gcd_vec, integer_kernel
from .polytope import (
    HPolytope,
    PolytopeError,
    face,
    faces_report,
    rvol,
    translate,
    validate,
    vertices,
)


class NoSeparatingVector(RuntimeError):
    pass


class EmptyCandidates(ValueError):
    pass


class LinearlyDependent(ValueError):
    pass


class OracleBudgetExceeded(RuntimeError):
    pass


# -- oracle -----------------------------------------------------------------


class EhrhartOracle:
    """Answers ``L_{P + w}`` on rational windows; the only view of ``P``.

    Repeated queries are served from a cache and not charged again.
    """

    def __init__(self, hidden: HPolytope, max_length: Fraction | None = None, point_budget: int | None = None):
        self._hidden = hidden
        self.dim = hidden.dim
        self.max_length = max_length
        self.point_budget = point_budget
        self.calls = 0
        self.total_length = Fraction(0)
        self._cache: dict[tuple, QStepFunction] = {}

    def query(self, w: Sequence[int], lo, hi) -> QStepFunction:
        key = (tuple(int(x) for x in w), Fraction(lo), Fraction(hi))
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        length = key[2] - key[1]
        if self.max_length is not None and self.total_length + length > self.max_length:
            raise OracleBudgetExceeded(f"window length budget {self.max_length} exhausted")
        self.calls += 1
        self.total_length += length
        f = window_function(translate(self._hidden, key[0]), key[1], key[2], self.point_budget)
        self._cache[key] = f
        return f

    def observed(self, f: QStepFunction) -> QStepFunction:
        """What this oracle would report for a true window function ``f``."""
        return f


# -- window plans -----------------------------------------------------------


@dataclass(frozen=True)
class WindowPlan:
    """Isolating windows for the first normal of ``normals``."""

    normals: tuple[IVec, ...]
    w0: IVec
    tau: int
    epsilon: Fraction
    epsilon_prime: Fraction

    @property
    def a1(self) -> IVec:
        return self.normals[0]

    @property
    def top(self) -> int:
        """``<a1, w0> = tau |a1|^2``."""
        return dot(self.a1, self.w0)

    @property
    def epsilon0(self) -> Fraction:
        return (1 - self.epsilon) / (self.top - self.epsilon_prime) - self.epsilon / self.epsilon_prime

    def alpha(self, k: int) -> Fraction:
        return k + Fraction(1, k) * self.epsilon / self.epsilon_prime

    def eps(self, k: int) -> Fraction:
        return self.epsilon0 / k

    def window(self, k: int) -> tuple[Fraction, Fraction]:
        a = self.alpha(k)
        return a, a + self.eps(k)

    def check(self) -> None:
        """Assert the invariants of the isolating-window construction."""
        T = self.top
        assert all(dot(a, self.w0) != 0 for a in self.normals)
        assert T == self.tau * dot(self.a1, self.a1) > 0
        assert Fraction(1, T) < self.epsilon0 < Fraction(2, T)
        assert 0 < self.epsilon < 1
        for a in self.normals[1:]:
            c = dot(a, self.w0)
            assert c < T - self.epsilon_prime
            if c > 0:
                assert c > self.epsilon_prime

    def to_json(self) -> dict:
        return {
            "w0": list(self.w0),
            "tau": self.tau,
            "epsilon": format_rat(self.epsilon),
            "epsilon_prime": format_rat(self.epsilon_prime),
            "epsilon0": format_rat(self.epsilon0),
        }


def _small_vectors(basis: Sequence[IVec], d: int, radius: int):
    """Integer combinations of ``basis`` by increasing max-norm of coefficients."""
    m = len(basis)
    for r in range(1, radius + 1):
        for coeffs in itertools.product(range(-r, r + 1), repeat=m):
            if max(abs(c) for c in coeffs) != r:
                continue
            yield tuple(sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(d))


def choose_w0(normals: Sequence[Sequence[int]], search_radius: int = 12, max_tau: int = 10_000) -> WindowPlan:
    """Build a window plan isolating ``normals[0]``.

    Args:
        normals: primitive integer vectors; the first must have the largest norm.
        search_radius: bound on coefficients when searching ``w'`` in ``a1^perp``.
        max_tau: bound on the scaling of ``a1``.

    Raises:
        NoSeparatingVector: the search budget is exhausted.
    """
    normals = tuple(tuple(int(x) for x in a) for a in normals)
    if not normals:
        raise ValueError("need at least one normal")
    a1 = normals[0]
    d = len(a1)
    n1 = dot(a1, a1)
    if any(dot(a, a) > n1 for a in normals):
        raise ValueError("first normal must have the largest norm")
    if any(gcd_vec(a) != 1 for a in normals):
        raise ValueError("normals must be primitive")
    neg = tuple(-x for x in a1)
    others = [a for a in normals[1:] if a != a1 and a != neg]
    basis = integer_kernel([list(a1)], d)
    wprime = None
    if not others:
        wprime = tuple([0] * d)
    else:
        for v in _small_vectors(basis, d, search_radius):
            if all(dot(a, v) != 0 for a in others):
                wprime = v
                break
    if wprime is None:
        raise NoSeparatingVector(f"no w' within radius {search_radius}")
    for tau in range(1, max_tau + 1):
        w0 = tuple(wp + tau * x for wp, x in zip(wprime, a1))
        T = tau * n1
        cs = [dot(a, w0) for a in normals[1:]]
        if all(c != 0 and c < T for c in cs):
            break
    else:
        raise NoSeparatingVector(f"no tau up to {max_tau}")
    gaps = [Fraction(c) for c in cs if c > 0] + [Fraction(T - c) for c in cs]
    eps_p = min([g / 2 for g in gaps] + [Fraction(T, 3)])
    # epsilon must satisfy 1/(T-e') > 1/T + eps (1/e' + 1/(T-e')); the upper
    # inequality then holds automatically because e' < T/2.
    bound = (1 / (T - eps_p) - Fraction(1, T)) / (1 / eps_p + 1 / (T - eps_p))
    plan = WindowPlan(normals, w0, tau, bound / 2, eps_p)
    plan.check()
    return plan


# -- window scans -----------------------------------------------------------


class WindowClass(enum.Enum):
    GOOD = "Good"
    NOT_SO_GOOD = "NotSoGood"
    BAD = "Bad"


@dataclass(frozen=True)
class WindowObservation:
    k: int
    window: tuple[Fraction, Fraction]
    discontinuities: tuple[tuple[Fraction, Fraction], ...]
    classification: WindowClass
    vk: Fraction

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "window": [format_rat(x) for x in self.window],
            "discontinuities": [[format_rat(s), format_rat(j)] for s, j in self.discontinuities],
            "classification": self.classification.value,
            "vk": format_rat(self.vk),
        }


@dataclass(frozen=True)
class KnownFacet:
    normal: IVec
    b: Fraction
    gamma: Fraction


def clean(f_w: QStepFunction, known: Sequence[tuple[Fraction, Fraction, int]], d: int) -> QStepFunction:
    """Subtract the expected staircase of already recovered facets.

    Args:
        f_w: ``L_{P+w}`` on a window.
        known: ``(b_i, gamma_i, <a_i, w>)`` per recovered face; ``gamma_i`` is
            the (estimated) relative volume, 0 for non-facets.
        d: ambient dimension.

    Returns:
        ``f_w`` minus, for each known facet, a jump of ``s^{d-1} gamma_i`` at
        every ``s`` with ``s (b_i + <a_i, w>)`` integral: a left jump for front
        facets, a right jump for back facets.  The level on the first
        interval is unchanged.
    """
    corr: dict[Fraction, list[Fraction]] = {}
    for b, gamma, c in known:
        x = b + c
        if gamma == 0 or x == 0:
            continue
        ax = abs(x)
        m = math.floor(f_w.lo * ax) + 1
        while Fraction(m) / ax <= f_w.hi:
            s = Fraction(m) / ax
            slot = corr.setdefault(s, [Fraction(0), Fraction(0)])
            slot[0 if x > 0 else 1] += s ** (d - 1) * gamma
            m += 1
    if not corr:
        return f_w
    positions = sorted(set(corr) | {b.s for b in f_w.breaks})
    shift = Fraction(0)
    breaks = []
    for s in positions:
        left, right = corr.get(s, (0, 0))
        at = f_w(s) - shift - left
        shift += left + right
        breaks.append(Breakpoint(s, at, f_w.limit_right(s) - shift))
    return QStepFunction(f_w.lo, f_w.hi, f_w.base, tuple(breaks))


def _known_positions(known: Sequence[tuple[Fraction, Fraction, int]], s: Fraction, d: int) -> Fraction:
    """Expected left-jump size of known front facets at ``s``."""
    total = Fraction(0)
    for b, gamma, c in known:
        x = b + c
        if x > 0 and (s * x).denominator == 1:
            total += s ** (d - 1) * gamma
    return total


@dataclass
class ReconstructionConfig:
    schedule: list[int] = field(default_factory=lambda: [8, 12, 16, 24, 32, 48, 64])
    # multiples of 5 first (with 12, 24, 48 they make k b integral for every
    # denominator up to 6), then larger k
    extensions: list[list[int]] = field(default_factory=lambda: [[20, 40, 60], [72, 96, 120]])
    ratio_band: Fraction = Fraction(2)
    theta: Fraction = Fraction(1, 100)
    residual_ratio: Fraction = Fraction(1, 2)
    max_den: int = 64
    bound: Fraction = Fraction(64)
    max_length: Fraction = Fraction(500)
    point_budget: int | None = None
    verify_windows: int = 8
    verify_length: Fraction = Fraction(1)
    seed: int = 0
    search_radius: int = 12
    min_support: int = 2

    _RATS = ("ratio_band", "theta", "residual_ratio", "bound", "max_length", "verify_length")

    @classmethod
    def from_json(cls, obj: dict) -> "ReconstructionConfig":
        from .exactmath import parse_rat

        known = {f for f in cls.__dataclass_fields__ if not f.startswith("_")}
        extra = set(obj) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        kw = dict(obj)
        for k in cls._RATS:
            if k in kw:
                kw[k] = parse_rat(kw[k])
        return cls(**kw)

    def to_json(self) -> dict:
        out = {}
        for k in self.__dataclass_fields__:
            if k.startswith("_"):
                continue
            v = getattr(self, k)
            out[k] = format_rat(v) if isinstance(v, Fraction) else v
        return out


def window_scan(
    oracle: EhrhartOracle,
    plan: WindowPlan,
    k: int,
    known: Sequence[KnownFacet] = (),
    config: ReconstructionConfig | None = None,
) -> WindowObservation:
    """Observe the isolating window for ``k`` after cleaning known facets.

    A left jump counts as a discontinuity when it is positive and, at positions
    shared with a known front facet, when the residual exceeds
    ``residual_ratio`` times the expected known contribution.
    """
    cfg = config or ReconstructionConfig()
    d = oracle.dim
    w = tuple(k * x for x in plan.w0)
    lo, hi = plan.window(k)
    f = oracle.query(w, lo, hi)
    data = [(kf.b, kf.gamma, dot(kf.normal, w)) for kf in known]
    g = clean(f, data, d)
    found = []
    for i, bp in enumerate(g.breaks):
        if bp.s >= hi:
            continue
        jump = Fraction(bp.at) - Fraction(g.before(i))
        if jump <= 0:
            continue
        expected = _known_positions(data, bp.s, d)
        if expected and jump <= max(Fraction(1), cfg.residual_ratio * expected):
            continue
        found.append((bp.s, jump))
    vk = sum((j for _, j in found), Fraction(0))
    if len(found) == 1:
        cls = WindowClass.GOOD
    elif len(found) == 2:
        j1, j2 = sorted(j for _, j in found)
        cls = WindowClass.NOT_SO_GOOD if j2 <= cfg.ratio_band * j1 else WindowClass.BAD
    else:
        cls = WindowClass.BAD
    return WindowObservation(k, (lo, hi), tuple(found), cls, vk)


# -- pseudo-Diophantine systems ---------------------------------------------


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _equation_candidates(s: Fraction, K: int, c, lo: Fraction, hi: Fraction, max_den: int) -> set[Fraction]:
    """All ``b`` in ``[lo, hi]`` with denominator ``<= max_den`` and ``s (b + K c)`` integral."""
    p, q = s.numerator, s.denominator
    off = K * Fraction(c)
    m_lo = math.ceil(s * (lo + off))
    m_hi = math.floor(s * (hi + off))
    out = set()
    # b + K c = m q / p has denominator p / gcd(m, p) when c is integral.
    for g in _divisors(p):
        if p // g > max_den:
            continue
        start = -((-m_lo) // g) * g
        for m in range(start, m_hi + 1, g):
            b = Fraction(m * q, p) - off
            if b.denominator <= max_den:
                out.add(b)
    return out


def pseudo_diophantine_solve(
    eqs: Sequence[tuple[Fraction, int]],
    c,
    bounds: tuple[Fraction, Fraction, int],
) -> list[Fraction]:
    """Solve ``s_l (b + K_l c) = m_l`` for ``b`` in a bounded box.

    Args:
        eqs: pairs ``(s_l, K_l)`` with every ``s_l`` non-integral.
        c: the known coefficient ``<a_j, w0>`` (positive integer).
        bounds: ``(b_lo, b_hi, max_den)``.

    Returns:
        Sorted list of every admissible ``b``.

    Raises:
        ValueError: an ``s_l`` is an integer or ``eqs`` is empty.
        EmptyCandidates: no ``b`` satisfies all equations.
    """
    if not eqs:
        raise ValueError("need at least one equation")
    for s, _ in eqs:
        if Fraction(s).denominator == 1:
            raise ValueError(f"s = {format_rat(Fraction(s))} is an integer")
    lo, hi, max_den = Fraction(bounds[0]), Fraction(bounds[1]), int(bounds[2])
    s0, K0 = eqs[0]
    cands = _equation_candidates(Fraction(s0), K0, c, lo, hi, max_den)
    for s, K in eqs[1:]:
        s = Fraction(s)
        cands = {b for b in cands if (s * (b + K * c)).denominator == 1}
    if not cands:
        raise EmptyCandidates("no right-hand side satisfies every equation")
    return sorted(cands)


# -- reports ----------------------------------------------------------------


class Verdict(enum.Enum):
    FACET = "Facet"
    NON_FACET = "NonFacet"
    UNRESOLVED = "Unresolved"


@dataclass
class IndexResult:
    index: int
    normal: IVec
    verdict: Verdict = Verdict.UNRESOLVED
    b: Fraction | None = None
    rvol_estimate: Fraction | None = None
    rvol: Fraction | None = None
    plan: dict | None = None
    observations: list[WindowObservation] = field(default_factory=list)
    candidates: list[tuple[Fraction, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "normal": list(self.normal),
            "verdict": self.verdict.value,
            "b": None if self.b is None else format_rat(self.b),
            "rvol_estimate": None if self.rvol_estimate is None else format_rat(self.rvol_estimate),
            "rvol": None if self.rvol is None else format_rat(self.rvol),
            "plan": self.plan,
            "observations": [o.to_json() for o in self.observations],
            "candidates": [[format_rat(b), n] for b, n in self.candidates],
        }


@dataclass
class ReconstructionReport:
    results: list[IndexResult]
    verification: str
    counterexample: dict | None
    polytope: HPolytope | None
    schedule: list[int]
    oracle_calls: int
    oracle_length: Fraction

    @property
    def passed(self) -> bool:
        return self.verification == "Passed"

    @property
    def unresolved(self) -> bool:
        return any(r.verdict is Verdict.UNRESOLVED for r in self.results)

    @property
    def b(self) -> list[Fraction | None]:
        return [r.b for r in self.results]

    def to_json(self) -> dict:
        return {
            "verification": self.verification,
            "counterexample": self.counterexample,
            "polytope": None if self.polytope is None else self.polytope.to_json(),
            "schedule": self.schedule,
            "oracle": {"calls": self.oracle_calls, "total_length": format_rat(self.oracle_length)},
            "results": [r.to_json() for r in self.results],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


# -- recovery ---------------------------------------------------------------


def _rational_median(xs: Sequence[Fraction]) -> Fraction:
    xs = sorted(xs)
    n = len(xs)
    if n == 0:
        return Fraction(0)
    return xs[n // 2] if n % 2 else (xs[n // 2 - 1] + xs[n // 2]) / 2


def _rvol_estimate(obs: Sequence[WindowObservation], d: int) -> Fraction | None:
    good = [j / s ** (d - 1) for o in obs if o.classification is WindowClass.GOOD for s, j in o.discontinuities]
    nsg = [
        o.vk / (2 * o.discontinuities[0][0] ** (d - 1))
        for o in obs
        if o.classification is WindowClass.NOT_SO_GOOD
    ]
    ests = []
    if good:
        ests.append(_rational_median(good))
    if nsg:
        ests.append(_rational_median(nsg))
    return min(ests) if ests else None


def _consistency(b: Fraction, c: int, obs: Sequence[WindowObservation]) -> int:
    """Predicted facet positions seen minus predicted positions missing."""
    score = 0
    for o in obs:
        x = b + o.k * c
        if x <= 0:
            continue
        lo, hi = o.window
        seen = {s for s, _ in o.discontinuities}
        m = math.floor(lo * x) + 1
        while Fraction(m) / x < hi:
            score += 1 if Fraction(m) / x in seen else -1
            m += 1
    return score


def _choose_b(obs: Sequence[WindowObservation], c: int, cfg: ReconstructionConfig):
    eqs = [
        (s, o.k)
        for o in obs
        if o.classification in (WindowClass.GOOD, WindowClass.NOT_SO_GOOD)
        for s, _ in o.discontinuities
        if s.denominator != 1
    ]
    if not eqs:
        return None, []
    try:
        strict = pseudo_diophantine_solve(eqs, c, (-cfg.bound, cfg.bound, cfg.max_den))
    except EmptyCandidates:
        strict = []
    if len({K for _, K in eqs}) < cfg.min_support:
        # a lone window admits many right-hand sides; refuse to guess
        return None, []
    if len(strict) == 1:
        return strict[0], [(strict[0], len(eqs))]
    # Contaminated or underdetermined: vote over every equation, then prefer
    # candidates whose predicted positions match the observations.
    votes: Counter = Counter()
    pool = strict or None
    for s, K in eqs:
        for b in _equation_candidates(s, K, c, -cfg.bound, cfg.bound, cfg.max_den):
            if pool is None or b in pool:
                votes[b] += 1
    for o in obs:
        if o.classification is WindowClass.NOT_SO_GOOD:
            (s1, _), (s2, _) = sorted(o.discontinuities)
            b = 1 / (s2 - s1) - o.k * c
            if b in votes:
                votes[b] += 1
    if not votes:
        return None, []
    top = max(votes.values())
    if top < cfg.min_support:
        return None, sorted(votes.items(), key=lambda kv: -kv[1])[:8]
    best = [b for b, v in votes.items() if v == top]
    best.sort(key=lambda b: (-_consistency(b, c, obs), b.denominator, abs(b), b))
    ranked = sorted(votes.items(), key=lambda kv: -kv[1])[:8]
    return best[0], ranked


def _last_half(schedule: Sequence[int]) -> set[int]:
    s = sorted(schedule)
    return set(s[len(s) // 2:])


def _support_completion(d: int, normals, facet_b: dict[int, Fraction]) -> HPolytope | None:
    try:
        Q = validate(d, [(normals[i], b) for i, b in facet_b.items()])
    except PolytopeError:
        return None
    return Q


def _verify(oracle: EhrhartOracle, P: HPolytope, cfg: ReconstructionConfig):
    rng = random.Random(cfg.seed)
    for _ in range(cfg.verify_windows):
        w = tuple(rng.randint(-3, 3) for _ in range(P.dim))
        lo = Fraction(rng.randint(1, 48), rng.randint(1, 8))
        hi = lo + cfg.verify_length
        got = oracle.query(w, lo, hi)
        want = oracle.observed(window_function(translate(P, w), lo, hi, cfg.point_budget))
        if got != want:
            where = got.first_difference(want)
            return False, {
                "w": list(w),
                "window": [format_rat(lo), format_rat(hi)],
                "first_difference": None if where is None else format_rat(where),
            }
    return True, None


def _single_pass(oracle: EhrhartOracle, normals: list[IVec], schedule: list[int], cfg: ReconstructionConfig):
    d = oracle.dim
    n = len(normals)
    order = sorted(range(n), key=lambda i: (-dot(normals[i], normals[i]), i))
    results = {i: IndexResult(i, normals[i]) for i in range(n)}
    known: list[KnownFacet] = []
    tail = _last_half(schedule)
    for pos, j in enumerate(order):
        res = results[j]
        plan = choose_w0([normals[i] for i in order[pos:]], cfg.search_radius)
        res.plan = plan.to_json()
        obs = [window_scan(oracle, plan, k, known, cfg) for k in schedule]
        res.observations = obs
        ratios = [o.vk / Fraction(o.k) ** (d - 1) for o in obs if o.k in tail]
        if _rational_median(ratios) <= cfg.theta:
            res.verdict = Verdict.NON_FACET
            continue
        b, ranked = _choose_b(obs, plan.top, cfg)
        res.candidates = ranked
        gamma = _rvol_estimate(obs, d)
        res.rvol_estimate = gamma
        if b is None or gamma is None:
            res.verdict = Verdict.UNRESOLVED
            continue
        res.verdict = Verdict.FACET
        res.b = b
        known.append(KnownFacet(normals[j], b, gamma))
    return [results[i] for i in range(n)]


def recover(
    oracle: EhrhartOracle,
    normals: Sequence[Sequence[int]],
    config: ReconstructionConfig | dict | None = None,
) -> ReconstructionReport:
    """Recover every ``b_i`` for the given normal directions.

    Runs the induction over normals with the configured ``k`` schedule; on an
    unresolved index or a failed verification the schedule is extended and the
    induction repeated (cached oracle answers are reused).  Non-facet
    directions get the support value of the polytope cut out by the facets.
    """
    cfg = config if isinstance(config, ReconstructionConfig) else ReconstructionConfig.from_json(config or {})
    normals = [tuple(int(x) for x in a) for a in normals]
    if len(normals) < 2:
        raise ValueError("a bounded polytope needs at least two normals")
    if any(len(a) != oracle.dim for a in normals):
        raise ValueError("normal length does not match the oracle dimension")
    if any(gcd_vec(a) != 1 for a in normals):
        raise ValueError("normals must be primitive")
    if len(set(normals)) != len(normals):
        raise ValueError("normals must be distinct")
    if cfg.max_length is not None and oracle.max_length is None:
        oracle.max_length = cfg.max_length
    if cfg.point_budget is not None and oracle.point_budget is None:
        oracle.point_budget = cfg.point_budget
    schedule = sorted(cfg.schedule)
    rounds = [list(schedule)]
    for ext in cfg.extensions:
        schedule = sorted(set(schedule) | set(ext))
        rounds.append(list(schedule))
    report = None
    for sched in rounds:
        try:
            results = _single_pass(oracle, normals, sched, cfg)
        except OracleBudgetExceeded as exc:
            if report is None:
                report = ReconstructionReport(
                    [IndexResult(i, a) for i, a in enumerate(normals)],
                    "Failed",
                    {"reason": str(exc)},
                    None,
                    sched,
                    oracle.calls,
                    oracle.total_length,
                )
            break
        report = _finish(oracle, normals, results, sched, cfg)
        if report.passed:
            break
    return report


def _finish(oracle, normals, results: list[IndexResult], sched, cfg) -> ReconstructionReport:
    d = oracle.dim
    if any(r.verdict is Verdict.UNRESOLVED for r in results):
        return ReconstructionReport(results, "Failed", {"reason": "unresolved indices"}, None, sched,
                                    oracle.calls, oracle.total_length)
    facet_b = {r.index: r.b for r in results if r.verdict is Verdict.FACET}
    Q = _support_completion(d, normals, facet_b)
    if Q is None:
        return ReconstructionReport(results, "Failed", {"reason": "facets do not bound a polytope"}, None,
                                    sched, oracle.calls, oracle.total_length)
    verts = vertices(Q)
    full = []
    for r in results:
        if r.verdict is Verdict.NON_FACET:
            r.b = max(dot(r.normal, v) for v in verts)
        full.append((r.normal, r.b))
    P = validate(d, full)
    report_ok = {f.index for f in faces_report(P) if f.is_facet}
    for r in results:
        if (r.verdict is Verdict.FACET) != (r.index in report_ok):
            return ReconstructionReport(results, "Failed", {"reason": f"facet status of index {r.index} inconsistent"},
                                        P, sched, oracle.calls, oracle.total_length)
    for r in results:
        r.rvol = rvol(face(P, r.index))
    ok, cex = _verify(oracle, P, cfg)
    return ReconstructionReport(results, "Passed" if ok else "Failed", cex, P, sched,
                                oracle.calls, oracle.total_length)


# -- arithmetic lemmas ------------------------------------------------------


def gcd_sequence_period(zeta: int, gamma: int, xi: int, eta: int) -> tuple[int, list[int]]:
    """Minimal period and one-period profile of ``k -> gcd(zeta k + gamma, xi k + eta)``.

    Euclidean descent on the ``k``-coefficients turns one argument into a
    constant ``D`` with ``|D|`` dividing the determinant; the sequence then has
    period dividing ``|D|``.

    Raises:
        LinearlyDependent: ``(zeta, gamma)`` and ``(xi, eta)`` are dependent.
    """
    if zeta * eta - gamma * xi == 0:
        raise LinearlyDependent("coefficient vectors are linearly dependent")
    u, v = (zeta, gamma), (xi, eta)
    while u[0] != 0 and v[0] != 0:
        if abs(u[0]) < abs(v[0]):
            u, v = v, u
        q = u[0] // v[0]
        u = (u[0] - q * v[0], u[1] - q * v[1])
    D = u[1] if u[0] == 0 else v[1]
    bound = abs(D)
    seq = [math.gcd(zeta * k + gamma, xi * k + eta) for k in range(1, bound + 1)]
    for p in _divisors(bound):
        if all(seq[i] == seq[i % p] for i in range(bound)):
            return p, seq[:p]
    return bound, seq


def dirichlet_simultaneous(b: Sequence[Fraction], N: int) -> int:
    """Smallest ``k`` in ``1..N^n`` with every ``k b_i`` strictly within ``1/N`` of an integer."""
    if N < 1:
        raise ValueError("N must be positive")
    b = [Fraction(x) for x in b]
    limit = N ** max(1, len(b))
    tol = Fraction(1, N)
    for k in range(1, limit + 1):
        if all(abs(k * x - round(k * x)) < tol for x in b):
            return k
    raise AssertionError("simultaneous approximation bound violated")
