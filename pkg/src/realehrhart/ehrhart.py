"""Real-parameter Ehrhart functions as exact step functions.

``L_P(s) = #(sP ∩ Z^d)`` is piecewise constant in ``s``.  Each lattice point is
present for a closed interval of dilations (its lifespan), so the function on a
window ``(lo, hi]`` is obtained by enumerating the lattice points of
``U_{lo<=s<=hi} sP`` and sweeping the lifespan endpoints.
"""

from __future__ import annotations

import math
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .exactmath import ceil_frac, dot, floor_frac, format_rat, parse_rat
from .polytope import (
    DimensionMismatch,
    FacetKind,
    HPolytope,
    NotFullDimensional,
    affine_hull,
    faces_report,
    hull_facets,
    ppyr_interval,
    ppyr_vertices,
    vertices,
)

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "REALEHRHART_BUDGET"

_INT64_SAFE = 2**62


class WindowTooLarge(RuntimeError):
    pass


class NotABreakpoint(ValueError):
    pass


def point_budget() -> int:
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


# -- lifespans --------------------------------------------------------------


@dataclass(frozen=True)
class Lifespan:
    """``{s >= 0 : x in sP}``; ``beta is None`` means right-unbounded."""

    empty: bool
    alpha: Fraction | None = None
    beta: Fraction | None = None

    @property
    def unbounded(self) -> bool:
        return not self.empty and self.beta is None

    def __contains__(self, s) -> bool:
        if self.empty:
            return False
        return self.alpha <= s and (self.beta is None or s <= self.beta)


EMPTY = Lifespan(True)


def lifespan(P: HPolytope, x: Sequence[int]) -> Lifespan:
    if len(x) != P.dim:
        raise DimensionMismatch(f"point of length {len(x)} for a {P.dim}-polytope")
    iv = ppyr_interval(P, x)
    if iv is None:
        return EMPTY
    return Lifespan(False, iv[0], iv[1])


# -- step functions ---------------------------------------------------------


class Breakpoint(NamedTuple):
    s: Fraction
    at: Fraction | int
    after: Fraction | int


@dataclass(frozen=True, eq=False)
class QStepFunction:
    """Piecewise-constant function on ``(lo, hi]``.

    ``base`` is the value on ``(lo, first breakpoint)``; each breakpoint stores
    its value and the value on the open interval that follows.  ``events``
    optionally maps a breakpoint to ``(entering, leaving)`` lattice-point
    counts; it is metadata and ignored by equality.
    """

    lo: Fraction
    hi: Fraction
    base: Fraction | int
    breaks: tuple[Breakpoint, ...]
    events: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        prev = self.lo
        for bp in self.breaks:
            if not (prev < bp.s or (prev == self.lo and bp.s > self.lo)):
                raise ValueError("breakpoints must be strictly increasing inside the domain")
            if bp.s > self.hi:
                raise ValueError("breakpoint beyond the domain")
            prev = bp.s

    def before(self, i: int):
        return self.base if i == 0 else self.breaks[i - 1].after

    def __call__(self, s) -> Fraction | int:
        s = Fraction(s)
        if not (self.lo < s <= self.hi):
            raise ValueError(f"{s} outside ({self.lo}, {self.hi}]")
        val = self.base
        for bp in self.breaks:
            if s < bp.s:
                return val
            if s == bp.s:
                return bp.at
            val = bp.after
        return val

    def limit_right(self, s) -> Fraction | int:
        s = Fraction(s)
        val = self.base
        for bp in self.breaks:
            if s < bp.s:
                return val
            val = bp.after
        return val

    def normalized(self) -> "QStepFunction":
        kept = []
        prev = self.base
        for bp in self.breaks:
            if not (bp.at == prev and bp.after == prev):
                kept.append(bp)
            prev = bp.after
        return QStepFunction(self.lo, self.hi, self.base, tuple(kept), self.events)

    def key(self) -> tuple:
        n = self.normalized()
        return (n.lo, n.hi, Fraction(n.base), tuple((b.s, Fraction(b.at), Fraction(b.after)) for b in n.breaks))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QStepFunction):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def first_difference(self, other: "QStepFunction") -> Fraction | None:
        """Smallest breakpoint position where the two functions disagree."""
        if (self.lo, self.hi) != (other.lo, other.hi):
            raise ValueError("domains differ")
        cands = sorted({b.s for b in self.breaks} | {b.s for b in other.breaks})
        if self.base != other.base:
            return self.lo
        for s in cands:
            if self(s) != other(s) or self.limit_right(s) != other.limit_right(s):
                return s
        return None

    def restrict(self, lo, hi) -> "QStepFunction":
        lo, hi = Fraction(lo), Fraction(hi)
        if not (self.lo <= lo < hi <= self.hi):
            raise ValueError("restriction must lie inside the domain")
        base = self.limit_right(lo) if lo > self.lo else self.base
        breaks = tuple(b for b in self.breaks if lo < b.s <= hi)
        events = {s: e for s, e in self.events.items() if lo < s <= hi}
        return QStepFunction(lo, hi, base, breaks, events)

    def samples(self) -> list[tuple[Fraction, Fraction | int]]:
        """``(s, value)`` at every breakpoint and at interval midpoints."""
        pts = [self.lo] + [b.s for b in self.breaks]
        if pts[-1] != self.hi:
            pts.append(self.hi)
        out = []
        for a, b in zip(pts, pts[1:]):
            out.append(((a + b) / 2, self((a + b) / 2)))
            out.append((b, self(b)))
        return out

    def to_json(self) -> dict:
        return {
            "domain": [format_rat(self.lo), format_rat(self.hi)],
            "base": _num_out(self.base),
            "breaks": [{"s": format_rat(b.s), "at": _num_out(b.at), "after": _num_out(b.after)} for b in self.breaks],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "QStepFunction":
        lo, hi = (parse_rat(x) for x in obj["domain"])
        breaks = tuple(
            Breakpoint(parse_rat(b["s"]), _num_in(b["at"]), _num_in(b["after"])) for b in obj["breaks"]
        )
        return cls(lo, hi, _num_in(obj["base"]), breaks)


def _num_out(v):
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else format_rat(v)


def _num_in(v):
    if isinstance(v, int):
        return v
    r = parse_rat(v)
    return r.numerator if r.denominator == 1 else r


def csv_lines(f: QStepFunction) -> list[str]:
    return ["s,value"] + [f"{format_rat(s)},{format_rat(Fraction(v))}" for s, v in f.samples()]


# -- enumeration ------------------------------------------------------------


def _int_ineq(g: Sequence, h) -> tuple[list[int], int]:
    """Scale ``g.x <= h`` (rational data) to integer coefficients."""
    vals = [Fraction(x) for x in g] + [Fraction(h)]
    L = math.lcm(*(v.denominator for v in vals))
    ints = [int(v * L) for v in vals]
    return ints[:-1], ints[-1]


def _window_region(P: HPolytope, lo: Fraction, hi: Fraction) -> list[tuple[list[int], int]]:
    """H-description of ``U_{lo <= s <= hi} sP`` (eliminating ``s``)."""
    front = [(a, b) for a, b in P.ineqs if b > 0]
    back = [(a, b) for a, b in P.ineqs if b < 0]
    out = [_int_ineq(a, 0) for a, b in P.ineqs if b == 0]
    for ai, bi in front:
        out.append(_int_ineq(ai, hi * bi))
        for aj, bj in back:
            out.append(_int_ineq([bi * y - bj * x for x, y in zip(ai, aj)], 0))
    for aj, bj in back:
        out.append(_int_ineq(aj, lo * bj))
    return out


def _box(P: HPolytope, scales: Sequence[Fraction], with_origin: bool) -> list[tuple[int, int]]:
    pts = [tuple(c * v for v in vert) for vert in vertices(P) for c in scales]
    if with_origin:
        pts.append(tuple(Fraction(0) for _ in range(P.dim)))
    return [(ceil_frac(min(p[i] for p in pts)), floor_frac(max(p[i] for p in pts))) for i in range(P.dim)]


def _box_size(bx) -> int:
    n = 1
    for a, b in bx:
        n *= max(0, b - a + 1)
    return n


def _dtype_for(*bounds: int):
    return np.int64 if max(bounds) < _INT64_SAFE else object


def _lattice_points(region, bx, budget: int) -> np.ndarray:
    """Integer points of a polytope given by integer inequalities within a box.

    The longest box axis is solved for exactly; the others are enumerated.
    ``budget`` caps both the enumerated prefix and the number of points.
    """
    d = len(bx)
    if _box_size(bx) == 0:
        return np.zeros((0, d), dtype=np.int64)
    last = max(range(d), key=lambda i: bx[i][1] - bx[i][0])
    order = [i for i in range(d) if i != last] + [last]
    pbx = [bx[i] for i in order]
    preg = [([g[i] for i in order], h) for g, h in region]
    size = _box_size(pbx[:-1])
    if size > budget:
        raise WindowTooLarge(f"bounding box holds {size * (pbx[-1][1] - pbx[-1][0] + 1)} points, budget {budget}")
    mag = max(max(abs(a), abs(b)) for a, b in bx) + 1
    cmax = max([abs(x) for g, h in region for x in g] + [abs(h) for g, h in region] + [1])
    dt = _dtype_for(mag * cmax * (d + 1))
    axes = [np.arange(a, b + 1, dtype=np.int64).astype(dt) for a, b in pbx[:-1]]
    if axes:
        grids = np.meshgrid(*axes, indexing="ij")
        prefix = np.stack([g.ravel() for g in grids], axis=1)
    else:
        prefix = np.zeros((1, 0), dtype=dt)
    zlo = np.full(prefix.shape[0], pbx[-1][0], dtype=dt)
    zhi = np.full(prefix.shape[0], pbx[-1][1], dtype=dt)
    ok = np.ones(prefix.shape[0], dtype=bool)
    for g, h in preg:
        rest = h - (prefix @ np.array(g[:-1], dtype=dt) if d > 1 else np.zeros(prefix.shape[0], dtype=dt))
        c = g[-1]
        if c > 0:
            zhi = np.minimum(zhi, rest // c)
        elif c < 0:
            zlo = np.maximum(zlo, -(rest // (-c)))
        else:
            ok &= rest >= 0
    counts = np.where(ok, zhi - zlo + 1, 0)
    counts = np.maximum(counts, 0).astype(np.int64)
    total = int(counts.sum())
    if total > budget:
        raise WindowTooLarge(f"region holds {total} points, budget {budget}")
    if total == 0:
        return np.zeros((0, d), dtype=dt)
    rep_prefix = np.repeat(prefix, counts, axis=0)
    starts = np.repeat(zlo, counts)
    offsets = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
    tail = (starts + offsets.astype(dt)).reshape(-1, 1)
    X = np.concatenate([rep_prefix, tail], axis=1)
    inv = [order.index(i) for i in range(d)]
    return X[:, inv]


def _lifespan_arrays(P: HPolytope, X: np.ndarray):
    """Vectorized lifespans: ``(valid, a_num, a_den, b_num, b_den, b_inf)``."""
    N = X.shape[0]
    dt = X.dtype
    A = np.array([list(a) for a, _ in P.ineqs], dtype=np.int64).astype(dt)
    AX = X @ A.T
    xmax = int(np.abs(X).max()) if N else 0
    qs = [b.denominator for _, b in P.ineqs]
    ps = [abs(b.numerator) for _, b in P.ineqs]
    amax = max(abs(x) for a, _ in P.ineqs for x in a)
    bound = (xmax * amax * P.dim + 1) * max(qs) * max(ps + [1])
    if dt != object and bound * bound >= _INT64_SAFE:
        X = X.astype(object)
        AX = AX.astype(object)
        dt = object
    one = np.ones(N, dtype=np.int64).astype(dt)
    a_num = np.zeros(N, dtype=np.int64).astype(dt)
    a_den = one.copy()
    b_num = np.zeros(N, dtype=np.int64).astype(dt)
    b_den = one.copy()
    b_inf = np.ones(N, dtype=bool)
    valid = np.ones(N, dtype=bool)
    for i, (_a, b) in enumerate(P.ineqs):
        col = AX[:, i]
        if b == 0:
            valid &= col <= 0
            continue
        num = col * b.denominator
        den = b.numerator
        if b > 0:
            upd = num * a_den > a_num * den
            a_num = np.where(upd, num, a_num)
            a_den = np.where(upd, den, a_den)
        else:
            num, den = -num, -den
            upd = b_inf | (num * b_den < b_num * den)
            b_num = np.where(upd, num, b_num)
            b_den = np.where(upd, den, b_den)
            b_inf &= ~upd
    valid &= b_inf | (a_num * b_den <= b_num * a_den)
    return valid, a_num, a_den, b_num, b_den, b_inf


def _reduce(num, den):
    if num.dtype == object:
        g = np.array([math.gcd(int(x), int(y)) for x, y in zip(num, den)], dtype=object)
    else:
        g = np.gcd(num, den)
    g = np.where(g == 0, 1, g)
    return num // g, den // g


def _tally(num, den) -> Counter:
    if len(num) == 0:
        return Counter()
    if num.dtype == object:
        # pairs are already reduced, so they can be counted before building Fractions
        raw = Counter(zip(num.tolist(), den.tolist()))
        return Counter({Fraction(int(n), int(d)): c for (n, d), c in raw.items()})
    pairs, counts = np.unique(np.stack([num, den], axis=1), axis=0, return_counts=True)
    return Counter({Fraction(int(n), int(d)): int(c) for (n, d), c in zip(pairs, counts)})


def _cmp_le(num, den, r: Fraction):
    return num * r.denominator <= den * r.numerator


def window_function(P: HPolytope, lo, hi, budget: int | None = None) -> QStepFunction:
    """``L_P`` restricted to ``(lo, hi]`` with ``0 <= lo < hi``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not (0 <= lo < hi):
        raise ValueError("need 0 <= lo < hi")
    budget = point_budget() if budget is None else budget
    region = _window_region(P, lo, hi)
    bx = _box(P, [lo, hi], with_origin=(lo == 0))
    X = _lattice_points(region, bx, budget)
    valid, a_num, a_den, b_num, b_den, b_inf = _lifespan_arrays(P, X)
    a_num, a_den = _reduce(a_num[valid], a_den[valid])
    b_num, b_den, b_inf = b_num[valid], b_den[valid], b_inf[valid]
    fin = ~b_inf
    bn, bd = _reduce(b_num[fin], b_den[fin])

    a_le_lo = _cmp_le(a_num, a_den, lo)
    b_gt_lo = np.ones(len(a_num), dtype=bool)
    b_gt_lo[fin] = ~_cmp_le(bn, bd, lo)
    base = int(np.count_nonzero(a_le_lo & b_gt_lo))

    a_in = ~a_le_lo & _cmp_le(a_num, a_den, hi)
    b_in = ~_cmp_le(bn, bd, lo) & _cmp_le(bn, bd, hi)
    entering = _tally(a_num[a_in], a_den[a_in])
    leaving = _tally(bn[b_in], bd[b_in])
    return _sweep(lo, hi, base, entering, leaving)


def _sweep(lo, hi, base, entering: Counter, leaving: Counter) -> QStepFunction:
    val = base
    breaks = []
    events = {}
    for s in sorted(set(entering) | set(leaving)):
        e, l = entering.get(s, 0), leaving.get(s, 0)
        at = val + e
        val = at - l
        breaks.append(Breakpoint(s, at, val))
        events[s] = (e, l)
    return QStepFunction(lo, hi, base, tuple(breaks), events)


def step_function(P: HPolytope, S, budget: int | None = None) -> QStepFunction:
    """``L_P`` on ``(0, S]``."""
    S = Fraction(S)
    if S <= 0:
        raise ValueError("S must be positive")
    return window_function(P, 0, S, budget)


def lifespans_reference(P: HPolytope, S) -> QStepFunction:
    """Scalar reference sweep (slow; for cross-checks on tiny instances)."""
    S = Fraction(S)
    bx = _box(P, [S], with_origin=True)
    ent, lev = Counter(), Counter()
    base = 0
    for x in _iter_box(bx):
        ls = lifespan(P, x)
        if ls.empty or ls.alpha > S:
            continue
        if ls.beta is not None and ls.beta == 0:
            continue
        if ls.alpha == 0:
            base += 1
        else:
            ent[ls.alpha] += 1
        if ls.beta is not None and ls.beta <= S:
            lev[ls.beta] += 1
    return _sweep(Fraction(0), S, base, ent, lev)


def _iter_box(bx) -> Iterator[tuple[int, ...]]:
    import itertools

    return itertools.product(*(range(a, b + 1) for a, b in bx))


def _box_points(bx, budget: int) -> np.ndarray:
    size = _box_size(bx)
    if size > budget:
        raise WindowTooLarge(f"bounding box holds {size} points, budget {budget}")
    if size == 0:
        return np.zeros((0, len(bx)), dtype=np.int64)
    mag = max(max(abs(a), abs(b)) for a, b in bx)
    dt = _dtype_for(mag * 2**20)
    axes = [np.arange(a, b + 1, dtype=np.int64).astype(dt) for a, b in bx]
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _in_dilate_mask(P: HPolytope, X: np.ndarray, s: Fraction) -> tuple[np.ndarray, np.ndarray]:
    """Membership of rows of ``X`` in ``sP`` and the matrix of slacks ``q(s b - a.x)``."""
    A = np.array([list(a) for a, _ in P.ineqs], dtype=np.int64).astype(X.dtype)
    AX = X @ A.T
    cols = []
    for i, (_a, b) in enumerate(P.ineqs):
        sb = s * b
        cols.append(sb.numerator - AX[:, i] * sb.denominator)
    slack = np.stack(cols, axis=1) if cols else np.zeros((X.shape[0], 0))
    return (slack >= 0).all(axis=1), slack


def count(P: HPolytope, s, budget: int | None = None) -> int:
    """Brute-force ``#(sP ∩ Z^d)`` over the bounding box of ``sP``."""
    s = Fraction(s)
    if s < 0:
        raise ValueError("s must be nonnegative")
    if s == 0:
        return 1
    budget = point_budget() if budget is None else budget
    X = _box_points(_box(P, [s], with_origin=False), budget)
    if X.shape[0] == 0:
        return 0
    inside, _ = _in_dilate_mask(P, X, s)
    return int(np.count_nonzero(inside))


# -- jumps ------------------------------------------------------------------


@dataclass(frozen=True)
class JumpReport:
    s0: Fraction
    left_jump: Fraction | int
    right_jump: Fraction | int
    entering: int | None
    leaving: int | None


def jumps(f: QStepFunction) -> list[JumpReport]:
    out = []
    for i, bp in enumerate(f.breaks):
        ev = f.events.get(bp.s)
        out.append(
            JumpReport(
                bp.s,
                bp.at - f.before(i),
                bp.at - bp.after,
                ev[0] if ev else None,
                ev[1] if ev else None,
            )
        )
    return out


def facet_point_count(P: HPolytope, s0, side: FacetKind, budget: int | None = None) -> int:
    """Lattice points on the union of front (or back) facets of ``s0 P``."""
    if side not in (FacetKind.FRONT, FacetKind.BACK):
        raise ValueError("side must be FRONT or BACK")
    if affine_hull(P).hull_dim != P.dim:
        raise NotFullDimensional("facet_point_count needs a full-dimensional polytope")
    s0 = Fraction(s0)
    budget = point_budget() if budget is None else budget
    idx = [f.index for f in faces_report(P) if f.is_facet and f.kind is side]
    if not idx or s0 == 0:
        return 0
    X = _box_points(_box(P, [s0], with_origin=False), budget)
    if X.shape[0] == 0:
        return 0
    inside, slack = _in_dilate_mask(P, X, s0)
    on = (slack[:, idx] == 0).any(axis=1)
    return int(np.count_nonzero(inside & on))


def facet_point_counts(P: HPolytope, s_list: Sequence, side: FacetKind, budget: int | None = None) -> list[int]:
    """:func:`facet_point_count` for many dilations in one pass.

    A lattice point ``x`` can lie on facet ``i`` of ``s0 P`` only for
    ``s0 = <a_i, x> / b_i``; every (point, facet) pair is tested for
    membership in that dilate and the distinct ``(x, s0)`` pairs are tallied.
    """
    if side not in (FacetKind.FRONT, FacetKind.BACK):
        raise ValueError("side must be FRONT or BACK")
    if affine_hull(P).hull_dim != P.dim:
        raise NotFullDimensional("facet_point_counts needs a full-dimensional polytope")
    s_list = [Fraction(s) for s in s_list]
    if not s_list:
        return []
    budget = point_budget() if budget is None else budget
    idx = [f.index for f in faces_report(P) if f.is_facet and f.kind is side]
    top = max(s_list)
    if not idx or top <= 0:
        return [0] * len(s_list)
    X = _box_points(_box(P, [top], with_origin=True), budget)
    xmax = int(np.abs(X).max()) + 1
    amax = max(abs(x) for a, _ in P.ineqs for x in a)
    pq = max(max(abs(b.numerator), b.denominator) for _, b in P.ineqs)
    if X.dtype != object and (xmax * amax * P.dim * pq * pq) ** 2 >= _INT64_SAFE:
        X = X.astype(object)
    A = np.array([list(a) for a, _ in P.ineqs], dtype=np.int64).astype(X.dtype)
    AX = X @ A.T
    seen = set()
    for i in idx:
        bi = P.ineqs[i][1]
        pi, qi = bi.numerator, bi.denominator
        num = AX[:, i] * qi
        ok = num * pi > 0
        for j, (_a, bj) in enumerate(P.ineqs):
            # <a_j, x> <= s0 b_j with s0 = num / pi, scaled by pi * q_j
            lhs = AX[:, j] * pi * bj.denominator
            rhs = num * bj.numerator
            ok &= (lhs <= rhs) if pi > 0 else (lhs >= rhs)
        rows = np.nonzero(ok)[0]
        for r in rows:
            s0 = Fraction(int(num[r]), pi)
            if s0 <= top:
                seen.add((int(r), s0))
    tally = Counter(s0 for _, s0 in seen)
    return [tally.get(s0, 0) for s0 in s_list]


# -- lifting ----------------------------------------------------------------


def lift_at(f: QStepFunction, s0) -> QStepFunction:
    """Shift all values right of ``s0`` so the function is right-continuous there."""
    s0 = Fraction(s0)
    idx = next((i for i, b in enumerate(f.breaks) if b.s == s0), None)
    if idx is None:
        raise NotABreakpoint(f"{s0} is not a breakpoint")
    shift = f.breaks[idx].at - f.breaks[idx].after
    breaks = list(f.breaks[:idx])
    breaks.append(Breakpoint(s0, f.breaks[idx].at, f.breaks[idx].at))
    for b in f.breaks[idx + 1:]:
        breaks.append(Breakpoint(b.s, b.at + shift, b.after + shift))
    return QStepFunction(f.lo, f.hi, f.base, tuple(breaks))


def lifting(f: QStepFunction, value_at_lo=None) -> QStepFunction:
    """Lift successively at every breakpoint, left to right.

    When the domain starts at 0 the drop from ``L(0) = 1`` to the base value is
    lifted too, so the result starts at ``value_at_lo`` (default 1 there).
    """
    if value_at_lo is None:
        value_at_lo = 1 if f.lo == 0 else f.base
    shift = value_at_lo - f.base
    breaks = []
    for b in f.breaks:
        at = b.at + shift
        shift += b.at - b.after
        breaks.append(Breakpoint(b.s, at, at))
    return QStepFunction(f.lo, f.hi, value_at_lo, tuple(breaks))


def ppyr_step_function(P: HPolytope, S, budget: int | None = None) -> QStepFunction:
    """``s -> #(s ppyr(P) ∩ Z^d)`` on ``(0, S]`` from the hull of ``vert(P) ∪ {0}``.

    Uses the facets of that hull directly, so it shares nothing with the
    lifespan sweep; full-dimensional ``P`` only.
    """
    S = Fraction(S)
    budget = point_budget() if budget is None else budget
    if affine_hull(P).hull_dim != P.dim:
        raise NotFullDimensional("ppyr_step_function needs a full-dimensional polytope")
    facets = [_int_ineq(n, h) for n, h, _ in hull_facets(ppyr_vertices(P))]
    X = _box_points(_box(P, [S], with_origin=True), budget)
    N = X.shape[0]
    e_num = np.zeros(N, dtype=X.dtype)
    e_den = np.ones(N, dtype=X.dtype)
    ok = np.ones(N, dtype=bool)
    for g, h in facets:
        val = X @ np.array(g, dtype=np.int64).astype(X.dtype)
        if h == 0:
            ok &= val <= 0
            continue
        upd = val * e_den > e_num * h
        e_num = np.where(upd, val, e_num)
        e_den = np.where(upd, h, e_den)
    e_num, e_den = _reduce(e_num[ok], e_den[ok])
    zero = e_num <= 0
    base = int(np.count_nonzero(zero))
    inside = ~zero & _cmp_le(e_num, e_den, S)
    return _sweep(Fraction(0), S, base, _tally(e_num[inside], e_den[inside]), Counter())
