"""Scenario checks: translation variance, lemma suites and the codim-1 demo."""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .ehrhart import (
    QStepFunction,
    Breakpoint,
    WindowTooLarge,
    count,
    facet_point_counts,
    jumps,
    lifting,
    point_budget,
    ppyr_step_function,
    step_function,
    window_function,
    _box,
    _box_size,
)
from .exactmath import dot, format_rat, parse_rat, primitivize
from .polytope import (
    FacetKind,
    HPolytope,
    PolytopeError,
    affine_hull,
    flatten_codim1,
    hyperplane_flattening,
    ppyr_volume,
    rvol,
    translate,
    validate,
    vertices,
)
from .reconstruct import (
    EhrhartOracle,
    ReconstructionConfig,
    ReconstructionReport,
    recover,
)


class BadCodimension(ValueError):
    pass


class EmptyGrid(ValueError):
    pass


# -- instance generation ----------------------------------------------------


@dataclass(frozen=True)
class InstanceSpec:
    dim: int = 2
    count: int = 10
    seed: int = 0
    normal_bound: int = 4
    den_bound: int = 6
    extra_normals: int = 2
    max_offset: Fraction = Fraction(2)
    center_bound: Fraction = Fraction(2)
    window: Fraction = Fraction(10)

    @classmethod
    def from_json(cls, obj: dict) -> "InstanceSpec":
        known = set(cls.__dataclass_fields__)
        extra = set(obj) - known
        if extra:
            raise ValueError(f"unknown instance-spec keys: {sorted(extra)}")
        kw = dict(obj)
        for k in ("max_offset", "center_bound", "window"):
            if k in kw:
                kw[k] = parse_rat(kw[k])
        for k in ("dim", "count", "seed", "normal_bound", "den_bound", "extra_normals"):
            if k in kw and (not isinstance(kw[k], int) or isinstance(kw[k], bool)):
                raise ValueError(f"{k} must be an integer")
        spec = cls(**kw)
        if spec.dim < 1 or spec.count < 0 or spec.normal_bound < 1 or spec.den_bound < 1:
            raise ValueError("dim, normal_bound and den_bound must be positive, count nonnegative")
        return spec

    def to_json(self) -> dict:
        return {k: format_rat(v) if isinstance(v, Fraction) else v for k, v in asdict(self).items()}


def _random_rat(rng: random.Random, bound: Fraction, den_bound: int, positive: bool = False) -> Fraction:
    q = rng.randint(1, den_bound)
    top = math.floor(bound * q)
    lo = 1 if positive else -top
    return Fraction(rng.randint(lo, max(lo, top)), q)


def random_polytope(rng: random.Random, spec: InstanceSpec) -> HPolytope:
    """One full-dimensional rational polytope with rhs denominators ``<= den_bound``.

    Each facet is a primitive normal pushed a random positive distance past a
    random rational center.  Draws that are unbounded, reach beyond
    ``center_bound + 2 max_offset``, exceed the point budget at
    ``spec.window`` or have larger denominators are redrawn.
    """
    d = spec.dim
    B = spec.normal_bound
    while True:
        n = d + 1 + rng.randint(0, spec.extra_normals)
        normals: list[tuple[int, ...]] = []
        while len(normals) < n:
            v = tuple(rng.randint(-B, B) for _ in range(d))
            if not any(v):
                continue
            p, _ = primitivize(v)
            if p not in normals:
                normals.append(p)
        q = rng.randint(1, spec.den_bound)
        center = [Fraction(rng.randint(-int(spec.center_bound * q), int(spec.center_bound * q)), q) for _ in range(d)]
        raw = []
        for a in normals:
            b = dot(a, center) + _random_rat(rng, spec.max_offset, spec.den_bound, positive=True)
            raw.append((a, b))
        if any(b.denominator > spec.den_bound for _, b in raw):
            continue
        try:
            P = validate(d, raw)
        except PolytopeError:
            continue
        if affine_hull(P).hull_dim != d:
            continue
        reach = spec.center_bound + 2 * spec.max_offset
        if any(abs(x) > reach for v in vertices(P) for x in v):
            continue
        if _box_size(_box(P, [spec.window], with_origin=True)) > point_budget():
            continue
        return P


def generate_instances(spec: InstanceSpec) -> list[HPolytope]:
    rng = random.Random(spec.seed)
    return [random_polytope(rng, spec) for _ in range(spec.count)]


# -- translation variance ---------------------------------------------------


def find_translation_witness(P: HPolytope, max_scale: int = 64) -> tuple[int, ...]:
    """Integer ``w`` with ``L_{P + k w}`` pairwise distinct for ``k >= 0``.

    Full-dimensional ``P``: the first nonzero lattice point of ``mP`` for
    ``m = 1, 2, ...`` (a multiple of a rational point of ``P``), scaled until
    ``P + w`` misses the origin.  Codimension one: the oriented hyperplane
    normal ``a`` (so ``<a, w> > 0``).

    Raises:
        BadCodimension: codimension two or more.
    """
    hd = affine_hull(P).hull_dim
    if hd == P.dim - 1 and P.dim >= 2:
        return tuple(flatten_codim1(P).a)
    if hd != P.dim:
        raise BadCodimension(f"affine hull has dimension {hd} in R^{P.dim}")
    zero = tuple([0] * P.dim)
    for m in range(1, max_scale + 1):
        verts = [tuple(m * x for x in v) for v in vertices(P)]
        lo = [math.ceil(min(v[i] for v in verts)) for i in range(P.dim)]
        hi = [math.floor(max(v[i] for v in verts)) for i in range(P.dim)]
        pts = [
            x
            for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
            if x != zero and all(dot(a, x) <= m * b for a, b in P.ineqs)
        ]
        if pts:
            x = min(pts, key=lambda p: (sum(abs(c) for c in p), p))
            w = x
            j = 1
            while P.contains(tuple(-j * c for c in x)):
                j += 1
                w = tuple(j * c for c in x)
            return w
    raise BadCodimension("no rational point found within the scale bound")


def pyramid_volume_codim1(P: HPolytope, w: Sequence[int], k: int) -> Fraction:
    """``(1/d) rvol(P) (b + k <a, w>)``, the pyramid over ``P + k w``."""
    fl = flatten_codim1(P)
    return rvol(P) * (fl.b + k * dot(fl.a, w)) / P.dim


@dataclass
class PairVerdict:
    k1: int
    k2: int
    distinct: bool
    first_difference: Fraction | None
    window: Fraction

    def to_json(self) -> dict:
        return {
            "k1": self.k1,
            "k2": self.k2,
            "distinct": self.distinct,
            "first_difference": None if self.first_difference is None else format_rat(self.first_difference),
            "window": format_rat(self.window),
        }


@dataclass
class TranslatesReport:
    volumes: list[Fraction]
    volumes_increasing: bool
    pairs: list[PairVerdict]
    integer_contrast_equal: bool

    @property
    def passed(self) -> bool:
        return self.volumes_increasing and all(p.distinct for p in self.pairs) and self.integer_contrast_equal

    def to_json(self) -> dict:
        return {
            "volumes": [format_rat(v) for v in self.volumes],
            "volumes_increasing": self.volumes_increasing,
            "pairs": [p.to_json() for p in self.pairs],
            "integer_contrast_equal": self.integer_contrast_equal,
            "passed": self.passed,
        }


def check_translates_distinct(
    P: HPolytope,
    w: Sequence[int],
    K: int,
    S=1,
    max_S=16,
    integer_upto: int = 3,
) -> TranslatesReport:
    """Certify that ``L_{P + k w}``, ``k = 0..K``, are pairwise distinct.

    Tier one checks that pseudopyramid volumes strictly increase in ``k``;
    tier two finds a differing breakpoint for every pair on ``(0, S]``,
    doubling ``S`` (up to ``max_S``) while some pair agrees.  The contrast
    check confirms that the functions agree at integer ``s <= integer_upto``.
    """
    w = tuple(int(x) for x in w)
    full = affine_hull(P).hull_dim == P.dim
    polys = [translate(P, tuple(k * x for x in w)) for k in range(K + 1)]
    if full:
        vols = [ppyr_volume(Q)[0] for Q in polys]
    else:
        vols = [pyramid_volume_codim1(P, w, k) for k in range(K + 1)]
    increasing = all(x < y for x, y in zip(vols, vols[1:]))

    S = Fraction(S)
    pending = list(itertools.combinations(range(K + 1), 2))
    verdicts: dict[tuple[int, int], PairVerdict] = {}
    while pending:
        fs = [step_function(Q, S) for Q in polys]
        still = []
        for k1, k2 in pending:
            where = fs[k1].first_difference(fs[k2])
            if where is not None:
                verdicts[(k1, k2)] = PairVerdict(k1, k2, True, where, S)
            else:
                still.append((k1, k2))
        pending = still
        if not pending or S * 2 > max_S:
            break
        S *= 2
    for k1, k2 in pending:
        verdicts[(k1, k2)] = PairVerdict(k1, k2, False, None, S)
    contrast = all(
        len({count(Q, t) for Q in polys}) == 1 for t in range(1, integer_upto + 1)
    )
    pairs = [verdicts[p] for p in sorted(verdicts)]
    return TranslatesReport(vols, increasing, pairs, contrast)


# -- lemma suites -----------------------------------------------------------


def jump_lemma_check(P: HPolytope, S) -> dict:
    """Left jumps vs front-facet counts and right jumps vs back-facet counts."""
    f = step_function(P, S)
    reps = jumps(f)
    ss = [r.s0 for r in reps]
    front = facet_point_counts(P, ss, FacetKind.FRONT)
    back = facet_point_counts(P, ss, FacetKind.BACK)
    bad = [
        format_rat(r.s0)
        for r, fc, bc in zip(reps, front, back)
        if not (r.left_jump == fc == r.entering and r.right_jump == bc == r.leaving)
    ]
    return {"breakpoints": len(reps), "mismatches": bad, "passed": not bad}


def lifting_check(P: HPolytope, S) -> dict:
    lifted = lifting(step_function(P, S))
    brute = ppyr_step_function(P, S)
    where = lifted.first_difference(brute)
    return {"passed": where is None, "first_difference": None if where is None else format_rat(where)}


def decomposition_check(P: HPolytope) -> dict:
    a, b = ppyr_volume(P)
    return {"decomposition": format_rat(a), "hull": format_rat(b), "passed": a == b}


# -- relative-volume limit --------------------------------------------------


def rvol_limit_check(P: HPolytope, v: Sequence, s_list: Sequence) -> list[Fraction]:
    """``|L_{P+v}(s) / s^{dim P} - rvol P|`` for the ``s`` whose dilate's affine hull meets ``Z^d``.

    Raises:
        BadCodimension: codimension two or more.
        EmptyGrid: no ``s`` in ``s_list`` qualifies.
    """
    v = tuple(Fraction(x) for x in v)
    Q = translate(P, v)
    hd = affine_hull(Q).hull_dim
    if hd == P.dim:
        grid = [Fraction(s) for s in s_list]
    elif hd == P.dim - 1 and P.dim >= 2:
        fl = flatten_codim1(Q)
        grid = [Fraction(s) for s in s_list if (Fraction(s) * fl.b).denominator == 1]
    else:
        raise BadCodimension(f"affine hull has dimension {hd} in R^{P.dim}")
    grid = [s for s in grid if s > 0]
    if not grid:
        raise EmptyGrid("no admissible dilation in the list")
    r = rvol(Q)
    return [abs(Fraction(count(Q, s)) / s**hd - r) for s in grid]


def fitted_envelope(P: HPolytope, fit: Sequence[int] = range(1, 21), at: int = 40) -> dict:
    """Fit ``C = max s * dev(s)`` over ``fit`` and compare with ``dev(at)``."""
    devs = rvol_limit_check(P, [0] * P.dim, list(fit) + [at])
    C = max(d * s for d, s in zip(devs[:-1], fit))
    return {"C": C, "deviation": devs[-1], "bound": C / at, "passed": devs[-1] <= C / at}


# -- codimension one --------------------------------------------------------


def _rat_gcd(xs: Sequence[Fraction]) -> Fraction:
    L = math.lcm(*(x.denominator for x in xs))
    return Fraction(math.gcd(*(int(x * L) for x in xs)), L)


def _level_magnitude(oracle: EhrhartOracle, w, start=Fraction(8), length=Fraction(4), tries: int = 6) -> Fraction | None:
    """``|b + <a, w>|`` read off the spacing of nonzero values of ``L_{P+w}``.

    Returns 0 when the function is positive on an interval (the hyperplane of
    ``P + w`` passes through the origin) and ``None`` if too few lattice slices
    were seen.
    """
    lo, L = start, length
    for _ in range(tries):
        f = oracle.query(w, lo, lo + L)
        if f.base or any(bp.after for bp in f.breaks):
            return Fraction(0)
        pos = [bp.s for bp in f.breaks if bp.at > 0]
        if len(pos) >= 3:
            return 1 / _rat_gcd([p - pos[0] for p in pos[1:]])
        lo, L = lo * 2, L * 2
    return None


def identify_hyperplane(oracle: EhrhartOracle) -> tuple[tuple[int, ...], Fraction]:
    """Recover ``(a, b)`` with ``aff P = {<a, x> = b}`` from grid spacings.

    ``L_{P+w}`` is nonzero only at multiples of ``1 / |b + <a, w>|``.  A base
    translation ``u`` among ``0, e_1, ..., e_d`` with nonzero level
    ``c = |b + <a, u>|`` is found first; orienting ``a`` so that
    ``b + <a, u> = c``, the level at ``u + N e_t`` with ``N > 2c + 2`` is
    ``|c + N a_t|``, and exactly one of ``(L - c) / N`` and ``(L + c) / N`` is
    an integer.

    Raises:
        BadCodimension: the oracle does not behave like a codim-1 polytope.
    """
    d = oracle.dim
    if d < 2:
        raise BadCodimension("codimension-one demo needs d >= 2")

    def level(w):
        m = _level_magnitude(oracle, tuple(w))
        if m is None:
            raise BadCodimension(f"no lattice slices seen at translation {list(w)}")
        return m

    e = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    u = c = None
    for cand in [tuple([0] * d)] + e:
        m = level(cand)
        if m > 0:
            u, c = cand, m
            break
    if u is None:
        raise BadCodimension("function is positive on whole windows: full-dimensional input")
    N = 2 * math.ceil(c) + 3
    a = []
    for t in range(d):
        L = level([x + N * y for x, y in zip(u, e[t])])
        up, down = (L - c) / N, (L + c) / N
        if up.denominator == 1:
            a.append(int(up))
        elif down.denominator == 1:
            a.append(-int(down))
        else:
            raise BadCodimension(f"level {L} at coordinate {t} is inconsistent with a hyperplane")
    if not any(a) or math.gcd(*a) != 1:
        raise BadCodimension(f"recovered normal {a} is not primitive")
    return tuple(a), c - dot(a, u)


def simplest_between(x: Fraction, y: Fraction) -> Fraction:
    """Fraction with the smallest denominator in the closed interval ``[x, y]``."""
    if x > y:
        x, y = y, x
    fl = math.floor(x)
    if fl == x:
        return Fraction(fl)
    if fl + 1 <= y:
        return Fraction(fl + 1)
    r = simplest_between(1 / (y - fl), 1 / (x - fl))
    return fl + 1 / r


class GridOracle:
    """Oracle for the flattened polytope ``P'`` built from grid samples of ``P``.

    ``L_{P'+w'}(s)`` equals ``L_{P+w}(s)`` for any lift ``w`` of ``w'`` whose
    level ``b + t`` puts ``s`` on the grid ``Z / (b + t)``; one hidden window
    query at a fixed lift gives every grid value in the window.

    Breakpoints of ``L_{P'+w'}`` have denominators at most
    ``H = den_bound * (b_bound + normal_bound * |w'|_1)`` when the right-hand
    sides of ``P'`` have denominators ``<= den_bound`` and size ``<= b_bound``
    and its normals have entries ``<= normal_bound``.  The
    grid is taken finer than ``1 / (2 H^2)``, so adjacent samples bracket at
    most one breakpoint and it is the simplest fraction between them.

    Values at breakpoints are not observable in general (``s`` may lie on no
    grid), so every breakpoint reports ``max(before, after)`` and the value at
    ``hi`` is the left limit.  :meth:`observed` applies the same projection to
    a true window function.
    """

    def __init__(self, hidden: EhrhartOracle, a, b, normal_bound: int = 1, den_bound: int = 4,
                 b_bound: int = 8, initial: int = 32, max_samples: int = 2 * 10**6):
        self.hidden = hidden
        self.flat = hyperplane_flattening(a, b)
        self.dim = hidden.dim - 1
        self.normal_bound = normal_bound
        self.den_bound = den_bound
        self.b_bound = b_bound
        self.initial = initial
        self.max_samples = max_samples
        self.t_min = max(1, math.ceil(-self.flat.b) + 1)
        self.samples = 0
        self.calls = 0
        self.total_length = Fraction(0)
        self.max_length = None
        self.point_budget = hidden.point_budget
        self._cache: dict[tuple, QStepFunction] = {}

    def denominator_bound(self, wprime) -> int:
        return self.den_bound * (self.b_bound + self.normal_bound * sum(abs(x) for x in wprime))

    def _t_for(self, spacing: Fraction) -> int:
        """Smallest admissible ``t`` whose grid spacing is below ``spacing``."""
        return max(self.t_min, math.ceil(1 / spacing - self.flat.b) + 1)

    def _grid_values(self, wprime, t: int, lo: Fraction, hi: Fraction) -> list[tuple[Fraction, int]]:
        """Values at the grid points of level ``b + t`` strictly inside ``(lo, hi)``."""
        lev = self.flat.b + t
        m_lo = math.floor(lo * lev) + 1
        m_hi = math.ceil(hi * lev) - 1
        if m_hi - m_lo + 1 > self.max_samples:
            raise OracleBudgetExceeded(f"{m_hi - m_lo + 1} grid samples exceed {self.max_samples}")
        if m_hi < m_lo:
            return []
        w = self.flat.lift_translation(wprime, t)
        f = self.hidden.query(w, Fraction(m_lo) / lev - 1 / (2 * lev), Fraction(m_hi) / lev)
        hits = {bp.s: int(bp.at) for bp in f.breaks}
        self.samples += m_hi - m_lo + 1
        return [(Fraction(m) / lev, hits.get(Fraction(m) / lev, 0)) for m in range(m_lo, m_hi + 1)]

    def _value_near(self, wprime, s: Fraction, side: int, width: Fraction) -> int:
        """Value at a grid point within ``width`` of ``s`` on the given side."""
        t = self._t_for(width / 2)
        lev = self.flat.b + t
        m = math.floor(s * lev) + 1 if side > 0 else math.ceil(s * lev) - 1
        g = Fraction(m) / lev
        f = self.hidden.query(self.flat.lift_translation(wprime, t), g - 1 / (2 * lev), g)
        self.samples += 1
        return int(f(g))

    def query(self, wprime, lo, hi) -> QStepFunction:
        wprime = tuple(int(x) for x in wprime)
        lo, hi = Fraction(lo), Fraction(hi)
        key = (wprime, lo, hi)
        if key in self._cache:
            return self._cache[key]
        if lo < 0 or hi <= lo:
            raise ValueError("window must satisfy 0 <= lo < hi")
        self.calls += 1
        self.total_length += hi - lo
        H = self.denominator_bound(wprime)
        sep = Fraction(1, 2 * H * H)
        spacing = min((hi - lo) / self.initial, sep)
        edge = Fraction(1, 2 * H * max(H, lo.denominator, hi.denominator))
        pts = [(lo, self._value_near(wprime, lo, +1, edge))]
        pts += self._grid_values(wprime, self._t_for(spacing), lo, hi)
        pts.append((hi, self._value_near(wprime, hi, -1, edge)))
        # (s, before, after); a grid point sitting on a breakpoint shows up twice
        found: list[list] = []
        for (x, vx), (y, vy) in zip(pts, pts[1:]):
            if vx != vy:
                s = simplest_between(x, y)
                if found and found[-1][0] == s:
                    found[-1][2] = vy
                else:
                    found.append([s, vx, vy])
        breaks = tuple(Breakpoint(s, max(u, v), v) for s, u, v in found if u != v)
        f = QStepFunction(lo, hi, pts[0][1], breaks)
        self._cache[key] = f
        return f

    def observed(self, f: QStepFunction) -> QStepFunction:
        breaks = []
        for i, bp in enumerate(f.breaks):
            before = f.before(i)
            if bp.s == f.hi:
                breaks.append(Breakpoint(bp.s, before, before))
            else:
                breaks.append(Breakpoint(bp.s, max(before, bp.after), bp.after))
        return QStepFunction(f.lo, f.hi, f.base, tuple(breaks)).normalized()


@dataclass
class Codim1Report:
    hyperplane: tuple[tuple[int, ...], Fraction]
    flat_report: ReconstructionReport
    polytope: HPolytope | None
    verification: str
    counterexample: dict | None

    @property
    def passed(self) -> bool:
        return self.verification == "Passed"

    def to_json(self) -> dict:
        return {
            "hyperplane": {"a": list(self.hyperplane[0]), "b": format_rat(self.hyperplane[1])},
            "flat": self.flat_report.to_json(),
            "polytope": None if self.polytope is None else self.polytope.to_json(),
            "verification": self.verification,
            "counterexample": self.counterexample,
        }


def project_normals(a: Sequence[int], b, normals: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Ambient normals expressed as primitive normals of the flattened polytope.

    Multiples of the hyperplane normal disappear; duplicates are merged.
    """
    fl = hyperplane_flattening(a, b)
    from .exactmath import integer_inverse

    Ainv = integer_inverse([list(r) for r in fl.transform])
    d = len(fl.a)
    out: list[tuple[int, ...]] = []
    for ai in normals:
        n = [sum(Ainv[r][j] * ai[r] for r in range(d)) for j in range(d - 1)]
        if not any(n):
            continue
        p, _ = primitivize(n)
        if p not in out:
            out.append(p)
    return out


def codim1_reconstruction_demo(
    hidden: HPolytope,
    normals: Sequence[Sequence[int]],
    config: ReconstructionConfig | dict | None = None,
    verify_windows: int = 8,
    seed: int = 0,
) -> Codim1Report:
    """Identify the hyperplane, recover the flattened polytope, reassemble.

    Args:
        hidden: a codimension-one rational polytope (seen only through an oracle).
        normals: ambient normal directions of its relative facets; they are
            carried to the flattened coordinates with :func:`project_normals`.
        config: reconstruction config for the flattened run.

    Raises:
        BadCodimension: the hidden polytope is not of codimension one.
    """
    hd = affine_hull(hidden).hull_dim
    if hidden.dim < 2 or hd != hidden.dim - 1:
        raise BadCodimension(f"affine hull has dimension {hd} in R^{hidden.dim}")
    cfg = config if isinstance(config, ReconstructionConfig) else ReconstructionConfig.from_json(config or {})
    oracle = EhrhartOracle(hidden)
    a, b = identify_hyperplane(oracle)
    fl = hyperplane_flattening(a, b)
    flat_normals = project_normals(fl.a, fl.b, normals)
    grid = GridOracle(oracle, fl.a, fl.b, normal_bound=max(abs(x) for n in flat_normals for x in n))
    rep = recover(grid, flat_normals, cfg)
    if rep.polytope is None:
        return Codim1Report((fl.a, fl.b), rep, None, "Failed", {"reason": "flattened reconstruction failed"})
    P = fl.reassemble(rep.polytope)
    rng = random.Random(seed)
    for _ in range(verify_windows):
        w = tuple(rng.randint(-3, 3) for _ in range(hidden.dim))
        lo = Fraction(rng.randint(1, 48), rng.randint(1, 8))
        hi = lo + 1
        if oracle.query(w, lo, hi) != window_function(translate(P, w), lo, hi):
            return Codim1Report((fl.a, fl.b), rep, P, "Failed",
                                {"w": list(w), "window": [format_rat(lo), format_rat(hi)]})
    return Codim1Report((fl.a, fl.b), rep, P, "Passed", None)


# -- suite runner -----------------------------------------------------------


CHECKS = ("jumps", "lifting", "decomposition", "translates", "rvol")


def run_suite(obj: dict) -> Iterator[dict]:
    """Yield one JSON-ready record per instance and check.

    ``obj`` holds an instance spec plus ``"checks"`` (subset of
    :data:`CHECKS`), ``"S"`` (window for the jump and lifting checks) and
    ``"K"`` (translates).
    """
    obj = dict(obj)
    checks = obj.pop("checks", list(CHECKS))
    S = parse_rat(obj.pop("S", "10"))
    K = obj.pop("K", 5)
    if not isinstance(checks, list) or any(c not in CHECKS for c in checks):
        raise ValueError(f"checks must be a list drawn from {list(CHECKS)}")
    if not isinstance(K, int) or K < 0:
        raise ValueError("K must be a nonnegative integer")
    spec = InstanceSpec.from_json(obj)
    for i, P in enumerate(generate_instances(spec)):
        for name in checks:
            rec = {"instance": i, "seed": spec.seed, "check": name, "polytope": P.to_json()}
            if name == "jumps":
                rec.update(jump_lemma_check(P, S))
            elif name == "lifting":
                rec.update(lifting_check(P, S))
            elif name == "decomposition":
                rec.update(decomposition_check(P))
            elif name == "translates":
                w = find_translation_witness(P)
                rep = check_translates_distinct(P, w, K)
                rec.update({"w": list(w), **rep.to_json()})
            elif name == "rvol":
                env = fitted_envelope(P)
                rec.update({k: format_rat(v) if isinstance(v, Fraction) else v for k, v in env.items()})
            yield rec


def summarize(records: Sequence[dict]) -> dict:
    out: dict[str, dict[str, int]] = {}
    for r in records:
        slot = out.setdefault(r["check"], {"passed": 0, "failed": 0})
        slot["passed" if r["passed"] else "failed"] += 1
    return out
