"""Rational polytopes in H-representation.

A polytope is ``{x : <a_i, x> <= b_i}`` with primitive integer normals
``a_i`` and rational right-hand sides ``b_i``.  Everything here is exact; the
small dimensions and inequality counts this library targets make d-subset
vertex enumeration and brute-force hull facets affordable.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .exactmath import (
    NO_SOLUTION,
    UNDERDETERMINED,
    IVec,
    QVec,
    ZeroVector,
    det_exact,
    dot,
    format_rat,
    gcd_vec,
    integer_inverse,
    integer_kernel,
    nullspace,
    parse_rat,
    primitivize,
    rank,
    solve_exact,
    unimodular_completion,
)


class PolytopeError(ValueError):
    pass


class EmptyPolytope(PolytopeError):
    pass


class UnboundedPolytope(PolytopeError):
    pass


class ZeroNormal(PolytopeError):
    pass


class DimensionMismatch(PolytopeError):
    pass


class NotFullDimensional(PolytopeError):
    pass


class NotCodimensionOne(PolytopeError):
    pass


Ineq = tuple[IVec, Fraction]


@dataclass(frozen=True, eq=False)
class HPolytope:
    """Validated rational polytope; build it with :func:`validate`."""

    dim: int
    ineqs: tuple[Ineq, ...]

    @property
    def normals(self) -> list[IVec]:
        return [a for a, _ in self.ineqs]

    @property
    def rhs(self) -> list[Fraction]:
        return [b for _, b in self.ineqs]

    @cached_property
    def _vertices(self) -> tuple[QVec, ...]:
        return tuple(_enumerate_vertices(self.dim, self.ineqs))

    def key(self) -> tuple:
        return (self.dim, tuple(sorted(self.ineqs)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HPolytope):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def contains(self, x: Sequence) -> bool:
        return all(dot(a, x) <= b for a, b in self.ineqs)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "ineqs": [{"a": list(a), "b": format_rat(b)} for a, b in self.ineqs],
        }

    def __repr__(self) -> str:
        body = ", ".join(f"{list(a)}.x<={format_rat(b)}" for a, b in self.ineqs)
        return f"HPolytope(dim={self.dim}; {body})"


def _normalize(dim: int, raw: Iterable[tuple[Sequence[int], object]]) -> tuple[Ineq, ...]:
    best: dict[IVec, Fraction] = {}
    order: list[IVec] = []
    for a, b in raw:
        a = tuple(int(x) for x in a)
        if len(a) != dim:
            raise DimensionMismatch(f"normal {list(a)} has length {len(a)}, expected {dim}")
        b = parse_rat(b) if not isinstance(b, Fraction) else b
        try:
            p, g = primitivize(a)
        except ZeroVector:
            raise ZeroNormal(f"zero normal vector with rhs {format_rat(b)}") from None
        b = b / g
        if p not in best:
            best[p] = b
            order.append(p)
        elif b < best[p]:
            best[p] = b
    return tuple((a, best[a]) for a in order)


def _is_bounded(dim: int, normals: Sequence[IVec]) -> bool:
    """True iff the recession cone ``{y : <a_i, y> <= 0}`` is ``{0}``."""
    if rank(normals) < dim:
        return False
    # A pointed nonzero cone has an extreme ray cut out by dim-1 independent
    # tight constraints.
    for sub in itertools.combinations(normals, dim - 1):
        ker = nullspace(list(sub), dim)
        if len(ker) != 1:
            continue
        r = ker[0]
        for ray in (r, tuple(-x for x in r)):
            if all(dot(a, ray) <= 0 for a in normals):
                return False
    return True


def _enumerate_vertices(dim: int, ineqs: Sequence[Ineq]) -> list[QVec]:
    normals = [a for a, _ in ineqs]
    rhs = [b for _, b in ineqs]
    found: set[QVec] = set()
    for idx in itertools.combinations(range(len(ineqs)), dim):
        x = solve_exact([normals[i] for i in idx], [rhs[i] for i in idx])
        if x is NO_SOLUTION or x is UNDERDETERMINED:
            continue
        if x in found:
            continue
        if all(dot(a, x) <= b for a, b in ineqs):
            found.add(x)
    return sorted(found)


def validate(dim: int, raw: Iterable[tuple[Sequence[int], object]]) -> HPolytope:
    """Normalize raw H-data and prove it describes a nonempty bounded set.

    Raises:
        ZeroNormal, DimensionMismatch: malformed inequalities.
        UnboundedPolytope: the normals do not positively span ``R^dim``.
        EmptyPolytope: no feasible point.
    """
    if dim < 1:
        raise PolytopeError("dimension must be at least 1")
    ineqs = _normalize(dim, raw)
    if not ineqs:
        raise PolytopeError("at least one inequality is required")
    if not _is_bounded(dim, [a for a, _ in ineqs]):
        raise UnboundedPolytope("recession cone is nonzero")
    P = HPolytope(dim, ineqs)
    if not P._vertices:
        raise EmptyPolytope("no feasible point")
    return P


def from_json(obj: dict) -> HPolytope:
    try:
        dim = int(obj["dim"])
        raw = [(entry["a"], parse_rat(entry["b"])) for entry in obj["ineqs"]]
    except (KeyError, TypeError) as exc:
        raise PolytopeError(f"malformed polytope JSON: {exc}") from None
    return validate(dim, raw)


def box(lo: Sequence, hi: Sequence) -> HPolytope:
    """Axis-parallel box ``prod [lo_i, hi_i]``."""
    d = len(lo)
    raw = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        raw.append((tuple(e), Fraction(hi[i])))
        raw.append((tuple(-x for x in e), -Fraction(lo[i])))
    return validate(d, raw)


def translate(P: HPolytope, v: Sequence) -> HPolytope:
    if len(v) != P.dim:
        raise DimensionMismatch(f"translation of length {len(v)} for a {P.dim}-polytope")
    v = tuple(Fraction(x) for x in v)
    return HPolytope(P.dim, tuple((a, b + dot(a, v)) for a, b in P.ineqs))


def vertices(P: HPolytope) -> list[QVec]:
    """Exact vertex set in lexicographic order."""
    return list(P._vertices)


def affine_dim(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([[Fraction(x) - y for x, y in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


# -- hulls and triangulation ------------------------------------------------


def hull_facets(points: Sequence[QVec]) -> list[tuple[QVec, Fraction, frozenset]]:
    """Facets ``(n, h, pts)`` of the hull of full-dimensional ``points``.

    Each facet satisfies ``<n, p> <= h`` for every point, with equality exactly
    on ``pts``.
    """
    pts = sorted(set(points))
    k = len(pts[0])
    if k == 1:
        lo, hi = pts[0], pts[-1]
        return [((Fraction(-1),), -lo[0], frozenset([lo])), ((Fraction(1),), hi[0], frozenset([hi]))]
    seen: set[frozenset] = set()
    out = []
    for sub in itertools.combinations(pts, k):
        if any(frozenset(sub) <= f for f in seen):
            continue
        base = sub[0]
        rows = [[x - y for x, y in zip(p, base)] for p in sub[1:]]
        ker = nullspace(rows, k)
        if len(ker) != 1:
            continue
        n = ker[0]
        h = dot(n, base)
        vals = [dot(n, p) - h for p in pts]
        if all(v <= 0 for v in vals):
            pass
        elif all(v >= 0 for v in vals):
            n = tuple(-x for x in n)
            h = -h
        else:
            continue
        on = frozenset(p for p, v in zip(pts, vals) if v == 0)
        if on in seen:
            continue
        seen.add(on)
        out.append((n, h, on))
    return out


def triangulate(points: Sequence[QVec]) -> list[tuple[QVec, ...]]:
    """Pulling triangulation of the hull of full-dimensional ``points``.

    Recursively cones the lexicographically smallest point over the
    triangulated facets that miss it.
    """
    pts = sorted(set(tuple(Fraction(x) for x in p) for p in points))
    k = len(pts[0])
    if k == 1:
        return [(pts[0], pts[-1])]
    p0 = pts[0]
    simplices = []
    for n, _h, on in hull_facets(pts):
        if p0 in on:
            continue
        # Dropping a coordinate with nonzero normal entry is injective on the facet.
        c = next(i for i, x in enumerate(n) if x != 0)
        proj = {p[:c] + p[c + 1:]: p for p in on}
        for s in triangulate(list(proj)):
            simplices.append((p0,) + tuple(proj[q] for q in s))
    return simplices


def simplex_volume(simplex: Sequence[QVec]) -> Fraction:
    p0 = simplex[0]
    k = len(p0)
    M = [[x - y for x, y in zip(p, p0)] for p in simplex[1:]]
    return abs(det_exact(M)) / math.factorial(k)


def hull_volume(points: Sequence[QVec]) -> Fraction:
    """Volume of the convex hull; zero unless the points span the space."""
    pts = sorted(set(tuple(Fraction(x) for x in p) for p in points))
    if affine_dim(pts) < len(pts[0]):
        return Fraction(0)
    return sum((simplex_volume(s) for s in triangulate(pts)), Fraction(0))


def volume(P: HPolytope) -> Fraction:
    """Exact ``dim``-volume, 0 when ``P`` is not full-dimensional."""
    return hull_volume(vertices(P))


# -- faces ------------------------------------------------------------------


class FacetKind(enum.Enum):
    FRONT = "front"
    BACK = "back"
    NEUTRAL = "neutral"


def kind_of(b: Fraction) -> FacetKind:
    if b > 0:
        return FacetKind.FRONT
    if b < 0:
        return FacetKind.BACK
    return FacetKind.NEUTRAL


@dataclass(frozen=True)
class Facet:
    index: int
    kind: FacetKind
    face_dim: int
    dim: int = field(repr=False)

    @property
    def is_facet(self) -> bool:
        return self.face_dim == self.dim - 1


def face_vertices(P: HPolytope, i: int) -> list[QVec]:
    a, b = P.ineqs[i]
    return [v for v in vertices(P) if dot(a, v) == b]


def face(P: HPolytope, i: int) -> HPolytope:
    """The face supported by inequality ``i`` as an H-polytope."""
    a, b = P.ineqs[i]
    if not face_vertices(P, i):
        raise EmptyPolytope(f"inequality {i} supports the empty face")
    return validate(P.dim, list(P.ineqs) + [(tuple(-x for x in a), -b)])


def faces_report(P: HPolytope) -> list[Facet]:
    return [
        Facet(i, kind_of(b), affine_dim(face_vertices(P, i)), P.dim)
        for i, (_a, b) in enumerate(P.ineqs)
    ]


# -- pseudopyramids ---------------------------------------------------------


def ppyr_interval(P: HPolytope, x: Sequence) -> tuple[Fraction, Fraction | None] | None:
    """``{lam >= 0 : x in lam P}`` as ``(lo, hi)``; ``hi is None`` means unbounded."""
    if len(x) != P.dim:
        raise DimensionMismatch(f"point of length {len(x)} for a {P.dim}-polytope")
    lo = Fraction(0)
    hi: Fraction | None = None
    for a, b in P.ineqs:
        ax = dot(a, x)
        if b > 0:
            lo = max(lo, Fraction(ax) / b)
        elif b < 0:
            r = Fraction(ax) / b
            hi = r if hi is None else min(hi, r)
        elif ax > 0:
            return None
    if hi is not None and hi < lo:
        return None
    return lo, hi


def ppyr_membership(P: HPolytope, x: Sequence, s) -> bool:
    """Whether ``x`` lies in ``s * ppyr(P)``, i.e. in ``lam P`` for some ``lam <= s``."""
    s = Fraction(s)
    iv = ppyr_interval(P, x)
    return iv is not None and iv[0] <= s


def ppyr_vertices(P: HPolytope) -> list[QVec]:
    zero = tuple(Fraction(0) for _ in range(P.dim))
    return sorted(set(vertices(P)) | {zero})


def ppyr_volume(P: HPolytope) -> tuple[Fraction, Fraction]:
    """Volume of ``ppyr(P)`` by the back-facet decomposition and by its hull.

    Returns:
        ``(decomposition, hull)``; the two agree for every full-dimensional
        polytope.

    Raises:
        NotFullDimensional: if ``P`` has empty interior.
    """
    d = P.dim
    if affine_hull(P).hull_dim != d:
        raise NotFullDimensional("ppyr_volume needs a full-dimensional polytope")
    decomposition = volume(P)
    for f in faces_report(P):
        if f.kind is FacetKind.BACK and f.is_facet:
            b = P.ineqs[f.index][1]
            decomposition += abs(b) * rvol(face(P, f.index)) / d
    return decomposition, hull_volume(ppyr_vertices(P))


# -- affine hulls and relative volume --------------------------------------


@dataclass(frozen=True)
class AffineHull:
    point: QVec
    lattice_dirs: tuple[IVec, ...]
    hull_dim: int
    equalities: tuple[IVec, ...] = ()


def affine_hull(P: HPolytope) -> AffineHull:
    verts = vertices(P)
    eqs = [a for a, b in P.ineqs if all(dot(a, v) == b for v in verts)]
    hd = affine_dim(verts)
    dirs = integer_kernel(eqs, P.dim)
    if len(dirs) != hd:
        raise AssertionError("implicit equalities disagree with the vertex span")
    return AffineHull(verts[0], tuple(dirs), hd, tuple(eqs))


def rvol(P: HPolytope) -> Fraction:
    """Volume measured against the lattice induced on the affine hull.

    A point has relative volume 1.
    """
    ah = affine_hull(P)
    l = ah.hull_dim
    if l == 0:
        return Fraction(1)
    raw = []
    for a, b in P.ineqs:
        n = tuple(dot(a, k) for k in ah.lattice_dirs)
        h = b - dot(a, ah.point)
        if any(n):
            raw.append((n, h))
        elif h < 0:
            raise AssertionError("affine hull point violates an inequality")
    return volume(validate(l, raw))


# -- codimension one --------------------------------------------------------


@dataclass(frozen=True)
class Codim1Flattening:
    """``P`` inside ``{<a, x> = b}`` carried to a full-dimensional ``pprime``.

    ``transform`` is unimodular with last row ``a``; for integer ``w``, and
    ``s`` with ``s * level(w)`` integral, ``L_{P+w}(s) = L_{pprime+shift(w)}(s)``.
    """

    pprime: HPolytope | None
    a: IVec
    b: Fraction
    transform: tuple[IVec, ...]

    def level(self, w: Sequence[int]) -> Fraction:
        return self.b + dot(self.a, w)

    def shift(self, w: Sequence[int]) -> IVec:
        return tuple(dot(row, w) for row in self.transform[:-1])

    def degenerate(self, w: Sequence[int]) -> bool:
        """Hyperplane of ``P + w`` passes through the origin: every ``s`` is on the grid."""
        return self.level(w) == 0

    def on_grid(self, w: Sequence[int], s) -> bool:
        return (Fraction(s) * self.level(w)).denominator == 1

    def lift_translation(self, wprime: Sequence[int], t: int) -> IVec:
        """Integer ``w`` with ``shift(w) = wprime`` and ``<a, w> = t``."""
        inv = integer_inverse([list(r) for r in self.transform])
        y = list(wprime) + [t]
        return tuple(dot(row, y) for row in inv)

    def reassemble(self, Q: HPolytope) -> HPolytope:
        """Inverse of the flattening: embed a ``(d-1)``-polytope back at level ``b``."""
        d = len(self.a)
        A = [list(r) for r in self.transform]
        raw = []
        for n, h in Q.ineqs:
            full = list(n) + [0]
            raw.append((tuple(sum(full[r] * A[r][j] for r in range(d)) for j in range(d)), h))
        raw.append((self.a, self.b))
        raw.append((tuple(-x for x in self.a), -self.b))
        return validate(d, raw)


def orient_hyperplane(a: Sequence[int], b) -> tuple[IVec, Fraction]:
    """Pick the sign of ``<a, x> = b`` with ``b >= 0`` (first nonzero ``a_i > 0`` if ``b = 0``)."""
    a = tuple(int(x) for x in a)
    b = Fraction(b)
    if b < 0 or (b == 0 and next(x for x in a if x != 0) < 0):
        return tuple(-x for x in a), -b
    return a, b


def hyperplane_flattening(a: Sequence[int], b) -> Codim1Flattening:
    """Flattening data for the hyperplane alone (``pprime`` left unset)."""
    a, b = orient_hyperplane(a, b)
    if gcd_vec(a) != 1:
        raise ValueError("hyperplane normal must be primitive")
    A = unimodular_completion(a)
    return Codim1Flattening(None, a, b, tuple(tuple(r) for r in A))


def flatten_codim1(P: HPolytope) -> Codim1Flattening:
    d = P.dim
    ah = affine_hull(P)
    if d < 2 or ah.hull_dim != d - 1:
        raise NotCodimensionOne(f"affine hull has dimension {ah.hull_dim} in R^{d}")
    a, b = orient_hyperplane(ah.equalities[0], dot(ah.equalities[0], ah.point))
    A = unimodular_completion(a)
    Ainv = integer_inverse(A)
    raw = []
    for ai, bi in P.ineqs:
        # x = Ainv y, so <ai, x> = <Ainv^T ai, y>.
        n = [sum(Ainv[r][j] * ai[r] for r in range(d)) for j in range(d)]
        h = bi - n[-1] * b
        if any(n[:-1]):
            raw.append((tuple(n[:-1]), h))
        elif h < 0:
            raise AssertionError("inconsistent equality after flattening")
    return Codim1Flattening(validate(d - 1, raw), a, b, tuple(tuple(r) for r in A))
