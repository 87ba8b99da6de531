"""V-polytopes over an exact ordered field.

Extreme points, affine dimension, facets, minimal faces and vertex
enumeration of bounded H-systems.  Facet and vertex enumeration are
exhaustive subset searches, capped at affine dimension :data:`MAX_DIM`;
every instance this package handles has at most 64 vertices.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg as la
from .lp import HSystem, LPResult, convex_weights, lp_feasible, membership_system
from .scalar import format_scalar, parse_scalar

MAX_DIM = 7

__all__ = [
    "MAX_DIM", "DimensionTooLargeError", "NotAMemberError", "UnboundedSystemError",
    "HSystem", "Face", "VPolytope", "affine_dependencies", "lp_feasible",
    "extreme_points", "dimension", "facets", "minimal_face_containing",
    "face_intersection", "is_simplex", "vertices_of_hsystem",
    "read_vpolytope", "format_vpolytope",
]


class DimensionTooLargeError(ValueError):
    pass


class NotAMemberError(ValueError):
    pass


class UnboundedSystemError(ValueError):
    pass


def _canon(points: Iterable[Sequence]) -> list[tuple]:
    return sorted({la.as_vector(p) for p in points})


def affine_dependencies(points: Sequence[Sequence]) -> list[tuple]:
    """Basis of ``{lam : sum(lam) = 0, sum(lam_j p_j) = 0}``.

    Each basis vector is scaled so its first nonzero entry is 1.
    """
    if not points:
        raise ValueError("need at least one point")
    m = len(points)
    dim = len(points[0])
    rows = [[Fraction(1)] * m] + [[p[i] for p in points] for i in range(dim)]
    basis = []
    for v in la.nullspace(rows, m):
        lead = next(a for a in v if a != 0)
        basis.append(la.scale(1 / lead, v) if lead != 1 else v)
    return basis


def _affine_rank(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    p0 = points[0]
    diffs = [la.sub(p, p0) for p in points[1:]]
    return la.rank(diffs) if diffs else 0


def extreme_points(points: Iterable[Sequence]) -> list[tuple]:
    """Points not in the convex hull of the others, deduplicated, lex-sorted."""
    pts = _canon(points)
    if not pts:
        raise ValueError("need at least one point")
    keep = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if not others or convex_weights(others, p) is None:
            keep.append(p)
    return keep


@dataclass(frozen=True)
class Face:
    """A face given by the extreme points lying on it (lex-sorted)."""

    vertices: tuple
    dim: int

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def __contains__(self, v) -> bool:
        return tuple(v) in self.vertices


@dataclass(frozen=True)
class _Facet:
    normal: tuple
    offset: object
    incident: frozenset  # indices into VPolytope.vertices


class VPolytope:
    """Convex hull of a finite point set.

    ``points`` are the generators as given; ``vertices`` are the extreme
    points in lexicographic order.  Derived data is cached on first use.
    """

    def __init__(self, points: Iterable[Sequence]):
        self.points = tuple(la.as_vector(p) for p in points)
        dims = {len(p) for p in self.points}
        if len(dims) > 1:
            raise ValueError("points have inconsistent dimensions")
        self.ambient_dim = dims.pop() if dims else 0

    @classmethod
    def empty(cls, ambient_dim: int) -> "VPolytope":
        P = cls([])
        P.ambient_dim = ambient_dim
        return P

    @classmethod
    def from_vertices(cls, vertices: Iterable[Sequence]) -> "VPolytope":
        """Wrap points already known to be extreme, skipping the pruning LPs."""
        P = cls(vertices)
        P.__dict__["vertices"] = tuple(_canon(P.points))
        return P

    @property
    def is_empty(self) -> bool:
        return not self.points

    @cached_property
    def vertices(self) -> tuple:
        if self.is_empty:
            return ()
        return tuple(extreme_points(self.points))

    @cached_property
    def dim(self) -> int:
        return _affine_rank(self.vertices)

    @cached_property
    def _direction(self) -> tuple[list, list[int]]:
        v0 = self.vertices[0]
        return la.rref([la.sub(v, v0) for v in self.vertices[1:]], self.ambient_dim)

    def local_coords(self, x: Sequence) -> tuple:
        """Coordinates of ``x - v0`` in the rref basis of the direction space.

        The rref basis has an identity block on its pivot columns, so the
        coordinates are a plain projection.
        """
        _, pivots = self._direction
        v0 = self.vertices[0]
        return tuple(x[p] - v0[p] for p in pivots)

    @cached_property
    def hull_equalities(self) -> tuple:
        v0 = self.vertices[0]
        diffs = [la.sub(v, v0) for v in self.vertices[1:]]
        normals = la.nullspace(diffs, self.ambient_dim)
        return tuple((a, la.dot(a, v0)) for a in normals)

    @cached_property
    def _facets(self) -> tuple:
        d = self.dim
        if d > MAX_DIM:
            raise DimensionTooLargeError(f"affine dimension {d} exceeds cap {MAX_DIM}")
        if d <= 0:
            return ()
        _, pivots = self._direction
        ys = [self.local_coords(v) for v in self.vertices]
        found: dict[frozenset, _Facet] = {}
        for subset in combinations(range(len(ys)), d):
            y0 = ys[subset[0]]
            rows = [la.sub(ys[i], y0) for i in subset[1:]]
            ns = la.nullspace(rows, d)
            if len(ns) != 1:
                continue
            c = ns[0]
            delta = la.dot(c, y0)
            vals = [la.dot(c, y) - delta for y in ys]
            if all(v <= 0 for v in vals):
                pass
            elif all(v >= 0 for v in vals):
                c, delta, vals = la.scale(-1, c), -delta, [-v for v in vals]
            else:
                continue
            incident = frozenset(i for i, v in enumerate(vals) if v == 0)
            if incident in found:
                continue
            lead = abs(next(a for a in c if a != 0))
            c, delta = la.scale(1 / lead, c), delta / lead
            normal = [Fraction(0)] * self.ambient_dim
            for ci, p in zip(c, pivots):
                normal[p] = ci
            normal = tuple(normal)
            offset = delta + la.dot(normal, self.vertices[0])
            found[incident] = _Facet(normal, offset, incident)
        return tuple(sorted(found.values(), key=lambda f: sorted(f.incident)))

    @cached_property
    def facets(self) -> HSystem:
        return HSystem(self.ambient_dim, self.hull_equalities,
                       tuple((f.normal, f.offset) for f in self._facets))

    def contains(self, x: Sequence) -> bool:
        if self.is_empty:
            return False
        return convex_weights(self.vertices, la.as_vector(x)) is not None

    def weights(self, x: Sequence):
        """Convex weights of ``x`` over ``self.vertices``, or None."""
        if self.is_empty:
            return None
        return convex_weights(self.vertices, la.as_vector(x))

    def centroid(self) -> tuple:
        n = len(self.vertices)
        return la.scale(Fraction(1, n), la.lincomb([1] * n, self.vertices))

    def face(self, vertices: Iterable[Sequence]) -> Face:
        vs = tuple(sorted(set(map(tuple, vertices))))
        return Face(vs, _affine_rank(vs))

    def __eq__(self, other):
        if not isinstance(other, VPolytope):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"VPolytope(dim={self.dim if self.points else -1}, vertices={len(self.vertices)})"


def dimension(P: VPolytope) -> int:
    return P.dim


def facets(P: VPolytope) -> HSystem:
    return P.facets


def is_simplex(P: VPolytope) -> bool:
    return len(P.vertices) == P.dim + 1


def minimal_face_containing(P: VPolytope, x: Sequence) -> Face:
    """Smallest face of ``P`` containing the point ``x``."""
    x = la.as_vector(x)
    if not P.contains(x):
        raise NotAMemberError(f"point {x} is not in the polytope")
    incident = set(range(len(P.vertices)))
    for f in P._facets:
        if la.dot(f.normal, x) == f.offset:
            incident &= f.incident
    return P.face(P.vertices[i] for i in sorted(incident))


def face_intersection(f: Face, g: Face) -> Face:
    common = tuple(sorted(set(f.vertices) & set(g.vertices)))
    return Face(common, _affine_rank(common))


def _reduce_equalities(sys: HSystem):
    """Parametrize the equality solution set as ``x0 + N t``."""
    if sys.equalities:
        A = [a for a, _ in sys.equalities]
        b = [off for _, off in sys.equalities]
        x0 = la.solve(A, b, sys.dim)
        if x0 is None:
            return None, None
        N = la.nullspace(A, sys.dim)
    else:
        x0 = tuple(Fraction(0) for _ in range(sys.dim))
        N = [tuple(Fraction(int(i == j)) for j in range(sys.dim)) for i in range(sys.dim)]
    return x0, N


def vertices_of_hsystem(sys: HSystem) -> VPolytope:
    """Vertices of a bounded H-system by active-set enumeration.

    Raises UnboundedSystemError for a nonempty unbounded system and
    DimensionTooLargeError when the equality-reduced dimension exceeds
    :data:`MAX_DIM`.
    """
    x0, N = _reduce_equalities(sys)
    if x0 is None:
        return VPolytope.empty(sys.dim)
    r = len(N)
    if r > MAX_DIM:
        raise DimensionTooLargeError(f"reduced dimension {r} exceeds cap {MAX_DIM}")
    # inequality rows in t-space: (a N) t <= b - a x0
    red = []
    for a, off in sys.inequalities:
        row = tuple(la.dot(a, col) for col in N)
        rhs = off - la.dot(a, x0)
        if la.is_zero_vector(row):
            if rhs < 0:
                return VPolytope.empty(sys.dim)
            continue
        red.append((row, rhs))

    def lift(t):
        return la.add(x0, la.lincomb(t, N)) if N else x0

    if r == 0:
        return VPolytope.from_vertices([x0])
    reduced = HSystem(r, (), tuple(red))
    if not lp_feasible(reduced):
        return VPolytope.empty(sys.dim)
    for i in range(r):
        for s in (1, -1):
            e = tuple(Fraction(-s if j == i else 0) for j in range(r))
            probe = HSystem(r, (), tuple((row, Fraction(0)) for row, _ in red) + ((e, Fraction(-1)),))
            if lp_feasible(probe):
                raise UnboundedSystemError("H-system is unbounded")

    found = set()
    for subset in combinations(range(len(red)), r):
        A = [red[i][0] for i in subset]
        if la.rank(A) < r:
            continue
        t = la.solve(A, [red[i][1] for i in subset], r)
        if all(la.dot(row, t) <= rhs for row, rhs in red):
            found.add(lift(t))
    # basic feasible solutions are vertices, and lift is injective
    return VPolytope.from_vertices(found)


# ---------------------------------------------------------------------------
# text format: one vertex per line, exact scalars separated by whitespace

def read_vpolytope(text: str) -> VPolytope:
    """Parse the V-polytope text format; ``#`` starts a comment."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append(tuple(parse_scalar(tok) for tok in line.split()))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if not rows:
        raise ValueError("no vertices found")
    if len({len(r) for r in rows}) != 1:
        raise ValueError("rows have inconsistent lengths")
    return VPolytope(rows)


def format_vpolytope(P: VPolytope, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines += [" ".join(format_scalar(x) for x in v) for v in P.vertices]
    return "\n".join(lines) + "\n"


def lp_membership(points: Sequence[Sequence], x: Sequence) -> LPResult:
    """Membership of ``x`` in ``conv(points)`` with witness or certificate."""
    return lp_feasible(membership_system(points, x))
