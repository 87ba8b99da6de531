"""Partial affine maps between polytopes and between their form spaces.

A map is given by finitely many assignments ``p_j -> q_j``.  It is
well defined on ``conv(p_j)`` exactly when every affine dependency among
the sources also holds among the targets; :func:`make_partial_affine_map`
checks this and returns the violating dependency otherwise.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg as la
from .forms import Form, FormSpace
from .lp import HSystem
from .polytope import VPolytope, affine_dependencies, vertices_of_hsystem
from .scalar import format_scalar, parse_scalar

ZERO, ONE = Fraction(0), Fraction(1)


class InconsistentAssignment(ValueError):
    """The targets violate an affine dependency among the sources."""

    def __init__(self, dependency: tuple, residual: tuple):
        self.dependency = dependency
        self.residual = residual
        dep = ", ".join(map(format_scalar, dependency))
        super().__init__(f"targets violate source dependency ({dep})")


class OutsideDomain(ValueError):
    pass


def _weighted_system(sources, rows_of, y) -> HSystem:
    """H-system in convex weights ``lam`` with ``rows_of(lam-combination) = y``."""
    m = len(sources)
    eqs = [(tuple(r), yi) for r, yi in zip(rows_of, y)]
    eqs.append((tuple(ONE for _ in range(m)), ONE))
    ineqs = [(tuple(-ONE if j == i else ZERO for j in range(m)), ZERO) for i in range(m)]
    return HSystem(m, tuple(eqs), tuple(ineqs))


class PartialAffineMap:
    """Affine map defined on the convex hull of its assigned source points."""

    def __init__(self, sources: Sequence, targets: Sequence,
                 source: VPolytope | None = None, target: VPolytope | None = None):
        self.sources = tuple(la.as_vector(p) for p in sources)
        self.targets = tuple(la.as_vector(q) for q in targets)
        self.source = source
        self.target = target

    @cached_property
    def dependencies(self) -> list[tuple]:
        return affine_dependencies(self.sources)

    @cached_property
    def domain(self) -> VPolytope:
        return VPolytope(self.sources)

    @cached_property
    def image(self) -> VPolytope:
        return VPolytope(self.targets)

    def _combine(self, weights) -> tuple:
        return la.lincomb(weights, self.targets)

    def apply(self, x: Sequence) -> tuple:
        w = self.domain_weights(x)
        if w is None:
            raise OutsideDomain(f"{tuple(map(format_scalar, x))} is outside the domain")
        return self._combine(w)

    __call__ = apply

    def domain_weights(self, x: Sequence):
        from .lp import convex_weights
        return convex_weights(self.sources, la.as_vector(x))

    def apply_affine(self, coeffs: Sequence) -> tuple:
        """Image of ``sum(c_j p_j)`` for affine coefficients (sum 1, any sign)."""
        if sum(coeffs, ZERO) != 1:
            raise ValueError("affine coefficients must sum to 1")
        return self._combine(coeffs)

    @cached_property
    def kernel_basis(self) -> list[tuple]:
        """Basis of the linear part's null space on the domain's direction space."""
        p0, q0 = self.sources[0], self.targets[0]
        pd = [la.sub(p, p0) for p in self.sources[1:]]
        qd = [la.sub(q, q0) for q in self.targets[1:]]
        if not pd:
            return []
        cols = la.transpose(qd)
        mus = la.nullspace(cols, len(qd)) if cols and cols[0] else [
            tuple(ONE if i == j else ZERO for j in range(len(qd))) for i in range(len(qd))]
        vecs = [la.lincomb(mu, pd) for mu in mus]
        R, _ = la.rref(vecs, len(p0)) if vecs else ([], [])
        return [tuple(r) for r in R]

    def preimage(self, y: Sequence) -> VPolytope:
        """The fiber ``{x in domain : F(x) = y}`` as a V-polytope (possibly empty)."""
        y = la.as_vector(y)
        rows = [[q[i] for q in self.targets] for i in range(len(y))]
        lam_poly = vertices_of_hsystem(_weighted_system(self.sources, rows, y))
        if lam_poly.is_empty:
            return VPolytope.empty(len(self.sources[0]))
        return VPolytope(la.lincomb(lam, self.sources) for lam in lam_poly.vertices)

    def translate_section(self, x: Sequence) -> VPolytope:
        """``(x + kernel) ∩ domain``, computed from the kernel alone."""
        x = la.as_vector(x)
        K = self.kernel_basis
        normals = la.nullspace(K, len(x)) if K else [
            tuple(ONE if i == j else ZERO for j in range(len(x))) for i in range(len(x))]
        rows = [[la.dot(a, p) for p in self.sources] for a in normals]
        rhs = [la.dot(a, x) for a in normals]
        lam_poly = vertices_of_hsystem(_weighted_system(self.sources, rows, rhs))
        if lam_poly.is_empty:
            return VPolytope.empty(len(x))
        return VPolytope(la.lincomb(lam, self.sources) for lam in lam_poly.vertices)

    def to_json(self) -> dict:
        src = sorted(set(self.sources))
        tgt = sorted(set(self.targets))
        return {
            "source_points": [[format_scalar(a) for a in p] for p in src],
            "target_points": [[format_scalar(a) for a in q] for q in tgt],
            "assignments": [[src.index(p), tgt.index(q)] for p, q in zip(self.sources, self.targets)],
        }

    def __repr__(self):
        return f"PartialAffineMap({len(self.sources)} assignments)"


def make_partial_affine_map(assignments: Sequence[tuple], source: VPolytope | None = None,
                            target: VPolytope | None = None) -> PartialAffineMap:
    """Build a partial affine map from ``(source point, target point)`` pairs.

    Raises InconsistentAssignment carrying the first violated dependency.
    """
    if not assignments:
        raise ValueError("at least one assignment required")
    sources = [la.as_vector(p) for p, _ in assignments]
    targets = [la.as_vector(q) for _, q in assignments]
    if len({len(p) for p in sources}) != 1 or len({len(q) for q in targets}) != 1:
        raise ValueError("inconsistent ambient dimensions")
    if source is not None and not all(source.contains(p) for p in sources):
        raise ValueError("a source point lies outside the source polytope")
    if target is not None and not all(target.contains(q) for q in targets):
        raise ValueError("a target point lies outside the target polytope")
    F = PartialAffineMap(sources, targets, source, target)
    for lam in F.dependencies:
        residual = la.lincomb(lam, targets)
        if not la.is_zero_vector(residual):
            raise InconsistentAssignment(lam, residual)
    return F


def map_from_json(doc: dict | str) -> PartialAffineMap:
    if isinstance(doc, str):
        doc = json.loads(doc)
    src = [tuple(parse_scalar(a) for a in p) for p in doc["source_points"]]
    tgt = [tuple(parse_scalar(a) for a in q) for q in doc["target_points"]]
    return make_partial_affine_map([(src[i], tgt[j]) for i, j in doc["assignments"]])


@dataclass(frozen=True)
class ProjectionVerdict:
    surjective: bool
    kernel_basis: list
    fibers_are_translates: bool
    checked_fibers: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.surjective and self.fibers_are_translates


def is_parallel_projection_onto(F: PartialAffineMap, C: VPolytope) -> ProjectionVerdict:
    """Check that ``F`` maps its domain onto ``C`` with translate fibers.

    Fibers are compared with ``(x + kernel) ∩ domain`` over the images of
    the domain vertices, the midpoints of consecutive images and the image
    of the domain centroid; the centroid fiber must have full kernel
    dimension.
    """
    images = [F.apply(v) for v in F.domain.vertices]
    surjective = VPolytope(images).vertices == C.vertices
    K = F.kernel_basis
    probes = [F.domain.centroid()] + list(F.domain.vertices)
    verts = F.domain.vertices
    probes += [la.scale(Fraction(1, 2), la.add(a, b)) for a, b in zip(verts, verts[1:])]
    ok = True
    checked = []
    for i, x in enumerate(probes):
        fiber = F.preimage(F.apply(x))
        section = F.translate_section(x)
        same = fiber.vertices == section.vertices
        if i == 0:
            same = same and fiber.dim == len(K)
        checked.append({"point": [format_scalar(a) for a in x],
                        "fiber_dim": fiber.dim, "matches_translate": same})
        ok = ok and same
    return ProjectionVerdict(surjective, K, ok, checked)


class DualFormMap:
    """Partial affine map between form spaces, acting on value vectors."""

    def __init__(self, inner: PartialAffineMap, source_space: FormSpace, target_space: FormSpace):
        self.inner = inner
        self.source_space = source_space
        self.target_space = target_space

    @property
    def sources(self) -> tuple[Form, ...]:
        return tuple(Form(p) for p in self.inner.sources)

    @property
    def targets(self) -> tuple[Form, ...]:
        return tuple(Form(q) for q in self.inner.targets)

    @property
    def domain(self) -> VPolytope:
        return self.inner.domain

    def __call__(self, w: Form) -> Form:
        return Form(self.inner.apply(w.values))

    def __repr__(self):
        return f"DualFormMap({len(self.inner.sources)} assignments)"


def make_dual_form_map(assignments: Sequence[tuple[Form, Form]], source_space: FormSpace,
                       target_space: FormSpace) -> DualFormMap:
    """Build a form-space map; it must send zero to zero and unit to unit."""
    for w, v in assignments:
        if not source_space.contains(w):
            raise ValueError(f"{w.strings()} is not a form on the source model")
        if not target_space.contains(v):
            raise ValueError(f"{v.strings()} is not a form on the target model")
    table = {w: v for w, v in assignments}
    if table.get(source_space.zero) != target_space.zero:
        raise ValueError("the zero form must be assigned to the zero form")
    if table.get(source_space.unit) != target_space.unit:
        raise ValueError("the unit form must be assigned to the unit form")
    inner = make_partial_affine_map([(w.values, v.values) for w, v in assignments])
    return DualFormMap(inner, source_space, target_space)


@dataclass(frozen=True)
class CompatibilityResult:
    ok: bool
    table: list  # rows: (form, state, form value, image value, equal)

    def __bool__(self):
        return self.ok

    def to_json(self) -> list:
        return [{"form": w, "state": t, "lhs": lhs, "rhs": rhs, "equal": eq}
                for w, t, lhs, rhs, eq in self.table]


def check_compatibility(F: PartialAffineMap, G: DualFormMap) -> CompatibilityResult:
    """Exhaustive check of ``G(w)(F(t)) == w(t)`` on generator pairs.

    ``w`` ranges over the extreme points of G's domain and ``t`` over those
    of F's domain; biaffinity extends the identity to both hulls.
    """
    rows = []
    ok = True
    OT, OC = G.source_space, G.target_space
    for wv in G.domain.vertices:
        w = Form(wv)
        gw = G(w)
        for t in F.domain.vertices:
            lhs = OT.value_at(w, t)
            rhs = OC.value_at(gw, F.apply(t))
            eq = lhs == rhs
            ok = ok and eq
            rows.append((w.strings(), [format_scalar(a) for a in t],
                         format_scalar(lhs), format_scalar(rhs), eq))
    return CompatibilityResult(ok, rows)
