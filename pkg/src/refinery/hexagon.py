"""The hexagon refinement and the checks of its five features.

The construction places a polygon with vertices s_1..s_n under the
(n-1)-simplex with vertices e_1..e_n: the state map sends the edge
midpoint m_j = (e_j + e_{j+1})/2 to s_j, and the form map sends the
window form d_j + ... + d_{j+k-1} to the form taking the values the window
takes on the midpoints.  With n = 6 and k = 3 this is the hexagon case,
which :func:`build_hexagon_instance` builds over the rationals.

Feature verdicts:

a. each s_j has the single preimage m_j, which is not a vertex of the simplex
b. the form map is a bijection from extreme forms of the simplex onto the
   extreme forms of the polygon
c. no simplex vertex lies in the domain of the state map
d. the minimal simplex faces containing consecutive preimages intersect
e. the domain is a non-simplex on which the state map is a parallel
   projection onto the polygon

The conjecture flags are set from features d and e only.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .forms import Form, FormSpace, build_form_space
from .polytope import (VPolytope, face_intersection, is_simplex, minimal_face_containing)
from .refinement import (DualFormMap, PartialAffineMap, check_compatibility,
                         is_parallel_projection_onto, make_dual_form_map,
                         make_partial_affine_map)
from .scalar import format_scalar

HALF = Fraction(1, 2)
REPORT_SCHEMA_VERSION = "1.0"

# counterclockwise, s_1 = (1, 0); an affine image of the regular hexagon
HEXAGON = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def _s(v) -> list[str]:
    return [format_scalar(a) for a in v]


def simplex_vertices(n: int) -> list[tuple]:
    return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]


def edge_midpoints(n: int) -> list[tuple]:
    e = simplex_vertices(n)
    return [la.scale(HALF, la.add(e[j], e[(j + 1) % n])) for j in range(n)]


def window_form(n: int, start: int, k: int) -> Form:
    """d_start + ... + d_{start+k-1}, indices cyclic and 0-based."""
    return Form(tuple(Fraction(int((j - start) % n < k)) for j in range(n)))


@dataclass
class RefinementInstance:
    """Polygon, simplex, their form spaces and the two partial maps."""

    C: VPolytope
    OC: FormSpace
    T: VPolytope
    OT: FormSpace
    F: PartialAffineMap
    G: DualFormMap
    polygon: tuple
    midpoints: tuple
    window: int

    @property
    def n(self) -> int:
        return len(self.polygon)

    def digest(self) -> str:
        doc = {
            "polygon": [_s(v) for v in self.polygon],
            "F": self.F.to_json(),
            "G": [[w.strings(), v.strings()] for w, v in zip(self.G.sources, self.G.targets)],
        }
        blob = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()


def realized_form(OC: FormSpace, midpoints: Sequence, w: Form, OT: FormSpace) -> Form:
    """The polygon form taking the values ``w`` takes on the midpoints."""
    return Form(tuple(OT.value_at(w, m) for m in midpoints))


def _models(polygon) -> tuple[VPolytope, FormSpace, VPolytope, FormSpace]:
    n = len(polygon)
    C = VPolytope(polygon)
    if len(C.vertices) != n:
        raise ValueError("polygon vertices must all be extreme")
    e = simplex_vertices(n)
    T = VPolytope(e)
    return C, build_form_space(C, polygon), T, build_form_space(T, e)


def _assemble(polygon, k, models, F_targets, G_targets) -> RefinementInstance:
    C, OC, T, OT = models
    n = len(polygon)
    mids = tuple(edge_midpoints(n))
    F = make_partial_affine_map(list(zip(mids, F_targets)), source=T, target=C)
    assignments = [(OT.zero, OC.zero), (OT.unit, OC.unit)]
    assignments += [(window_form(n, j, k), G_targets[j]) for j in range(n)]
    G = make_dual_form_map(assignments, OT, OC)
    return RefinementInstance(C, OC, T, OT, F, G, polygon, mids, k)


def build_instance(polygon: Sequence[Sequence], k: int,
                   F_targets: Sequence[Sequence] | None = None) -> RefinementInstance:
    """Assemble the window-k refinement for a polygon listed in cyclic order.

    Each window form is sent to the polygon form that takes the window's
    values on the midpoints.  ``F_targets`` overrides the images of the
    midpoints (perturbation experiments); by default m_j is sent to s_j.
    """
    polygon = tuple(la.as_vector(v) for v in polygon)
    models = _models(polygon)
    OC, OT = models[1], models[3]
    mids = edge_midpoints(len(polygon))
    G_targets = [realized_form(OC, mids, window_form(len(polygon), j, k), OT)
                 for j in range(len(polygon))]
    return _assemble(polygon, k, models, polygon if F_targets is None else F_targets, G_targets)


def build_hexagon_instance() -> RefinementInstance:
    """The hexagon instance over Q.

    F sends m_j to s_j; G sends d_j + d_{j+1} + d_{j+2} to v_j, where v_j is
    read off the enumerated extreme forms of the hexagon's form space.
    """
    polygon = tuple(la.as_vector(v) for v in HEXAGON)
    models = _models(polygon)
    v, _ = hexagon_value_matrix(models[1])
    return _assemble(polygon, 3, models, polygon, v)


def hexagon_value_matrix(OC: FormSpace) -> tuple[list[Form], Fraction]:
    """The forms v_1..v_6 (v_j equal to 1 on s_j and s_{j+1}) and gamma.

    Raises ValueError unless the extreme forms are exactly zero, unit and
    six banded forms sharing a single off-band value.
    """
    n = len(OC.vertices)
    rows = []
    for j in range(n):
        cands = [u for u in OC.extreme_forms
                 if u not in (OC.zero, OC.unit) and u[j] == 1 and u[(j + 1) % n] == 1]
        if len(cands) != 1:
            raise ValueError(f"no unique extreme form equal to 1 on s_{j+1}, s_{(j + 1) % n + 1}")
        rows.append(cands[0])
    if len(OC.extreme_forms) != n + 2:
        raise ValueError(f"expected {n + 2} extreme forms, found {len(OC.extreme_forms)}")
    gamma = rows[0][2]
    for j, u in enumerate(rows):
        for i in range(n):
            off = (i - j) % n
            expect = {0: 1, 1: 1, 2: gamma, n - 1: gamma}.get(off, 0)
            if u[i] != expect:
                raise ValueError(f"v_{j+1} does not have the banded shape at s_{i+1}")
    return rows, gamma


@dataclass
class FeatureResult:
    verdict: bool
    evidence: dict

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "evidence": self.evidence}


@dataclass
class FeatureReport:
    features: dict = field(default_factory=dict)  # "a".."e" -> FeatureResult
    instance_digest: str = ""

    def __getattr__(self, name):
        if name.startswith("feature_") and len(name) == 9:
            return self.features[name[-1]].verdict
        raise AttributeError(name)

    @property
    def conjecture3_disproved(self) -> bool:
        return self.features["d"].verdict

    @property
    def conjecture1_disproved(self) -> bool:
        return self.features["e"].verdict

    @property
    def all_passed(self) -> bool:
        return all(f.verdict for f in self.features.values())

    @property
    def failing(self) -> list[str]:
        return [k for k, f in sorted(self.features.items()) if not f.verdict]

    def to_json(self) -> dict:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "features": {k: self.features[k].to_json() for k in sorted(self.features)},
            "conjectures": {"c1_disproved": self.conjecture1_disproved,
                            "c3_disproved": self.conjecture3_disproved},
            "instance_digest": self.instance_digest,
        }


def _feature_a(inst: RefinementInstance) -> FeatureResult:
    rows, ok = [], True
    for j, (s, m) in enumerate(zip(inst.polygon, inst.midpoints)):
        pre = inst.F.preimage(s)
        single = pre.vertices == (m,)
        non_extreme = m not in inst.T.vertices
        ok = ok and single and non_extreme
        rows.append({"j": j + 1, "preimage": [_s(v) for v in pre.vertices],
                     "single_point": single, "non_extreme_in_simplex": non_extreme})
    return FeatureResult(ok, {"preimages": rows})


def _feature_b(inst: RefinementInstance) -> FeatureResult:
    src, tgt = inst.G.sources, inst.G.targets
    src_extreme = all(inst.OT.is_extreme(w) for w in src)
    injective = len(set(src)) == len(src) and len(set(tgt)) == len(tgt)
    onto = set(tgt) == set(inst.OC.extreme_forms)
    ok = src_extreme and injective and onto
    return FeatureResult(ok, {
        "assignments": [[w.strings(), v.strings()] for w, v in zip(src, tgt)],
        "sources_extreme": src_extreme,
        "bijective": injective and onto,
        "target_extreme_count": len(inst.OC.extreme_forms),
        "source_extreme_count": len(inst.OT.extreme_forms),
    })


def _feature_c(inst: RefinementInstance) -> FeatureResult:
    outside = [not inst.F.domain.contains(e) for e in inst.T.vertices]
    return FeatureResult(all(outside), {"simplex_vertices_outside_domain": outside})


def _feature_d(inst: RefinementInstance) -> FeatureResult:
    n = inst.n
    faces = []
    for s in inst.polygon:
        pre = inst.F.preimage(s)
        faces.append(minimal_face_containing(inst.T, pre.centroid()))
    rows, ok = [], True
    for j in range(n):
        f, g = faces[j], faces[(j + 1) % n]
        meet = face_intersection(f, g)
        ok = ok and not meet.is_empty
        rows.append({"j": j + 1, "face": [_s(v) for v in f.vertices], "face_dim": f.dim,
                     "next_face": [_s(v) for v in g.vertices],
                     "intersection": [_s(v) for v in meet.vertices]})
    return FeatureResult(ok, {"minimal_faces": rows})


def _feature_e(inst: RefinementInstance) -> FeatureResult:
    dom = inst.F.domain
    simplex = is_simplex(dom)
    proj = is_parallel_projection_onto(inst.F, inst.C)
    partial = dom.dim < inst.T.dim
    ok = (not simplex) and partial and proj.holds
    return FeatureResult(ok, {
        "domain_dim": dom.dim,
        "domain_extreme_points": len(dom.vertices),
        "domain_facets": len(dom.facets.inequalities),
        "is_simplex": simplex,
        "surjective": proj.surjective,
        "kernel_basis": [_s(v) for v in proj.kernel_basis],
        "kernel_dim": len(proj.kernel_basis),
        "fibers_are_translates": proj.fibers_are_translates,
    })


def verify_features(inst: RefinementInstance) -> FeatureReport:
    checks = {"a": _feature_a, "b": _feature_b, "c": _feature_c, "d": _feature_d, "e": _feature_e}
    report = FeatureReport(instance_digest=inst.digest())
    for key, fn in checks.items():
        report.features[key] = fn(inst)
    return report


def compatibility_evidence(inst: RefinementInstance):
    return check_compatibility(inst.F, inst.G)
