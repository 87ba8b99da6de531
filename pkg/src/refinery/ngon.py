"""Scan regular n-gons for window-form analogues of the hexagon refinement.

Every (n, k) cell is checked in stages:

1. realizability: the window pattern on the midpoints extends to an affine
   functional on the regular n-gon.  Decided exactly in Q(zeta_n): affine
   functionals on the vertices span the harmonics 0 and +-1, so harmonics
   2..n//2 of the pattern must vanish.
2. extremality: the realized form is an extreme point of the n-gon's form
   space.
3. consistency of the midpoint map F and of the window map G.
4. compatibility of F and G.
5. the five features of the hexagon construction.

Stages 2-5 need exact polygon coordinates, available for n in
{3, 4, 5, 6, 8, 12} (over Q or Q(sqrt D)).  Other n are decided at stage 1.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg as la
from .forms import midpoint_witness
from .hexagon import (FeatureReport, build_instance, edge_midpoints, verify_features,
                      window_form)
from .polytope import affine_dependencies
from .refinement import InconsistentAssignment, check_compatibility
from .scalar import CycloElement, QuadScalar, cyclo_reduce, format_scalar

HALF = Fraction(1, 2)
SCAN_SCHEMA_VERSION = "1.0"
STAGES = ("realizability", "extremality", "F_consistency", "G_consistency",
          "compatibility", "features")
CAVEAT = ("failure is certified for the window family of form maps only; "
          "other form maps are not searched")

# cos(2 pi / n) for the supported n
_COSINES = {
    3: Fraction(-1, 2),
    4: Fraction(0),
    5: QuadScalar(Fraction(-1, 4), Fraction(1, 4), 5),
    6: Fraction(1, 2),
    8: QuadScalar(0, HALF, 2),
    12: QuadScalar(0, HALF, 3),
}
SUPPORTED_N = tuple(sorted(_COSINES))


class UnsupportedField(ValueError):
    """No exact quadratic-field coordinates for this regular n-gon."""


def regular_ngon(n: int) -> list[tuple]:
    """Vertices of an affine image of the regular n-gon, counterclockwise.

    With t = 2 pi / n, vertex j is ``(S(1-j), S(j))`` where
    ``S(i) = sin(i t) / sin(t)``.  This is the linear image sending the
    first two vertices of the unit-circle n-gon to (1, 0) and (0, 1); S obeys
    ``S(i+1) = 2 cos(t) S(i) - S(i-1)`` so every coordinate lies in Q(cos t).
    """
    if n not in _COSINES:
        raise UnsupportedField(f"no exact coordinates for the regular {n}-gon")
    c2 = 2 * _COSINES[n]
    S = {0: Fraction(0), 1: Fraction(1)}
    for i in range(1, n + 1):
        S[i + 1] = c2 * S[i] - S[i - 1]
    for i in range(1, n + 2):
        S[-i] = -S[i]
    return [la.as_vector((S[1 - j], S[j])) for j in range(n)]


@dataclass(frozen=True)
class WindowCandidate:
    n: int
    k: int
    pattern: tuple


def window_pattern(n: int, k: int) -> WindowCandidate:
    """Values of d_1 + ... + d_k at the midpoints m_1..m_n."""
    if n < 3 or not 2 <= k <= n - 1:
        raise ValueError(f"need n >= 3 and 2 <= k <= n-1, got n={n}, k={k}")
    inside = [1 <= j <= k for j in range(1, n + 2)]
    pattern = tuple(HALF * (inside[j - 1] + inside[j % n]) for j in range(1, n + 1))
    return WindowCandidate(n, k, pattern)


@dataclass(frozen=True)
class Realizability:
    realizable: bool
    residues: dict  # harmonic h -> CycloElement

    def __bool__(self):
        return self.realizable

    def certificate(self) -> dict:
        return {str(h): r.to_json() for h, r in sorted(self.residues.items())}


def harmonic(values, n: int, h: int) -> CycloElement:
    """``sum_j values_j zeta_n^(h j)`` for j = 1..n, reduced in Q(zeta_n)."""
    poly = [Fraction(0)] * n
    for j, v in enumerate(values, 1):
        poly[(h * j) % n] += v
    return cyclo_reduce(poly, n)


def realizable_on_regular_ngon(c: WindowCandidate) -> Realizability:
    residues = {h: harmonic(c.pattern, c.n, h) for h in range(2, c.n // 2 + 1)}
    return Realizability(all(r.is_zero() for r in residues.values()), residues)


def midpoint_map_consistent(n: int) -> bool:
    """Whether m_j -> s_j is affinely consistent on the regular n-gon.

    A dependency ``lam`` (summing to zero) holds among the vertices iff
    ``sum_j lam_j zeta^j = 0``, since the vertices are an affine image of
    the powers of zeta.
    """
    for lam in affine_dependencies(edge_midpoints(n)):
        if not harmonic(lam, n, 1).is_zero():
            return False
    return True


@dataclass
class CellReport:
    """Verdict for one (n, k) cell.  Unevaluated stages are None."""

    n: int
    k: int
    realizable: bool
    F_consistent: bool
    extreme_in_OC: bool | None = None
    G_consistent: bool | None = None
    compatible: bool | None = None
    failure_stage: str | None = None
    certificate: dict = field(default_factory=dict)
    features: FeatureReport | None = None

    @property
    def passed(self) -> bool:
        return self.failure_stage is None

    def to_json(self) -> dict:
        def tri(x):
            return "not-evaluated" if x is None else x
        return {
            "n": self.n,
            "k": self.k,
            "realizable": self.realizable,
            "extreme_in_OC": tri(self.extreme_in_OC),
            "F_consistent": self.F_consistent,
            "G_consistent": tri(self.G_consistent),
            "compatible": tri(self.compatible),
            "verdict": "PASS" if self.passed else "FAIL",
            "failure_stage": self.failure_stage,
            "certificate": self.certificate,
            "features": None if self.features is None else {
                key: f.verdict for key, f in sorted(self.features.features.items())},
        }


def full_check(n: int, k: int) -> CellReport:
    """Run every stage for the (n, k) window construction, short-circuiting.

    Raises UnsupportedField if the cell is realizable but n has no exact
    coordinates; :func:`check_cell` degrades to realizability-only instead.
    """
    cand = window_pattern(n, k)
    real = realizable_on_regular_ngon(cand)
    cell = CellReport(n, k, real.realizable, midpoint_map_consistent(n))
    if not real:
        cell.failure_stage = "realizability"
        cell.certificate = {"nonzero_residues": {
            h: r for h, r in real.certificate().items()
            if not real.residues[int(h)].is_zero()}}
        return cell
    polygon = regular_ngon(n)
    try:
        inst = build_instance(polygon, k)
    except InconsistentAssignment as exc:
        # only G can fail here: F consistency is decided above
        cell.extreme_in_OC = None
        cell.G_consistent = False
        cell.failure_stage = "G_consistency"
        cell.certificate = {"dependency": [format_scalar(a) for a in exc.dependency]}
        return cell
    realized = [inst.G(window_form(n, j, k)) for j in range(n)]
    non_extreme = [u for u in realized if not inst.OC.is_extreme(u)]
    cell.extreme_in_OC = not non_extreme
    cell.G_consistent = True
    if non_extreme:
        u = non_extreme[0]
        pair = midpoint_witness(inst.OC, u)
        cell.failure_stage = "extremality"
        cell.certificate = {
            "form": u.strings(),
            "midpoint_of": None if pair is None else [pair[0].strings(), pair[1].strings()],
        }
        return cell
    if not cell.F_consistent:
        cell.failure_stage = "F_consistency"
        return cell
    compat = check_compatibility(inst.F, inst.G)
    cell.compatible = compat.ok
    if not compat.ok:
        cell.failure_stage = "compatibility"
        cell.certificate = {"mismatches": [r for r in compat.to_json() if not r["equal"]]}
        return cell
    report = verify_features(inst)
    cell.features = report
    if not report.all_passed:
        cell.failure_stage = "features"
        cell.certificate = {"failing_features": report.failing}
    return cell


def check_cell(n: int, k: int) -> CellReport:
    try:
        return full_check(n, k)
    except UnsupportedField:
        cell = CellReport(n, k, True, midpoint_map_consistent(n))
        cell.failure_stage = "unsupported_field"
        return cell


@dataclass
class ScanReport:
    rows: list

    @property
    def passing(self) -> list[tuple[int, int]]:
        return [(r.n, r.k) for r in self.rows if r.passed]

    def to_json(self) -> dict:
        return {"schema_version": SCAN_SCHEMA_VERSION, "caveat": CAVEAT,
                "rows": [r.to_json() for r in self.rows]}


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("REFINERY_THREADS", "1")))
    except ValueError:
        return 1


def scan(n_range, k_range=None, threads: int | None = None) -> ScanReport:
    """Check every (n, k) with n in ``n_range`` and k in ``k_range`` ∩ [2, n-1].

    Rows come back sorted by (n, k) whatever order the cells finish in.
    """
    ns = sorted(set(n_range))
    if any(not 3 <= n <= 16 for n in ns):
        raise ValueError("n must lie in 3..16")
    cells = []
    for n in ns:
        ks = range(2, n) if k_range is None else sorted(set(k_range))
        cells += [(n, k) for k in ks if 2 <= k <= n - 1]
    workers = threads or _threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda c: check_cell(*c), cells))
    else:
        rows = [check_cell(n, k) for n, k in cells]
    rows.sort(key=lambda r: (r.n, r.k))
    return ScanReport(rows)


__all__ = [
    "SUPPORTED_N", "STAGES", "UnsupportedField", "regular_ngon", "WindowCandidate",
    "window_pattern", "Realizability", "harmonic", "realizable_on_regular_ngon",
    "midpoint_map_consistent", "CellReport", "full_check", "check_cell", "ScanReport",
    "scan",
]
