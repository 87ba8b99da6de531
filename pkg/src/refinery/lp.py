"""Exact LP feasibility by the two-phase simplex method with Bland's rule.

Only phase one is needed: every question asked of the LP layer here is a
feasibility question (membership, boundedness, emptiness).  Infeasible
systems come back with a Farkas certificate that is checked before it is
returned.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import Vector, dot, lincomb

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class HSystem:
    """Rows ``normal . x = offset`` (equalities) and ``normal . x <= offset``."""

    dim: int
    equalities: tuple = ()
    inequalities: tuple = ()

    def __post_init__(self):
        for normal, _ in self.equalities + self.inequalities:
            if len(normal) != self.dim:
                raise ValueError("row length does not match system dimension")

    def satisfies(self, x: Sequence) -> bool:
        return (all(dot(a, x) == b for a, b in self.equalities)
                and all(dot(a, x) <= b for a, b in self.inequalities))


@dataclass(frozen=True)
class FarkasCertificate:
    """Multipliers proving ``{A_eq x = b_eq, A_in x <= b_in}`` is empty.

    ``eq_multipliers`` are free, ``ineq_multipliers`` nonnegative; the
    combination of rows has zero normal and negative offset.
    """

    eq_multipliers: tuple
    ineq_multipliers: tuple

    def check(self, sys: HSystem) -> bool:
        if any(m < 0 for m in self.ineq_multipliers):
            return False
        rows = [a for a, _ in sys.equalities] + [a for a, _ in sys.inequalities]
        rhs = [b for _, b in sys.equalities] + [b for _, b in sys.inequalities]
        mult = self.eq_multipliers + self.ineq_multipliers
        if not rows:
            return False
        combo = lincomb(mult, rows)
        return all(c == 0 for c in combo) and dot(mult, rhs) < 0


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    witness: Vector | None = None
    certificate: FarkasCertificate | None = None

    def __bool__(self):
        return self.feasible


def phase_one(A: Sequence[Sequence], b: Sequence,
              slack_cols: dict[int, int] | None = None) -> tuple[bool, Vector, Vector]:
    """Solve ``A z = b, z >= 0`` for feasibility.

    ``slack_cols`` maps a row to a column equal to the unit vector of that
    row; rows with such a column and ``b_i >= 0`` start from it instead of
    an artificial variable.  Returns ``(feasible, z, w)``; when infeasible,
    ``w^T A >= 0`` and ``w^T b < 0``.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return True, tuple(ZERO for _ in range(n)), ()
    slack_cols = slack_cols or {}
    flips = [-1 if bi < 0 else 1 for bi in b]
    start_col, cost = [], [ZERO] * n
    n_art = 0
    for i in range(m):
        if flips[i] == 1 and i in slack_cols:
            start_col.append(slack_cols[i])
        else:
            start_col.append(n + n_art)
            n_art += 1
            cost.append(ONE)
    width = n + n_art
    T = []
    for i in range(m):
        s = flips[i]
        row = [s * a for a in A[i]] + [ZERO] * n_art + [s * b[i]]
        if start_col[i] >= n:
            row[start_col[i]] = ONE
        T.append(row)
    basis = list(start_col)
    art_rows = [i for i in range(m) if start_col[i] >= n]
    # reduced costs of min sum(artificials); last entry is -objective
    obj = [cost[j] - sum((T[i][j] for i in art_rows), ZERO) for j in range(width)]
    obj.append(-sum((T[i][-1] for i in art_rows), ZERO))

    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if (best is None or ratio < best
                        or (ratio == best and basis[i] < basis[leave])):
                    leave, best = i, ratio
        # phase one is bounded below, so a leaving row always exists
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        prow = T[leave]
        for i in range(m):
            if i != leave:
                f = T[i][enter]
                if f != 0:
                    T[i] = [x - f * y for x, y in zip(T[i], prow)]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, prow)]
        basis[leave] = enter

    feasible = obj[-1] == 0
    z = [ZERO] * n
    for i, j in enumerate(basis):
        if j < n:
            z[j] = T[i][-1]
    # the starting column of row i has reduced cost cost_i - y_i (flipped system)
    w = tuple(-flips[i] * (cost[start_col[i]] - obj[start_col[i]]) for i in range(m))
    return feasible, tuple(z), w


def lp_feasible(sys: HSystem) -> LPResult:
    """Decide whether an H-system has a solution, exactly.

    Free variables are split as ``x = x+ - x-`` and each inequality gets a
    slack column.  The witness satisfies every row exactly; the Farkas
    certificate is verified before it is returned.
    """
    d = sys.dim
    neq, nin = len(sys.equalities), len(sys.inequalities)
    A, b = [], []
    for a, off in sys.equalities:
        A.append(list(a) + [-x for x in a] + [ZERO] * nin)
        b.append(off)
    for k, (a, off) in enumerate(sys.inequalities):
        A.append(list(a) + [-x for x in a] + [ONE if j == k else ZERO for j in range(nin)])
        b.append(off)
    if not A:
        return LPResult(True, tuple(ZERO for _ in range(d)))
    slacks = {neq + k: 2 * d + k for k in range(nin)}
    feasible, z, w = phase_one(A, b, slacks)
    if feasible:
        x = tuple(z[i] - z[d + i] for i in range(d))
        assert sys.satisfies(x)
        return LPResult(True, x)
    cert = FarkasCertificate(tuple(w[:neq]), tuple(w[neq:]))
    assert cert.check(sys), "simplex produced an invalid Farkas certificate"
    return LPResult(False, certificate=cert)


def convex_weights(points: Sequence[Sequence], x: Sequence) -> Vector | None:
    """Convex coefficients expressing ``x`` over ``points``, or None."""
    if not points:
        return None
    dim = len(x)
    A = [[p[i] for p in points] for i in range(dim)]
    A.append([ONE] * len(points))
    b = list(x) + [ONE]
    feasible, z, _ = phase_one(A, b)
    if not feasible:
        return None
    return z


def membership_system(points: Sequence[Sequence], x: Sequence) -> HSystem:
    """H-system in the weights ``lam`` for ``x in conv(points)``."""
    m = len(points)
    eqs = [(tuple(p[i] for p in points), x[i]) for i in range(len(x))]
    eqs.append((tuple(ONE for _ in range(m)), ONE))
    ineqs = [(tuple(-ONE if j == i else ZERO for j in range(m)), ZERO) for i in range(m)]
    return HSystem(m, tuple(eqs), tuple(ineqs))
