"""Convex-form spaces of polytopal statistical models.

A convex form on a model C is an affine functional with values in [0, 1].
It is stored as its value vector on C's extreme points, taken in a fixed
vertex order.  Value vectors that respect every affine dependency among the
vertices are exactly the restrictions of affine functionals, so the form
space is the polytope

    {p : 0 <= p_j <= 1,  lam . p = 0 for every dependency lam}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .lp import HSystem
from .polytope import VPolytope, affine_dependencies, vertices_of_hsystem
from .scalar import format_scalar

ZERO, ONE = Fraction(0), Fraction(1)


class InvalidWeightsError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Form:
    """A convex form, as its values on the model's ordered extreme points."""

    values: tuple

    def __add__(self, other: "Form") -> "Form":
        return Form(la.add(self.values, other.values))

    def __sub__(self, other: "Form") -> "Form":
        return Form(la.sub(self.values, other.values))

    def __rmul__(self, c) -> "Form":
        return Form(la.scale(c, self.values))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, j):
        return self.values[j]

    def strings(self) -> list[str]:
        return [format_scalar(v) for v in self.values]


def evaluate(u: Form, weights: Sequence) -> object:
    """Value of ``u`` on the state with the given convex weights."""
    if len(weights) != len(u.values):
        raise InvalidWeightsError("one weight per model vertex required")
    if any(w < 0 for w in weights) or sum(weights, ZERO) != 1:
        raise InvalidWeightsError("weights must be nonnegative and sum to 1")
    return la.dot(weights, u.values)


class FormSpace:
    """The convex-form space of a model, with its extreme forms enumerated.

    Attributes
    ----------
    model : VPolytope
    vertices : tuple
        The model's extreme points in the order used for value vectors.
    dependencies : list
        Basis of affine dependencies among ``vertices``.
    system : HSystem
        Box constraints plus dependency-orthogonality equalities.
    extreme_forms : tuple of Form
        Lexicographically ordered.
    """

    def __init__(self, model: VPolytope, vertices: Sequence, dependencies, system, extreme_forms):
        self.model = model
        self.vertices = tuple(vertices)
        self.dependencies = list(dependencies)
        self.system = system
        self.extreme_forms = tuple(extreme_forms)
        m = len(self.vertices)
        self.zero = Form(tuple(ZERO for _ in range(m)))
        self.unit = Form(tuple(ONE for _ in range(m)))

    @property
    def model_dim(self) -> int:
        return self.model.dim

    @property
    def dim(self) -> int:
        """Dimension of the form space: one more than the model's."""
        return len(self.vertices) - len(self.dependencies)

    def complement(self, u: Form) -> Form:
        return self.unit - u

    def contains(self, u: Form) -> bool:
        return len(u.values) == len(self.vertices) and self.system.satisfies(u.values)

    def is_extreme(self, u: Form) -> bool:
        return u in self.extreme_forms

    def weights_of(self, x: Sequence):
        """Some convex weights of the state ``x`` over ``vertices``."""
        from .lp import convex_weights
        w = convex_weights(self.vertices, la.as_vector(x))
        if w is None:
            raise InvalidWeightsError(f"{x} is not a state of the model")
        return w

    def value_at(self, u: Form, x: Sequence):
        """Value of ``u`` at the state ``x`` (any decomposition gives the same)."""
        return evaluate(u, self.weights_of(x))

    def form_from_functional(self, gradient: Sequence, offset) -> Form:
        return Form(tuple(la.dot(gradient, v) + offset for v in self.vertices))

    def to_json(self) -> dict:
        return {
            "vertices": [[format_scalar(x) for x in v] for v in self.vertices],
            "dependency_basis": [[format_scalar(x) for x in lam] for lam in self.dependencies],
            "extreme_forms": [u.strings() for u in self.extreme_forms],
            "unit_pairs": [[self.extreme_forms.index(u), self.extreme_forms.index(w)]
                           for u, w in unit_decompositions(self)],
            "model_dim": self.model_dim,
            "form_space_dim": self.dim,
        }

    def __repr__(self):
        return f"FormSpace(vertices={len(self.vertices)}, extreme_forms={len(self.extreme_forms)})"


def form_space_system(vertices: Sequence[Sequence]) -> tuple[list, HSystem]:
    m = len(vertices)
    deps = affine_dependencies(vertices)
    eqs = tuple((lam, ZERO) for lam in deps)
    ineqs = []
    for j in range(m):
        e = tuple(ONE if i == j else ZERO for i in range(m))
        ineqs.append((e, ONE))
        ineqs.append((la.scale(-1, e), ZERO))
    return deps, HSystem(m, eqs, tuple(ineqs))


def build_form_space(C: VPolytope, order: Sequence[Sequence] | None = None) -> FormSpace:
    """Form space of ``C``.

    ``order`` fixes the vertex order of the value vectors; it must list
    exactly the extreme points of ``C``.  Defaults to lexicographic order.
    """
    if C.is_empty:
        raise ValueError("model must be nonempty")
    if order is None:
        verts = C.vertices
    else:
        verts = tuple(la.as_vector(v) for v in order)
        if sorted(verts) != list(C.vertices):
            raise ValueError("order must list exactly the extreme points of the model")
    deps, system = form_space_system(verts)
    P = vertices_of_hsystem(system)
    forms = sorted(Form(v) for v in P.vertices)
    return FormSpace(C, verts, deps, system, forms)


def unit_decompositions(S: FormSpace) -> list[tuple[Form, Form]]:
    """Unordered pairs of extreme forms summing to the unit form."""
    pairs = []
    extreme = set(S.extreme_forms)
    for u in S.extreme_forms:
        w = S.complement(u)
        if w in extreme and u <= w:
            pairs.append((u, w))
    return pairs


def midpoint_witness(S: FormSpace, u: Form) -> tuple[Form, Form] | None:
    """Two distinct extreme forms whose midpoint is ``u``, if any."""
    twice = la.scale(2, u.values)
    extreme = set(S.extreme_forms)
    for a in S.extreme_forms:
        b = Form(la.sub(twice, a.values))
        if b in extreme and a < b:
            return a, b
    return None
