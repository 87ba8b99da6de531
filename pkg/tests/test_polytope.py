import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from oracles import cube, fixture_polytopes, hull_facet_count, unit
from refinery import linalg as la
from refinery.lp import FarkasCertificate, HSystem, lp_feasible, membership_system
from refinery.ngon import regular_ngon
from refinery.polytope import (DimensionTooLargeError, NotAMemberError, UnboundedSystemError,
                               VPolytope, affine_dependencies, extreme_points, face_intersection,
                               format_vpolytope, is_simplex, minimal_face_containing,
                               read_vpolytope, vertices_of_hsystem)

F = Fraction
HALF = F(1, 2)


# -- affine dependencies ---------------------------------------------------

def test_dependencies_of_midpoints(mids6):
    basis = affine_dependencies(mids6)
    assert len(basis) == 1
    alt = tuple(F((-1) ** j) for j in range(6))
    assert la.rank([basis[0], alt]) == 1


def test_dependencies_of_simplex_vertices(simplex6):
    assert affine_dependencies(simplex6) == []


def test_dependencies_of_hexagon(hexagon):
    basis = affine_dependencies(hexagon)
    assert len(basis) == 3
    alt = tuple(F((-1) ** j) for j in range(6))
    assert la.rank(basis + [alt]) == 3


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 7), st.integers(1, 4), st.randoms(use_true_random=False))
def test_dependency_count_on_random_points(m, dim, rnd):
    pts = [tuple(F(rnd.randint(-3, 3), rnd.randint(1, 3)) for _ in range(dim)) for _ in range(m)]
    if rnd.random() < 0.3 and m > 1:
        pts[-1] = pts[0]
    basis = affine_dependencies(pts)
    for lam in basis:
        assert sum(lam) == 0
        assert la.is_zero_vector(la.lincomb(lam, pts))
    p0 = pts[0]
    d = la.rank([la.sub(p, p0) for p in pts[1:]]) if m > 1 else 0
    assert len(basis) == m - 1 - d


# -- LP ----------------------------------------------------------------------

def test_lp_interval_feasible():
    sys = HSystem(1, (), (((F(-1),), F(0)), ((F(1),), F(1))))
    res = lp_feasible(sys)
    assert res.feasible and res.witness == (F(0),)


def test_lp_interval_infeasible():
    sys = HSystem(1, (), (((F(-1),), F(-1)), ((F(1),), F(0))))
    res = lp_feasible(sys)
    assert not res.feasible
    assert isinstance(res.certificate, FarkasCertificate) and res.certificate.check(sys)


def test_e1_not_in_midpoint_hull(mids6, simplex6):
    sys = membership_system(mids6, simplex6[0])
    res = lp_feasible(sys)
    assert not res.feasible and res.certificate.check(sys)


def test_lp_with_equalities_and_quadratic_entries():
    r5 = regular_ngon(5)
    P = VPolytope(r5)
    assert lp_feasible(membership_system(P.vertices, P.centroid())).feasible
    assert not lp_feasible(membership_system(P.vertices, (F(2), F(0)))).feasible


def test_lp_agrees_with_scipy_on_random_systems():
    rnd = random.Random(7)
    for _ in range(150):
        d = rnd.randint(1, 3)
        rows = rnd.randint(1, 5)
        A = [[rnd.randint(-4, 4) for _ in range(d)] for _ in range(rows)]
        b = [rnd.randint(-4, 4) for _ in range(rows)]
        eq = rnd.random() < 0.3
        Aeq = [[rnd.randint(-3, 3) for _ in range(d)]] if eq else []
        beq = [rnd.randint(-3, 3)] if eq else []
        sys = HSystem(d, tuple((tuple(map(F, r)), F(v)) for r, v in zip(Aeq, beq)),
                      tuple((tuple(map(F, r)), F(v)) for r, v in zip(A, b)))
        res = lp_feasible(sys)
        ref = linprog(np.zeros(d), A_ub=A, b_ub=b, A_eq=Aeq or None, b_eq=beq or None,
                      bounds=[(None, None)] * d, method="highs")
        assert res.feasible == (ref.status == 0)
        if res.feasible:
            assert sys.satisfies(res.witness)
        else:
            assert res.certificate.check(sys)


# -- extreme points, dimension, simpliciality ------------------------------

def test_extreme_points_examples(mids6, simplex6, hexagon):
    assert extreme_points(mids6) == sorted(mids6)
    e1, e2 = simplex6[0], simplex6[1]
    mid = la.scale(HALF, la.add(e1, e2))
    assert extreme_points([e1, e2, mid]) == sorted([e1, e2])
    assert extreme_points(hexagon + [(F(0), F(0))]) == sorted(hexagon)


def test_dimension_examples(mids6, simplex6):
    assert VPolytope(mids6).dim == 4
    assert VPolytope(simplex6).dim == 5
    assert VPolytope([(1, 2, 3)]).dim == 0


def test_is_simplex_examples(mids6, simplex6, hexagon):
    assert not is_simplex(VPolytope(mids6))
    assert is_simplex(VPolytope(simplex6))
    assert not is_simplex(VPolytope(hexagon))


# -- facets ---------------------------------------------------------------

def test_facets_square():
    H = VPolytope(cube(2)).facets
    assert len(H.inequalities) == 4 and not H.equalities


def test_facets_simplex(simplex6):
    H = VPolytope(simplex6).facets
    assert len(H.inequalities) == 6 and len(H.equalities) == 1
    a, b = H.equalities[0]
    assert all(x == a[0] for x in a) and b == a[0]  # sum of coordinates = 1


def test_facets_midpoint_domain_matches_qhull(mids6):
    P = VPolytope(mids6)
    assert len(P.facets.inequalities) == hull_facet_count(mids6) == 9


def test_facet_counts_match_qhull(hexagon, simplex6, mids6):
    for name, P in fixture_polytopes(hexagon, simplex6, mids6).items():
        if P.dim >= 1:
            assert len(P.facets.inequalities) == hull_facet_count(P.vertices), name


def test_dimension_cap():
    P = VPolytope([unit(i, 9) for i in range(9)])
    assert P.dim == 8
    with pytest.raises(DimensionTooLargeError):
        P.facets


def test_vh_roundtrip(hexagon, simplex6, mids6):
    for name, P in fixture_polytopes(hexagon, simplex6, mids6).items():
        assert P.dim <= 6
        assert vertices_of_hsystem(P.facets).vertices == P.vertices, name


def test_membership_coherence(hexagon, simplex6, mids6):
    rnd = random.Random(3)
    for name, P in fixture_polytopes(hexagon, simplex6, mids6).items():
        H = P.facets
        probes = list(P.vertices) + [P.centroid()]
        for _ in range(15):
            v, w = rnd.choice(P.vertices), rnd.choice(P.vertices)
            t = F(rnd.randint(-3, 6), 4)
            probes.append(la.add(v, la.scale(t, la.sub(w, P.centroid()))))
        for x in probes:
            assert P.contains(x) == H.satisfies(x), name


# -- faces ------------------------------------------------------------------

def test_minimal_face_examples(simplex6, mids6):
    T = VPolytope(simplex6)
    e = simplex6
    f = minimal_face_containing(T, mids6[0])
    assert set(f.vertices) == {e[0], e[1]} and f.dim == 1
    assert minimal_face_containing(T, e[1]).vertices == (e[1],)
    whole = minimal_face_containing(T, T.centroid())
    assert whole.vertices == T.vertices and whole.dim == 5
    with pytest.raises(NotAMemberError):
        minimal_face_containing(T, tuple(F(1) for _ in range(6)))


def test_face_intersection_examples(simplex6):
    T = VPolytope(simplex6)
    e = simplex6
    e12, e23, e34 = T.face([e[0], e[1]]), T.face([e[1], e[2]]), T.face([e[2], e[3]])
    meet = face_intersection(e12, e23)
    assert meet.vertices == (e[1],) and meet.dim == 0
    empty = face_intersection(e12, e34)
    assert empty.is_empty and empty.dim == -1
    assert face_intersection(e12, e12) == e12


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=6, max_size=6).filter(any))
def test_simplex_minimal_face_is_support(weights):
    T = VPolytope([unit(i, 6) for i in range(6)])
    total = sum(weights)
    x = tuple(F(w, total) for w in weights)
    face = minimal_face_containing(T, x)
    assert set(face.vertices) == {unit(i, 6) for i, w in enumerate(weights) if w}


def test_minimal_face_is_vertex_iff_extreme(hexagon, simplex6, mids6):
    for name, P in fixture_polytopes(hexagon, simplex6, mids6).items():
        for v in P.vertices:
            assert minimal_face_containing(P, v).vertices == (v,), name
        if P.dim > 0:
            assert len(minimal_face_containing(P, P.centroid()).vertices) > 1


# -- vertex enumeration -----------------------------------------------------

def test_vertices_of_box():
    ineqs = []
    for i in range(2):
        ineqs += [(unit(i, 2), F(1)), (la.scale(-1, unit(i, 2)), F(0))]
    P = vertices_of_hsystem(HSystem(2, (), tuple(ineqs)))
    assert P.vertices == tuple(sorted(cube(2)))


def test_vertices_of_simplex_system():
    n = 6
    eq = ((tuple(F(1) for _ in range(n)), F(1)),)
    ineqs = tuple((la.scale(-1, unit(i, n)), F(0)) for i in range(n))
    P = vertices_of_hsystem(HSystem(n, eq, ineqs))
    assert set(P.vertices) == {unit(i, n) for i in range(n)}


def test_vertices_of_hexagon_form_system(hexagon):
    from refinery.forms import form_space_system
    _, sys = form_space_system(hexagon)
    assert len(vertices_of_hsystem(sys).vertices) == 8


def test_unbounded_system():
    sys = HSystem(2, (), (((F(-1), F(0)), F(0)),))
    with pytest.raises(UnboundedSystemError):
        vertices_of_hsystem(sys)


def test_empty_system():
    sys = HSystem(1, (), (((F(-1),), F(-1)), ((F(1),), F(0))))
    assert vertices_of_hsystem(sys).is_empty


# -- determinism and text format -------------------------------------------

def test_permutation_invariance(mids6, hexagon):
    for pts in (mids6, hexagon, regular_ngon(8)):
        shuffled = list(pts)
        random.Random(11).shuffle(shuffled)
        P, Q = VPolytope(pts), VPolytope(shuffled)
        assert P.vertices == Q.vertices
        assert P.facets == Q.facets


def test_text_format_roundtrip():
    P = VPolytope(regular_ngon(5))
    Q = read_vpolytope(format_vpolytope(P, comment="pentagon"))
    assert Q.vertices == P.vertices


def test_text_format_errors():
    with pytest.raises(ValueError):
        read_vpolytope("1 2\n3\n")
    with pytest.raises(ValueError):
        read_vpolytope("# nothing\n")
    with pytest.raises(ValueError):
        read_vpolytope("1 0.5\n")
