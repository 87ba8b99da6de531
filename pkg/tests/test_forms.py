import itertools
import random
from fractions import Fraction

import jsonschema
import pytest
from hypothesis import given, settings, strategies as st

from conftest import load_schema
from oracles import canon, planar_extreme_forms, to_sympy
from refinery import linalg as la
from refinery.forms import (Form, InvalidWeightsError, build_form_space, evaluate,
                            midpoint_witness, unit_decompositions)
from refinery.hexagon import hexagon_value_matrix
from refinery.ngon import regular_ngon
from refinery.polytope import VPolytope

F = Fraction
HALF = F(1, 2)
SQUARE = [(1, 0), (0, 1), (-1, 0), (0, -1)]


def as_sym_set(forms):
    return {tuple(canon(to_sympy(v)) for v in u.values) for u in forms}


def test_hexagon_form_space(hexagon):
    S = build_form_space(VPolytope(hexagon), hexagon)
    assert len(S.extreme_forms) == 8
    rows, gamma = hexagon_value_matrix(S)
    assert gamma == HALF
    g = gamma
    expected = [
        (1, 1, g, 0, 0, g), (g, 1, 1, g, 0, 0), (0, g, 1, 1, g, 0),
        (0, 0, g, 1, 1, g), (g, 0, 0, g, 1, 1), (1, g, 0, 0, g, 1),
    ]
    assert [u.values for u in rows] == [tuple(map(F, r)) for r in expected]
    assert set(S.extreme_forms) == set(rows) | {S.zero, S.unit}
    assert as_sym_set(S.extreme_forms) == planar_extreme_forms(hexagon)


def test_simplex_form_space(simplex6):
    S = build_form_space(VPolytope(simplex6), simplex6)
    assert len(S.extreme_forms) == 64
    d = [Form(e) for e in simplex6]
    sums = set()
    for mask in itertools.product((0, 1), repeat=6):
        sums.add(Form(la.lincomb(mask, [u.values for u in d])))
    assert set(S.extreme_forms) == sums
    assert S.dim == 6 and S.model_dim == 5


def test_point_form_space():
    S = build_form_space(VPolytope([(F(1, 2), F(3))]))
    assert [u.values for u in S.extreme_forms] == [(F(0),), (F(1),)]


def test_square_form_space_matches_oracle():
    S = build_form_space(VPolytope(SQUARE), SQUARE)
    assert len(S.extreme_forms) == 6
    assert as_sym_set(S.extreme_forms) == planar_extreme_forms(SQUARE)


@pytest.mark.parametrize("n", [3, 5, 8])
def test_regular_polygon_form_spaces_match_oracle(n):
    poly = regular_ngon(n)
    S = build_form_space(VPolytope(poly), poly)
    assert as_sym_set(S.extreme_forms) == planar_extreme_forms(poly)


def test_evaluate_examples(hexagon):
    S = build_form_space(VPolytope(hexagon), hexagon)
    v1 = hexagon_value_matrix(S)[0][0]
    e = [tuple(F(int(i == j)) for j in range(6)) for i in range(6)]
    assert evaluate(v1, e[0]) == 1
    assert evaluate(v1, e[3]) == 0
    w = (F(1, 6), F(1, 3), 0, F(1, 4), F(1, 4), 0)
    assert evaluate(S.unit, w) == 1
    with pytest.raises(InvalidWeightsError):
        evaluate(v1, (1, 1, 0, 0, 0, -1))
    with pytest.raises(InvalidWeightsError):
        evaluate(v1, (HALF, 0, 0, 0, 0, 0))


def test_evaluate_is_decomposition_independent(hexagon):
    S = build_form_space(VPolytope(hexagon), hexagon)
    # the centre is s1/2 + s4/2 and also s2/2 + s5/2
    a = (HALF, 0, 0, HALF, 0, 0)
    b = (0, HALF, 0, 0, HALF, 0)
    for u in S.extreme_forms:
        assert evaluate(u, a) == evaluate(u, b)


def test_unit_decompositions_hexagon(hexagon):
    S = build_form_space(VPolytope(hexagon), hexagon)
    v, _ = hexagon_value_matrix(S)
    pairs = {frozenset(p) for p in unit_decompositions(S)}
    assert pairs == {frozenset(p) for p in [(v[0], v[3]), (v[1], v[4]), (v[2], v[5]),
                                            (S.zero, S.unit)]}
    assert v[0] + v[3] == v[1] + v[4] == v[2] + v[5] == S.unit


def test_unit_decompositions_simplex(simplex6):
    S = build_form_space(VPolytope(simplex6), simplex6)
    pairs = unit_decompositions(S)
    assert len(pairs) == 32
    for u, w in pairs:
        assert all(a + b == 1 and a * b == 0 for a, b in zip(u.values, w.values))


def test_unit_decompositions_square():
    S = build_form_space(VPolytope(SQUARE), SQUARE)
    pairs = {frozenset((u.values, w.values)) for u, w in unit_decompositions(S)}
    expected = {
        frozenset({(0, 0, 0, 0), (1, 1, 1, 1)}),
        frozenset({(1, 1, 0, 0), (0, 0, 1, 1)}),
        frozenset({(0, 1, 1, 0), (1, 0, 0, 1)}),
    }
    assert pairs == {frozenset(tuple(map(F, t)) for t in p) for p in expected}


def test_square_midpoint_witness():
    S = build_form_space(VPolytope(SQUARE), SQUARE)
    u = Form((F(1), HALF, F(0), HALF))
    assert S.contains(u) and not S.is_extreme(u)
    a, b = midpoint_witness(S, u)
    assert la.scale(HALF, la.add(a.values, b.values)) == u.values


@pytest.mark.parametrize("m", range(1, 6))
def test_simplex_law(m):
    e = [tuple(F(int(i == j)) for j in range(m)) for i in range(m)]
    S = build_form_space(VPolytope(e), e)
    assert {u.values for u in S.extreme_forms} == {
        tuple(map(F, bits)) for bits in itertools.product((0, 1), repeat=m)}


def test_complement_closure(hexagon, simplex6):
    for pts in (hexagon, simplex6, SQUARE, regular_ngon(5), regular_ngon(8)):
        S = build_form_space(VPolytope(pts), pts)
        extreme = set(S.extreme_forms)
        for u in S.extreme_forms:
            w = S.complement(u)
            assert w in extreme and S.complement(w) == u


small = st.fractions(min_value=-4, max_value=4, max_denominator=3)
affine_maps = st.tuples(st.lists(small, min_size=4, max_size=4),
                        st.lists(small, min_size=2, max_size=2)).filter(
    lambda mt: mt[0][0] * mt[0][3] != mt[0][1] * mt[0][2])


@settings(max_examples=15, deadline=None)
@given(affine_maps)
def test_affine_invariance(hexagon, mt):
    S = build_form_space(VPolytope(hexagon), hexagon)
    (a, b, c, d), t = mt
    moved = [la.add(la.matvec(((a, b), (c, d)), p), t) for p in hexagon]
    S2 = build_form_space(VPolytope(moved), moved)
    assert S2.extreme_forms == S.extreme_forms


def test_basic_solution_tightness(hexagon, simplex6):
    for pts in (hexagon, simplex6, SQUARE, regular_ngon(5)):
        S = build_form_space(VPolytope(pts), pts)
        for u in S.extreme_forms:
            tight = sum(1 for v in u.values if v == 0 or v == 1)
            assert tight >= S.dim


def test_form_space_json(hexagon):
    S = build_form_space(VPolytope(hexagon), hexagon)
    doc = S.to_json()
    jsonschema.validate(doc, load_schema("form_space"))
    assert len(doc["extreme_forms"]) == 8 and len(doc["unit_pairs"]) == 4
    assert doc["form_space_dim"] == 3 and doc["model_dim"] == 2


def test_order_must_match_vertices(hexagon):
    with pytest.raises(ValueError):
        build_form_space(VPolytope(hexagon), hexagon[:5])


def test_value_at_uses_any_decomposition(hexagon):
    S = build_form_space(VPolytope(hexagon), hexagon)
    rnd = random.Random(5)
    for u in S.extreme_forms:
        for _ in range(5):
            w = [F(rnd.randint(0, 5)) for _ in range(6)]
            if not any(w):
                continue
            tot = sum(w)
            w = [x / tot for x in w]
            x = la.lincomb(w, S.vertices)
            assert S.value_at(u, x) == evaluate(u, w)
