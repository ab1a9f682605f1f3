import json

import pytest

from towerkit.errors import BoundError, LabelCollision
from towerkit.sset import (
    Simplex,
    SimplicialComplex,
    complex_from_facets,
    complex_from_json,
    complex_to_sset,
    discrete_complex,
    disjoint_union,
    join_complexes,
    nd,
    point_complex,
    same_sset,
    simplex_complex,
    skeleton,
    standard_simplex,
    wedge,
)


def test_standard_simplex_point():
    pt = standard_simplex(0, 2)
    assert pt.f_vector() == (1,)
    pt.validate()


def test_standard_simplex_triangle():
    d2 = standard_simplex(2, 3)
    assert d2.f_vector() == (3, 3, 1)
    d2.validate()


def test_standard_simplex_truncated():
    d3 = standard_simplex(3, 1)
    assert d3.f_vector() == (4, 6)


def test_bound_extension_coherence():
    small = standard_simplex(3, 1)
    big = standard_simplex(3, 3)
    for n in range(2):
        assert small.cells[n] == big.cells[n]
    ck = complex_from_facets(range(3), [[0, 1], [1, 2], [0, 2]])
    for n in range(2):
        assert complex_to_sset(ck, 1).cells[n] == complex_to_sset(ck, 4).cells[n]


def test_complex_closure_enforced():
    with pytest.raises(ValueError):
        SimplicialComplex((0, 1), frozenset({frozenset({0, 1})}))


def test_complex_to_sset_edge_is_delta1():
    edge = complex_from_facets([0, 1], [[0, 1]])
    assert same_sset(complex_to_sset(edge, 2), standard_simplex(1, 2))


def test_two_points_is_s0():
    s0 = complex_to_sset(discrete_complex(["a", "b"]), 1)
    assert s0.f_vector() == (2,)


def test_skeleton_complete_graph():
    sk = skeleton(standard_simplex(3, 3), 1)
    assert sk.f_vector() == (4, 6)


def test_skeleton_identity_and_idempotence():
    d4 = standard_simplex(4, 4)
    assert same_sset(skeleton(d4, 4), d4)
    assert same_sset(skeleton(skeleton(d4, 2), 1), skeleton(d4, 1))
    with pytest.raises(BoundError):
        skeleton(standard_simplex(2, 1), 2)


def test_join_fvector_convolution():
    s0 = discrete_complex(["a", "b"])
    sq = join_complexes(s0, s0)
    assert sq.f_vector() == (4, 4)
    cone = join_complexes(point_complex(), sq)
    assert cone.f_vector() == (5, 8, 4)


def test_join_collision():
    a = discrete_complex([0, 1])
    with pytest.raises(LabelCollision):
        join_complexes(a, a, relabel=False)


def test_disjoint_union_and_wedge():
    s1 = complex_from_facets(range(3), [[0, 1], [0, 2], [1, 2]])
    two = disjoint_union(s1, s1)
    assert two.f_vector() == (6, 6)
    w = wedge(s1, s1)
    assert w.f_vector() == (5, 6)


def test_apply_operator_identities():
    x = standard_simplex(2, 2)
    s = Simplex((0,), (0, 1))
    assert x.face_simplex(s, 0) == nd((0, 1))
    assert x.face_simplex(s, 1) == nd((0, 1))
    assert x.face_simplex(s, 2) == Simplex((0,), (0,))
    # word sections undo degeneracies
    y = x.degenerate((1, 0), nd((0,)))
    assert x.word_section((1, 0), y) == nd((0,))
    assert x.word_section((0,), nd((0, 1))) is None


def test_all_simplices_counts():
    d1 = standard_simplex(1, 1)
    # degree-2 simplices of Delta^1: one word per vertex, two per edge
    assert len(d1.all_simplices(2)) == 2 * 1 + 1 * 2
    assert len(d1.all_simplices(0)) == 2
    # matches the weak-chain count C(4,2) - duplicates... directly: monotone
    # maps [2] -> [1] number 4
    assert len(d1.all_simplices(2)) == 4


def test_complex_json_round_trip():
    s1 = complex_from_facets(range(3), [[0, 1], [0, 2], [1, 2]])
    data = json.loads(json.dumps(s1.to_json()))
    back = complex_from_json(data)
    assert back.f_vector() == s1.f_vector()


def test_validate_catches_bad_face():
    x = standard_simplex(2, 2)
    x.faces[((0, 1, 2), 0)] = nd((0, 1))  # wrong face
    with pytest.raises(AssertionError):
        x.validate()
