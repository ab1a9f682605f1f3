import pytest

from towerkit.build import (
    cech_power,
    contracting_homotopy_failures,
    coskeleton,
    diagonal_of_external,
    mapping_space,
    product,
)
from towerkit.errors import CapExceeded
from towerkit.ex import ex_approx, sd_sset
from towerkit.homology import homology
from towerkit.maps import Budget, enumerate_maps
from towerkit.sset import (
    complex_from_facets,
    complex_to_sset,
    discrete_complex,
    nd,
    point_complex,
    same_sset,
    skeleton,
    standard_simplex,
)

S1 = complex_from_facets(range(3), [[0, 1], [0, 2], [1, 2]])


def test_product_square():
    sq = product(standard_simplex(1, 1), standard_simplex(1, 1), 2)
    assert sq.f_vector() == (4, 5, 2)
    sq.validate()


def test_product_with_point():
    x = complex_to_sset(S1, 2)
    p = product(x, standard_simplex(0, 2), 2)
    assert p.f_vector() == x.f_vector()


def test_product_dimension_additivity():
    for (s, p) in [(2, 1), (3, 1)]:
        for (t, q) in [(2, 1), (2, 2)]:
            a = skeleton(standard_simplex(s, s), p)
            b = skeleton(standard_simplex(t, t), q)
            pr = product(a, b, p + q + 1)
            assert pr.dim() == p + q


def test_diagonal_of_external_is_product():
    a = standard_simplex(1, 1)
    d = diagonal_of_external(a, a, 2)
    assert d.f_vector() == (4, 5, 2)
    h = homology(d, 1)
    assert all(b == 0 and not t for _, b, t in h.rows)


def test_coskeleton_point():
    pt = complex_to_sset(point_complex(), 3)
    ck = coskeleton(pt, 0, 3)
    assert ck.sset.f_vector() == (1,)


def test_coskeleton_vertex_counts():
    s0 = complex_to_sset(discrete_complex(["a", "b"]), 3)
    ck = coskeleton(s0, 0, 3)
    for n in range(4):
        assert len(ck.sset.all_simplices(n)) == 2 ** (n + 1)


def test_coskeleton_unit_low_degrees():
    x = complex_to_sset(S1, 2)
    ck = coskeleton(x, 1, 2)
    for n in range(2):
        assert len(ck.sset.cells[n]) == len(x.cells[n])
    for c in x.cells[1]:
        u = ck.unit_image(c)
        assert not u.is_degenerate


def test_coskeleton_adjunction_count():
    x = complex_to_sset(S1, 2)
    budget = Budget(10**6)
    dom = skeleton(standard_simplex(2, 2), 1)
    lhs = len(enumerate_maps(dom, x, budget))
    ck = coskeleton(x, 1, 2, budget)
    assert lhs == len(ck.sset.all_simplices(2))


def test_mapping_space_exponent_by_point():
    x = complex_to_sset(S1, 2)
    pt = complex_to_sset(point_complex(), 2)
    ms = mapping_space(pt, x, 1)
    assert ms.sset.f_vector() == x.f_vector()[:2]


def test_mapping_space_into_point():
    pt = complex_to_sset(point_complex(), 3)
    ms = mapping_space(standard_simplex(1, 1), pt, 2)
    assert ms.sset.f_vector() == (1,)


def test_mapping_space_vertex_count():
    x = complex_to_sset(S1, 1)
    s0 = complex_to_sset(discrete_complex(["a", "b"]), 1)
    ms = mapping_space(s0, x, 0)
    assert len(ms.sset.cells[0]) == len(x.cells[0]) ** 2


def test_ex_depth_zero_is_identity():
    x = complex_to_sset(S1, 2)
    ex0, incl = ex_approx(x, 0, 2)
    assert same_sset(ex0, x)


def test_sd_interval():
    assert sd_sset(1).f_vector() == (3, 2)


def test_ex_preserves_circle_homology():
    x = complex_to_sset(S1, 2)
    ex1, incl = ex_approx(x, 1, 2)
    incl.validate()
    h = homology(ex1, 1)
    assert [(d, b, t) for d, b, t in h.rows] == [(0, 0, []), (1, 1, [])]


def test_cech_counts_and_identities():
    c = cech_power(["a", "b"], 4)
    for p in range(4):
        assert len(c.sset.all_simplices(p)) == 2 ** (p + 1)
    assert contracting_homotopy_failures(c, 4) == []


def test_cech_single_label():
    c = cech_power(["z"], 3)
    assert c.sset.f_vector() == (1,)


def test_cech_empty_rejected():
    with pytest.raises(ValueError):
        cech_power([], 2)


def test_cap_raises():
    x = complex_to_sset(S1, 2)
    with pytest.raises(CapExceeded):
        coskeleton(x, 1, 2, Budget(5))
