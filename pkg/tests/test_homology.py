import pytest
from hypothesis import given, settings, strategies as st

from oracle import unnormalized_betti
from towerkit.errors import BoundError
from towerkit.homology import (
    ChainComplex,
    chains,
    connectivity,
    euler_characteristic,
    graph_isomorphic,
    homology,
    integer_det,
    invariant_factors,
    smith_normal_form,
    _mat_mul,
)
from towerkit.sset import (
    SimplicialComplex,
    complex_from_facets,
    complex_to_sset,
    discrete_complex,
    join_complexes,
    point_complex,
    simplex_complex,
    skeleton,
    standard_simplex,
)

S1 = complex_from_facets(range(3), [[0, 1], [0, 2], [1, 2]])
S0 = discrete_complex(["a", "b"])


def test_chains_interval():
    cc = chains(standard_simplex(1, 1), 1)
    assert cc.boundary_matrix(1) in ([[-1], [1]], [[1], [-1]])


def test_chains_point_zero_boundaries():
    cc = chains(complex_to_sset(point_complex(), 3), 3)
    for n in range(1, 4):
        assert all(all(v == 0 for v in row) for row in cc.boundary_matrix(n))


def test_dd_zero_on_join():
    j = join_complexes(S0, S0)
    cc = chains(complex_to_sset(j, 2), 2)
    cc.verify_dd_zero()


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]).diag == [1, 6]
    assert smith_normal_form([[0, 0], [0, 0]]).diag == [0, 0]
    assert smith_normal_form([[1, 0], [0, 1]]).diag == [1, 1]


def test_snf_certificate_unimodular():
    m = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    s = smith_normal_form(m)
    assert abs(integer_det(s.u)) == 1
    assert abs(integer_det(s.v)) == 1
    assert s.diag == [2, 2, 156] or all(
        s.diag[i] % s.diag[i - 1] == 0 for i in range(1, len(s.diag)) if s.diag[i]
    )


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3),
                min_size=2, max_size=4))
def test_snf_matches_sparse_factors(m):
    s = smith_normal_form(m)
    entries = {(i, j): v for i, row in enumerate(m) for j, v in enumerate(row) if v}
    facs = invariant_factors(entries, len(m), 3)
    assert [d for d in s.diag if d] == facs
    assert abs(integer_det(s.u)) == 1
    assert abs(integer_det(s.v)) == 1


def test_homology_skeleton_delta3():
    h = homology(skeleton(standard_simplex(3, 2), 1), 1)
    assert h.rows == [(0, 0, []), (1, 3, [])]


def test_homology_circle_join():
    x = complex_to_sset(join_complexes(S0, S0), 2)
    h = homology(x, 1)
    assert h.rows == [(0, 0, []), (1, 1, [])]


def test_homology_vs_oracle_corpus():
    cases = [
        simplex_complex(3).skeleton(1),
        join_complexes(S0, S1),
        complex_from_facets(range(4), [list(c) for c in
                                       __import__("itertools").combinations(range(4), 3)]),
    ]
    for k in cases:
        r = k.dim() - 1 if k.dim() >= 1 else 0
        x = complex_to_sset(k, r + 1)
        h = homology(x, r)
        assert [b for _, b, _ in h.rows] == unnormalized_betti(k, r)


def test_projective_plane_torsion():
    rp2 = complex_from_facets(
        range(6),
        [[0, 1, 4], [0, 1, 5], [0, 2, 3], [0, 2, 4], [0, 3, 5],
         [1, 2, 3], [1, 2, 5], [1, 3, 4], [2, 4, 5], [3, 4, 5]],
    )
    x = complex_to_sset(rp2, 3)
    h = homology(x, 2)
    assert h.rows == [(0, 0, []), (1, 0, [2]), (2, 0, [])]


def test_euler_characteristic():
    for k, chi in [(S1, 0), (simplex_complex(3), 1), (join_complexes(S0, S0), 0)]:
        x = complex_to_sset(k, k.dim())
        assert euler_characteristic(x) == chi


def test_connectivity_values():
    empty = SimplicialComplex((), frozenset())
    assert connectivity(complex_to_sset(empty, 1), 0)[0] == -2
    assert connectivity(complex_to_sset(S0, 1), 0)[0] == -1
    x = complex_to_sset(join_complexes(S0, S0), 2)
    assert connectivity(x, 1)[0] == 0
    c, tag = connectivity(x, 1, simply_connected_hint=True)
    assert tag == "Hurewicz-valid"
    with pytest.raises(BoundError):
        connectivity(complex_to_sset(S0, 1), 2)


def test_join_homology_kunneth():
    pairs = [(S0, S0), (S0, S1), (S1, S1)]
    for a, b in pairs:
        j = join_complexes(a, b)
        xa = complex_to_sset(a, a.dim() + 1)
        xb = complex_to_sset(b, b.dim() + 1)
        xj = complex_to_sset(j, j.dim() + 1)
        ha = homology(xa, a.dim())
        hb = homology(xb, b.dim())
        hj = homology(xj, j.dim())
        for i in range(j.dim()):
            want = sum(
                ha.betti(p) * hb.betti(i - p)
                for p in range(i + 1) if p <= a.dim() and 0 <= i - p <= b.dim()
            )
            assert hj.betti(i + 1) == want


def test_graph_isomorphic():
    k22 = join_complexes(discrete_complex([0, 1]), discrete_complex(["a", "b"]))
    sq = join_complexes(S0, S0)
    ok, witness = graph_isomorphic(k22, sq)
    assert ok and witness is not None
    tri = S1
    ok, _ = graph_isomorphic(k22, tri)
    assert not ok
    with pytest.raises(ValueError):
        graph_isomorphic(simplex_complex(2), tri)
