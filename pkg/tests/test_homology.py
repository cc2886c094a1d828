import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from hypermorse.facelattice import EMPTY, HypersimplexParams, enumerate_faces
from hypermorse.homology import (
    HomologyGroup,
    SparseMatrix,
    Subcomplex,
    SubcomplexError,
    boundary_complex,
    boundary_matrices,
    closure,
    euler_characteristic,
    full_complex,
    homology_records,
    order_complex,
    read_subcomplex,
    reduced_homology,
    smith_normal_form,
)

from conftest import small_params


def sympy_factors(rows):
    if not rows or not rows[0]:
        return []
    return [abs(int(x)) for x in invariant_factors(Matrix(rows), domain=ZZ) if x != 0]


matrices = st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-12, 12), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


def test_snf_examples():
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == (3, [1, 1, 1])
    assert smith_normal_form([[2, 4], [6, 8]]) == (2, [2, 4])
    assert smith_normal_form([[0, 0], [0, 0]]) == (0, [])
    assert smith_normal_form([]) == (0, [])


def test_snf_known_matrix():
    m = [[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]]
    assert smith_normal_form(m) == (3, [1, 10, 30])


def test_snf_big_integers():
    big = 10 ** 40
    assert smith_normal_form([[big, 0], [0, big * 3]]) == (2, [big, 3 * big])
    assert smith_normal_form([[2 ** 70, 3 ** 45]]) == (1, [1])


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_against_sympy(rows):
    rank, factors = smith_normal_form(rows)
    assert factors == sympy_factors(rows)
    assert rank == len(factors)
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0


@settings(max_examples=100, deadline=None)
@given(matrices, st.randoms(use_true_random=False))
def test_snf_permutation_invariant(rows, rnd):
    perm_rows = list(rows)
    rnd.shuffle(perm_rows)
    cols = list(range(len(rows[0])))
    rnd.shuffle(cols)
    permuted = [[r[c] for c in cols] for r in perm_rows]
    assert smith_normal_form(permuted) == smith_normal_form(rows)


def test_sparse_roundtrip():
    m = SparseMatrix.from_dense([[0, 2, 0], [-1, 0, 3]])
    assert m.to_dense() == [[0, 2, 0], [-1, 0, 3]]
    assert m.triplets() == [(0, 1, 2), (1, 0, -1), (1, 2, 3)]
    assert m.shape == (2, 3)


def test_order_complex_single_vertex():
    p = HypersimplexParams(3, 2)
    sub = closure(p, ["110"])
    assert order_complex(p, sub) == {0: [("110",)]}


def test_order_complex_triangle():
    p = HypersimplexParams(3, 2)
    oc = order_complex(p, full_complex(p))
    assert len(oc[0]) == 7
    assert len(oc[2]) == 6
    assert all(c[-1] == "***" for c in oc[2])


def test_order_complex_hexagon():
    p = HypersimplexParams(3, 2)
    oc = order_complex(p, boundary_complex(p))
    assert sorted(oc) == [0, 1]
    assert len(oc[0]) == 6 and len(oc[1]) == 6
    cx = boundary_matrices(oc)
    assert smith_normal_form(cx.boundary[1])[0] == 5


def test_single_edge_boundary():
    cx = boundary_matrices({0: [("v",), ("e",)], 1: [("v", "e")]})
    assert cx.boundary[1].to_dense() == [[-1], [1]]
    assert cx.boundary[0].to_dense() == [[1, 1]]


def test_subcomplex_must_be_closed():
    p = HypersimplexParams(3, 2)
    with pytest.raises(SubcomplexError):
        Subcomplex(p, frozenset({"1**"}))
    sub = closure(p, ["1**"])
    assert sub.faces == {"1**", "110", "101"}


@pytest.mark.parametrize("params", small_params(5), ids=str)
def test_boundary_squares_to_zero(params):
    for sub in (full_complex(params), boundary_complex(params)):
        cx = boundary_matrices(order_complex(params, sub))
        for d in cx.boundary:
            if d + 1 in cx.boundary:
                assert cx.boundary[d].matmul(cx.boundary[d + 1]).is_zero()


@pytest.mark.parametrize("params", small_params(5), ids=str)
def test_full_complex_acyclic(params):
    groups = reduced_homology(params, full_complex(params))
    assert sorted(groups) == list(range(-1, params.n))
    assert all(g.is_zero for g in groups.values())
    assert euler_characteristic(params, full_complex(params)) == 1


@pytest.mark.parametrize("params", small_params(5), ids=str)
def test_boundary_is_sphere(params):
    groups = reduced_homology(params, boundary_complex(params))
    for d, g in groups.items():
        expected = HomologyGroup(1) if d == params.n - 2 else HomologyGroup(0)
        assert g == expected, (d, g)


def test_octahedron_boundary():
    p = HypersimplexParams(4, 2)
    sub = boundary_complex(p)
    groups = reduced_homology(p, sub)
    assert groups[2] == HomologyGroup(1)
    assert euler_characteristic(p, sub) == 2


def test_empty_subcomplex():
    p = HypersimplexParams(4, 2)
    groups = reduced_homology(p, Subcomplex(p, frozenset({EMPTY})))
    assert groups == {-1: HomologyGroup(1)}
    assert euler_characteristic(p, Subcomplex(p, frozenset())) == 0


def test_single_vertex_subcomplex():
    p = HypersimplexParams(4, 2)
    sub = closure(p, ["1100"])
    assert euler_characteristic(p, sub) == 1
    assert all(g.is_zero for g in reduced_homology(p, sub).values())


def test_two_vertices_disconnected():
    p = HypersimplexParams(4, 2)
    groups = reduced_homology(p, closure(p, ["1100", "0011"]))
    assert groups[0] == HomologyGroup(1)


def test_random_subcomplexes_euler():
    rng = random.Random(5)
    for params in [HypersimplexParams(4, 2), HypersimplexParams(5, 2),
                   HypersimplexParams(5, 3)]:
        faces = [f for f in enumerate_faces(params) if f != EMPTY]
        for _ in range(6):
            sub = closure(params, rng.sample(faces, rng.randint(1, 6)))
            groups = reduced_homology(params, sub)
            chi = euler_characteristic(params, sub)
            betti = sum((-1) ** d * g.betti for d, g in groups.items() if d >= 0)
            assert chi == betti + (1 if groups[-1].is_zero else 0)


def test_read_subcomplex_closes():
    p = HypersimplexParams(3, 2)
    sub, added = read_subcomplex(p, ["# edges", "1**", "", "*1*"])
    assert sub.faces == {"1**", "*1*", "110", "101", "011"}
    assert added == 3
    groups = reduced_homology(p, sub)
    assert all(g.is_zero for g in groups.values())


def test_homology_records():
    groups = {-1: HomologyGroup(0), 0: HomologyGroup(2, (2, 4))}
    assert homology_records(groups) == [
        {"degree": -1, "betti": 0, "torsion": []},
        {"degree": 0, "betti": 2, "torsion": [2, 4]},
    ]
    assert str(groups[0]) == "Z^2 + Z/2 + Z/4"
    assert str(groups[-1]) == "0"
