import pytest

from aralg import (IndexOutOfWindow, ProjectiveInput, build_truncation, complete_resolution, happel_embed,
                   injective_module, is_isomorphic, projective_module, restrict_along_lambda,
                   simple_module)
from aralg.catalog import test_algebras as build_test_algebras
from aralg.complexes import NotSelfInjective, cohomology, interior
from aralg.repetitive import RepModule, happel_compare, index_dims

ALGEBRAS = build_test_algebras()


@pytest.mark.parametrize("key,a,b,expected", [("T1", -1, 1, 10), ("T2", 0, 1, 9), ("T2", 0, 0, 3),
                                              ("T4", -1, 0, 27)])
def test_truncation_dimension(key, a, b, expected):
    # (b - a + 1) copies of A on the diagonal and (b - a) copies of D(A) between them
    w = build_truncation(ALGEBRAS[key], a, b)
    assert w.algebra.dim == expected


@pytest.mark.parametrize("key", ["T1", "T2", "T3"])
def test_truncation_is_a_valid_algebra(key):
    w = build_truncation(ALGEBRAS[key], -1, 1)
    w.algebra.validate()
    assert w.algebra.num_vertices == 3 * ALGEBRAS[key].num_vertices


def test_dual_strips_square_to_zero(T2):
    w = build_truncation(T2, 0, 2)
    A = w.algebra
    for k in range(T2.dim):
        for l in range(T2.dim):
            x = A.basis_vector(w.strip_basis(0, k))
            y = A.basis_vector(w.strip_basis(1, l))
            assert A.mul(x, y).is_zero()


@pytest.mark.parametrize("key", ["T2", "T4"])
def test_interior_projectives_are_injective(key):
    # truncations are self-injective away from the right end: e_{v@i} for i < b is projective-injective
    base = ALGEBRAS[key]
    w = build_truncation(base, 0, 2)
    A = w.algebra
    injectives = [injective_module(A, u) for u in range(A.num_vertices)]
    for i in (0, 1):
        for v in range(base.num_vertices):
            P = projective_module(A, w.vertex(v, i))
            assert any(is_isomorphic(P, I) for I in injectives)


@pytest.mark.parametrize("key", ["T1", "T2", "T4"])
def test_embedding_round_trip_and_restriction(key):
    base = ALGEBRAS[key]
    w = build_truncation(base, -1, 1)
    for v in range(base.num_vertices):
        m = simple_module(base, v)
        X = happel_embed(m, w).to_module()
        X.validate()
        assert index_dims(X, w) == {0: m.dim_vector()}
        back = RepModule.from_module(X, w)
        assert is_isomorphic(back.comp(0), m)
        r, _ = restrict_along_lambda(X, w)
        assert is_isomorphic(r, m)


@pytest.mark.parametrize("key", ["T1", "T2", "T4"])
def test_restriction_of_indecomposable_projectives_and_injectives(key):
    # Hom(A, -) picks the part of index 0 killed by the outgoing D(A)-strip
    base = ALGEBRAS[key]
    w = build_truncation(base, -1, 1)
    A = w.algebra
    for v in range(base.num_vertices):
        P = projective_module(A, w.vertex(v, 0))
        assert 0 in index_dims(P, w) and 1 in index_dims(P, w)
        assert restrict_along_lambda(P, w)[0].dim == 0
        I = injective_module(A, w.vertex(v, 0))
        assert sorted(index_dims(I, w)) == [-1, 0]
        assert is_isomorphic(restrict_along_lambda(I, w)[0], injective_module(base, v))


def test_index_out_of_window(T1):
    w = build_truncation(T1, 1, 2)
    with pytest.raises(IndexOutOfWindow):
        happel_embed(simple_module(T1, 0), w)


def test_complete_resolution_self_injective(T1):
    cr = complete_resolution(simple_module(T1, 0), (-3, 3))
    c = cr.complex
    c.validate()
    for n in interior(c, 1):
        assert cohomology(c, n).dim == 0
        assert c.obj(n).dim == 2


def test_complete_resolution_needs_self_injective(T2):
    with pytest.raises(NotSelfInjective):
        complete_resolution(simple_module(T2, 0), (-3, 3))


def test_happel_rejects_projective(T2):
    with pytest.raises(ProjectiveInput):
        happel_compare(projective_module(T2, 0))


def test_happel_dual_numbers_report():
    r = happel_compare(simple_module(ALGEBRAS["T1"], 0))
    assert r.passed
    # DTr of the index-0 simple over the truncation spreads over indices -1, 0, 1
    assert sorted(r.tau_dims) == [-1, 0, 1]
    assert all(x == 0 for v in r.w_dims.values() for x in v)


@pytest.mark.slow
def test_happel_truncated_cubic():
    # beyond the acceptance pair: the comparison also holds for the simple over k[x]/(x^3)
    r = happel_compare(simple_module(ALGEBRAS["T3"], 0))
    assert r.passed
