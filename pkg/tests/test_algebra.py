import pytest

from aralg import (FieldSpec, InadmissibleRelation, InfiniteDimensional, Quiver, Relation, build_path_algebra,
                   from_structure_constants, truncated_polynomial)
from aralg.algebra import AlgebraError, ValidationError, radical_of_endo_algebra

Q = FieldSpec.rationals()


def test_test_algebra_dimensions(algebras):
    # bases: {e,x}; {e1,e2,a}; {e,x,x^2}; {e1..e4,a,b,c,d,ac=bd}
    assert {k: a.dim for k, a in algebras.items()} == {"T1": 2, "T2": 3, "T3": 3, "T4": 9}
    assert {k: a.radical.dim for k, a in algebras.items()} == {"T1": 1, "T2": 1, "T3": 2, "T4": 5}


def test_validate_all(algebras):
    for a in algebras.values():
        a.validate()
        a.opposite().validate()


def test_unit_and_idempotents(T4):
    u = T4.unit
    for i in range(T4.dim):
        b = T4.basis_vector(i)
        assert T4.mul(u, b) == b and T4.mul(b, u) == b
    es = T4.idempotents
    for i, e in enumerate(es):
        for j, f in enumerate(es):
            assert T4.mul(e, f) == (e if i == j else T4.field.zeros(1, T4.dim))


def test_commutativity_relation_holds(T4):
    ac = T4.mul(T4.element({"a": 1}), T4.element({"c": 1}))
    bd = T4.mul(T4.element({"b": 1}), T4.element({"d": 1}))
    assert ac == bd and not ac.is_zero()


def test_truncated_polynomial_nilpotency():
    a = truncated_polynomial(4)
    x = a.element({"x": 1})
    p = x
    for _ in range(3):
        assert not p.is_zero()
        p = a.mul(p, x)
    assert p.is_zero()


def test_loop_without_relation_is_infinite():
    q = Quiver(["1"], [("x", "1", "1")])
    with pytest.raises(InfiniteDimensional):
        build_path_algebra(q, [], field=Q, max_search=6)


def test_loop_with_explicit_bound():
    q = Quiver(["1"], [("x", "1", "1")])
    assert build_path_algebra(q, [], nilpotency_bound=5, field=Q).dim == 5


def test_two_loops_with_relations_bound_found():
    # k<x,y>/(x^2, y^2, xy + yx): dimension 4 with basis 1, x, y, xy
    q = Quiver(["1"], [("x", "1", "1"), ("y", "1", "1")])
    rels = [Relation([(1, "x*x")]), Relation([(1, "y*y")]), Relation([(1, "x*y"), (1, "y*x")])]
    assert build_path_algebra(q, rels, field=Q).dim == 4


def test_inadmissible_relation():
    q = Quiver(["1", "2"], [("a", "1", "2")])
    with pytest.raises(InadmissibleRelation):
        build_path_algebra(q, [Relation([(1, "a")])], field=Q)


def test_noncomposable_relation():
    q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "3", "2")])
    with pytest.raises(AlgebraError):
        build_path_algebra(q, [Relation([(1, "a*b")])], field=Q)


def test_nonassociative_constants_rejected():
    # b1*b1 = b1 but b1*b2 = b2 while b2*b1 = b1: inconsistent unit, fails validation
    c = [[[1, 0], [0, 1]], [[1, 0], [0, 0]]]
    a = from_structure_constants(Q, ["e", "y"], c, [1, 0])
    with pytest.raises(ValidationError):
        a.validate()


def test_opposite_reverses_products(T2):
    op = T2.opposite()
    for i in range(T2.dim):
        for j in range(T2.dim):
            assert op.mul(op.basis_vector(i), op.basis_vector(j)) == T2.mul(T2.basis_vector(j), T2.basis_vector(i))


def test_radical_over_F2_group_algebra():
    # F2[C2]: g^2 = 1; the trace form is zero, yet the radical is the span of 1 + g
    F2 = FieldSpec.prime(2)
    c = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
    a = from_structure_constants(F2, ["e", "g"], c, [1, 0])
    rad = radical_of_endo_algebra(a)
    assert rad.dim == 1 and rad.contains(F2.matrix([[1, 1]]))


def test_radical_over_F3_semisimple():
    # F3[C2] is semisimple since 2 is invertible
    F3 = FieldSpec.prime(3)
    c = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
    a = from_structure_constants(F3, ["e", "g"], c, [1, 0])
    assert radical_of_endo_algebra(a).dim == 0


def test_path_algebra_over_Fp():
    a = truncated_polynomial(3, FieldSpec.prime(7))
    assert a.dim == 3 and a.radical.dim == 2
    a.validate()
