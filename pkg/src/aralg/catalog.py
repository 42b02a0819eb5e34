"""The four small algebras used throughout the tests and demos."""

from __future__ import annotations

from .algebra import Algebra, Quiver, Relation, build_path_algebra
from .linalg import FieldSpec


def dual_numbers(field: FieldSpec = FieldSpec()) -> Algebra:
    """``k[x]/(x^2)``."""
    return build_path_algebra(Quiver(["1"], [("x", "1", "1")]), [Relation([(1, "x*x")])], field=field,
                              name="k[x]/(x^2)")


def truncated_polynomial(n: int, field: FieldSpec = FieldSpec()) -> Algebra:
    """``k[x]/(x^n)``."""
    path = "*".join(["x"] * n)
    return build_path_algebra(Quiver(["1"], [("x", "1", "1")]), [Relation([(1, path)])], field=field,
                              name=f"k[x]/(x^{n})")


def a2(field: FieldSpec = FieldSpec()) -> Algebra:
    """Path algebra of ``1 -a-> 2``."""
    return build_path_algebra(Quiver(["1", "2"], [("a", "1", "2")]), field=field, name="A2")


def commutative_square(field: FieldSpec = FieldSpec()) -> Algebra:
    """``a: 1->2, b: 1->3, c: 2->4, d: 3->4`` with ``ac = bd``."""
    q = Quiver(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "1", "3"), ("c", "2", "4"), ("d", "3", "4")])
    return build_path_algebra(q, [Relation([(1, "a*c"), (-1, "b*d")])], field=field, name="square")


def test_algebras(field: FieldSpec = FieldSpec()) -> dict:
    return {"T1": dual_numbers(field), "T2": a2(field), "T3": truncated_polynomial(3, field),
            "T4": commutative_square(field)}
