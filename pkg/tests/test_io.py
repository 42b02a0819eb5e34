import json

import pytest
from hypothesis import given, settings, strategies as st

from aralg import FieldSpec, curated_indecomposables, is_isomorphic, truncated_polynomial
from aralg.catalog import test_algebras as build_test_algebras
from aralg.io import (ParseError, algebra_from_dict, algebra_to_dict, dump_algebra, load_algebra, module_from_dict,
                      module_to_dict, structure_constants_dict)

ALGEBRAS = build_test_algebras()


def _same_algebra(a, b):
    return (a.dim == b.dim and a.field == b.field
            and all(a.right_mult[i] == b.right_mult[i] for i in range(a.dim)) and a.unit == b.unit)


@pytest.mark.parametrize("key", list(ALGEBRAS))
def test_quiver_form_round_trip(key):
    a = ALGEBRAS[key]
    b = algebra_from_dict(json.loads(dump_algebra(a)))
    assert _same_algebra(a, b)


@pytest.mark.parametrize("key", list(ALGEBRAS))
def test_structure_constant_form_round_trip(key):
    a = ALGEBRAS[key]
    d = json.loads(json.dumps(structure_constants_dict(a)))
    assert "structure_constants" in d
    b = algebra_from_dict(d)
    assert _same_algebra(a, b) and b.radical.dim == a.radical.dim


@given(st.integers(2, 5), st.sampled_from([0, 2, 3, 5]))
@settings(max_examples=12, deadline=None)
def test_round_trip_over_fields(n, p):
    fld = FieldSpec.prime(p) if p else FieldSpec.rationals()
    a = truncated_polynomial(n, fld)
    assert _same_algebra(a, algebra_from_dict(algebra_to_dict(a)))


def test_corrupted_structure_constants():
    d = structure_constants_dict(ALGEBRAS["T3"])
    d["structure_constants"][1][1] = ["1", "0", "0"]  # x * x = 1, so (x x) x^2 = x^2 but x (x x^2) = 0
    with pytest.raises(ParseError):
        algebra_from_dict(d)
    d = structure_constants_dict(ALGEBRAS["T1"])
    d["structure_constants"].pop()
    with pytest.raises(ParseError):
        algebra_from_dict(d)


@pytest.mark.parametrize("bad", [[], {"field": "Fp:4", "basis": []}, {"quiver": {"vertices": ["1"]}},
                                 {"field": "Q", "basis": ["e"], "unit": ["1"], "structure_constants": [[["x"]]]}])
def test_malformed_inputs(bad):
    with pytest.raises(ParseError):
        algebra_from_dict(bad)


def test_load_algebra_bad_json(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"field": ')
    with pytest.raises(ParseError):
        load_algebra(str(p))


@pytest.mark.parametrize("key", list(ALGEBRAS))
def test_module_round_trip(key):
    a = ALGEBRAS[key]
    for m in curated_indecomposables(a):
        assert is_isomorphic(module_from_dict(a, json.loads(json.dumps(module_to_dict(m)))), m)


def test_module_from_representation_dict():
    a = ALGEBRAS["T2"]
    m = module_from_dict(a, {"dims": [1, 1], "arrows": {"a": [["1"]]}})
    assert m.dim_vector() == (1, 1)
    with pytest.raises(ParseError):
        module_from_dict(a, {"action": [[["1", "0"]]]})
