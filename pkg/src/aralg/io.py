"""JSON-compatible file format for algebras and modules.

Algebra files either describe a bound quiver::

    {"field": "Q", "quiver": {"vertices": ["1", "2"], "arrows": [["a", "1", "2"]]},
     "relations": [[["1", "x*x"]]], "nilpotency_bound": null}

or give structure constants directly::

    {"field": "Fp:5", "basis": ["e", "x"], "unit": ["1", "0"],
     "structure_constants": [[[...], ...], ...], "idempotents": [["1", "0"]],
     "radical": [["0", "1"]]}

Scalars are strings ("3/2" over Q, residues over Fp).
"""

from __future__ import annotations

import json
from typing import Any, Dict

from .algebra import (Algebra, AlgebraError, Quiver, Relation, ValidationError, build_path_algebra,
                      from_structure_constants)
from .linalg import FieldSpec, Matrix
from .modules import Module, module_from_representation


class ParseError(ValueError):
    pass


def _field(d: Dict[str, Any]) -> FieldSpec:
    try:
        return FieldSpec.parse(d.get("field", "Q"))
    except (ValueError, TypeError) as e:
        raise ParseError(f"bad field descriptor: {e}") from e


def algebra_from_dict(d: Dict[str, Any], name: str = "") -> Algebra:
    if not isinstance(d, dict):
        raise ParseError("algebra file must hold an object")
    fld = _field(d)
    try:
        if "quiver" in d:
            q = d["quiver"]
            quiver = Quiver(q["vertices"], [tuple(a) for a in q["arrows"]])
            rels = [Relation([(fld.parse_scalar(c), p) for c, p in r]) for r in d.get("relations", [])]
            return build_path_algebra(quiver, rels, d.get("nilpotency_bound"), fld, name=d.get("name", name))
        labels = d["basis"]
        n = len(labels)
        c = [[[fld.parse_scalar(x) for x in row] for row in plane] for plane in d["structure_constants"]]
        if len(c) != n or any(len(p) != n or any(len(r) != n for r in p) for p in c):
            raise ParseError("structure constants have the wrong shape")
        unit = [fld.parse_scalar(x) for x in d["unit"]]
        idem = [[fld.parse_scalar(x) for x in e] for e in d.get("idempotents", [])]
        rad = d.get("radical")
        rad_rows = None if rad is None else [[fld.parse_scalar(x) for x in r] for r in rad]
        a = from_structure_constants(fld, labels, c, unit, idempotents=idem, radical_rows=rad_rows,
                                     name=d.get("name", name))
        a.validate()
        return a
    except ParseError:
        raise
    except ValidationError as e:
        raise ParseError(f"invalid algebra: {e}") from e
    except (KeyError, TypeError, IndexError, ValueError, AlgebraError) as e:
        if type(e).__name__ == "InfiniteDimensional":
            raise
        raise ParseError(f"malformed algebra description: {e}") from e


def algebra_to_dict(a: Algebra) -> Dict[str, Any]:
    fld = a.field
    if a.quiver is not None:
        return {"field": fld.descriptor, "name": a.name,
                "quiver": {"vertices": list(a.quiver.vertices), "arrows": [list(x) for x in a.quiver.arrows]},
                "relations": [[[fld.format_scalar(fld.scalar(c)), "*".join(p)] for c, p in r.terms]
                              for r in a.relations],
                "nilpotency_bound": a.nilpotency_bound}
    c = a.structure_constants()
    return {"field": fld.descriptor, "name": a.name, "basis": list(a.labels),
            "unit": [fld.format_scalar(x) for x in a.unit.entries()],
            "structure_constants": [[[fld.format_scalar(x) for x in row] for row in plane] for plane in c],
            "idempotents": [[fld.format_scalar(x) for x in e.entries()] for e in a.idempotents],
            "radical": [[fld.format_scalar(x) for x in a.radical.basis.row(i).entries()]
                        for i in range(a.radical.dim)]}


def structure_constants_dict(a: Algebra) -> Dict[str, Any]:
    """Explicit structure-constant form of any algebra."""
    q, a.quiver = a.quiver, None
    try:
        return algebra_to_dict(a)
    finally:
        a.quiver = q


def load_algebra(path: str) -> Algebra:
    try:
        with open(path) as fh:
            d = json.load(fh)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: not valid JSON ({e})") from e
    return algebra_from_dict(d, name=path)


def dump_algebra(a: Algebra) -> str:
    return json.dumps(algebra_to_dict(a), indent=2)


def module_from_dict(a: Algebra, d: Dict[str, Any], name: str = "") -> Module:
    """``{"dims": [...], "arrows": {"a": [[...]]}}`` or ``{"action": [matrix per basis element]}``."""
    fld = a.field
    try:
        if "dims" in d:
            maps = {k: [[fld.parse_scalar(x) for x in row] for row in v] for k, v in d.get("arrows", {}).items()}
            m = module_from_representation(a, d["dims"], maps, d.get("name", name))
        else:
            acts = [fld.matrix([[fld.parse_scalar(x) for x in row] for row in mat], None) for mat in d["action"]]
            m = Module(a, acts, d.get("name", name), dim=acts[0].rows if acts else 0)
        m.validate()
        return m
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise ParseError(f"malformed module description: {e}") from e


def module_to_dict(m: Module) -> Dict[str, Any]:
    fld = m.field
    return {"name": m.name, "action": [[[fld.format_scalar(x) for x in row] for row in A.tolist()] for A in m.action]}


def matrix_to_json(m: Matrix):
    return [[m.field.format_scalar(x) for x in row] for row in m.tolist()]
