"""``aralg`` command line.

Exit codes: 0 success, 1 verification failure or rejected input, 2 parse
error, 3 unsupported characteristic.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .algebra import AlgebraError, UnsupportedCharacteristic
from .ar import (ar_quiver_fragment, ar_sequence, ar_triangle, curated_indecomposables, gamma_as_multiplication,
                 is_projective)
from .complexes import DEFAULT_GUARD, DEFAULT_WINDOW, NotSelfInjective, WindowTooSmall, injective_resolution_of_module
from .io import ParseError, load_algebra, matrix_to_json, module_from_dict
from .linalg import ShapeError
from .modules import (NotIndecomposable, ProjectiveInput, decompose_module, dtr, dtr_via_nakayama,
                      find_isomorphism, injective_module, projective_module, radical_submodule, regular_module,
                      simple_module, submodule)
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CHAR = 0, 1, 2, 3


class TargetError(ValueError):
    pass


def resolve_target(a, text: str):
    """``S<v>``, ``P<v>``, ``I<v>``, ``Lambda``, ``rad:<target>``, ``@file.json`` or a curated name."""
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return module_from_dict(a, json.load(fh), name=text[1:])
    if text.startswith("rad:"):
        m = resolve_target(a, text[4:])
        r, _ = submodule(m, radical_submodule(m).basis)
        r.name = text
        return r
    if text in ("Lambda", "A"):
        return regular_module(a)
    kind, v = text[:1], text[1:]
    if kind in "SPI" and v in a.vertices:
        return {"S": simple_module, "P": projective_module, "I": injective_module}[kind](a, v)
    for m in curated_indecomposables(a):
        if m.name == text:
            return m
    raise TargetError(f"cannot resolve module {text!r}")


def _dims(m) -> list:
    return list(m.dim_vector())


def _row(obj):
    """Report rows as plain data."""
    if hasattr(obj, "__dataclass_fields__"):
        out = {}
        for k in obj.__dataclass_fields__:
            v = getattr(obj, k)
            if hasattr(v, "tolist") and hasattr(v, "field"):
                v = v is not None
            out[k] = v
        if hasattr(obj, "ok"):
            out["ok"] = obj.ok
        return out
    if isinstance(obj, tuple):
        return list(obj)
    return obj


def _emit(data, out):
    out.write(json.dumps(data, indent=2, sort_keys=True, default=str) + "\n")


# -- commands --------------------------------------------------------------------------------------------

def cmd_validate(args, out) -> int:
    a = load_algebra(args.file)
    a.validate()
    _emit({"command": "validate", "file": args.file, "field": a.field.descriptor, "dim": a.dim,
           "basis": list(a.labels), "vertices": list(a.vertices), "radical_dim": a.radical.dim,
           "valid": True}, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    a = load_algebra(args.file)
    rep = run_suite(args.suite, a, tuple(args.window), args.guard)
    _emit({"command": f"verify {args.suite}", "file": args.file, "passed": rep.passed,
           "rows": [_row(r) for r in rep.rows]}, out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _sequence_report(cert, emit: str) -> dict:
    s = cert.sequence
    d = {"L": _dims(s.L), "M": _dims(s.M), "N": _dims(s.N),
         "middle_summands": [_dims(m) for m in cert.middle_summands()],
         "exact": cert.exact, "non_split": cert.non_split, "left_end_is_dtr": cert.left_end_iso is not None,
         "ends_local": list(cert.ends_local),
         "factorization": [_row(r) for r in cert.factorization_log], "certified": cert.ok}
    if emit == "matrices":
        d["iota"] = matrix_to_json(s.iota)
        d["pi"] = matrix_to_json(s.pi)
    return d


def cmd_ar(args, out) -> int:
    a = load_algebra(args.file)
    kind = args.kind.lower()
    if kind == "quiver":
        specs = args.target.split(",") if args.target != "simples" else [f"S{v}" for v in a.vertices]
        frag = ar_quiver_fragment(a, [resolve_target(a, s) for s in specs], args.steps)
        if args.dot:
            out.write(frag.to_dot() + "\n")
        else:
            _emit({"command": "ar quiver", "nodes": [[n, _dims(m)] for n, m in frag.nodes],
                   "arrows": [[i, j, k] for (i, j), k in sorted(frag.edges.items())],
                   "tau": sorted([j, i] for j, i in frag.tau.items())}, out)
        return EXIT_OK
    n = resolve_target(a, args.target)
    if kind == "sequence":
        cert = ar_sequence(n, curated_indecomposables(a))
        _emit({"command": "ar sequence", "target": args.target, **_sequence_report(cert, args.emit)}, out)
        return EXIT_OK if cert.ok else EXIT_FAIL
    if kind == "triangle":
        z = injective_resolution_of_module(n, tuple(args.window))
        data = ar_triangle(z, args.guard)
        tri = data.triangle
        degs = range(tri.Z.lo, tri.Z.hi + 1)
        rep = {"command": "ar triangle", "target": args.target, "window": list(args.window), "guard": args.guard,
               "X": {n_: _dims(tri.X.obj(n_)) for n_ in degs if tri.X.obj(n_).dim},
               "Y": {n_: _dims(tri.Y.obj(n_)) for n_ in degs if tri.Y.obj(n_).dim},
               "Z": {n_: _dims(tri.Z.obj(n_)) for n_ in degs if tri.Z.obj(n_).dim},
               "gamma_nonzero": data.gamma_nonzero, "gamma_kills_radical": data.kills_radical,
               "composites_vanish": tri.composites_vanish()}
        u = gamma_as_multiplication(tri)
        if u is not None:
            terms = [f"{a.field.format_scalar(c)}*{lab}" for c, lab in zip(u.entries(), a.labels) if c != 0]
            rep["gamma_is_multiplication_by"] = " + ".join(terms) or "0"
        if args.emit == "matrices":
            rep["gamma"] = {n_: matrix_to_json(m) for n_, m in sorted(tri.gamma.comps.items())}
        _emit(rep, out)
        ok = data.gamma_nonzero and data.kills_radical and all(tri.composites_vanish().values())
        return EXIT_OK if ok else EXIT_FAIL
    raise TargetError(f"unknown kind {args.kind!r}")


def cmd_dtr(args, out) -> int:
    a = load_algebra(args.file)
    m = resolve_target(a, args.target)
    t1 = dtr(m)
    t2, _ = dtr_via_nakayama(m)
    iso = find_isomorphism(t1, t2)
    rep = {"command": "dtr", "target": args.target, "transpose_route": _dims(t1), "nakayama_route": _dims(t2),
           "isomorphic": iso is not None, "summands": [_dims(s) for s, _, _ in decompose_module(t1)]}
    if args.emit == "matrices" and iso is not None:
        rep["iso"] = matrix_to_json(iso)
    _emit(rep, out)
    return EXIT_OK if iso is not None else EXIT_FAIL


def cmd_repetitive(args, out) -> int:
    from .repetitive import happel_compare_stable
    a = load_algebra(args.file)
    n = resolve_target(a, args.target)
    window = tuple(args.window) if args.window != list(DEFAULT_WINDOW) else (-2, 2)
    r1, r2, stable = happel_compare_stable(n, window, args.guard)
    _emit({"command": "repetitive compare", "target": args.target, "report": r1.summary(),
           "enlarged": r2.summary(), "margin_stable": stable, "passed": r1.passed and r2.passed and stable}, out)
    return EXIT_OK if r1.passed and r2.passed and stable else EXIT_FAIL


# -- parser ---------------------------------------------------------------------------------------------

def _common(p):
    p.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"), default=list(DEFAULT_WINDOW))
    p.add_argument("--guard", type=int, default=DEFAULT_GUARD)
    p.add_argument("--emit", choices=("dims", "matrices"), default="dims")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="aralg", description="Auslander-Reiten theory for finite-dimensional algebras")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("validate", help="parse and validate an algebra file")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)
    ve = sub.add_parser("verify", help="run a verification suite on the curated modules")
    ve.add_argument("suite", choices=SUITES)
    ve.add_argument("file")
    _common(ve)
    ve.set_defaults(func=cmd_verify)
    ar = sub.add_parser("ar", help="almost split sequences, AR triangles, AR quiver fragments")
    ar.add_argument("kind", type=str.lower, choices=("sequence", "triangle", "quiver"))
    ar.add_argument("file")
    ar.add_argument("target", help="S1, P1, I1, Lambda, rad:P1, @module.json; comma list or 'simples' for quiver")
    ar.add_argument("--steps", type=int, default=1)
    ar.add_argument("--dot", action="store_true")
    _common(ar)
    ar.set_defaults(func=cmd_ar)
    d = sub.add_parser("dtr", help="DTr by both routes")
    d.add_argument("file")
    d.add_argument("target")
    _common(d)
    d.set_defaults(func=cmd_dtr)
    r = sub.add_parser("repetitive", help="comparison over a truncated repetitive algebra")
    r.add_argument("action", choices=("compare",))
    r.add_argument("file")
    r.add_argument("target")
    _common(r)
    r.set_defaults(func=cmd_repetitive, guard=1)
    return p


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    try:
        return args.func(args, out)
    except UnsupportedCharacteristic as e:
        print(f"aralg: unsupported characteristic: {e}", file=sys.stderr)
        return EXIT_CHAR
    except (ParseError, AlgebraError, ShapeError, json.JSONDecodeError, OSError) as e:
        print(f"aralg: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (ProjectiveInput, NotIndecomposable, WindowTooSmall, NotSelfInjective, TargetError) as e:
        print(f"aralg: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
