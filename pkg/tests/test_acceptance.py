"""One test per acceptance criterion.  Each prints a PASS/FAIL line with its timing."""

import time

import pytest

from aralg import (ar_sequence, decompose_module, ar_triangle_of_module, curated_indecomposables, hom_dim, injective_module,
                   projective_module, regular_module, sequences_isomorphic, simple_module, triangle_to_sequence)
from aralg.ar import (a_functor, gamma_as_multiplication, is_projective, random_sequences, six_term_sequence,
                      verify_ar_formula_modules, verify_dtr_routes)
from aralg.catalog import test_algebras as build_test_algebras
from aralg.complexes import injective_resolution_of_module
from aralg.modules import direct_sum
from aralg.repetitive import happel_compare_stable
from aralg.verify import verify_lemmas, verify_serre, verify_translate_faithful

ALGEBRAS = build_test_algebras()


class Clock:
    def __init__(self, label, limit):
        self.label, self.limit = label, limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        return False

    def report(self, ok):
        ok = ok and self.elapsed < self.limit
        print(f"\n[{'PASS' if ok else 'FAIL'}] {self.label}: {self.elapsed:.2f}s (limit {self.limit}s)")
        return ok


def _named(a, name):
    return next(m for m in curated_indecomposables(a) if m.name == name)


def _hom_profile(a, m):
    # modules over a representation-finite algebra are determined by dim Hom(X, -) on indecomposables
    return [hom_dim(x, m) for x in curated_indecomposables(a)]


def test_criterion_01_ar_formula():
    with Clock("C1 Ext^1(M,N) = Hom_inj(N, DTr M)", 30) as c:
        reports = {k: verify_ar_formula_modules(a) for k, a in ALGEBRAS.items()}
    bad = [(k, r) for k, rep in reports.items() for r in rep.rows if not r.ok]
    counts = {k: len(rep.rows) for k, rep in reports.items()}
    # Ext^1(S,S) over k[x]/(x^2) is one-dimensional (self-extension is the regular module)
    s_row = next(r for r in reports["T1"].rows if r.first == "S1" and r.second == "S1")
    ok = not bad and s_row.ext_dim == 1 and all(counts.values())
    assert c.report(ok), (bad, counts)


def test_criterion_02_dtr_routes():
    with Clock("C2 DTr transpose route = Nakayama route", 10) as c:
        reports = {k: verify_dtr_routes(a) for k, a in ALGEBRAS.items()}
    bad = [(k, r.module) for k, rep in reports.items() for r in rep.rows if not r.ok]
    assert c.report(not bad), bad


def _c3_cases():
    T1, T2, T3, T4 = (ALGEBRAS[k] for k in ("T1", "T2", "T3", "T4"))
    S_T3 = simple_module(T3, 0)
    return [
        ("T1", simple_module(T1, 0), regular_module(T1)),
        ("T2", simple_module(T2, 0), projective_module(T2, 0)),
        ("T3", _named(T3, "M2"), direct_sum([S_T3, regular_module(T3)], T3)[0]),
        ("T4", simple_module(T4, 0), direct_sum([injective_module(T4, 1), injective_module(T4, 2)], T4)[0]),
    ]


def test_criterion_03_almost_split_sequences():
    with Clock("C3 almost split sequence certificates", 60) as c:
        results = []
        for key, n, expected_middle in _c3_cases():
            a = ALGEBRAS[key]
            cert = ar_sequence(n, curated_indecomposables(a))
            tested = sum(r.tested for r in cert.factorization_log)
            same_middle = _hom_profile(a, cert.sequence.M) == _hom_profile(a, expected_middle)
            summands_dims = sorted(s.dim for s in cert.middle_summands())
            oracle_dims = sorted(s.dim for s, _, _ in decompose_module(expected_middle))
            results.append((key, cert.ok, same_middle, summands_dims == oracle_dims,
                            len(cert.factorization_log) >= len(curated_indecomposables(a)), tested))
    ok = all(r[1] and r[2] and r[3] and r[4] for r in results)
    assert c.report(ok), results


def test_criterion_04_triangle_gives_sequence():
    with Clock("C4 Z^0 of the AR triangle is the almost split sequence", 60) as c:
        rows = []
        for key, a in ALGEBRAS.items():
            mods = curated_indecomposables(a)
            for n in mods:
                if is_projective(n):
                    continue
                data = ar_triangle_of_module(n)
                from_tri = triangle_to_sequence(data.triangle, mods)
                direct = ar_sequence(n)
                iso = sequences_isomorphic(from_tri.sequence, direct.sequence)
                rows.append((key, n.name, from_tri.ok, iso is not None))
    per_algebra = {k: sum(1 for r in rows if r[0] == k) for k in ALGEBRAS}
    ok = all(r[2] and r[3] for r in rows) and per_algebra == {"T1": 1, "T2": 1, "T3": 2, "T4": 7}
    assert c.report(ok), rows


def test_criterion_05_serre_pairing():
    with Clock("C5 Serre pairing on [-6,6], guard 2, stable on [-8,8]", 120) as c:
        reports = [verify_serre(ALGEBRAS[k], (-6, 6), 2, stability_window=(-8, 8)) for k in ("T1", "T2")]
    bad = [(r.first, r.second, r.hom_xy, r.hom_ytx) for rep in reports for r in rep.rows if not r.ok]
    nonzero = sum(1 for rep in reports for r in rep.rows if r.hom_xy)
    assert c.report(not bad and nonzero > 0), bad


def test_criterion_06_gamma_is_multiplication_by_x():
    T1 = ALGEBRAS["T1"]
    with Clock("C6 gamma ~ c*x for the triangle ending at Lambda over k[x]/(x^2)", 5) as c:
        data = ar_triangle_of_module(regular_module(T1))
        u = gamma_as_multiplication(data.triangle)
    x = T1.basis_vector(T1.labels.index("x"))
    ok = (u is not None and data.gamma_nonzero and data.kills_radical
          and u.entries()[0] == 0 and u.entries()[1] != 0 and u == x.scale(u.entries()[1]))
    assert c.report(ok), u


def test_criterion_07_six_term_sequence():
    with Clock("C7 six-term sequence exact, aP = 0", 60) as c:
        rows = []
        for k, a in ALGEBRAS.items():
            for i, s in enumerate(random_sequences(a, count=20, seed=0)):
                r = six_term_sequence(s)
                rows.append((k, i, r.exact, r.alternating_sum, s.is_split()))
        a_proj = [a_functor(projective_module(a, v)).dim for a in ALGEBRAS.values() for v in range(a.num_vertices)]
    bad = [r[:2] for r in rows if not (r[2] and r[3] == 0)]
    non_split = sum(1 for r in rows if not r[4])
    ok = not bad and len(rows) == 80 and not any(a_proj) and non_split > 0
    assert c.report(ok), (bad, non_split, a_proj)


def test_criterion_08_lemma_suite():
    with Clock("C8 lemma suite", 30) as c:
        reports = {k: verify_lemmas(a, pairs=20, seed=0) for k, a in ALGEBRAS.items()}
    ok = all(r.passed for r in reports.values()) and all(len(r.lem3) == 20 for r in reports.values())
    nonvacuous = sum(1 for r in reports.values() for row in r.lem3 if row[1] > 0)
    assert c.report(ok and nonvacuous > 0), {k: r.passed for k, r in reports.items()}


def test_criterion_09_translate_fully_faithful():
    with Clock("C9 Hom_K(X,Y) = Hom_K(tX,tY)", 60) as c:
        reports = [verify_translate_faithful(ALGEBRAS[k], (-6, 6), 2) for k in ("T1", "T2")]
    bad = [(r.first, r.second) for rep in reports for r in rep.rows if not r.ok]
    assert c.report(not bad), bad


def test_criterion_10_happel_comparison():
    T1, T2 = ALGEBRAS["T1"], ALGEBRAS["T2"]
    with Clock("C10 comparison over the truncated repetitive algebra", 120) as c:
        results = []
        for n in (simple_module(T1, 0), simple_module(T2, 0)):
            r1, r2, stable = happel_compare_stable(n, (-2, 2), 1)
            results.append((n.algebra.name, r1.passed, r2.passed, stable, r1.checks))
    ok = all(r[1] and r[2] and r[3] for r in results)
    assert c.report(ok), results
