"""Verification suites shared by the command line and the test-suite."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .algebra import Algebra
from .ar import (Report, curated_indecomposables, is_projective, verify_ar_formula_modules, verify_dtr_routes,
                 verify_six_term)
from .complexes import (DEFAULT_GUARD, DEFAULT_WINDOW, Complex, complex_from_maps, concentrated, hom_k_dim,
                        injective_model, injective_resolution_of_module, nakayama_translate, serre_pairing,
                        total_hom_complex, totalized_sigma, projective_resolution_of_module)
from .modules import (direct_sum, hom, natural_map_tensor_dual, projective_module, random_short_exact_sequence,
                      simple_module)

SUITES = ("ArFormula", "DtrRoutes", "SixTerm", "SerrePairing", "Happel")


# -- objects of the homotopy category used for pairing checks ----------------------------------------------

def serre_objects(a: Algebra, window=DEFAULT_WINDOW) -> List[Tuple[str, Complex]]:
    """``iS`` for simples, ``iP`` for indecomposable projectives, and ``i(P -f-> Q)`` for
    every basis map ``f`` between indecomposable projectives (placed in degrees -1, 0)."""
    out = []
    nv = a.num_vertices
    for v in range(nv):
        out.append((f"iS{a.vertices[v]}", injective_resolution_of_module(simple_module(a, v), window)))
    for v in range(nv):
        out.append((f"iP{a.vertices[v]}", injective_resolution_of_module(projective_module(a, v), window)))
    for u in range(nv):
        for v in range(nv):
            P, Q = projective_module(a, u), projective_module(a, v)
            for k, f in enumerate(hom(P, Q).basis):
                c = complex_from_maps(a, -1, [P, Q], [f], window, name=f"P{a.vertices[u]}->P{a.vertices[v]}#{k}")
                out.append((f"i({c.name})", injective_model(c)))
    return out


@dataclass
class PairRow:
    first: str
    second: str
    hom_xy: int
    hom_ytx: int
    nondegenerate: bool
    stable: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return self.nondegenerate and self.hom_xy == self.hom_ytx and self.stable is not False


def verify_serre(a: Algebra, window=DEFAULT_WINDOW, guard: int = DEFAULT_GUARD,
                 stability_window: Optional[Tuple[int, int]] = None) -> Report:
    objs = serre_objects(a, window)
    big = dict(serre_objects(a, stability_window)) if stability_window else None
    rows = []
    for nx, x in objs:
        for ny, y in objs:
            sp = serre_pairing(x, y, guard)
            a_, b_ = sp.dims
            stable = None
            if big is not None:
                sp2 = serre_pairing(big[nx], big[ny], guard)
                stable = sp2.dims == (a_, b_)
            rows.append(PairRow(nx, ny, a_, b_, sp.nondegenerate, stable))
    return Report("SerrePairing", rows, all(r.ok for r in rows))


@dataclass
class FaithfulRow:
    first: str
    second: str
    hom_xy: int
    hom_txty: int

    @property
    def ok(self) -> bool:
        return self.hom_xy == self.hom_txty


def verify_translate_faithful(a: Algebra, window=DEFAULT_WINDOW, guard: int = DEFAULT_GUARD) -> Report:
    objs = serre_objects(a, window)
    rows = []
    for nx, x in objs:
        tx = nakayama_translate(x, guard).t
        for ny, y in objs:
            ty = nakayama_translate(y, guard).t
            rows.append(FaithfulRow(nx, ny, hom_k_dim(x, y, guard), hom_k_dim(tx, ty, guard)))
    return Report("TranslateFaithful", rows, all(r.ok for r in rows))


# -- lemma suite -------------------------------------------------------------------------------------------

def random_small_complexes(a: Algebra, count: int, seed: int = 0, window=(-3, 3)) -> List[Complex]:
    """Complexes ``U -> X``, ``X -> X/U``, ``U -> X -> X/U`` and stalks built from random submodules."""
    rng = random.Random(seed)
    mods = curated_indecomposables(a)
    out = []
    while len(out) < count:
        parts = [mods[rng.randrange(len(mods))] for _ in range(rng.randint(1, 2))]
        X, _, _ = direct_sum(parts, a)
        s = random_short_exact_sequence(X, rng, generators=1)
        kind = rng.randrange(4)
        start = rng.randint(-1, 0)
        if kind == 0:
            c = complex_from_maps(a, start, [s.L, s.M], [s.iota], window)
        elif kind == 1:
            c = complex_from_maps(a, start, [s.M, s.N], [s.pi], window)
        elif kind == 2:
            c = complex_from_maps(a, -1, [s.L, s.M, s.N], [s.iota, s.pi], window)
        else:
            c = concentrated(s.M, start, window)
        out.append(c)
    return out


@dataclass
class LemmaReport:
    lem1: List[Tuple[str, str, bool]]
    lem2: List[Tuple[str, str, bool]]
    lem3: List[Tuple[int, int, int]]

    @property
    def passed(self) -> bool:
        return (all(r[2] for r in self.lem1) and all(r[2] for r in self.lem2)
                and all(r[1] == r[2] for r in self.lem3))


def verify_lemmas(a: Algebra, pairs: int = 20, seed: int = 0, window=(-4, 4)) -> LemmaReport:
    mods = curated_indecomposables(a)
    lem1 = []
    for m in mods:
        x = projective_resolution_of_module(m, window)
        for n in mods:
            r = totalized_sigma(x, injective_resolution_of_module(n, window))
            lem1.append((m.name, n.name, r.degreewise_bijective and r.chain_map))
    lem2 = [(m.name, n.name, natural_map_tensor_dual(m, n).is_bijective) for m in mods for n in mods]
    cs = random_small_complexes(a, 2 * pairs, seed)
    lem3 = []
    for i in range(pairs):
        x, y = cs[2 * i], cs[2 * i + 1]
        lem3.append((i, total_hom_complex(x, y).cohomology_dim(0), hom_k_dim(x, y, 0)))
    return LemmaReport(lem1, lem2, lem3)


# -- dispatcher -----------------------------------------------------------------------------------------------

def run_suite(name: str, a: Algebra, window=DEFAULT_WINDOW, guard: int = DEFAULT_GUARD) -> Report:
    if name == "ArFormula":
        return verify_ar_formula_modules(a)
    if name == "DtrRoutes":
        return verify_dtr_routes(a)
    if name == "SixTerm":
        return verify_six_term(a)
    if name == "SerrePairing":
        return verify_serre(a, window, guard)
    if name == "Happel":
        from .repetitive import happel_compare_stable
        rows = []
        for n in curated_indecomposables(a):
            if is_projective(n):
                continue
            r1, _, stable = happel_compare_stable(n)
            rows.append((n.name, r1.summary(), r1.passed and stable))
        return Report("Happel", rows, all(r[2] for r in rows))
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
