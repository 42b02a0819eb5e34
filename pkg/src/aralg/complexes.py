"""Cochain complexes of modules on a finite degree window.

Every complex lives on a window ``[lo, hi]``; objects outside it are zero
and unbounded complexes are cut off brutally at the window ends.  All
complexes entering one computation must share the window.  Quantities that
would change if the window grew (homotopy classes, cohomology) are reported
on the guard interior ``[lo + g, hi - g]`` only.

Conventions: ``d^n: X^n -> X^{n+1}`` is a matrix acting on row vectors; a
chain map ``f`` satisfies ``f^n d_Y^n = d_X^n f^{n+1}``; a homotopy ``h^n:
X^n -> Y^{n-1}`` witnesses ``f^n = d_X^n h^{n+1} + h^n d_Y^{n-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Algebra, ground_algebra, radical_of_endo_algebra, from_structure_constants
from .linalg import Matrix, Subspace, kernel_basis, vstack, hstack, solve_left
from .modules import (Module, AlgebraMismatch, NotIndecomposable, direct_sum, dual_module, hom, hom_from_bimodule,
                      dual_bimodule_of, nakayama, nakayama_hom, nakayama_trace, projective_cover, quotient,
                      submodule, tensor_over_algebra, tensor_hom2, zero_module, hom_left_bimodule,
                      natural_map_sigma)

DEFAULT_WINDOW = (-6, 6)
DEFAULT_GUARD = 2


class WindowTooSmall(ValueError):
    pass


class NotSelfInjective(ValueError):
    pass


class Complex:
    def __init__(self, algebra: Algebra, lo: int, hi: int, objects: Dict[int, Module],
                 diffs: Optional[Dict[int, Matrix]] = None, name: str = ""):
        if hi < lo:
            raise WindowTooSmall("empty window")
        self.algebra = algebra
        self.lo, self.hi = lo, hi
        self._zero = zero_module(algebra)
        self.objects = {n: m for n, m in objects.items() if lo <= n <= hi and m.dim > 0}
        for m in self.objects.values():
            if m.algebra is not algebra:
                raise AlgebraMismatch("object over a different algebra")
        self.diffs = {}
        for n, d in (diffs or {}).items():
            if lo <= n < hi and self.obj(n).dim and self.obj(n + 1).dim:
                self.diffs[n] = d
        self.name = name
        self.model = None        # (bounded complex C, chain map C -> self) when known
        self._cache = {}

    def __repr__(self):
        dims = {n: m.dim for n, m in sorted(self.objects.items())}
        return f"Complex({self.name or '?'}, window=[{self.lo},{self.hi}], dims={dims})"

    @property
    def window(self) -> Tuple[int, int]:
        return self.lo, self.hi

    @property
    def field(self):
        return self.algebra.field

    def obj(self, n: int) -> Module:
        return self.objects.get(n, self._zero)

    def d(self, n: int) -> Matrix:
        m = self.diffs.get(n)
        if m is None:
            return self.field.zeros(self.obj(n).dim, self.obj(n + 1).dim)
        return m

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def support(self) -> List[int]:
        return sorted(self.objects)

    def validate(self) -> None:
        for n in self.degrees():
            d = self.d(n)
            if d.shape != (self.obj(n).dim, self.obj(n + 1).dim):
                raise ValueError(f"differential {n} has the wrong shape")
            if not self.obj(n).is_hom_to(self.obj(n + 1), d):
                raise ValueError(f"differential {n} is not a module map")
            if not (d @ self.d(n + 1)).is_zero():
                raise ValueError(f"d^{n + 1} d^{n} != 0")

    def shift(self, k: int) -> "Complex":
        """``X[k]^n = X^{n+k}`` with differential ``(-1)^k d``."""
        sign = -1 if k % 2 else 1
        objs = {n - k: m for n, m in self.objects.items()}
        diffs = {n - k: d.scale(sign) for n, d in self.diffs.items()}
        c = Complex(self.algebra, self.lo, self.hi, objs, diffs, f"{self.name}[{k}]")
        return c

    def with_window(self, lo: int, hi: int) -> "Complex":
        return Complex(self.algebra, lo, hi, self.objects, self.diffs, self.name)

    def identity(self) -> "ChainMap":
        return ChainMap(self, self, {n: m.identity() for n, m in self.objects.items()})

    def clip(self, lo: int, hi: int) -> "Complex":
        """Brutal truncation to ``[lo, hi]`` (objects outside are dropped)."""
        objs = {n: m for n, m in self.objects.items() if lo <= n <= hi}
        diffs = {n: d for n, d in self.diffs.items() if lo <= n < hi}
        return Complex(self.algebra, lo, hi, objs, diffs, self.name)

    def is_bounded_in_window(self) -> bool:
        return self.lo not in self.objects and self.hi not in self.objects


def concentrated(m: Module, degree: int = 0, window=DEFAULT_WINDOW, name: str = "") -> Complex:
    lo, hi = window
    c = Complex(m.algebra, lo, hi, {degree: m}, {}, name or m.name)
    c.model = (c, c.identity())
    return c


def complex_from_maps(algebra: Algebra, start: int, modules: Sequence[Module], maps: Sequence[Matrix],
                      window=DEFAULT_WINDOW, name: str = "") -> Complex:
    """``modules[0] -> modules[1] -> ...`` placed in degrees ``start, start+1, ...``."""
    lo, hi = window
    objs = {start + i: m for i, m in enumerate(modules)}
    diffs = {start + i: d for i, d in enumerate(maps)}
    c = Complex(algebra, lo, hi, objs, diffs, name)
    c.validate()
    return c


def dual_complex(x: Complex) -> Complex:
    """``(DX)^n = D(X^{-n})`` over the opposite algebra."""
    objs = {-n: dual_module(m) for n, m in x.objects.items()}
    diffs = {-n - 1: d.T for n, d in x.diffs.items()}
    return Complex(x.algebra.op, -x.hi, -x.lo, objs, diffs, f"D{x.name}")


# -- chain maps ---------------------------------------------------------------------

class ChainMap:
    def __init__(self, source: Complex, target: Complex, comps: Dict[int, Matrix]):
        self.source = source
        self.target = target
        self.comps = {n: c for n, c in comps.items() if c.rows and c.cols}

    def comp(self, n: int) -> Matrix:
        c = self.comps.get(n)
        if c is None:
            return self.source.field.zeros(self.source.obj(n).dim, self.target.obj(n).dim)
        return c

    def is_chain_map(self) -> bool:
        x, y = self.source, self.target
        for n in range(min(x.lo, y.lo) - 1, max(x.hi, y.hi) + 1):
            if self.comp(n) @ y.d(n) != x.d(n) @ self.comp(n + 1):
                return False
            if not x.obj(n).is_hom_to(y.obj(n), self.comp(n)):
                return False
        return True

    def then(self, other: "ChainMap") -> "ChainMap":
        keys = set(self.comps) & set(other.comps)
        return ChainMap(self.source, other.target, {n: self.comps[n] @ other.comps[n] for n in keys})

    def __add__(self, other: "ChainMap") -> "ChainMap":
        keys = set(self.comps) | set(other.comps)
        return ChainMap(self.source, self.target, {n: self.comp(n) + other.comp(n) for n in keys})

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, {n: m.scale(c) for n, m in self.comps.items()})

    def shift(self, k: int, source: Complex, target: Complex) -> "ChainMap":
        return ChainMap(source, target, {n - k: m for n, m in self.comps.items()})

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps.values())

    def between(self, source: "Complex", target: "Complex") -> "ChainMap":
        """The same components viewed between (clipped) copies of source and target."""
        return ChainMap(source, target, {n: m for n, m in self.comps.items()
                                         if source.lo <= n <= source.hi and n in source.objects
                                         and n in target.objects})


@dataclass
class Homotopy:
    chain_map: ChainMap
    comps: Dict[int, Matrix]

    def verify(self) -> bool:
        x, y = self.chain_map.source, self.chain_map.target
        f = x.field
        for n in range(x.lo, x.hi + 1):
            h_n = self.comps.get(n, f.zeros(x.obj(n).dim, y.obj(n - 1).dim))
            h_n1 = self.comps.get(n + 1, f.zeros(x.obj(n + 1).dim, y.obj(n).dim))
            if self.chain_map.comp(n) != x.d(n) @ h_n1 + h_n @ y.d(n - 1):
                return False
        return True


def cone(f: ChainMap):
    """Mapping cone: ``C^n = A^{n+1} + B^n``, ``d(a, b) = (-a d_A, a f + b d_B)``.

    Returns ``(C, inclusion B -> C, projection C -> A[1])``.
    """
    A, B = f.source, f.target
    lo, hi = B.lo, B.hi
    alg = A.algebra
    fld = A.field
    objs, incs, projs, diffs = {}, {}, {}, {}
    for n in range(lo, hi + 1):
        s, (ia, ib), (pa, pb) = direct_sum([A.obj(n + 1), B.obj(n)], alg)
        objs[n] = s
        incs[n] = ib
        projs[n] = pa
    for n in range(lo, hi):
        top = hstack([(-A.d(n + 1)), f.comp(n + 1)], rows=A.obj(n + 1).dim, field=fld)
        bot = hstack([fld.zeros(B.obj(n).dim, A.obj(n + 2).dim), B.d(n)], rows=B.obj(n).dim, field=fld)
        diffs[n] = vstack([top, bot], cols=A.obj(n + 2).dim + B.obj(n + 1).dim, field=fld)
    C = Complex(alg, lo, hi, objs, diffs, f"cone({A.name}->{B.name})")
    A1 = A.shift(1)
    return C, ChainMap(B, C, incs), ChainMap(C, A1, projs)


def contracting_homotopy_of_cone_identity(x: Complex) -> Homotopy:
    """Null-homotopy of the identity of ``cone(id_X)``."""
    C, _, _ = cone(x.identity())
    fld = x.field
    comps = {}
    for n in range(C.lo, C.hi + 1):
        # h^n: A^{n+1} + B^n -> A^n + B^{n-1}, (a, b) -> (b, 0)
        a_dim, b_dim = x.obj(n + 1).dim, x.obj(n).dim
        tgt_a, tgt_b = x.obj(n).dim, x.obj(n - 1).dim
        top = fld.zeros(a_dim, tgt_a + tgt_b)
        bot = hstack([fld.identity(b_dim), fld.zeros(b_dim, tgt_b)], rows=b_dim, field=fld)
        comps[n] = vstack([top, bot], cols=tgt_a + tgt_b, field=fld)
    return Homotopy(C.identity(), comps)


# -- cycles and cohomology ------------------------------------------------------------

def cycles(x: Complex, n: int) -> Tuple[Module, Matrix]:
    return submodule(x.obj(n), kernel_basis(x.d(n)).basis)


def cohomology(x: Complex, n: int) -> Module:
    Z, inc = cycles(x, n)
    im = x.d(n - 1)
    if im.rows == 0:
        return Z
    coords = Subspace(x.field, x.obj(n).dim, inc, reduced=True)
    B = vstack([coords.coordinates(im.row(i)) for i in range(im.rows)], cols=Z.dim, field=x.field)
    return quotient(Z, Subspace(x.field, Z.dim, B))[0]


def cycles_map(f: ChainMap, n: int) -> Matrix:
    """Restriction of ``f^n`` to ``Z^n(source) -> Z^n(target)``."""
    _, ia = cycles(f.source, n)
    _, ib = cycles(f.target, n)
    sub = Subspace(f.source.field, f.target.obj(n).dim, ib, reduced=True)
    img = ia @ f.comp(n)
    return vstack([sub.coordinates(img.row(i)) for i in range(img.rows)], cols=ib.rows, field=f.source.field)


def interior(x: Complex, guard: int) -> range:
    lo, hi = x.lo + guard, x.hi - guard
    if lo > hi:
        raise WindowTooSmall(f"guard {guard} leaves no interior in [{x.lo},{x.hi}]")
    return range(lo, hi + 1)


# -- homotopy classes -------------------------------------------------------------------

class HomK:
    """Homotopy classes of chain maps ``x -> y`` seen on the guard interior.

    The space is ``R(Z) / R(B)`` where ``Z`` are chain maps on the window,
    ``B`` the null-homotopic ones and ``R`` restriction to the interior degrees.
    """

    def __init__(self, x: Complex, y: Complex, guard: int):
        if x.window != y.window:
            raise WindowTooSmall("complexes live on different windows")
        self.x, self.y, self.guard = x, y, guard
        self.interior = interior(x, guard)
        fld = x.field
        degs = list(x.degrees())
        self.H = {p: hom(x.obj(p), y.obj(p)) for p in degs}
        self.offset = {}
        tot = 0
        for p in degs:
            self.offset[p] = tot
            tot += self.H[p].dim
        self.total = tot
        # chain condition f^p d_Y^p - d_X^p f^{p+1} = 0
        eq_off, eq_tot = {}, 0
        for p in degs:
            eq_off[p] = eq_tot
            eq_tot += x.obj(p).dim * y.obj(p + 1).dim
        rows = []
        for p in degs:
            for b in self.H[p].basis:
                r = fld._raw(1, max(eq_tot, 1))
                v = (b @ y.d(p)).entries()
                for i, val in enumerate(v):
                    if val != 0:
                        r[0, eq_off[p] + i] += val
                if p - 1 in eq_off:
                    v = (x.d(p - 1) @ b).entries()
                    for i, val in enumerate(v):
                        if val != 0:
                            r[0, eq_off[p - 1] + i] -= val
                rows.append(Matrix(fld, r))
        if tot == 0:
            self.Z = fld.zeros(0, 0)
        elif eq_tot == 0:
            self.Z = fld.identity(tot)
        else:
            self.Z = kernel_basis(vstack(rows, field=fld)).basis
        # null-homotopic maps d_X h + h d_Y
        bvecs = []
        for p in degs:
            G = hom(x.obj(p), y.obj(p - 1))
            for h in G.basis:
                comps = {p: h @ y.d(p - 1)}
                if p - 1 >= x.lo:
                    comps[p - 1] = x.d(p - 1) @ h
                bvecs.append(self._vector(comps))
        self.B = vstack(bvecs, cols=tot, field=fld)
        self.icols = [self.offset[p] + i for p in self.interior for i in range(self.H[p].dim)]
        RZ = self.Z.select_cols(self.icols)
        RB = self.B.select_cols(self.icols)
        current = Subspace(fld, len(self.icols), RB)
        self._rb = current
        reps, rreps = [], []
        for i in range(RZ.rows):
            r = RZ.row(i)
            if not current.contains(r):
                reps.append(self.Z.row(i))
                rreps.append(r)
                current = current + Subspace(fld, len(self.icols), r)
        self.reps = reps
        self._solve_basis = vstack(rreps + [self._rb.basis], cols=len(self.icols), field=fld)

    def _vector(self, comps: Dict[int, Matrix]) -> Matrix:
        fld = self.x.field
        v = fld._raw(1, max(self.total, 1))
        for p, m in comps.items():
            if p not in self.H or self.H[p].dim == 0:
                continue
            c = self.H[p].coordinates(m)
            if c is None:
                raise ValueError("component is not a module map")
            for i, val in enumerate(c.entries()):
                v[0, self.offset[p] + i] += val
        out = Matrix(fld, v)
        return out if self.total else fld.zeros(1, 0)

    @property
    def dim(self) -> int:
        return len(self.reps)

    def chain_map(self, vec: Matrix) -> ChainMap:
        e = vec.entries()
        comps = {}
        for p, H in self.H.items():
            if H.dim:
                comps[p] = H.element(e[self.offset[p]:self.offset[p] + H.dim])
        return ChainMap(self.x, self.y, comps)

    @property
    def basis(self) -> List[ChainMap]:
        return [self.chain_map(r) for r in self.reps]

    def coordinates(self, f: ChainMap) -> List:
        """Coordinates of the class of ``f`` in terms of :attr:`basis`."""
        vec = self._vector({p: f.comp(p) for p in self.interior})
        r = vec.select_cols(self.icols)
        sol = solve_left(self._solve_basis, r)
        if sol is None:
            raise ValueError("not a chain map on the interior")
        return sol.entries()[: self.dim]

    def is_zero_class(self, f: ChainMap) -> bool:
        return all(c == 0 for c in self.coordinates(f))


def homotopy_hom_space(x: Complex, y: Complex, guard: int = DEFAULT_GUARD) -> HomK:
    key = ("homK", id(y), guard)
    hit = x._cache.get(key)
    if hit is not None and hit[0] is y:
        return hit[1]
    hk = HomK(x, y, guard)
    x._cache[key] = (y, hk)
    return hk


def hom_k_dim(x: Complex, y: Complex, guard: int = DEFAULT_GUARD) -> int:
    return homotopy_hom_space(x, y, guard).dim


# -- total Hom -------------------------------------------------------------------------------

def _ground(fld):
    cache = _ground.__dict__.setdefault("cache", {})
    if fld not in cache:
        cache[fld] = ground_algebra(fld)
    return cache[fld]


class TotalHom:
    """Total Hom complex ``Hom^n = prod_p Hom(X^p, Y^{p+n})`` of vector spaces,
    with ``D(f) = f d_Y - (-1)^n d_X f``."""

    def __init__(self, x: Complex, y: Complex):
        if x.window != y.window:
            raise WindowTooSmall("complexes live on different windows")
        self.x, self.y = x, y
        fld = x.field
        span = x.hi - x.lo
        self.degrees = range(-span - 1, span + 2)
        self.blocks: Dict[int, List[Tuple[int, object, int]]] = {}
        for n in self.degrees:
            blist, off = [], 0
            for p in x.degrees():
                if x.lo <= p + n <= x.hi:
                    H = hom(x.obj(p), y.obj(p + n))
                    if H.dim:
                        blist.append((p, H, off))
                        off += H.dim
            self.blocks[n] = blist
        self.dims = {n: sum(H.dim for _, H, _ in self.blocks[n]) for n in self.degrees}
        k = _ground(fld)
        objs = {n: Module(k, [fld.identity(self.dims[n])], dim=self.dims[n]) for n in self.degrees}
        diffs = {}
        for n in self.degrees:
            if n + 1 in self.blocks:
                diffs[n] = self._differential(n)
        self.complex = Complex(k, self.degrees[0], self.degrees[-1], objs, diffs, "Hom(X,Y)")

    def _coords(self, n: int, comps: Dict[int, Matrix]) -> Matrix:
        fld = self.x.field
        v = fld._raw(1, max(self.dims[n], 1))
        for p, H, off in self.blocks[n]:
            if p in comps:
                c = H.coordinates(comps[p])
                for i, val in enumerate(c.entries()):
                    v[0, off + i] += val
        return Matrix(fld, v) if self.dims[n] else fld.zeros(1, 0)

    def _differential(self, n: int) -> Matrix:
        x, y = self.x, self.y
        fld = x.field
        sign = -1 if n % 2 else 1
        rows = []
        for p, H, off in self.blocks[n]:
            for f in H.basis:
                comps = {}
                if x.lo <= p + n + 1 <= x.hi:
                    comps[p] = f @ y.d(p + n)
                if p - 1 >= x.lo:
                    t = (x.d(p - 1) @ f).scale(-sign)
                    comps[p - 1] = comps[p - 1] + t if p - 1 in comps else t
                rows.append(self._coords(n + 1, comps))
        return vstack(rows, cols=self.dims[n + 1], field=fld)

    def guarded_cohomology_dim(self, n: int, guard: int) -> int:
        """``dim R(Z^n) - dim R(B^n)`` with ``R`` keeping the components ``p`` in the interior."""
        fld = self.x.field
        I = set(interior(self.x, guard))
        cols = [off + i for p, H, off in self.blocks[n] if p in I for i in range(H.dim)]
        Z = kernel_basis(self.complex.d(n)).basis
        B = self.complex.d(n - 1)
        rz = Subspace(fld, len(cols), Z.select_cols(cols)).dim if cols else 0
        rb = Subspace(fld, len(cols), B.select_cols(cols)).dim if cols and B.rows else 0
        return rz - rb

    def cohomology_dim(self, n: int) -> int:
        return cohomology(self.complex, n).dim


def total_hom_complex(x: Complex, y: Complex) -> TotalHom:
    return TotalHom(x, y)


# -- resolutions ---------------------------------------------------------------------------

def projective_resolution_complex(x: Complex):
    """Degreewise projective ``P`` with a quasi-isomorphism ``q: P -> x``.

    Built from the top down: ``P^n`` covers the module of pairs ``(y, c)`` in
    ``P^{n+1} + X^n`` with ``y d_P = 0`` and ``y q^{n+1} = c d_X``.
    """
    key = "presolution"
    if key in x._cache:
        return x._cache[key]
    alg = x.algebra
    fld = x.field
    supp = x.support()
    objs, diffs, qs = {}, {}, {}
    if supp:
        top = supp[-1]
        prevP = zero_module(alg)
        prev_d = fld.zeros(0, 0)
        prev_q = fld.zeros(0, x.obj(top + 1).dim)
        prev2_dim = 0
        for n in range(top, x.lo - 1, -1):
            C = x.obj(n)
            S, _, (pa, pc) = direct_sum([prevP, C], alg)
            # S -> P^{n+2} + X^{n+1}
            tgt1, tgt2 = prev2_dim, x.obj(n + 1).dim
            top_blk = hstack([prev_d, prev_q], rows=prevP.dim, field=fld)
            bot_blk = hstack([fld.zeros(C.dim, tgt1), -x.d(n)], rows=C.dim, field=fld)
            phi = vstack([top_blk, bot_blk], cols=tgt1 + tgt2, field=fld)
            Z, inc = submodule(S, kernel_basis(phi).basis)
            P, epi = projective_cover(Z)
            full = epi @ inc
            objs[n] = P
            if P.dim:
                diffs[n] = full @ pa
                qs[n] = full @ pc
            prev2_dim = prevP.dim
            prev_d = diffs.get(n, fld.zeros(P.dim, prevP.dim))
            prevP = P
            prev_q = qs.get(n, fld.zeros(P.dim, C.dim))
    Pc = Complex(alg, x.lo, x.hi, objs, diffs, f"p{x.name}")
    q = ChainMap(Pc, x, qs)
    x._cache[key] = (Pc, q)
    return Pc, q


def injective_resolution_complex(x: Complex):
    """Degreewise injective ``I`` with a quasi-isomorphism ``x -> I`` (by duality)."""
    key = "iresolution"
    if key in x._cache:
        return x._cache[key]
    Dx = dual_complex(x)
    Q, q = projective_resolution_complex(Dx)
    I = dual_complex(Q)
    I.name = f"i{x.name}"
    j = ChainMap(x, I, {n: q.comp(-n).T for n in x.degrees() if q.comp(-n).rows and q.comp(-n).cols})
    x._cache[key] = (I, j)
    return I, j


def injective_resolution_of_module(m: Module, window=DEFAULT_WINDOW) -> Complex:
    """``iM`` on the window, remembering ``M`` in degree 0 as its bounded model."""
    c = concentrated(m, 0, window)
    I, j = injective_resolution_complex(c)
    I.name = f"i{m.name}" if m.name else "iM"
    I.model = (c, j)
    return I


def projective_resolution_of_module(m: Module, window=DEFAULT_WINDOW) -> Complex:
    c = concentrated(m, 0, window)
    P, q = projective_resolution_complex(c)
    P.name = f"p{m.name}" if m.name else "pM"
    return P


def injective_model(c: Complex) -> Complex:
    """``iC`` for a bounded complex ``C`` on the window, with ``C`` recorded as its model."""
    I, j = injective_resolution_complex(c)
    I.model = (c, j)
    return I


# -- compactness and the Nakayama translate ---------------------------------------------------------

@dataclass
class CompactWitness:
    complex: Complex
    guard: int
    bounded_below: bool
    finitely_generated: bool
    top_cohomology: Optional[int]
    vanishes_above: bool

    @property
    def ok(self) -> bool:
        return self.bounded_below and self.finitely_generated and self.vanishes_above


def compact_witness(x: Complex, guard: int = DEFAULT_GUARD) -> CompactWitness:
    I = interior(x, guard)
    below = all(x.obj(n).dim == 0 for n in range(x.lo, I[0]))
    nz = [n for n in I if cohomology(x, n).dim]
    top = nz[-1] if nz else None
    # everything is finite-dimensional; vanishing above is read off the interior
    above = top is None or top < I[-1]
    return CompactWitness(x, guard, below, True, top, above)


def bounded_model(x: Complex, guard: int = DEFAULT_GUARD):
    """A bounded complex ``C`` and a quasi-isomorphism ``C -> x`` (on the interior)."""
    if x.model is not None:
        return x.model
    w = compact_witness(x, guard)
    if not w.ok:
        raise WindowTooSmall("complex is not of compact type on this window")
    b = w.top_cohomology if w.top_cohomology is not None else x.lo
    objs = {n: m for n, m in x.objects.items() if n < b}
    Zb, inc = cycles(x, b)
    objs[b] = Zb
    diffs = {n: d for n, d in x.diffs.items() if n < b - 1}
    comps = {n: x.obj(n).identity() for n in objs if n < b}
    if b - 1 in x.objects and Zb.dim:
        sub = Subspace(x.field, x.obj(b).dim, inc, reduced=True)
        d = x.d(b - 1)
        diffs[b - 1] = vstack([sub.coordinates(d.row(i)) for i in range(d.rows)], cols=Zb.dim, field=x.field)
    comps[b] = inc
    C = Complex(x.algebra, x.lo, x.hi, objs, diffs, f"tau{x.name}")
    x.model = (C, ChainMap(C, x, comps))
    return x.model


@dataclass
class Translate:
    """``t x = p x (x) D(A)`` with the data the pairing needs."""

    source: Complex
    p: Complex           # projective resolution of the bounded model
    q: ChainMap          # p -> x
    t: Complex           # nu(p)


def nakayama_complex(p: Complex) -> Complex:
    objs = {n: nakayama(m) for n, m in p.objects.items()}
    diffs = {n: nakayama_hom(d, objs[n], objs[n + 1]) for n, d in p.diffs.items()}
    return Complex(p.algebra, p.lo, p.hi, objs, diffs, f"nu{p.name}")


def nakayama_translate(x: Complex, guard: int = DEFAULT_GUARD) -> Translate:
    key = ("translate", guard)
    if key in x._cache:
        return x._cache[key]
    C, j = bounded_model(x, guard)
    P, q0 = projective_resolution_complex(C)
    q = q0.then(j)
    q.source, q.target = P, x
    t = nakayama_complex(P)
    t.name = f"t{x.name}"
    tr = Translate(x, P, q, t)
    x._cache[key] = tr
    return tr


def hom_from_dual(y: Complex) -> Complex:
    """``i Hom_A(D A, y)``: degreewise Hom from the dual bimodule, then an injective resolution."""
    B = dual_bimodule_of(y.algebra)
    objs = {n: hom_from_bimodule(B, m) for n, m in y.objects.items()}
    diffs = {}
    for n, d in y.diffs.items():
        Hs, Ht = objs[n].hom_data, objs[n + 1].hom_data
        rows = [Ht.coordinates(phi @ d) for phi in Hs.basis]
        diffs[n] = vstack(rows, cols=Ht.dim, field=y.field)
    h = Complex(y.algebra, y.lo, y.hi, objs, diffs, f"Hom(DA,{y.name})")
    I, _ = injective_resolution_complex(h)
    return I


# -- the trace pairing ------------------------------------------------------------------------------

def trace_of_chain_map(tr: Translate, phi: ChainMap):
    """``sum_p (-1)^p Tr_{P^p}(phi^p)`` for ``phi: p x -> t x``."""
    fld = tr.p.field
    total = fld.scalar(0)
    for n, P in tr.p.objects.items():
        c = phi.comps.get(n)
        if c is None:
            continue
        v = nakayama_trace(P, tr.t.obj(n), c)
        total += v if n % 2 == 0 else -v
    return total


def pairing_value(tr: Translate, f: ChainMap, g: ChainMap):
    """``<f, g>`` for ``f: x -> y``, ``g: y -> t x``: the trace of ``q f g``."""
    return trace_of_chain_map(tr, tr.q.then(f).then(g))


@dataclass
class SerrePairing:
    matrix: Matrix
    hom_xy: HomK
    hom_ytx: HomK
    translate: Translate

    @property
    def dims(self) -> Tuple[int, int]:
        return self.hom_xy.dim, self.hom_ytx.dim

    @property
    def nondegenerate(self) -> bool:
        a, b = self.dims
        return a == b and (a == 0 or self.matrix.is_invertible())


def serre_pairing(x: Complex, y: Complex, guard: int = DEFAULT_GUARD) -> SerrePairing:
    tr = nakayama_translate(x, guard)
    Hxy = homotopy_hom_space(x, y, guard)
    Hyt = homotopy_hom_space(y, tr.t, guard)
    fld = x.field
    vals = [pairing_value(tr, f, g) for f in Hxy.basis for g in Hyt.basis]
    mat = fld.from_entries(Hxy.dim, Hyt.dim, vals) if vals else fld.zeros(Hxy.dim, Hyt.dim)
    return SerrePairing(mat, Hxy, Hyt, tr)


# -- total tensor and the totalized sigma --------------------------------------------------------------

class BimoduleComplex:
    """Complex of bimodules: ``objects[n]`` a :class:`Bimodule`, ``diffs[n]`` bimodule maps."""

    def __init__(self, objects: Dict[int, object], diffs: Optional[Dict[int, Matrix]] = None):
        self.objects = dict(objects)
        self.diffs = dict(diffs or {})

    def d(self, n, fld):
        m = self.diffs.get(n)
        if m is None:
            a = self.objects.get(n)
            b = self.objects.get(n + 1)
            return fld.zeros(a.dim if a else 0, b.dim if b else 0)
        return m


def total_tensor_complex(x: Complex, y: BimoduleComplex, window=None) -> Complex:
    """``Tot^n = sum_{p+q=n} X^p (x)_A Y^q`` with ``d(a (x) b) = da (x) b + (-1)^p a (x) db``."""
    lo, hi = window or x.window
    fld = x.field
    right = next(iter(y.objects.values())).right
    blocks = {}
    for n in range(lo, hi + 1):
        parts = []
        for p, M in sorted(x.objects.items()):
            q = n - p
            if q in y.objects:
                parts.append((p, q, tensor_over_algebra(M, y.objects[q])))
        blocks[n] = parts
    objs, diffs = {}, {}
    for n in range(lo, hi + 1):
        mods = [t for _, _, t in blocks[n]]
        if mods:
            objs[n] = direct_sum(mods, right)[0]
    for n in range(lo, hi):
        src, tgt = blocks[n], blocks[n + 1]
        if not src or not tgt:
            continue
        tindex = {(p, q): i for i, (p, q, _) in enumerate(tgt)}
        toff = [sum(t.dim for _, _, t in tgt[:i]) for i in range(len(tgt))]
        width = sum(t.dim for _, _, t in tgt)
        rows = []
        for p, q, T in src:
            blk = [fld.zeros(T.dim, t.dim) for _, _, t in tgt]
            if (p + 1, q) in tindex:
                i = tindex[(p + 1, q)]
                Ib = fld.identity(y.objects[q].dim)
                blk[i] = blk[i] + tensor_hom2(x.d(p), Ib, T, tgt[i][2])
            if (p, q + 1) in tindex:
                i = tindex[(p, q + 1)]
                Im = fld.identity(x.obj(p).dim)
                m = tensor_hom2(Im, y.d(q, fld), T, tgt[i][2])
                blk[i] = blk[i] + (m if p % 2 == 0 else -m)
            rows.append(hstack(blk, rows=T.dim, field=fld) if blk else fld.zeros(T.dim, 0))
        diffs[n] = vstack(rows, cols=width, field=fld)
    return Complex(right, lo, hi, objs, diffs, "Tot")


def bimodule_in_degree(b, degree: int = 0) -> BimoduleComplex:
    return BimoduleComplex({degree: b})


@dataclass
class TotalizedSigma:
    degreewise_bijective: bool
    chain_map: bool
    degrees: List[int]


def totalized_sigma(x: Complex, y: Complex) -> TotalizedSigma:
    """``sigma: Y (x) Hom(X, A) -> Hom(X, Y)`` assembled over all degrees.

    ``Hom(X, A)`` is the complex ``V^q = Hom(X^{-q}, A)`` with differential
    ``phi -> -(-1)^q d_X phi``; ``sigma(y (x) phi)(x) = y phi(x)``.  Checks that
    ``sigma`` is bijective in every degree and commutes with the differentials.
    """
    fld = x.field
    bims, hs = {}, {}
    for p, P in x.objects.items():
        bims[-p], hs[-p] = hom_left_bimodule(P)
    vdiffs = {}
    for q in bims:
        if q + 1 in bims:
            # Hom(X^{-q}, A) -> Hom(X^{-q-1}, A)
            d = x.d(-q - 1)
            sign = 1 if q % 2 else -1
            rows = [hs[q + 1].coordinates((d @ phi).scale(sign)) for phi in hs[q].basis]
            vdiffs[q] = vstack(rows, cols=hs[q + 1].dim, field=fld)
    V = BimoduleComplex(bims, vdiffs)
    TH = TotalHom(x, y)
    span = x.hi - x.lo
    lo, hi = -span - 1, span + 1
    # tensor side, built by hand to keep block bookkeeping
    tblocks = {}
    for n in range(lo, hi + 1):
        parts = []
        for a, Ya in sorted(y.objects.items()):
            q = n - a
            if q in bims:
                parts.append((a, q, tensor_over_algebra(Ya, bims[q])))
        tblocks[n] = parts
    ok_bij, ok_chain = True, True
    sig = {}
    for n in range(lo, hi + 1):
        rows = []
        for a, q, T in tblocks[n]:
            S = T.tensor_data.section
            basis = hs[q].basis
            for r in range(S.rows):
                idx = next(j for j, v in enumerate(S.row(r).entries()) if v != 0)
                i, j = divmod(idx, bims[q].dim)
                Ya = y.obj(a)
                W = vstack([Ya.action[k].row(i) for k in range(x.algebra.dim)], cols=Ya.dim, field=fld)
                comps = {-q: basis[j] @ W}
                rows.append(TH._coords(n, comps) if n in TH.dims else fld.zeros(1, 0))
        width = TH.dims.get(n, 0)
        sig[n] = vstack(rows, cols=width, field=fld)
        if not (sig[n].rows == width and (width == 0 or sig[n].rank() == width)):
            ok_bij = False
    # differential on the tensor side, in the same block order
    for n in range(lo, hi):
        src, tgt = tblocks[n], tblocks.get(n + 1, [])
        if not src:
            continue
        tindex = {(a, q): i for i, (a, q, _) in enumerate(tgt)}
        rows = []
        for a, q, T in src:
            blk = [fld.zeros(T.dim, t.dim) for _, _, t in tgt]
            if (a + 1, q) in tindex:
                i = tindex[(a + 1, q)]
                blk[i] = blk[i] + tensor_hom2(y.d(a), fld.identity(bims[q].dim), T, tgt[i][2])
            if (a, q + 1) in tindex:
                i = tindex[(a, q + 1)]
                m = tensor_hom2(fld.identity(y.obj(a).dim), V.d(q, fld), T, tgt[i][2])
                blk[i] = blk[i] + (m if a % 2 == 0 else -m)
            rows.append(hstack(blk, rows=T.dim, field=fld) if blk else fld.zeros(T.dim, 0))
        width = sum(t.dim for _, _, t in tgt)
        dT = vstack(rows, cols=width, field=fld)
        dH = TH.complex.d(n) if n + 1 in TH.dims else fld.zeros(sig[n].cols, 0)
        if sig[n].rows and dH.cols and not (dT @ sig[n + 1] == sig[n] @ dH):
            ok_chain = False
    return TotalizedSigma(ok_bij, ok_chain, list(range(lo, hi + 1)))
