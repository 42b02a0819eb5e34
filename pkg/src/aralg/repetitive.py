"""Truncated repetitive algebras and the comparison of AR data computed over them.

Indices run over a finite interval ``[a, b]``.  The truncation is the algebra of
matrices with ``A`` in the diagonal slots ``(i, i)`` and ``D(A)`` in the slots
``(i, i+1)``; products use the bimodule actions on ``D(A)`` and
``D(A) * D(A) = 0``.  A right module ``X`` splits as ``X_i = X e_i`` and the
slot ``(i, i+1)`` maps ``X_i (x) D(A) -> X_{i+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Algebra, from_structure_constants
from .ar import ar_sequence, ar_triangle_of_module, is_projective
from .complexes import (ChainMap, Complex, NotSelfInjective, WindowTooSmall, cone, concentrated,
                        homotopy_hom_space, injective_resolution_complex, interior, projective_resolution_complex)
from .linalg import Matrix, Subspace, block_diag, hstack, kernel_basis, linear_combination, solve_left, vstack
from .modules import (Module, ProjectiveInput, dual_bimodule_of, hom, injective_module, is_isomorphic,
                      projective_module, simple_module, zero_module)


class IndexOutOfWindow(ValueError):
    pass


# -- the truncation ---------------------------------------------------------------------------

@dataclass
class RepetitiveWindow:
    base: Algebra
    a: int
    b: int
    algebra: Algebra

    @property
    def indices(self) -> range:
        return range(self.a, self.b + 1)

    def diag_offset(self, i: int) -> int:
        return (i - self.a) * self.base.dim

    def strip_offset(self, i: int) -> int:
        """Offset of the ``D(A)`` slot ``(i, i+1)``."""
        n = self.b - self.a + 1
        return n * self.base.dim + (i - self.a) * self.base.dim

    def vertex(self, v: int, i: int) -> int:
        return (i - self.a) * self.base.num_vertices + v

    def index_unit(self, i: int) -> Matrix:
        """The idempotent ``e_i`` (identity of the copy of ``A`` at index ``i``)."""
        f = self.base.field
        vec = f.zeros(1, self.algebra.dim)
        u = self.base.unit
        entries = vec.entries()
        off = self.diag_offset(i)
        for k in range(self.base.dim):
            entries[off + k] = u[0, k]
        return f.from_entries(1, self.algebra.dim, entries)

    def diag_element(self, i: int, x: Matrix) -> Matrix:
        f = self.base.field
        entries = [f.scalar(0)] * self.algebra.dim
        off = self.diag_offset(i)
        for k in range(self.base.dim):
            entries[off + k] = x[0, k]
        return f.from_entries(1, self.algebra.dim, entries)

    def strip_basis(self, i: int, k: int) -> int:
        return self.strip_offset(i) + k

    def check_index(self, i: int):
        if not self.a <= i <= self.b:
            raise IndexOutOfWindow(f"index {i} outside [{self.a},{self.b}]")


def build_truncation(base: Algebra, a: int, b: int) -> RepetitiveWindow:
    """The truncation over indices ``a..b``: ``(b-a+1) dim A + (b-a) dim A`` dimensional."""
    if b < a:
        raise ValueError("empty index interval")
    f = base.field
    n, d = b - a + 1, base.dim
    total = n * d + (n - 1) * d
    DA = dual_bimodule_of(base)
    c = base.structure_constants()
    zero = f.scalar(0)
    C = [[[zero] * total for _ in range(total)] for _ in range(total)]

    def diag(i, k):
        return (i - a) * d + k

    def strip(i, k):
        return n * d + (i - a) * d + k

    for i in range(a, b + 1):
        for p in range(d):
            for q in range(d):
                for r, x in enumerate(c[p][q]):
                    if x != 0:
                        C[diag(i, p)][diag(i, q)][diag(i, r)] = x
        if i < b:
            for p in range(d):
                La = DA.left_action[p]      # y -> b_p * y
                for q in range(d):
                    for r in range(d):
                        x = La[q, r]
                        if x != 0:
                            C[diag(i, p)][strip(i, q)][strip(i, r)] = x
            for q in range(d):
                for p in range(d):
                    Ra = DA.right_action[p]     # y -> y * b_p
                    for r in range(d):
                        x = Ra[q, r]
                        if x != 0:
                            C[strip(i, q)][diag(i + 1, p)][strip(i, r)] = x
    labels = [f"{lab}@{i}" for i in range(a, b + 1) for lab in base.labels]
    labels += [f"D{lab}@{i}" for i in range(a, b) for lab in base.labels]
    unit = [zero] * total
    for i in range(a, b + 1):
        for k in range(d):
            unit[diag(i, k)] = base.unit[0, k]
    idem = []
    vertices = []
    for i in range(a, b + 1):
        for v, e in enumerate(base.idempotents):
            vec = [zero] * total
            for k in range(d):
                vec[diag(i, k)] = e[0, k]
            idem.append(vec)
            vertices.append(f"{base.vertices[v]}@{i}")
    rad_rows = []
    rb = base.radical.basis
    for i in range(a, b + 1):
        for s in range(rb.rows):
            vec = [zero] * total
            for k in range(d):
                vec[diag(i, k)] = rb[s, k]
            rad_rows.append(vec)
    for i in range(a, b):
        for k in range(d):
            vec = [zero] * total
            vec[strip(i, k)] = f.scalar(1)
            rad_rows.append(vec)
    alg = from_structure_constants(f, labels, C, unit, idempotents=idem, radical_rows=rad_rows,
                                   vertices=vertices, name=f"{base.name}^[{a},{b}]")
    return RepetitiveWindow(base, a, b, alg)


# -- modules over the truncation as indexed families ---------------------------------------------------

@dataclass
class RepModule:
    """Family of ``A``-modules ``comps[i]`` with maps ``beta[i][k]: comps[i] -> comps[i+1]``,
    ``beta[i][k]`` being the action of the ``k``-th basis element of ``D(A)`` in slot ``(i, i+1)``."""

    window: RepetitiveWindow
    comps: Dict[int, Module]
    beta: Dict[int, List[Matrix]] = field(default_factory=dict)

    def comp(self, i: int) -> Module:
        m = self.comps.get(i)
        return m if m is not None else zero_module(self.window.base)

    @property
    def dim(self) -> int:
        return sum(self.comp(i).dim for i in self.window.indices)

    def support(self) -> List[int]:
        return [i for i in self.window.indices if self.comp(i).dim]

    def to_module(self, name: str = "") -> Module:
        w = self.window
        f = w.base.field
        dims = [self.comp(i).dim for i in w.indices]
        offs = {i: sum(dims[: i - w.a]) for i in w.indices}
        total = sum(dims)
        d = w.base.dim
        acts = []
        for i in w.indices:
            m = self.comp(i)
            for p in range(d):
                M = f._raw(total, total)
                if m.dim:
                    blk = m.action[p]
                    for r in range(m.dim):
                        for s in range(m.dim):
                            x = blk[r, s]
                            if x != 0:
                                M[offs[i] + r, offs[i] + s] = x
                acts.append(Matrix(f, M))
        for i in range(w.a, w.b):
            src, tgt = self.comp(i), self.comp(i + 1)
            for k in range(d):
                M = f._raw(total, total)
                if src.dim and tgt.dim and i in self.beta:
                    blk = self.beta[i][k]
                    for r in range(src.dim):
                        for s in range(tgt.dim):
                            x = blk[r, s]
                            if x != 0:
                                M[offs[i] + r, offs[i + 1] + s] = x
                acts.append(Matrix(f, M))
        return Module(w.algebra, acts, name, dim=total)

    @staticmethod
    def from_module(x: Module, w: RepetitiveWindow) -> "RepModule":
        f = x.field
        blocks = {}
        for i in w.indices:
            blocks[i] = Subspace(f, x.dim, x.act(w.index_unit(i))).basis
        T = vstack([blocks[i] for i in w.indices], cols=x.dim, field=f)
        Tinv = T.inverse()
        offs, o = {}, 0
        for i in w.indices:
            offs[i] = o
            o += blocks[i].rows
        comps, beta = {}, {}
        d = w.base.dim
        for i in w.indices:
            n_i = blocks[i].rows
            if n_i == 0:
                continue
            acts = []
            for p in range(d):
                g = T @ x.act(w.algebra.basis_vector(w.diag_offset(i) + p)) @ Tinv
                acts.append(g.block(offs[i], offs[i] + n_i, offs[i], offs[i] + n_i))
            comps[i] = Module(w.base, acts, dim=n_i)
        for i in range(w.a, w.b):
            n_i, n_j = blocks[i].rows, blocks[i + 1].rows
            if n_i and n_j:
                mats = []
                for k in range(d):
                    g = T @ x.act(w.algebra.basis_vector(w.strip_basis(i, k))) @ Tinv
                    mats.append(g.block(offs[i], offs[i] + n_i, offs[i + 1], offs[i + 1] + n_j))
                beta[i] = mats
        return RepModule(w, comps, beta)

    def index_dims(self) -> Dict[int, Tuple[int, ...]]:
        return {i: self.comp(i).dim_vector() for i in self.support()}


def happel_embed(m: Module, w: RepetitiveWindow) -> RepModule:
    """``m`` placed at index 0 with all connecting maps zero."""
    w.check_index(0)
    return RepModule(w, {0: m} if m.dim else {}, {})


def index_dims(x: Module, w: RepetitiveWindow) -> Dict[int, Tuple[int, ...]]:
    """Dimension vectors of the components ``x e_i``."""
    out = {}
    nv = w.base.num_vertices
    for i in w.indices:
        dv = tuple(x.act(w.algebra.idempotents[w.vertex(v, i)]).rank() for v in range(nv))
        if any(dv):
            out[i] = dv
    return out


# -- restriction Hom(A, -) -------------------------------------------------------------------------------------

def _restriction_space(x: Module, w: RepetitiveWindow) -> Matrix:
    """Basis of ``{y in x e_0 : y * D(A)_(0,1) = 0}``."""
    f = x.field
    w.check_index(0)
    E0 = x.act(w.index_unit(0))
    eqs = [f.identity(x.dim) - E0]
    if w.b > 0:
        for k in range(w.base.dim):
            eqs.append(x.act(w.algebra.basis_vector(w.strip_basis(0, k))))
    big = hstack(eqs, rows=x.dim, field=f)
    return kernel_basis(big).basis


def restrict_along_lambda(x: Module, w: RepetitiveWindow) -> Tuple[Module, Matrix]:
    """``Hom(A, x)`` for ``A`` viewed over the truncation through the index-0 slot.

    Returns the ``A``-module and its inclusion into ``x``.
    """
    f = x.field
    V = _restriction_space(x, w)
    sp = Subspace(f, x.dim, V, reduced=True)
    acts = []
    for p in range(w.base.dim):
        g = V @ x.act(w.algebra.basis_vector(w.diag_offset(0) + p))
        acts.append(vstack([sp.coordinates(g.row(r)) for r in range(V.rows)], cols=V.rows, field=f)
                    if V.rows else f.zeros(0, 0))
    return Module(w.base, acts, f"Res({x.name})" if x.name else "", dim=V.rows), V


def restrict_hom(F: Matrix, src: Tuple[Module, Matrix], tgt: Tuple[Module, Matrix]) -> Matrix:
    f = F.field
    (ms, Vs), (mt, Vt) = src, tgt
    sp = Subspace(f, Vt.cols, Vt, reduced=True)
    img = Vs @ F
    return vstack([sp.coordinates(img.row(r)) for r in range(img.rows)], cols=mt.dim, field=f) \
        if img.rows else f.zeros(0, mt.dim)


def restrict_complex(c: Complex, w: RepetitiveWindow):
    """Degreewise restriction; returns the complex over ``A`` and the per-degree data."""
    data = {n: restrict_along_lambda(c.obj(n), w) for n in range(c.lo, c.hi + 1)}
    objs = {n: d[0] for n, d in data.items() if d[0].dim}
    diffs = {}
    for n in range(c.lo, c.hi):
        if data[n][0].dim and data[n + 1][0].dim:
            diffs[n] = restrict_hom(c.d(n), data[n], data[n + 1])
    r = Complex(w.base, c.lo, c.hi, objs, diffs, f"Res({c.name})")
    return r, data


def restrict_chain_map(g: ChainMap, src_data, tgt_data, src: Complex, tgt: Complex) -> ChainMap:
    comps = {}
    for n in range(src.lo, src.hi + 1):
        if src_data[n][0].dim and tgt_data[n][0].dim:
            comps[n] = restrict_hom(g.comp(n), src_data[n], tgt_data[n])
    return ChainMap(src, tgt, comps)


# -- complete resolutions ---------------------------------------------------------------------------

def _selfinjective_vertices(a: Algebra) -> set:
    good = set()
    for v in range(a.num_vertices):
        P = projective_module(a, v)
        if any(is_isomorphic(P, injective_module(a, u)) for u in range(a.num_vertices)
               if injective_module(a, u).dim == P.dim):
            good.add(v)
    return good


def _good_vertices(a: Algebra) -> set:
    cache = a.__dict__.setdefault("_module_cache", {})
    if "selfinj" not in cache:
        cache["selfinj"] = _selfinjective_vertices(a)
    return cache["selfinj"]


@dataclass
class CompleteResolution:
    complex: Complex
    p: Complex
    q: ChainMap          # p -> m in degree 0
    i: Complex
    j: ChainMap          # m -> i in degree 0
    module: Module


def complete_resolution(m: Module, window=(-4, 4)) -> CompleteResolution:
    """``cone(pM -> iM)`` for the composite ``P^0 -> M -> I^0``."""
    lo, hi = window
    alg = m.algebra
    c = concentrated(m, 0, (lo - 1, hi + 1))
    P, q = projective_resolution_complex(c)
    I, j = injective_resolution_complex(c)
    good = _good_vertices(alg)
    for n in range(lo, hi + 2):
        for v in (P.obj(n).proj_vertices or ()):
            if v not in good:
                raise NotSelfInjective(f"projective at vertex {alg.vertices[v]} in degree {n} is not injective")
        for v in (I.obj(n).inj_vertices or ()):
            if v not in good:
                raise NotSelfInjective(f"injective at vertex {alg.vertices[v]} in degree {n} is not projective")
    f = alg.field
    can = {0: q.comp(0) @ j.comp(0)} if P.obj(0).dim and I.obj(0).dim else {}
    P = P.with_window(lo - 1, hi + 1)
    I = I.with_window(lo - 1, hi + 1)
    C, _, _ = cone(ChainMap(P, I, can))
    C = C.with_window(lo, hi)
    C.name = f"cr({m.name})" if m.name else "cr"
    return CompleteResolution(C, P, q, I, j, m)


def _solve_hom(src: Module, tgt: Module, left: Matrix, right: Matrix, target: Matrix) -> Matrix:
    """Some ``X`` in ``Hom(src, tgt)`` with ``left @ X @ right == target``."""
    H = hom(src, tgt)
    f = src.field
    if H.dim == 0:
        if target.is_zero():
            return f.zeros(src.dim, tgt.dim)
        raise ArithmeticError("no solution")
    rows = vstack([(left @ B @ right).flatten() for B in H.basis], field=f)
    c = solve_left(rows, target.flatten())
    if c is None:
        raise ArithmeticError("no solution")
    return linear_combination(c.entries(), H.basis, src.dim, tgt.dim, f)


def lift_to_complete(fm: Matrix, s: CompleteResolution, t: CompleteResolution) -> ChainMap:
    """Chain map ``cr(M) -> cr(N)`` over ``fm: M -> N`` assembled from lifts to both resolutions."""
    f = fm.field
    Ps, Pt, Is, It = s.p, t.p, s.i, t.i
    lo, hi = s.complex.lo, s.complex.hi
    pm: Dict[int, Matrix] = {}
    im: Dict[int, Matrix] = {}
    if Ps.obj(0).dim:
        pm[0] = _solve_hom(Ps.obj(0), Pt.obj(0), f.identity(Ps.obj(0).dim), t.q.comp(0) if Pt.obj(0).dim
                           else f.zeros(0, fm.cols), s.q.comp(0) @ fm)
    for n in range(-1, lo - 2, -1):
        A, B = Ps.obj(n), Pt.obj(n)
        if not A.dim:
            break
        prev = pm.get(n + 1, f.zeros(Ps.obj(n + 1).dim, Pt.obj(n + 1).dim))
        pm[n] = _solve_hom(A, B, f.identity(A.dim), Pt.d(n), Ps.d(n) @ prev)
    if It.obj(0).dim and Is.obj(0).dim:
        im[0] = _solve_hom(Is.obj(0), It.obj(0), s.j.comp(0), f.identity(It.obj(0).dim), fm @ t.j.comp(0))
    for n in range(0, hi + 1):
        A, B = Is.obj(n + 1), It.obj(n + 1)
        if not A.dim:
            break
        prev = im.get(n, f.zeros(Is.obj(n).dim, It.obj(n).dim))
        im[n + 1] = _solve_hom(A, B, Is.d(n), f.identity(B.dim), prev @ It.d(n))
    comps = {}
    for n in range(lo, hi + 1):
        a = pm.get(n + 1, f.zeros(Ps.obj(n + 1).dim, Pt.obj(n + 1).dim))
        b = im.get(n, f.zeros(Is.obj(n).dim, It.obj(n).dim))
        if a.rows + b.rows and a.cols + b.cols:
            comps[n] = block_diag([a, b], field=f)
    return ChainMap(s.complex, t.complex, comps)


# -- comparisons in the homotopy category --------------------------------------------------------------

def _combo(basis: Sequence[ChainMap], coeffs) -> Optional[ChainMap]:
    out = None
    for c, b in zip(coeffs, basis):
        if c == 0:
            continue
        t = b.scale(c)
        out = t if out is None else out + t
    return out


def _zero_map(x: Complex, y: Complex) -> ChainMap:
    return ChainMap(x, y, {})


def solve_factorization_k(target: ChainMap, through: ChainMap, source: Complex, guard: int) -> Optional[ChainMap]:
    """Some ``h: source -> through.source`` with ``h . through`` homotopic to ``target`` on the interior."""
    H = homotopy_hom_space(source, through.source, guard)
    T = homotopy_hom_space(source, through.target, guard)
    fld = source.field
    want = T.coordinates(target)
    if H.dim == 0:
        return _zero_map(source, through.source) if all(c == 0 for c in want) else None
    rows = fld.from_entries(H.dim, T.dim, [x for b in H.basis for x in T.coordinates(b.then(through))]) \
        if T.dim else fld.zeros(H.dim, 0)
    if T.dim == 0:
        return _zero_map(source, through.source)
    c = solve_left(rows, fld.from_entries(1, T.dim, want))
    if c is None:
        return None
    return _combo(H.basis, c.entries()) or _zero_map(source, through.source)


def homotopy_equivalence(x: Complex, y: Complex, guard: int, trials: int = 20, seed: int = 0):
    """``(u, v)`` with ``u v ~ 1_x`` and ``v u ~ 1_y`` on the interior, or ``None``."""
    import random
    Hxy = homotopy_hom_space(x, y, guard)
    Ex = homotopy_hom_space(x, x, guard)
    Ey = homotopy_hom_space(y, y, guard)
    if Hxy.dim != homotopy_hom_space(y, x, guard).dim or Ex.dim != Ey.dim:
        return None
    if Ex.dim == 0:
        return _zero_map(x, y), _zero_map(y, x)
    rng = random.Random(seed)
    cands = list(Hxy.basis)
    fld = x.field
    for _ in range(trials):
        cands.append(_combo(Hxy.basis, [fld.scalar(rng.randint(-3, 3)) for _ in Hxy.basis]))
    for u in cands:
        if u is None:
            continue
        w = _right_inverse(u, guard)
        if w is None:
            continue
        if Ey.is_zero_class(_diff(w.then(u), y.identity())):
            return u, w
    return None


def _diff(f: ChainMap, g: ChainMap) -> ChainMap:
    return f + g.scale(f.source.field.scalar(-1))


def _right_inverse(u: ChainMap, guard: int) -> Optional[ChainMap]:
    """``w`` with ``u w ~ 1`` on the interior."""
    x, y = u.source, u.target
    H = homotopy_hom_space(y, x, guard)
    E = homotopy_hom_space(x, x, guard)
    fld = x.field
    if H.dim == 0:
        return None
    rows = fld.from_entries(H.dim, E.dim, [c for b in H.basis for c in E.coordinates(u.then(b))])
    c = solve_left(rows, fld.from_entries(1, E.dim, E.coordinates(x.identity())))
    if c is None:
        return None
    return _combo(H.basis, c.entries())


def is_invertible_class(e: ChainMap, guard: int) -> bool:
    x = e.source
    E = homotopy_hom_space(x, x, guard)
    return _right_inverse(e, guard) is not None and E.dim > 0


def injective_multiplicities(y: Complex, degrees: Sequence[int]) -> Dict[int, Tuple[int, ...]]:
    """Multiplicity of each indecomposable injective in degree ``n`` of a minimal model:
    ``dim H^n Hom(S_v, y)``."""
    alg = y.algebra
    out = {}
    for n in degrees:
        vec = []
        for v in range(alg.num_vertices):
            S = simple_module(alg, v)
            H0 = hom(S, y.obj(n))
            Hm = hom(S, y.obj(n - 1))
            if H0.dim == 0:
                vec.append(0)
                continue
            out_rank = 0
            if y.obj(n + 1).dim:
                imgs = [(B @ y.d(n)).flatten() for B in H0.basis]
                out_rank = vstack(imgs, field=alg.field).rank()
            in_rank = 0
            if Hm.dim:
                imgs = [(B @ y.d(n - 1)).flatten() for B in Hm.basis]
                in_rank = vstack(imgs, field=alg.field).rank()
            vec.append(H0.dim - out_rank - in_rank)
        out[n] = tuple(vec)
    return out


# -- the comparison -------------------------------------------------------------------------------------

@dataclass
class HappelReport:
    window: Tuple[int, int]
    indices: Tuple[int, int]
    guard: int
    tau_dims: Dict[int, Tuple[int, ...]]
    middle_dims: Dict[int, Tuple[int, ...]]
    support_inside: bool
    end_equivalence: bool
    split_maps: bool
    w_from_middle: Dict[int, Tuple[int, ...]]
    w_from_left: Dict[int, Tuple[int, ...]]
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def w_dims(self) -> Dict[int, Tuple[int, ...]]:
        return self.w_from_middle

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def summary(self) -> dict:
        return {"window": self.window, "indices": self.indices, "tau": self.tau_dims, "middle": self.middle_dims,
                "W": self.w_dims, "checks": self.checks}


def _sub(a: Dict[int, Tuple[int, ...]], b: Dict[int, Tuple[int, ...]]):
    return {n: tuple(x - y for x, y in zip(a[n], b[n])) for n in a}


def happel_compare(n: Module, window=(-2, 2), guard: int = 1, margin: Optional[int] = None,
                   max_margin: int = 8) -> HappelReport:
    """Compare the AR triangle ending at ``iN`` with the restriction of the almost split
    sequence over a truncated repetitive algebra ending at ``n`` placed at index 0.

    The truncation indices are ``[lo - margin, hi + margin]``; if the resolutions
    or the sequence reach the boundary the margin is enlarged.
    """
    if is_projective(n):
        raise ProjectiveInput("module is projective")
    lo, hi = window
    interior(Complex(n.algebra, lo, hi, {}, {}), guard)
    m = margin if margin is not None else 2
    while True:
        if m > max_margin:
            raise WindowTooSmall("no admissible margin found")
        w = build_truncation(n.algebra, lo - m, hi + m)
        try:
            rep = _compare_on(n, w, window, guard)
        except (NotSelfInjective, IndexOutOfWindow):
            m += 1
            continue
        if not rep.support_inside:
            m += 1
            continue
        return rep


def _compare_on(n: Module, w: RepetitiveWindow, window, guard: int) -> HappelReport:
    lo, hi = window
    N = happel_embed(n, w).to_module(f"H({n.name})")
    cert = ar_sequence(N)
    seq = cert.sequence
    tau_d, mid_d = index_dims(seq.L, w), index_dims(seq.M, w)
    supp = set(tau_d) | set(mid_d) | set(index_dims(N, w))
    inside = all(w.a < i < w.b for i in supp)
    crL = complete_resolution(seq.L, window)
    crE = complete_resolution(seq.M, window)
    crN = complete_resolution(N, window)
    a_c = lift_to_complete(seq.iota, crL, crE)
    b_c = lift_to_complete(seq.pi, crE, crN)
    RX, dX = restrict_complex(crL.complex, w)
    RY, dY = restrict_complex(crE.complex, w)
    RZ, dZ = restrict_complex(crN.complex, w)
    Ra = restrict_chain_map(a_c, dX, dY, RX, RY)
    Rb = restrict_chain_map(b_c, dY, dZ, RY, RZ)
    # built one degree wider so that the cone loses nothing inside the window
    wide = ar_triangle_of_module(n, (lo - 1, hi + 1), guard).triangle
    XS, YS, ZS = wide.X.clip(lo, hi), wide.Y.clip(lo, hi), wide.Z.clip(lo, hi)
    direct_alpha = wide.alpha.between(XS, YS)
    direct_beta = wide.beta.between(YS, ZS)
    checks = {}
    checks["chain_maps"] = a_c.is_chain_map() and b_c.is_chain_map() and Ra.is_chain_map() and Rb.is_chain_map()
    eq = homotopy_equivalence(ZS, RZ, guard)
    checks["end_equivalence"] = eq is not None
    split = False
    if eq is not None:
        u, v = eq
        beta_p = Rb.then(v)
        psi = solve_factorization_k(direct_beta, beta_p, YS, guard)
        psi_p = solve_factorization_k(beta_p, direct_beta, RY, guard)
        if psi is not None and psi_p is not None:
            split = is_invertible_class(psi.then(psi_p), guard)
    checks["split_maps"] = split
    degs = list(interior(XS, guard))
    wY = _sub(injective_multiplicities(RY, degs), injective_multiplicities(YS, degs))
    wX = _sub(injective_multiplicities(RX, degs), injective_multiplicities(XS, degs))
    checks["same_W"] = wX == wY
    checks["W_nonnegative"] = all(x >= 0 for vec in wY.values() for x in vec)
    checks["end_multiplicities"] = injective_multiplicities(RZ, degs) == injective_multiplicities(ZS, degs)
    checks["almost_split_over_truncation"] = cert.exact and cert.non_split
    rep = HappelReport(window, (w.a, w.b), guard, tau_d, mid_d, inside, eq is not None, split, wY, wX, checks)
    return rep


def happel_compare_stable(n: Module, window=(-2, 2), guard: int = 1) -> Tuple[HappelReport, HappelReport, bool]:
    """Run the comparison and again with the margin enlarged by one; report whether
    the almost split sequence over the truncation and ``W`` are unchanged."""
    r1 = happel_compare(n, window, guard)
    m1 = r1.window[0] - r1.indices[0]
    r2 = happel_compare(n, window, guard, margin=m1 + 1)
    stable = (r1.tau_dims == r2.tau_dims and r1.middle_dims == r2.middle_dims and r1.w_dims == r2.w_dims)
    return r1, r2, stable
