"""Finite-dimensional right modules and the basic constructions on them.

A module is a vector space ``k^d`` together with one ``d x d`` matrix per
basis element of the algebra; ``m * b`` is ``m @ action[b]``.  Homomorphisms
are ``dim(M) x dim(N)`` matrices ``F`` with ``action_M[b] @ F == F @ action_N[b]``.
Left modules are right modules over the opposite algebra.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .algebra import Algebra, ground_algebra, radical_of_endo_algebra, from_structure_constants
from .linalg import (FieldSpec, Matrix, ShapeError, Subspace, block_diag, hstack, kernel_basis, kron,
                     linear_combination, rational_eigenvalues, solve_factorization, vstack)


class AlgebraMismatch(ValueError):
    pass


class NotIndecomposable(ValueError):
    pass


class ProjectiveInput(ValueError):
    pass


class Module:
    """Right module over ``algebra`` given by its action matrices.

    ``proj_vertices`` records, for modules built as direct sums of
    indecomposable projectives ``e_v A``, the vertex of each summand in order;
    ``inj_vertices`` does the same for sums of indecomposable injectives.
    """

    def __init__(self, algebra: Algebra, action: Sequence[Matrix], name: str = "", *, dim: Optional[int] = None,
                 proj_vertices: Optional[Sequence[int]] = None, inj_vertices: Optional[Sequence[int]] = None):
        self.algebra = algebra
        self.action = tuple(action)
        if len(self.action) != algebra.dim:
            raise ShapeError("need one action matrix per algebra basis element")
        if dim is None:
            dim = self.action[0].rows if self.action else 0
        self.dim = dim
        for m in self.action:
            if m.shape != (dim, dim):
                raise ShapeError("action matrices must be dim x dim")
        self.name = name
        self.proj_vertices = None if proj_vertices is None else tuple(proj_vertices)
        self.inj_vertices = None if inj_vertices is None else tuple(inj_vertices)
        self._hom_cache = {}
        self._adapted = None
        self.tensor_data = None

    def __repr__(self):
        return f"Module({self.name or '?'}, dim={self.dim}, dimvec={self.dim_vector()})"

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    def act(self, x: Matrix) -> Matrix:
        """Matrix of right multiplication by the algebra element ``x``."""
        return linear_combination(x.entries(), self.action, self.dim, self.dim, self.field)

    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(self.act(e).rank() for e in self.algebra.idempotents)

    def identity(self) -> Matrix:
        return self.field.identity(self.dim)

    def is_zero(self) -> bool:
        return self.dim == 0

    def validate(self) -> None:
        a = self.algebra
        if self.act(a.unit) != self.identity():
            raise ValueError("unit does not act as the identity")
        c = a.structure_constants()
        for i in range(a.dim):
            for j in range(a.dim):
                rhs = linear_combination(c[i][j], self.action, self.dim, self.dim, self.field)
                if self.action[i] @ self.action[j] != rhs:
                    raise ValueError(f"module law fails at ({a.labels[i]}, {a.labels[j]})")

    def is_hom_to(self, other: "Module", f: Matrix) -> bool:
        if f.shape != (self.dim, other.dim):
            return False
        return all(p @ f == f @ q for p, q in zip(self.action, other.action))

    # vertex-adapted basis used by the hom solver
    def adapted(self):
        if self._adapted is None:
            a = self.algebra
            blocks = []
            for e in a.idempotents:
                blocks.append(Subspace(self.field, self.dim, self.act(e)).basis)
            T = vstack(blocks, cols=self.dim, field=self.field)
            Tinv = T.inverse()
            sizes = [b.rows for b in blocks]
            offs = [sum(sizes[:i]) for i in range(len(sizes))]
            gens = []
            for g, u, w in a.generators:
                G = T @ self.act(g) @ Tinv
                gens.append(G.block(offs[u], offs[u] + sizes[u], offs[w], offs[w] + sizes[w]))
            self._adapted = (T, Tinv, sizes, offs, gens)
        return self._adapted


@dataclass(frozen=True)
class ModuleHom:
    source: Module
    target: Module
    mat: Matrix

    def __post_init__(self):
        if self.mat.shape != (self.source.dim, self.target.dim):
            raise ShapeError("hom matrix has the wrong shape")

    def then(self, other: "ModuleHom") -> "ModuleHom":
        return ModuleHom(self.source, other.target, self.mat @ other.mat)

    def is_valid(self) -> bool:
        return self.source.is_hom_to(self.target, self.mat)


class Bimodule:
    """``left``-``right`` bimodule; ``left_action[a]`` is the matrix of
    ``y -> a*y`` (so ``left_action`` is an anti-homomorphism) and
    ``right_action[b]`` the matrix of ``y -> y*b``."""

    def __init__(self, left: Algebra, right: Algebra, left_action, right_action, name: str = ""):
        self.left = left
        self.right = right
        self.left_action = tuple(left_action)
        self.right_action = tuple(right_action)
        self.dim = self.right_action[0].rows if self.right_action else 0
        self.name = name

    def right_module(self) -> Module:
        return Module(self.right, self.right_action, self.name, dim=self.dim)

    def validate(self) -> None:
        for la in self.left_action:
            for rb in self.right_action:
                if la @ rb != rb @ la:
                    raise ValueError("left and right actions do not commute")
        Module(self.right, self.right_action, dim=self.dim).validate()
        Module(self.left.op, self.left_action, dim=self.dim).validate()


def regular_bimodule(a: Algebra) -> Bimodule:
    return Bimodule(a, a, a.left_mult, a.right_mult, "A")


def dual_bimodule(a: Algebra) -> Bimodule:
    """``D(A) = Hom_k(A, k)`` with ``(a f)(x) = f(x a)`` and ``(f b)(x) = f(b x)``."""
    return Bimodule(a, a, [r.T for r in a.right_mult], [l.T for l in a.left_mult], "DA")


# -- basic modules -------------------------------------------------------------

def zero_module(a: Algebra) -> Module:
    z = a.field.zeros(0, 0)
    return Module(a, [z] * a.dim, "0", dim=0, proj_vertices=(), inj_vertices=())


def regular_module(a: Algebra) -> Module:
    cache = a.__dict__.setdefault("_module_cache", {})
    if "regular" not in cache:
        cache["regular"] = Module(a, a.right_mult, "A")
    return cache["regular"]


def _vertex_basis(a: Algebra, v: int) -> Matrix:
    """Echelon basis of ``e_v A`` inside ``A``."""
    return Subspace(a.field, a.dim, a.left_matrix(a.idempotents[v])).basis


def projective_module(a: Algebra, v) -> Module:
    v = a.vertex_index(v)
    cache = a.__dict__.setdefault("_module_cache", {})
    key = ("P", v)
    if key not in cache:
        sub, _ = submodule(regular_module(a), _vertex_basis(a, v))
        sub.name = f"P{a.vertices[v]}"
        sub.proj_vertices = (v,)
        cache[key] = sub
    return cache[key]


def injective_module(a: Algebra, v) -> Module:
    v = a.vertex_index(v)
    cache = a.__dict__.setdefault("_module_cache", {})
    key = ("I", v)
    if key not in cache:
        m = dual_module(projective_module(a.op, v))
        m.name = f"I{a.vertices[v]}"
        m.inj_vertices = (v,)
        cache[key] = m
    return cache[key]


def simple_module(a: Algebra, v) -> Module:
    v = a.vertex_index(v)
    rad = a.radical
    ev = rad.reduce(a.idempotents[v]).entries()
    j = next(i for i, x in enumerate(ev) if x != 0)
    acts = []
    for i in range(a.dim):
        x = a.mul(a.mul(a.idempotents[v], a.basis_vector(i)), a.idempotents[v])
        s = rad.reduce(x).entries()[j] / ev[j]
        acts.append(a.field.from_entries(1, 1, [s]))
    return Module(a, acts, f"S{a.vertices[v]}")


def module_from_representation(a: Algebra, dims: Sequence[int], arrow_maps: dict, name: str = "") -> Module:
    """Module of a path algebra from a quiver representation.

    ``dims[v]`` is the dimension at vertex ``v`` and ``arrow_maps[a]`` the
    ``dims[s] x dims[t]`` matrix of arrow ``a: s -> t``.
    """
    if a.quiver is None:
        raise ValueError("algebra has no quiver")
    f = a.field
    n = sum(dims)
    offs = [sum(dims[:i]) for i in range(len(dims))]
    vindex = {v: i for i, v in enumerate(a.quiver.vertices)}
    arrow_full = {}
    for name_, s, t in a.quiver.arrows:
        m = arrow_maps.get(name_)
        big = f._raw(n, n)
        if m is not None:
            m = m if isinstance(m, Matrix) else f.matrix(m, dims[vindex[t]])
            si, ti = vindex[s], vindex[t]
            if m.shape != (dims[si], dims[ti]):
                raise ShapeError(f"arrow {name_} has the wrong shape")
            for r, row in enumerate(m.tolist()):
                for c, x in enumerate(row):
                    big[offs[si] + r, offs[ti] + c] = x
        arrow_full[name_] = Matrix(f, big)
    acts = []
    for p in a.paths:
        if p[0].startswith("@"):
            vi = vindex[p[0][1:]]
            m = f._raw(n, n)
            for r in range(dims[vi]):
                m[offs[vi] + r, offs[vi] + r] = 1
            acts.append(Matrix(f, m))
        else:
            m = arrow_full[p[0]]
            for arr in p[1:]:
                m = m @ arrow_full[arr]
            acts.append(m)
    mod = Module(a, acts, name, dim=n)
    mod.validate()
    return mod


# -- sub, quotient, sums ----------------------------------------------------------

def submodule(m: Module, vectors: Matrix) -> Tuple[Module, Matrix]:
    """Submodule spanned by the rows of ``vectors`` (must be invariant); returns
    the module and its inclusion matrix."""
    sub = Subspace(m.field, m.dim, vectors)
    B = sub.basis
    acts = []
    for r in m.action:
        img = B @ r
        acts.append(img.select_cols(sub.pivots) if sub.dim else m.field.zeros(0, 0))
        if sub.dim and not (acts[-1] @ B == img):
            raise ValueError("span is not a submodule")
    return Module(m.algebra, acts, dim=sub.dim), B


def generated_submodule(m: Module, vectors: Matrix) -> Tuple[Module, Matrix]:
    rows = [vectors @ r for r in m.action]
    return submodule(m, vstack(rows, cols=m.dim, field=m.field))


def quotient(m: Module, sub: Subspace) -> Tuple[Module, Matrix, Matrix]:
    """Quotient ``m / sub``; returns (module, projection, section)."""
    S = sub.complement_basis()
    P = sub.reduce(m.identity()).select_cols(sub.complement_indices())
    acts = [S @ r @ P for r in m.action]
    return Module(m.algebra, acts, dim=S.rows), P, S


def kernel(m: Module, n: Module, f: Matrix) -> Tuple[Module, Matrix]:
    return submodule(m, kernel_basis(f).basis)


def cokernel(m: Module, n: Module, f: Matrix) -> Tuple[Module, Matrix]:
    q, p, _ = quotient(n, Subspace(n.field, n.dim, f))
    return q, p


def image(m: Module, n: Module, f: Matrix) -> Tuple[Module, Matrix]:
    return submodule(n, f)


def direct_sum(mods: Sequence[Module], algebra: Optional[Algebra] = None):
    """Direct sum with its inclusion and projection matrices."""
    mods = list(mods)
    if not mods:
        return zero_module(algebra), [], []
    a = algebra or mods[0].algebra
    f = a.field
    for x in mods:
        if x.algebra is not a:
            raise AlgebraMismatch("summands over different algebras")
    acts = [block_diag([x.action[i] for x in mods], field=f) for i in range(a.dim)]
    total = sum(x.dim for x in mods)
    pv = None
    if all(x.proj_vertices is not None for x in mods):
        pv = [v for x in mods for v in x.proj_vertices]
    iv = None
    if all(x.inj_vertices is not None for x in mods):
        iv = [v for x in mods for v in x.inj_vertices]
    s = Module(a, acts, "+".join(x.name or "?" for x in mods), dim=total, proj_vertices=pv, inj_vertices=iv)
    incs, projs = [], []
    off = 0
    for x in mods:
        inc = f._raw(x.dim, total)
        for i in range(x.dim):
            inc[i, off + i] = 1
        incs.append(Matrix(f, inc))
        projs.append(Matrix(f, inc).T)
        off += x.dim
    return s, incs, projs


def dual_module(m: Module) -> Module:
    d = Module(m.algebra.op, [r.T for r in m.action], ("D" + m.name) if m.name else "", dim=m.dim,
               proj_vertices=m.inj_vertices, inj_vertices=m.proj_vertices)
    return d


def dual_hom(f: Matrix) -> Matrix:
    return f.T


# -- homomorphisms ---------------------------------------------------------------

class HomSpace:
    """Hom_A(M, N) with an echelon basis of flattened matrices."""

    def __init__(self, source: Module, target: Module, space: Subspace):
        self.source = source
        self.target = target
        self.space = space

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> List[Matrix]:
        r, c = self.source.dim, self.target.dim
        return [self.space.basis.row(i).reshape(r, c) for i in range(self.dim)]

    def element(self, coeffs) -> Matrix:
        if self.dim == 0:
            return self.source.field.zeros(self.source.dim, self.target.dim)
        v = self.source.field.from_entries(1, self.dim, [self.source.field.scalar(c) for c in coeffs])
        return (v @ self.space.basis).reshape(self.source.dim, self.target.dim)

    def coordinates(self, f: Matrix) -> Optional[Matrix]:
        return self.space.coordinates(f.flatten())

    def contains(self, f: Matrix) -> bool:
        return self.space.contains(f.flatten())

    def random_element(self, rng: random.Random, bound: int = 50) -> Matrix:
        return self.element([rng.randint(-bound, bound) for _ in range(self.dim)])


def _check_same(m: Module, n: Module):
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("modules over different algebras")


def hom(m: Module, n: Module) -> HomSpace:
    """Hom_A(m, n), solved blockwise in vertex-adapted bases."""
    _check_same(m, n)
    hit = m._hom_cache.get(id(n))
    if hit is not None and hit[0] is n:
        return hit[1]
    f = m.field
    a = m.algebra
    if m.dim == 0 or n.dim == 0:
        hs = HomSpace(m, n, Subspace.zero(f, m.dim * n.dim))
    elif a.idempotents:
        hs = _hom_adapted(m, n)
    else:
        hs = _hom_generic(m, n)
    m._hom_cache[id(n)] = (n, hs)
    return hs


def _hom_generic(m: Module, n: Module) -> HomSpace:
    f = m.field
    dm, dn = m.dim, n.dim
    eqs = []
    for p, q in zip(m.action, n.action):
        # vec(P F - F Q) = vec(F) (kron(P^T, I) - kron(I, Q)) for row-major vec
        eqs.append(kron(p.T, f.identity(dn)) - kron(f.identity(dm), q))
    E = hstack(eqs, rows=dm * dn, field=f)
    return HomSpace(m, n, kernel_basis(E))


def _hom_adapted(m: Module, n: Module) -> HomSpace:
    f = m.field
    Tm, Tminv, sm, om, gm = m.adapted()
    Tn, _, sn, on, gn = n.adapted()
    nv = len(sm)
    uoff = []
    tot = 0
    for v in range(nv):
        uoff.append(tot)
        tot += sm[v] * sn[v]
    gens = m.algebra.generators
    neq = sum(sm[u] * sn[w] for _, u, w in gens)
    E = f._raw(tot, max(neq, 0)) if neq else None
    col = 0
    for (g, u, w), A, B in zip(gens, gm, gn):
        Al, Bl = A.tolist(), B.tolist()
        mu, mw, nu, nw = sm[u], sm[w], sn[u], sn[w]
        # equation A X_w - X_u B = 0, entry (i, j)
        for i in range(mu):
            for j in range(nw):
                c = col + i * nw + j
                for k in range(mw):
                    x = Al[i][k]
                    if x != 0:
                        E[uoff[w] + k * nw + j, c] += x
                for l in range(nu):
                    x = Bl[l][j]
                    if x != 0:
                        E[uoff[u] + i * nu + l, c] -= x
        col += mu * nw
    if tot == 0:
        return HomSpace(m, n, Subspace.zero(f, m.dim * n.dim))
    sol = kernel_basis(Matrix(f, E)).basis if neq else f.identity(tot)
    mats = []
    for s in range(sol.rows):
        row = sol.row(s).entries()
        X = f._raw(m.dim, n.dim)
        for v in range(nv):
            base = uoff[v]
            for i in range(sm[v]):
                for j in range(sn[v]):
                    x = row[base + i * sn[v] + j]
                    if x != 0:
                        X[om[v] + i, on[v] + j] = x
        F = Tminv @ Matrix(f, X) @ Tn
        mats.append(F.flatten())
    return HomSpace(m, n, Subspace(f, m.dim * n.dim, vstack(mats, cols=m.dim * n.dim, field=f)))


def hom_space(m: Module, n: Module) -> List[ModuleHom]:
    return [ModuleHom(m, n, b) for b in hom(m, n).basis]


def hom_dim(m: Module, n: Module) -> int:
    return hom(m, n).dim


# -- radical, top, socle, covers and envelopes ------------------------------------

def radical_submodule(m: Module) -> Subspace:
    rows = [m.act(r) for r in _rad_rows(m.algebra)]
    return Subspace(m.field, m.dim, vstack(rows, cols=m.dim, field=m.field))


def _rad_rows(a: Algebra):
    rad = a.radical
    return [rad.basis.row(i) for i in range(rad.dim)]


def socle_submodule(m: Module) -> Subspace:
    mats = [m.act(r) for r in _rad_rows(m.algebra)]
    if not mats:
        return Subspace.full(m.field, m.dim)
    return kernel_basis(hstack(mats, rows=m.dim, field=m.field))


def top(m: Module) -> Module:
    return quotient(m, radical_submodule(m))[0]


def projective_cover(m: Module) -> Tuple[Module, Matrix]:
    """Projective cover ``P -> m`` with ``P`` a direct sum of ``e_v A``."""
    a = m.algebra
    f = m.field
    if m.proj_vertices is not None:
        return m, m.identity()
    current = radical_submodule(m)
    chosen = []
    for v, e in enumerate(a.idempotents):
        rows = m.act(e)
        for i in range(m.dim):
            r = rows.row(i)
            if r.is_zero() or current.contains(r):
                continue
            chosen.append((v, r))
            current = current + Subspace(f, m.dim, r)
    if not chosen:
        return zero_module(a), f.zeros(0, m.dim)
    summands = [projective_module(a, v) for v, _ in chosen]
    P, _, _ = direct_sum(summands, a)
    blocks = []
    for (v, r), pv in zip(chosen, summands):
        images = vstack([r @ act for act in m.action], cols=m.dim, field=f)
        blocks.append(_vertex_basis(a, v) @ images)
    epi = vstack(blocks, cols=m.dim, field=f)
    P.name = P.name or "P"
    return P, epi


def injective_envelope(m: Module) -> Tuple[Module, Matrix]:
    if m.inj_vertices is not None:
        return m, m.identity()
    Q, pi = projective_cover(dual_module(m))
    I = dual_module(Q)
    return I, pi.T


@dataclass
class Presentation:
    """``P1 --d1--> P0 --epi--> M -> 0``."""

    P1: Module
    P0: Module
    d1: Matrix
    epi: Matrix
    module: Module

    def is_exact(self) -> bool:
        M = self.module
        if not (self.P1.is_hom_to(self.P0, self.d1) and self.P0.is_hom_to(M, self.epi)):
            return False
        if self.epi.rank() != M.dim:
            return False
        return Subspace(M.field, self.P0.dim, self.d1) == kernel_basis(self.epi)


@dataclass
class InjectivePresentation:
    """``0 -> M --mono--> I0 --d0--> I1``."""

    I0: Module
    I1: Module
    d0: Matrix
    mono: Matrix
    module: Module

    def is_exact(self) -> bool:
        if self.mono.rank() != self.module.dim:
            return False
        return kernel_basis(self.d0) == Subspace(self.module.field, self.I0.dim, self.mono)


def minimal_projective_presentation(m: Module) -> Presentation:
    P0, epi = projective_cover(m)
    K, inc = submodule(P0, kernel_basis(epi).basis)
    P1, e1 = projective_cover(K)
    return Presentation(P1, P0, e1 @ inc, epi, m)


def injective_presentation(m: Module) -> InjectivePresentation:
    I0, mono = injective_envelope(m)
    C, proj, _ = quotient(I0, Subspace(m.field, I0.dim, mono))
    I1, mono1 = injective_envelope(C)
    return InjectivePresentation(I0, I1, proj @ mono1, mono, m)


def syzygy(m: Module) -> Tuple[Module, Matrix]:
    P0, epi = projective_cover(m)
    return submodule(P0, kernel_basis(epi).basis)


# -- tensor products ------------------------------------------------------------------

@dataclass
class TensorData:
    module: Module
    bimodule: Bimodule
    projection: Matrix  # from k-tensor to quotient
    section: Matrix     # quotient basis as k-tensor vectors


def _left_generators(a: Algebra):
    if a.idempotents:
        return list(a.idempotents) + [g for g, _, _ in a.generators]
    return [a.basis_vector(i) for i in range(a.dim)]


def tensor_over_algebra(m: Module, b: Bimodule) -> Module:
    """``m (x)_A b`` as a right module over ``b.right``."""
    if m.algebra is not b.left:
        raise AlgebraMismatch("module algebra differs from the bimodule's left algebra")
    f = m.field
    a = m.algebra
    n = m.dim * b.dim
    Im, Ib = f.identity(m.dim), f.identity(b.dim)
    rows = []
    for g in _left_generators(a):
        lam = linear_combination(g.entries(), b.left_action, b.dim, b.dim, f)
        rows.append(kron(m.act(g), Ib) - kron(Im, lam))
    rel = Subspace(f, n, vstack(rows, cols=n, field=f))
    S = rel.complement_basis()
    P = rel.reduce(f.identity(n)).select_cols(rel.complement_indices())
    acts = [S @ kron(Im, r) @ P for r in b.right_action]
    t = Module(b.right, acts, dim=S.rows)
    t.tensor_data = TensorData(m, b, P, S)
    return t


def tensor_hom(f: Matrix, src: Module, tgt: Module) -> Matrix:
    """Image of ``f: M -> M'`` under ``- (x) B`` between the given tensor modules."""
    ds, dt = src.tensor_data, tgt.tensor_data
    Ib = f.field.identity(ds.bimodule.dim)
    return ds.section @ kron(f, Ib) @ dt.projection


def tensor_hom2(f: Matrix, g: Matrix, src: Module, tgt: Module) -> Matrix:
    """Image of ``f (x) g`` between tensor modules; ``g`` must be left-linear."""
    return src.tensor_data.section @ kron(f, g) @ tgt.tensor_data.projection


def hom_from_bimodule(b: Bimodule, y: Module) -> Module:
    """``Hom_B(b, y)`` over ``b.right`` as a right module over ``b.left`` via ``(f a)(z) = f(a z)``."""
    f = y.field
    bm = b.right_module()
    H = hom(bm, y)
    basis = H.basis
    acts = []
    for lam in b.left_action:
        rows = [H.coordinates(lam @ phi) for phi in basis]
        acts.append(vstack(rows, cols=H.dim, field=f))
    out = Module(b.left, acts, dim=H.dim)
    out.hom_data = H
    return out


def dual_bimodule_of(a: Algebra) -> Bimodule:
    cache = a.__dict__.setdefault("_module_cache", {})
    if "DA" not in cache:
        cache["DA"] = dual_bimodule(a)
    return cache["DA"]


def nakayama(m: Module) -> Module:
    """``m (x)_A D(A)``."""
    t = tensor_over_algebra(m, dual_bimodule_of(m.algebra))
    if m.proj_vertices is not None:
        t.inj_vertices = m.proj_vertices
    return t


def nakayama_hom(f: Matrix, src_nu: Module, tgt_nu: Module) -> Matrix:
    return tensor_hom(f, src_nu, tgt_nu)


# -- Hom(-, A) as a left module -------------------------------------------------------------

def hom_to_regular(p: Module) -> Tuple[Module, HomSpace]:
    """``Hom_A(p, A)`` as a right module over ``A^op`` via ``(a.phi)(x) = a phi(x)``."""
    a = p.algebra
    H = hom(p, regular_module(a))
    f = p.field
    basis = H.basis
    acts = []
    for i in range(a.dim):
        L = a.left_mult[i]
        rows = [H.coordinates(phi @ L) for phi in basis]
        acts.append(vstack(rows, cols=H.dim, field=f))
    return Module(a.op, acts, dim=H.dim), H


def transpose(m: Module) -> Module:
    """Auslander-Bridger transpose, a module over the opposite algebra."""
    pres = minimal_projective_presentation(m)
    H0m, H0 = hom_to_regular(pres.P0)
    H1m, H1 = hom_to_regular(pres.P1)
    f = m.field
    rows = [H1.coordinates(pres.d1 @ phi) for phi in H0.basis]
    d = vstack(rows, cols=H1.dim, field=f)
    tr, _ = cokernel(H0m, H1m, d)
    tr.name = f"Tr{m.name}" if m.name else ""
    return tr


def dtr(m: Module) -> Module:
    t = dual_module(transpose(m))
    t.name = f"DTr{m.name}" if m.name else ""
    return t


def dtr_via_nakayama(m: Module) -> Tuple[Module, Matrix]:
    """Kernel of ``nu(d1): nu(P1) -> nu(P0)`` for the minimal presentation; returns
    the module and its inclusion into ``nu(P1)``."""
    pres = minimal_projective_presentation(m)
    n1, n0 = nakayama(pres.P1), nakayama(pres.P0)
    nd = nakayama_hom(pres.d1, n1, n0)
    k, inc = submodule(n1, kernel_basis(nd).basis)
    k.name = f"ker nu(d1) {m.name}".strip()
    return k, inc


# -- isomorphisms ---------------------------------------------------------------------

def find_isomorphism(m: Module, n: Module, seed: int = 0, trials: int = 40) -> Optional[Matrix]:
    """An isomorphism ``m -> n`` found among random elements of Hom(m, n), or None.

    Over the rationals a random element of Hom(m, n) is invertible with
    overwhelming probability when ``m`` and ``n`` are isomorphic.
    """
    _check_same(m, n)
    if m.dim != n.dim:
        return None
    if m.dim == 0:
        return m.field.zeros(0, 0)
    if m.dim_vector() != n.dim_vector():
        return None
    H = hom(m, n)
    if H.dim == 0:
        return None
    rng = random.Random(seed)
    for F in H.basis:
        if F.is_invertible():
            return F
    for t in range(trials):
        F = H.random_element(rng, 10 + 10 * t)
        if F.is_invertible():
            return F
    return None


def is_isomorphic(m: Module, n: Module) -> bool:
    return find_isomorphism(m, n) is not None


# -- Ext^1 and stable homs -------------------------------------------------------------

@dataclass
class QuotientSpace:
    """A subquotient ``cycles / boundaries`` of some Hom space, flattened."""

    cycles: Subspace
    boundaries: Subspace
    shape: Tuple[int, int]

    @property
    def dim(self) -> int:
        return self.cycles.dim - self.boundaries.dim

    def representatives(self) -> List[Matrix]:
        reps = self.boundaries.extend_to_basis_of(self.cycles)
        return [reps.row(i).reshape(*self.shape) for i in range(reps.rows)]

    def is_zero_class(self, f: Matrix) -> bool:
        return self.boundaries.contains(f.flatten())


def ext1(m: Module, n: Module) -> QuotientSpace:
    """Ext^1(m, n) as cocycles ``P1 -> n`` modulo coboundaries, from the minimal presentation."""
    _check_same(m, n)
    pres = minimal_projective_presentation(m)
    f = m.field
    H1 = hom(pres.P1, n)
    K = kernel_basis(pres.d1).basis
    shape = (pres.P1.dim, n.dim)
    if H1.dim == 0:
        z = Subspace.zero(f, shape[0] * shape[1])
        return QuotientSpace(z, z, shape)
    # cocycles: phi with K phi = 0
    if K.rows:
        rows = [(K @ phi).flatten() for phi in H1.basis]
        coeffs = kernel_basis(vstack(rows, field=f))
        cyc = coeffs.basis @ H1.space.basis if coeffs.dim else f.zeros(0, H1.space.ambient_dim)
    else:
        cyc = H1.space.basis
    cycles = Subspace(f, shape[0] * shape[1], cyc)
    H0 = hom(pres.P0, n)
    bd = [(pres.d1 @ g).flatten() for g in H0.basis]
    boundaries = Subspace(f, shape[0] * shape[1], vstack(bd, cols=shape[0] * shape[1], field=f))
    return QuotientSpace(cycles, boundaries, shape)


MODULO_PROJECTIVES = "ModuloProjectives"
MODULO_INJECTIVES = "ModuloInjectives"


def stable_hom(m: Module, n: Module, mode: str = MODULO_PROJECTIVES) -> QuotientSpace:
    _check_same(m, n)
    f = m.field
    H = hom(m, n)
    shape = (m.dim, n.dim)
    if mode == MODULO_PROJECTIVES:
        P, pi = projective_cover(n)
        maps = [g @ pi for g in hom(m, P).basis]
    elif mode == MODULO_INJECTIVES:
        I, iota = injective_envelope(m)
        maps = [iota @ g for g in hom(I, n).basis]
    else:
        raise ValueError(f"unknown mode {mode}")
    bd = Subspace(f, shape[0] * shape[1], vstack([x.flatten() for x in maps], cols=shape[0] * shape[1], field=f))
    return QuotientSpace(H.space, bd, shape)


def factors_through_projective(m: Module, n: Module, g: Matrix) -> bool:
    return stable_hom(m, n, MODULO_PROJECTIVES).is_zero_class(g)


def factors_through_injective(m: Module, n: Module, g: Matrix) -> bool:
    return stable_hom(m, n, MODULO_INJECTIVES).is_zero_class(g)


# -- endomorphism algebras and decomposition -----------------------------------------------

def end_algebra(m: Module) -> Tuple[Algebra, HomSpace]:
    """End(m) with product ``x * y = x @ y`` (first x then y) on the hom basis."""
    H = hom(m, m)
    basis = H.basis
    f = m.field
    n = len(basis)
    c = [[H.coordinates(x @ y).entries() for y in basis] for x in basis]
    unit = H.coordinates(m.identity())
    e = from_structure_constants(f, [f"f{i}" for i in range(n)], c, unit, name=f"End({m.name})")
    return e, H


def is_local(m: Module) -> bool:
    if m.dim == 0:
        return False
    e, _ = end_algebra(m)
    return e.dim - radical_of_endo_algebra(e).dim == 1


def is_indecomposable(m: Module) -> bool:
    return is_local(m)


def _fitting_split(m: Module, F: Matrix):
    n = m.dim
    for lam in rational_eigenvalues(F):
        G = (F - m.identity().scale(lam)).power(n)
        if G.is_zero():
            continue
        ker = kernel_basis(G)
        if ker.dim == 0:
            continue
        return ker.basis, Subspace(m.field, n, G).basis
    return None


def decompose_module(m: Module, seed: int = 0) -> List[Tuple[Module, Matrix, Matrix]]:
    """Split ``m`` into indecomposables; returns (summand, embedding, projection) triples."""
    if m.dim == 0:
        return []
    e, H = end_algebra(m)
    rad = radical_of_endo_algebra(e)
    if e.dim - rad.dim == 1:
        return [(m, m.identity(), m.identity())]
    basis = H.basis
    split = None
    candidates = iter(_candidates(basis, m, seed))
    for F in candidates:
        split = _fitting_split(m, F)
        if split is not None:
            break
    if split is None:
        raise NotIndecomposable("could not split a module whose endomorphism ring is not local")
    K, Im = split
    T = vstack([K, Im], cols=m.dim, field=m.field)
    Tinv = T.inverse()
    out = []
    for rows, c0, c1 in ((K, 0, K.rows), (Im, K.rows, m.dim)):
        # rows is already in echelon form, so it is the submodule's basis
        sub, inc = submodule(m, rows)
        proj = Tinv.block(0, m.dim, c0, c1)
        for summand, emb, pr in decompose_module(sub, seed):
            out.append((summand, emb @ inc, proj @ pr))
    return out


def _candidates(basis, m, seed):
    for F in basis:
        yield F
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            yield basis[i] + basis[j]
    for x in basis:
        for y in basis:
            yield x @ y
    rng = random.Random(seed)
    for t in range(200):
        yield linear_combination([rng.randint(-5, 5) for _ in basis], basis, m.dim, m.dim, m.field)


def summand_multiplicities(m: Module, reps: Sequence[Module]) -> List[int]:
    """How often each module in ``reps`` occurs in a decomposition of ``m``."""
    counts = [0] * len(reps)
    for s, _, _ in decompose_module(m):
        for i, r in enumerate(reps):
            if is_isomorphic(s, r):
                counts[i] += 1
                break
        else:
            raise ValueError("summand not in the given list")
    return counts


# -- short exact sequences ------------------------------------------------------------------

@dataclass
class ShortExactSequence:
    L: Module
    M: Module
    N: Module
    iota: Matrix
    pi: Matrix

    def certificates(self) -> dict:
        f = self.M.field
        return {
            "iota_hom": self.L.is_hom_to(self.M, self.iota),
            "pi_hom": self.M.is_hom_to(self.N, self.pi),
            "iota_injective": self.iota.rank() == self.L.dim,
            "pi_surjective": self.pi.rank() == self.N.dim,
            "exact_middle": kernel_basis(self.pi) == Subspace(f, self.M.dim, self.iota),
            "dims": self.M.dim == self.L.dim + self.N.dim,
        }

    def is_exact(self) -> bool:
        return all(self.certificates().values())

    def split_witness(self) -> Optional[Matrix]:
        """A module section of ``pi`` if one exists."""
        H = hom(self.N, self.M)
        f = self.M.field
        if H.dim == 0:
            return None if self.N.dim else f.zeros(0, self.M.dim)
        rows = [(s @ self.pi).flatten() for s in H.basis]
        target = self.N.identity().flatten()
        c = solve_factorization(target, vstack(rows, field=f))
        if c is None:
            return None
        return linear_combination(c.entries(), H.basis, self.N.dim, self.M.dim, f)

    def is_split(self) -> bool:
        return self.split_witness() is not None


def sequences_isomorphic(s1: ShortExactSequence, s2: ShortExactSequence, seed: int = 0):
    """Search for ``(a, h, c)`` with ``iota1 h = a iota2`` and ``h pi2 = pi1 c``,
    all three invertible.  Returns the triple or None."""
    f = s1.M.field
    HL, HM, HN = hom(s1.L, s2.L), hom(s1.M, s2.M), hom(s1.N, s2.N)
    nl, nm, nn = HL.dim, HM.dim, HN.dim
    rows = []
    # unknowns (x_L, x_M, x_N); equations iota1 h - a iota2 = 0 and h pi2 - pi1 c = 0
    for F in HL.basis:
        rows.append(hstack([(-(F @ s2.iota)).flatten(), f.zeros(1, s1.M.dim * s2.N.dim)]))
    for F in HM.basis:
        rows.append(hstack([(s1.iota @ F).flatten(), (F @ s2.pi).flatten()]))
    for F in HN.basis:
        rows.append(hstack([f.zeros(1, s1.L.dim * s2.M.dim), (-(s1.pi @ F)).flatten()]))
    width = s1.L.dim * s2.M.dim + s1.M.dim * s2.N.dim
    sol = kernel_basis(vstack(rows, cols=width, field=f))
    if sol.dim == 0:
        return None
    rng = random.Random(seed)
    for t in range(40):
        v = [rng.randint(-20 - t, 20 + t) for _ in range(sol.dim)]
        coeffs = linear_combination(v, [sol.basis.row(i) for i in range(sol.dim)], 1, sol.ambient_dim, f).entries()
        a = linear_combination(coeffs[:nl], HL.basis, s1.L.dim, s2.L.dim, f)
        h = linear_combination(coeffs[nl:nl + nm], HM.basis, s1.M.dim, s2.M.dim, f)
        c = linear_combination(coeffs[nl + nm:], HN.basis, s1.N.dim, s2.N.dim, f)
        if a.is_invertible() and h.is_invertible() and c.is_invertible():
            return a, h, c
    return None


# -- natural maps ---------------------------------------------------------------------------

def hom_left_bimodule(m: Module) -> Tuple[Bimodule, HomSpace]:
    """``Hom_A(m, A)`` as an ``A``-``k`` bimodule, on coordinates of the hom basis."""
    a = m.algebra
    f = m.field
    H = hom(m, regular_module(a))
    basis = H.basis
    left = []
    for i in range(a.dim):
        rows = [H.coordinates(phi @ a.left_mult[i]) for phi in basis]
        left.append(vstack(rows, cols=H.dim, field=f))
    k = ground_algebra(f)
    return Bimodule(a, k, left, [f.identity(H.dim)], "Hom(M,A)"), H


@dataclass
class NaturalMap:
    matrix: Matrix
    source_dim: int
    target_dim: int

    @property
    def is_bijective(self) -> bool:
        return self.source_dim == self.target_dim and self.matrix.rank() == self.source_dim


def natural_map_sigma(n: Module, m: Module) -> NaturalMap:
    """``sigma: n (x)_A Hom(m, A) -> Hom(m, n)``, ``sigma(x (x) phi)(y) = x phi(y)``."""
    _check_same(n, m)
    a = m.algebra
    f = m.field
    B, H = hom_left_bimodule(m)
    T = tensor_over_algebra(n, B)
    target = hom(m, n)
    basis = H.basis
    rows = []
    S = T.tensor_data.section
    for r in range(S.rows):
        idx = next(j for j, x in enumerate(S.row(r).entries()) if x != 0)
        i, j = divmod(idx, B.dim)
        W = vstack([n.action[k].row(i) for k in range(a.dim)], cols=n.dim, field=f)
        rows.append(target.coordinates(basis[j] @ W))
    mat = vstack(rows, cols=target.dim, field=f)
    return NaturalMap(mat, T.dim, target.dim)


def natural_map_nakayama(m: Module) -> NaturalMap:
    """``m (x)_A D(A) -> D Hom_A(m, A)``, ``x (x) psi -> (phi -> psi(phi(x)))``."""
    f = m.field
    T = nakayama(m)
    H = hom(m, regular_module(m.algebra))
    basis = [phi.tolist() for phi in H.basis]
    dA = m.algebra.dim
    S = T.tensor_data.section
    rows = []
    for r in range(S.rows):
        idx = next(j for j, x in enumerate(S.row(r).entries()) if x != 0)
        i, j = divmod(idx, dA)
        rows.append([phi[i][j] for phi in basis])
    mat = f.from_entries(len(rows), H.dim, [x for r in rows for x in r]) if rows else f.zeros(0, H.dim)
    return NaturalMap(mat, T.dim, H.dim)


def dual_left_bimodule(n: Module) -> Bimodule:
    """``D(n) = Hom_k(n, k)`` as an ``A``-``k`` bimodule, ``(a psi)(y) = psi(y a)``."""
    from .algebra import ground_algebra
    f = n.field
    return Bimodule(n.algebra, ground_algebra(f), [r.T for r in n.action], [f.identity(n.dim)], f"D{n.name}")


def natural_map_tensor_dual(m: Module, n: Module) -> NaturalMap:
    """``m (x)_A D(n) -> D Hom_A(m, n)``, ``x (x) psi -> (f -> psi(f(x)))``."""
    _check_same(n, m)
    f = m.field
    B = dual_left_bimodule(n)
    T = tensor_over_algebra(m, B)
    H = hom(m, n)
    basis = [phi.tolist() for phi in H.basis]
    S = T.tensor_data.section
    rows = []
    for r in range(S.rows):
        idx = next(j for j, x in enumerate(S.row(r).entries()) if x != 0)
        i, j = divmod(idx, B.dim)
        rows.append([phi[i][j] for phi in basis])
    mat = f.from_entries(len(rows), H.dim, [x for r in rows for x in r]) if rows else f.zeros(0, H.dim)
    return NaturalMap(mat, T.dim, H.dim)


def random_short_exact_sequence(m: Module, rng: random.Random, generators: int = 1) -> ShortExactSequence:
    """``0 -> U -> m -> m/U -> 0`` with ``U`` generated by random vectors."""
    f = m.field
    vecs = f.from_entries(generators, m.dim, [f.scalar(rng.randint(-3, 3)) for _ in range(generators * m.dim)])
    U, inc = generated_submodule(m, vecs)
    Q, proj, _ = quotient(m, Subspace(f, m.dim, inc))
    return ShortExactSequence(U, m, Q, inc, proj)


# -- the canonical trace on Hom(P, nu P) ----------------------------------------------------

def trace_data(p: Module):
    """Dual basis ``(q_i, theta_i)`` of a projective built from ``e_v A`` summands:
    ``q_i`` is ``e_v`` in summand ``i`` and ``theta_i: P -> A`` the summand's inclusion."""
    if p.proj_vertices is None:
        raise ValueError("module carries no projective summand data")
    a = p.algebra
    f = p.field
    out = []
    off = 0
    for v in p.proj_vertices:
        B = _vertex_basis(a, v)
        coords = Subspace(f, a.dim, B, reduced=True).coordinates(a.idempotents[v])
        q = f._raw(1, p.dim)
        for j, x in enumerate(coords.entries()):
            q[0, off + j] = x
        theta = f._raw(p.dim, a.dim)
        for r, row in enumerate(B.tolist()):
            for c, x in enumerate(row):
                if x != 0:
                    theta[off + r, c] = x
        out.append((Matrix(f, q), Matrix(f, theta).flatten()))
        off += B.rows
    return out


def nakayama_trace(p: Module, nu_p: Module, w: Matrix):
    """``Tr(w)`` for ``w: P -> nu(P)``: the sum over dual bases of ``psi(theta_i(x))``
    where ``x (x) psi`` represents ``w(q_i)``."""
    f = p.field
    total = f.scalar(0)
    S = nu_p.tensor_data.section
    data = p.__dict__.get("_trace_data")
    if data is None:
        data = p.__dict__["_trace_data"] = trace_data(p)
    for q, theta in data:
        u = q @ w @ S
        total += (u @ theta.T)[0, 0]
    return total
