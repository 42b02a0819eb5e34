"""Finite-dimensional algebras given by structure constants.

An :class:`Algebra` stores, for every basis element ``b_i``, the matrix of
right multiplication ``x -> x * b_i`` on the regular representation and the
matrix of left multiplication ``x -> b_i * x``.  Path algebras of quivers
with admissible relations are built by :func:`build_path_algebra`; paths
compose left to right, so the path ``a*b`` is "first ``a`` then ``b``".
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import flint

from .linalg import FieldSpec, Matrix, Subspace, kernel_basis, vstack, linear_combination


class AlgebraError(ValueError):
    pass


class InfiniteDimensional(AlgebraError):
    pass


class InadmissibleRelation(AlgebraError):
    pass


class UnsupportedCharacteristic(ArithmeticError):
    pass


class ValidationError(AlgebraError):
    pass


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple[str, ...]
    arrows: Tuple[Tuple[str, str, str], ...]  # (name, source, target)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple((str(a), str(s), str(t)) for a, s, t in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex names")
        names = [a for a, _, _ in self.arrows]
        if len(set(names)) != len(names) or set(names) & set(self.vertices):
            raise AlgebraError("arrow names must be unique and distinct from vertex names")
        for a, s, t in self.arrows:
            if s not in self.vertices or t not in self.vertices:
                raise AlgebraError(f"arrow {a} has an undeclared endpoint")

    def arrow(self, name: str):
        for a in self.arrows:
            if a[0] == name:
                return a
        raise KeyError(name)

    def source(self, path: Tuple[str, ...]) -> str:
        return self.arrow(path[0])[1]

    def target(self, path: Tuple[str, ...]) -> str:
        return self.arrow(path[-1])[2]

    def has_oriented_cycle(self) -> bool:
        succ = {v: [t for _, s, t in self.arrows if s == v] for v in self.vertices}
        state = {}

        def visit(v):
            state[v] = 1
            for w in succ[v]:
                if state.get(w) == 1 or (w not in state and visit(w)):
                    return True
            state[v] = 2
            return False

        return any(v not in state and visit(v) for v in self.vertices)

    def reversed(self) -> "Quiver":
        return Quiver(self.vertices, tuple((a, t, s) for a, s, t in self.arrows))


def parse_path(path) -> Tuple[str, ...]:
    if isinstance(path, str):
        return tuple(p.strip() for p in path.split("*") if p.strip())
    return tuple(str(p) for p in path)


@dataclass(frozen=True)
class Relation:
    """Linear combination of parallel paths of length at least two."""

    terms: Tuple[Tuple[object, Tuple[str, ...]], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((c, parse_path(p)) for c, p in self.terms))

    def check(self, quiver: Quiver):
        ends = set()
        for _, path in self.terms:
            if len(path) < 2:
                raise InadmissibleRelation(f"relation term {'*'.join(path) or '<trivial>'} has length < 2")
            for a, b in zip(path, path[1:]):
                if quiver.arrow(a)[2] != quiver.arrow(b)[1]:
                    raise AlgebraError(f"path {'*'.join(path)} is not composable")
            ends.add((quiver.source(path), quiver.target(path)))
        if len(ends) > 1:
            raise AlgebraError("relation terms do not share source and target")


class Algebra:
    """Finite-dimensional unital associative algebra with a fixed basis.

    ``right_mult[i]`` is the matrix of ``x -> x * b_i`` and ``left_mult[i]``
    the matrix of ``x -> b_i * x``; both act on row vectors.  Basic algebras
    additionally carry a complete set of primitive orthogonal idempotents
    (``idempotents``, one per vertex), a basis of the radical, and a list of
    generators of the radical of the form ``e_u * g * e_w``.
    """

    def __init__(self, field: FieldSpec, labels: Sequence[str], right_mult: Sequence[Matrix],
                 left_mult: Sequence[Matrix], unit: Matrix, *, vertices: Sequence[str] = (),
                 idempotents: Sequence[Matrix] = (), radical: Optional[Subspace] = None,
                 generators: Optional[Sequence[Tuple[Matrix, int, int]]] = None, name: str = "",
                 quiver: Optional[Quiver] = None, relations: Sequence[Relation] = (),
                 nilpotency_bound: Optional[int] = None, paths: Sequence[Tuple[str, ...]] = (),
                 is_opposite: bool = False):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.right_mult = tuple(right_mult)
        self.left_mult = tuple(left_mult)
        self.unit = unit
        self.vertices = tuple(vertices)
        self.idempotents = tuple(idempotents)
        self._radical = radical
        self._generators = None if generators is None else tuple(generators)
        self.name = name
        self.quiver = quiver
        self.relations = tuple(relations)
        self.nilpotency_bound = nilpotency_bound
        self.paths = tuple(paths)
        self.is_opposite = is_opposite
        self._opposite: Optional[Algebra] = None

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, field={self.field})"

    # -- elements -------------------------------------------------------
    def basis_vector(self, i: int) -> Matrix:
        return self.field.unit_vector(self.dim, i)

    def element(self, coords: Dict[str, object]) -> Matrix:
        v = self.field.zeros(1, self.dim)
        for lab, c in coords.items():
            v = v + self.basis_vector(self.labels.index(lab)).scale(c)
        return v

    def right_matrix(self, x: Matrix) -> Matrix:
        """Matrix of right multiplication by the element ``x``."""
        return linear_combination(x.entries(), self.right_mult, self.dim, self.dim, self.field) \
            if self.dim else self.field.zeros(0, 0)

    def left_matrix(self, x: Matrix) -> Matrix:
        return linear_combination(x.entries(), self.left_mult, self.dim, self.dim, self.field) \
            if self.dim else self.field.zeros(0, 0)

    def mul(self, x: Matrix, y: Matrix) -> Matrix:
        return x @ self.right_matrix(y)

    def structure_constants(self) -> List[List[List[object]]]:
        """``c[i][j][k]`` with ``b_i * b_j = sum_k c[i][j][k] b_k``."""
        rm = [m.tolist() for m in self.right_mult]
        return [[rm[j][i] for j in range(self.dim)] for i in range(self.dim)]

    @property
    def is_basic(self) -> bool:
        return bool(self.idempotents)

    @property
    def num_vertices(self) -> int:
        return len(self.idempotents)

    def vertex_index(self, v) -> int:
        if isinstance(v, int):
            return v
        return self.vertices.index(str(v))

    # -- radical and generators -----------------------------------------
    @property
    def radical(self) -> Subspace:
        if self._radical is None:
            self._radical = radical_of_endo_algebra(self)
        return self._radical

    @property
    def radical_basis(self) -> Subspace:
        return self.radical

    @cached_property
    def radical_matrices(self) -> Tuple[Matrix, ...]:
        return tuple(self.right_matrix(self.radical.basis.row(i)) for i in range(self.radical.dim))

    @property
    def generators(self) -> Tuple[Tuple[Matrix, int, int], ...]:
        """Radical generators ``(g, u, w)`` with ``g = e_u g e_w``; together with
        the idempotents they generate the algebra."""
        if self._generators is None:
            self._generators = tuple(self._compute_generators())
        return self._generators

    def _compute_generators(self):
        rad = self.radical
        if rad.dim == 0:
            return []
        prods = []
        for i in range(rad.dim):
            ri = rad.basis.row(i)
            Ri = self.right_matrix(ri)
            for j in range(rad.dim):
                prods.append(rad.basis.row(j) @ Ri)
        rad2 = Subspace(self.field, self.dim, vstack(prods))
        lifts = rad2.extend_to_basis_of(rad)
        gens = []
        if not self.idempotents:
            return [(lifts.row(i), -1, -1) for i in range(lifts.rows)]
        pieces = []
        for i in range(lifts.rows):
            g = lifts.row(i)
            for u, eu in enumerate(self.idempotents):
                left = self.mul(eu, g)
                if left.is_zero():
                    continue
                for w, ew in enumerate(self.idempotents):
                    piece = self.mul(left, ew)
                    if not piece.is_zero():
                        pieces.append((piece, u, w))
        span = Subspace(self.field, self.dim, vstack([rad2.basis] + [p for p, _, _ in pieces]))
        assert span.dim == rad.dim
        # keep a minimal subfamily still spanning rad modulo rad^2
        current = rad2
        for piece, u, w in pieces:
            if not current.contains(piece):
                gens.append((piece, u, w))
                current = current + Subspace(self.field, self.dim, piece)
        return gens

    # -- opposite ---------------------------------------------------------
    def opposite(self) -> "Algebra":
        if self._opposite is None:
            op = Algebra(self.field, self.labels, self.left_mult, self.right_mult, self.unit,
                         vertices=self.vertices, idempotents=self.idempotents, radical=self._radical,
                         generators=None if self._generators is None else
                         [(g, w, u) for g, u, w in self._generators],
                         name=(self.name[:-3] if self.name.endswith("^op") else self.name + "^op"),
                         quiver=self.quiver.reversed() if self.quiver else None,
                         relations=[Relation(tuple((c, tuple(reversed(p))) for c, p in r.terms))
                                    for r in self.relations],
                         nilpotency_bound=self.nilpotency_bound,
                         paths=[tuple(reversed(p)) for p in self.paths],
                         is_opposite=not self.is_opposite)
            op._opposite = self
            self._opposite = op
        return self._opposite

    @property
    def op(self) -> "Algebra":
        return self.opposite()

    # -- validation ---------------------------------------------------------
    def validate(self) -> None:
        """Raise :class:`ValidationError` if any algebra axiom fails."""
        n = self.dim
        f = self.field
        I = f.identity(n)
        if self.unit.shape != (1, n):
            raise ValidationError("unit has the wrong length")
        if self.right_matrix(self.unit) != I or self.left_matrix(self.unit) != I:
            raise ValidationError("unit is not a two-sided identity")
        c = self.structure_constants()
        for i in range(n):
            for j in range(n):
                prod = linear_combination(c[i][j], self.right_mult, n, n, f)
                if self.right_mult[i] @ self.right_mult[j] != prod:
                    raise ValidationError(f"associativity fails at ({self.labels[i]}, {self.labels[j]})")
                lprod = linear_combination(c[i][j], self.left_mult, n, n, f)
                if self.left_mult[j] @ self.left_mult[i] != lprod:
                    raise ValidationError("left multiplication table inconsistent")
        if self.idempotents:
            total = f.zeros(1, n)
            for u, eu in enumerate(self.idempotents):
                total = total + eu
                for w, ew in enumerate(self.idempotents):
                    p = self.mul(eu, ew)
                    if p != (eu if u == w else f.zeros(1, n)):
                        raise ValidationError("idempotents are not orthogonal idempotents")
            if total != self.unit:
                raise ValidationError("idempotents do not sum to the unit")
        rad = self.radical
        for i in range(rad.dim):
            r = rad.basis.row(i)
            for j in range(n):
                b = self.basis_vector(j)
                if not rad.contains(self.mul(r, b)) or not rad.contains(self.mul(b, r)):
                    raise ValidationError("radical basis is not a two-sided ideal")
        if not _is_nilpotent_ideal(self, rad):
            raise ValidationError("radical basis is not nilpotent")
        if self.idempotents:
            for eu in self.idempotents:
                corner = Subspace(f, n, vstack([self.mul(self.mul(eu, self.basis_vector(j)), eu)
                                                for j in range(n)]))
                if corner.dim - corner.intersect(rad).dim != 1:
                    raise ValidationError("an idempotent is not primitive (or algebra not basic)")


def _is_nilpotent_ideal(alg: Algebra, ideal: Subspace) -> bool:
    current = ideal
    mats = [alg.right_matrix(ideal.basis.row(i)) for i in range(ideal.dim)]
    for _ in range(alg.dim + 1):
        if current.dim == 0:
            return True
        rows = [current.basis @ m for m in mats]
        current = Subspace(alg.field, alg.dim, vstack(rows, cols=alg.dim, field=alg.field))
    return current.dim == 0


def ground_algebra(field: FieldSpec) -> Algebra:
    one = field.identity(1)
    return Algebra(field, ["1"], [one], [one], one, vertices=["*"], idempotents=[one],
                   radical=Subspace.zero(field, 1), generators=[], name="k")


# -- path algebras ------------------------------------------------------------

def _enumerate_paths(q: Quiver, max_len: int) -> List[Tuple[str, ...]]:
    """All nontrivial paths of length 1..max_len in deterministic order."""
    arrow_order = {a: i for i, (a, _, _) in enumerate(q.arrows)}
    paths = []
    layer = [(a,) for a, _, _ in q.arrows]
    length = 1
    while layer and length <= max_len:
        layer.sort(key=lambda p: [arrow_order[a] for a in p])
        paths.extend(layer)
        nxt = []
        for p in layer:
            t = q.target(p)
            for a, s, _ in q.arrows:
                if s == t:
                    nxt.append(p + (a,))
        layer = nxt
        length += 1
    return paths


def _quotient_data(q: Quiver, rels: Sequence[Relation], field: FieldSpec, bound: int):
    """Path space of lengths < bound modulo the relation ideal; returns
    (all_paths, index, reduced echelon ideal basis with pivots on longest paths)."""
    nontrivial = _enumerate_paths(q, bound - 1)
    trivial = [("@" + v,) for v in q.vertices]
    allp = trivial + nontrivial
    index = {p: i for i, p in enumerate(allp)}
    n = len(allp)
    # columns reversed so that echelon pivots fall on the largest paths
    rev = lambda i: n - 1 - i

    def src(p):
        return p[0][1:] if p[0].startswith("@") else q.source(p)

    def tgt(p):
        return p[0][1:] if p[0].startswith("@") else q.target(p)

    def concat(p, r):
        if p[0].startswith("@"):
            return r
        if r[0].startswith("@"):
            return p
        return p + r

    gens = []
    for rel in rels:
        s, t = q.source(rel.terms[0][1]), q.target(rel.terms[0][1])
        left = [p for p in allp if tgt(p) == s]
        right = [p for p in allp if src(p) == t]
        for pl in left:
            for pr in right:
                vec = {}
                for c, path in rel.terms:
                    full = concat(concat(pl, path), pr)
                    if len(full) < bound and full in index:
                        j = rev(index[full])
                        vec[j] = vec.get(j, field.scalar(0)) + field.parse_scalar(c)
                if any(v != 0 for v in vec.values()):
                    gens.append(vec)
    if gens:
        m = field._raw(len(gens), n)
        for i, vec in enumerate(gens):
            for j, x in vec.items():
                m[i, j] = x
        ideal = Subspace(field, n, Matrix(field, m))
    else:
        ideal = Subspace.zero(field, n)
    return allp, index, ideal, rev


def build_path_algebra(q: Quiver, rels: Sequence[Relation] = (), nilpotency_bound: Optional[int] = None,
                       field: FieldSpec = FieldSpec(), name: str = "", max_search: int = 40) -> Algebra:
    """Path algebra of ``q`` modulo the ideal generated by ``rels`` (and by all
    paths of length >= ``nilpotency_bound`` when given).

    Without a bound, acyclic quivers are truncated at their longest path; for
    quivers with cycles the bound is found by increasing it until every path
    of the top length lies in the ideal, and :class:`InfiniteDimensional` is
    raised if that does not happen within ``max_search`` lengths.
    """
    rels = [r if isinstance(r, Relation) else Relation(tuple(r)) for r in rels]
    for r in rels:
        r.check(q)
    if nilpotency_bound is not None:
        bound = nilpotency_bound
        if bound < 1:
            raise AlgebraError("nilpotency bound must be at least 1")
    elif not q.has_oriented_cycle():
        bound = len(q.vertices) + 1
    else:
        bound = None
        for B in range(2, max_search + 1):
            allp, index, ideal, rev = _quotient_data(q, rels, field, B)
            top = [p for p in allp if not p[0].startswith("@") and len(p) == B - 1]
            if all(ideal.contains(field.unit_vector(len(allp), rev(index[p]))) for p in top):
                bound = B
                break
        if bound is None:
            raise InfiniteDimensional("quiver has an oriented cycle and the relations do not force nilpotency; "
                                      "give a nilpotency_bound")
    allp, index, ideal, rev = _quotient_data(q, rels, field, bound)
    n = len(allp)
    pivot_set = set(ideal.pivots)
    basis_paths = [p for p in allp if rev(index[p]) not in pivot_set]
    bindex = {p: i for i, p in enumerate(basis_paths)}
    d = len(basis_paths)

    def reduce_path(p) -> Dict[int, object]:
        if len(p) >= bound and not p[0].startswith("@"):
            return {}
        if p not in index:
            return {}
        j = rev(index[p])
        v = field.unit_vector(n, j)
        r = ideal.reduce(v).entries()
        out = {}
        for col, x in enumerate(r):
            if x != 0:
                out[bindex[allp[rev(col)]]] = x
        return out

    def src(p):
        return p[0][1:] if p[0].startswith("@") else q.source(p)

    def tgt(p):
        return p[0][1:] if p[0].startswith("@") else q.target(p)

    right = [field._raw(d, d) for _ in range(d)]
    left = [field._raw(d, d) for _ in range(d)]
    for i, pi in enumerate(basis_paths):
        for j, pj in enumerate(basis_paths):
            if tgt(pi) != src(pj):
                continue
            if pi[0].startswith("@"):
                prod = pj
            elif pj[0].startswith("@"):
                prod = pi
            else:
                prod = pi + pj
            for k, c in reduce_path(prod).items():
                right[j][i, k] = c  # (b_i) * b_j
                left[i][j, k] = c   # b_i * (b_j)
    labels = ["e_" + p[0][1:] if p[0].startswith("@") else "*".join(p) for p in basis_paths]
    R = [Matrix(field, m) for m in right]
    L = [Matrix(field, m) for m in left]
    unit = field.zeros(1, d)
    idem = []
    for v in q.vertices:
        e = field.unit_vector(d, bindex[("@" + v,)])
        idem.append(e)
        unit = unit + e
    rad_rows = [field.unit_vector(d, i) for i, p in enumerate(basis_paths) if not p[0].startswith("@")]
    radical = Subspace(field, d, vstack(rad_rows, cols=d, field=field))
    gens = []
    vindex = {v: i for i, v in enumerate(q.vertices)}
    for a, s, t in q.arrows:
        if (a,) in bindex:
            gens.append((field.unit_vector(d, bindex[(a,)]), vindex[s], vindex[t]))
    return Algebra(field, labels, R, L, unit, vertices=q.vertices, idempotents=idem, radical=radical,
                   generators=gens, name=name, quiver=q, relations=rels, nilpotency_bound=nilpotency_bound,
                   paths=basis_paths)


def opposite(a: Algebra) -> Algebra:
    return a.opposite()


def from_structure_constants(field: FieldSpec, labels, c, unit, *, idempotents=(), radical_rows=None,
                             vertices=(), name="") -> Algebra:
    """Build an :class:`Algebra` from ``c[i][j][k]`` (``b_i b_j = sum c[i][j][k] b_k``)."""
    n = len(labels)
    right = [field._raw(n, n) for _ in range(n)]
    left = [field._raw(n, n) for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                x = c[i][j][k]
                if x != 0:
                    right[j][i, k] = x
                    left[i][j, k] = x
    unit_v = unit if isinstance(unit, Matrix) else field.from_entries(1, n, [field.scalar(x) for x in unit])
    idem = [e if isinstance(e, Matrix) else field.from_entries(1, n, [field.scalar(x) for x in e])
            for e in idempotents]
    radical = None
    if radical_rows is not None:
        radical = Subspace(field, n, vstack([r if isinstance(r, Matrix) else
                                             field.from_entries(1, n, [field.scalar(x) for x in r])
                                             for r in radical_rows], cols=n, field=field))
    if not vertices and idem:
        vertices = [str(i + 1) for i in range(len(idem))]
    return Algebra(field, labels, [Matrix(field, m) for m in right], [Matrix(field, m) for m in left],
                   unit_v, vertices=vertices, idempotents=idem, radical=radical, name=name)


# -- Jacobson radical ---------------------------------------------------------

def radical_of_endo_algebra(e: Algebra) -> Subspace:
    """Jacobson radical of an algebra given by structure constants.

    In characteristic zero this is the kernel of the trace form
    ``(x, y) -> tr(x y)`` of the regular representation.  In characteristic
    ``p`` the radical is cut out by the iterated generalised trace functionals
    ``x -> tr(lift(x)^(p^i)) / p^i mod p`` for ``i = 0 .. floor(log_p n)``.
    """
    f = e.field
    n = e.dim
    if n == 0:
        return Subspace.zero(f, 0)
    traces = [m.trace() for m in e.right_mult]
    c = e.structure_constants()
    if f.kind == "Q":
        form = f._raw(n, n)
        for i in range(n):
            for j in range(n):
                s = f.scalar(0)
                for k, x in enumerate(c[i][j]):
                    if x != 0:
                        s += x * traces[k]
                form[i, j] = s
        return kernel_basis(Matrix(f, form))
    return _radical_char_p(e, c)


def _radical_char_p(e: Algebra, c) -> Subspace:
    f = e.field
    p = f.p
    n = e.dim
    current = Subspace.full(f, n)
    levels = 0
    while p ** (levels + 1) <= n:
        levels += 1
    basis_y = [e.right_mult[j] for j in range(n)]
    for i in range(levels + 1):
        if current.dim == 0:
            break
        q = p ** i
        form = f._raw(current.dim, n)
        for s in range(current.dim):
            x = current.basis.row(s)
            X = e.right_matrix(x)
            for t, Y in enumerate(basis_y):
                # right multiplication matrices compose in the order x then y
                prod = X @ Y
                lift = flint.fmpz_mat(prod.rows, prod.cols, [int(v) for v in prod.entries()])
                tr = _fmpz_trace(_fmpz_power(lift, q))
                if tr % q != 0:
                    raise UnsupportedCharacteristic(
                        "generalised trace not divisible; radical computation in characteristic "
                        f"{p} failed, use a rational model of the same quiver")
                form[s, t] = (tr // q) % p
        ker = kernel_basis(Matrix(f, form))
        current = Subspace(f, n, ker.basis @ current.basis)
    return current


def _fmpz_power(m, k: int):
    n = m.nrows()
    result = flint.fmpz_mat(n, n)
    for i in range(n):
        result[i, i] = 1
    base = m
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def _fmpz_trace(m) -> int:
    return int(sum(int(m[i, i]) for i in range(m.nrows())))


def quotient_is_local(e: Algebra) -> bool:
    """For split algebras: local iff the semisimple quotient is one-dimensional."""
    return e.dim - radical_of_endo_algebra(e).dim == 1
