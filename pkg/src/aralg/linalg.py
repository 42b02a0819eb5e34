"""Exact dense linear algebra over the rationals and prime fields.

Vectors are rows and maps act on the right: a matrix ``A`` of shape
``(m, n)`` is the linear map ``k^m -> k^n`` sending ``v`` to ``v @ A``.
Composition "first ``A`` then ``B``" is therefore ``A @ B``.

The arithmetic is delegated to FLINT (``python-flint``): ``fmpq_mat`` for
the rationals and ``nmod_mat`` for prime fields.  Everything above this
module only sees :class:`Matrix`, :class:`Subspace` and :class:`FieldSpec`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import flint


class ShapeError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: ``FieldSpec("Q")`` or ``FieldSpec("Fp", p)``."""

    kind: str = "Q"
    p: int = 0

    def __post_init__(self):
        if self.kind == "Q":
            if self.p != 0:
                raise ValueError("the rationals carry no modulus")
        elif self.kind == "Fp":
            if not _is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("Q")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("Fp", p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        text = text.strip()
        if text in ("Q", "QQ"):
            return cls("Q")
        if text.startswith("Fp:") or text.startswith("F:"):
            return cls("Fp", int(text.split(":", 1)[1]))
        raise ValueError(f"bad field descriptor {text!r}")

    @property
    def descriptor(self) -> str:
        return "Q" if self.kind == "Q" else f"Fp:{self.p}"

    @property
    def characteristic(self) -> int:
        return self.p

    def __str__(self):
        return self.descriptor

    # scalars -----------------------------------------------------------
    def scalar(self, x):
        if self.kind == "Q":
            if isinstance(x, Fraction):
                return flint.fmpq(x.numerator, x.denominator)
            if isinstance(x, flint.nmod):
                raise TypeError("mixing fields")
            return flint.fmpq(x)
        if isinstance(x, (Fraction, flint.fmpq)):
            num, den = int(x.numerator if isinstance(x, Fraction) else x.p), int(
                x.denominator if isinstance(x, Fraction) else x.q
            )
            return flint.nmod(num, self.p) / flint.nmod(den, self.p)
        return flint.nmod(int(x), self.p)

    def parse_scalar(self, text) -> object:
        if isinstance(text, int):
            return self.scalar(text)
        text = str(text).strip()
        if "/" in text:
            num, den = text.split("/")
            return self.scalar(Fraction(int(num), int(den)))
        return self.scalar(int(text))

    def format_scalar(self, x) -> str:
        if self.kind == "Q":
            x = flint.fmpq(x)
            return str(x.p) if x.q == 1 else f"{x.p}/{x.q}"
        return str(int(x))

    def is_zero(self, x) -> bool:
        return x == 0

    # matrices ----------------------------------------------------------
    def _raw(self, rows: int, cols: int, entries=None):
        if self.kind == "Q":
            if entries is None:
                return flint.fmpq_mat(rows, cols)
            return flint.fmpq_mat(rows, cols, entries)
        if entries is None:
            return flint.nmod_mat(rows, cols, self.p)
        return flint.nmod_mat(rows, cols, [int(e) if not isinstance(e, flint.nmod) else e for e in entries], self.p)

    def matrix(self, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        rows = list(rows)
        if cols is None:
            if not rows:
                raise ShapeError("cannot infer column count of an empty row list")
            cols = len(rows[0])
        entries = []
        for r in rows:
            if len(r) != cols:
                raise ShapeError("ragged rows")
            entries.extend(self.scalar(x) if isinstance(x, Fraction) else x for x in r)
        return Matrix(self, self._raw(len(rows), cols, entries))

    def zeros(self, rows: int, cols: int) -> "Matrix":
        return Matrix(self, self._raw(rows, cols))

    def identity(self, n: int) -> "Matrix":
        m = self._raw(n, n)
        for i in range(n):
            m[i, i] = 1
        return Matrix(self, m)

    def unit_vector(self, n: int, i: int) -> "Matrix":
        m = self._raw(1, n)
        m[0, i] = 1
        return Matrix(self, m)

    def from_entries(self, rows: int, cols: int, entries: Sequence) -> "Matrix":
        if len(entries) != rows * cols:
            raise ShapeError("entry count does not match shape")
        return Matrix(self, self._raw(rows, cols, list(entries)))


class Matrix:
    """Immutable exact matrix over a :class:`FieldSpec`."""

    __slots__ = ("field", "raw")

    def __init__(self, field: FieldSpec, raw):
        self.field = field
        self.raw = raw

    @property
    def rows(self) -> int:
        return self.raw.nrows()

    @property
    def cols(self) -> int:
        return self.raw.ncols()

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.to_strings()})"

    def __getitem__(self, ij):
        return self.raw[ij]

    def entries(self) -> list:
        if self.rows == 0 or self.cols == 0:
            return []
        return self.raw.entries()

    def tolist(self) -> list:
        e = self.entries()
        c = self.cols
        return [e[i * c:(i + 1) * c] for i in range(self.rows)]

    def to_strings(self) -> list:
        f = self.field.format_scalar
        return [[f(x) for x in row] for row in self.tolist()]

    # arithmetic --------------------------------------------------------
    def _check(self, other: "Matrix"):
        if other.field != self.field:
            raise TypeError("matrices over different fields")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return self.field.zeros(self.rows, other.cols)
        return Matrix(self.field, self.raw * other.raw)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        if self.rows == 0 or self.cols == 0:
            return self
        return Matrix(self.field, self.raw + other.raw)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        if self.rows == 0 or self.cols == 0:
            return self
        return Matrix(self.field, self.raw - other.raw)

    def __neg__(self) -> "Matrix":
        if self.rows == 0 or self.cols == 0:
            return self
        return Matrix(self.field, -self.raw)

    def scale(self, c) -> "Matrix":
        if self.rows == 0 or self.cols == 0:
            return self
        return Matrix(self.field, self.raw * self.field.scalar(c))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape or self.field != other.field:
            return False
        if self.rows == 0 or self.cols == 0:
            return True
        return self.raw == other.raw

    __hash__ = None

    @property
    def T(self) -> "Matrix":
        if self.rows == 0 or self.cols == 0:
            return self.field.zeros(self.cols, self.rows)
        return Matrix(self.field, self.raw.transpose())

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries())

    def is_square(self) -> bool:
        return self.rows == self.cols

    def trace(self):
        t = self.field.scalar(0)
        for i in range(min(self.rows, self.cols)):
            t += self.raw[i, i]
        return t

    def power(self, n: int) -> "Matrix":
        result = self.field.identity(self.rows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def row(self, i: int) -> "Matrix":
        return self.select_rows([i])

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        rows = self.tolist()
        return self.field.from_entries(len(idx), self.cols, [x for i in idx for x in rows[i]])

    def select_cols(self, idx: Sequence[int]) -> "Matrix":
        rows = self.tolist()
        return self.field.from_entries(self.rows, len(idx), [r[j] for r in rows for j in idx])

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        rows = self.tolist()
        return self.field.from_entries(r1 - r0, c1 - c0, [x for r in rows[r0:r1] for x in r[c0:c1]])

    def flatten(self) -> "Matrix":
        """Row-major vectorisation as a 1 x (rows*cols) matrix."""
        return self.field.from_entries(1, self.rows * self.cols, self.entries())

    def reshape(self, rows: int, cols: int) -> "Matrix":
        return self.field.from_entries(rows, cols, self.entries())

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return self.raw.rank()

    def rref(self):
        """Return ``(R, pivots)`` with ``R`` the nonzero rows of the reduced echelon form."""
        if self.rows == 0 or self.cols == 0:
            return self.field.zeros(0, self.cols), []
        R, rank = self.raw.rref()
        e = R.entries()
        c = self.cols
        pivots = []
        for i in range(rank):
            row = e[i * c:(i + 1) * c]
            for j, x in enumerate(row):
                if x != 0:
                    pivots.append(j)
                    break
        return self.field.from_entries(rank, c, e[: rank * c]), pivots

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def inverse(self) -> "Matrix":
        if not self.is_invertible():
            raise ValueError("matrix is not invertible")
        if self.rows == 0:
            return self
        return Matrix(self.field, self.raw.inv())

    def charpoly(self):
        if self.rows == 0:
            return None
        return self.raw.charpoly()


# -- constructors ----------------------------------------------------------

def vstack(mats: Sequence[Matrix], cols: Optional[int] = None, field: Optional[FieldSpec] = None) -> Matrix:
    mats = list(mats)
    if not mats:
        if cols is None or field is None:
            raise ShapeError("vstack of nothing needs cols and field")
        return field.zeros(0, cols)
    f = mats[0].field
    c = mats[0].cols
    entries = []
    rows = 0
    for m in mats:
        if m.cols != c:
            raise ShapeError("vstack column mismatch")
        entries.extend(m.entries())
        rows += m.rows
    return f.from_entries(rows, c, entries)


def hstack(mats: Sequence[Matrix], rows: Optional[int] = None, field: Optional[FieldSpec] = None) -> Matrix:
    mats = list(mats)
    if not mats:
        if rows is None or field is None:
            raise ShapeError("hstack of nothing needs rows and field")
        return field.zeros(rows, 0)
    r = mats[0].rows
    for m in mats:
        if m.rows != r:
            raise ShapeError("hstack row mismatch")
    lists = [m.tolist() for m in mats]
    entries = [x for i in range(r) for L in lists for x in L[i]]
    return mats[0].field.from_entries(r, sum(m.cols for m in mats), entries)


def block_diag(mats: Sequence[Matrix], field: Optional[FieldSpec] = None) -> Matrix:
    mats = list(mats)
    if not mats:
        return field.zeros(0, 0)
    f = mats[0].field
    R = sum(m.rows for m in mats)
    C = sum(m.cols for m in mats)
    out = f._raw(R, C)
    r0 = c0 = 0
    for m in mats:
        L = m.tolist()
        for i, row in enumerate(L):
            for j, x in enumerate(row):
                if x != 0:
                    out[r0 + i, c0 + j] = x
        r0 += m.rows
        c0 += m.cols
    return Matrix(f, out)


def block_matrix(blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    return vstack([hstack(row) for row in blocks])


def kron(a: Matrix, b: Matrix) -> Matrix:
    f = a.field
    A = a.tolist()
    B = b.tolist()
    out = f._raw(a.rows * b.rows, a.cols * b.cols)
    for i, arow in enumerate(A):
        for j, x in enumerate(arow):
            if x == 0:
                continue
            for k, brow in enumerate(B):
                r = i * b.rows + k
                for l, y in enumerate(brow):
                    if y != 0:
                        out[r, j * b.cols + l] = x * y
    return Matrix(f, out)


def linear_combination(coeffs: Sequence, mats: Sequence[Matrix], rows: int = None, cols: int = None,
                       field: FieldSpec = None) -> Matrix:
    if not mats:
        return field.zeros(rows, cols)
    out = mats[0].field.zeros(mats[0].rows, mats[0].cols)
    for c, m in zip(coeffs, mats):
        if c != 0:
            out = out + m.scale(c)
    return out


# -- subspaces --------------------------------------------------------------

class Subspace:
    """Row span of a matrix, stored by its reduced echelon basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: FieldSpec, ambient_dim: int, basis: Optional[Matrix] = None, *, reduced=False):
        self.field = field
        self.ambient_dim = ambient_dim
        if basis is None:
            basis = field.zeros(0, ambient_dim)
        if basis.cols != ambient_dim:
            raise ShapeError("basis width does not match ambient dimension")
        if reduced:
            self.basis = basis
            self.pivots = _pivots_of(basis)
        else:
            self.basis, self.pivots = basis.rref()

    @classmethod
    def span(cls, vectors: Matrix) -> "Subspace":
        return cls(vectors.field, vectors.cols, vectors)

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, field.identity(n), reduced=True)

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n)

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    __hash__ = None

    def contains(self, vectors: Matrix) -> bool:
        if vectors.rows == 0:
            return True
        return self.coordinates(vectors) is not None

    def __contains__(self, vectors: Matrix) -> bool:
        return self.contains(vectors)

    def reduce(self, vectors: Matrix) -> Matrix:
        """Remainder of each row after clearing the pivot columns."""
        if self.dim == 0 or vectors.rows == 0:
            return vectors
        coeff = vectors.select_cols(self.pivots)
        return vectors - coeff @ self.basis

    def coordinates(self, vectors: Matrix) -> Optional[Matrix]:
        """``X`` with ``X @ basis == vectors``, or ``None`` if not contained."""
        if vectors.cols != self.ambient_dim:
            raise ShapeError("vector width does not match ambient dimension")
        if self.dim == 0:
            return self.field.zeros(vectors.rows, 0) if vectors.is_zero() else None
        coeff = vectors.select_cols(self.pivots)
        if not (vectors - coeff @ self.basis).is_zero():
            return None
        return coeff

    def complement_indices(self) -> list:
        piv = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in piv]

    def complement_basis(self) -> Matrix:
        """Standard basis vectors at the non-pivot columns."""
        idx = self.complement_indices()
        m = self.field._raw(len(idx), self.ambient_dim)
        for i, j in enumerate(idx):
            m[i, j] = 1
        return Matrix(self.field, m)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.field, self.ambient_dim, vstack([self.basis, other.basis]))

    def intersect(self, other: "Subspace") -> "Subspace":
        _, pu, _ = pullback_pair(self.basis, other.basis)
        return Subspace(self.field, self.ambient_dim, pu @ self.basis)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return other.contains(self.basis)

    def image(self, m: Matrix) -> "Subspace":
        return Subspace(self.field, m.cols, self.basis @ m)

    def extend_to_basis_of(self, bigger: "Subspace") -> Matrix:
        """Rows of ``bigger``'s basis completing this subspace's basis, chosen greedily."""
        current = Subspace(self.field, self.ambient_dim, self.basis, reduced=True)
        chosen = []
        for i in range(bigger.dim):
            v = bigger.basis.row(i)
            if not current.contains(v):
                chosen.append(v)
                current = current + Subspace(self.field, self.ambient_dim, v)
        return vstack(chosen, cols=self.ambient_dim, field=self.field)


def _pivots_of(m: Matrix) -> list:
    piv = []
    for row in m.tolist():
        for j, x in enumerate(row):
            if x != 0:
                piv.append(j)
                break
    return piv


# -- operations ---------------------------------------------------------------

def kernel_basis(m: Matrix) -> Subspace:
    """Left kernel ``{v : v @ m == 0}``."""
    f = m.field
    n = m.rows
    if n == 0:
        return Subspace.zero(f, 0)
    if m.cols == 0:
        return Subspace.full(f, n)
    R, pivots = m.T.rref()
    rows = R.tolist()
    piv_set = set(pivots)
    free = [j for j in range(n) if j not in piv_set]
    out = f._raw(len(free), n)
    for k, j in enumerate(free):
        out[k, j] = 1
        for i, pc in enumerate(pivots):
            x = rows[i][j]
            if x != 0:
                out[k, pc] = -x
    return Subspace(f, n, Matrix(f, out))


def right_kernel(m: Matrix) -> Matrix:
    """Columns ``x`` with ``m @ x == 0``, returned as rows of a matrix."""
    return kernel_basis(m.T).basis


def solve_left(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """Some ``X`` with ``X @ a == b``, or ``None``."""
    if a.cols != b.cols:
        raise ShapeError(f"solve_left: {a.shape} vs {b.shape}")
    f = a.field
    if b.rows == 0:
        return f.zeros(0, a.rows)
    if a.rows == 0:
        return f.zeros(b.rows, 0) if b.is_zero() else None
    aug = hstack([a.T, b.T])
    R, pivots = aug.rref()
    r = a.rows
    if any(p >= r for p in pivots):
        return None
    rows = R.tolist()
    out = f._raw(b.rows, r)
    for i, pc in enumerate(pivots):
        for j in range(b.rows):
            x = rows[i][r + j]
            if x != 0:
                out[j, pc] = x
    return Matrix(f, out)


def solve_factorization(f: Matrix, g: Matrix) -> Optional[Matrix]:
    """``h`` with ``h @ g == f`` (f: a x c, g: b x c), or ``None``."""
    if f.cols != g.cols:
        raise ShapeError(f"maps do not share a target: {f.shape} vs {g.shape}")
    return solve_left(g, f)


def pullback_pair(f: Matrix, g: Matrix):
    """Pairs ``(u, v)`` with ``u @ f == v @ g``.

    Returns the subspace of ``k^(a+b)`` and the two projection matrices from
    subspace coordinates to ``k^a`` and ``k^b``.
    """
    if f.cols != g.cols:
        raise ShapeError(f"maps do not share a target: {f.shape} vs {g.shape}")
    a, b = f.rows, g.rows
    sub = kernel_basis(vstack([f, -g], cols=f.cols, field=f.field)) if a + b else Subspace.zero(f.field, 0)
    basis = sub.basis
    pu = basis.block(0, basis.rows, 0, a)
    pv = basis.block(0, basis.rows, a, a + b)
    return sub, pu, pv


def image_basis(m: Matrix) -> Subspace:
    return Subspace(m.field, m.cols, m)


def rank(m: Matrix) -> int:
    return m.rank()


def rational_eigenvalues(m: Matrix) -> list:
    """Eigenvalues of ``m`` lying in the ground field, without multiplicity."""
    if m.rows == 0:
        return []
    _, factors = m.charpoly().factor()
    roots = []
    for fac, _ in factors:
        if fac.degree() == 1:
            c = fac.coeffs()
            roots.append(m.field.scalar(0) - m.field.scalar(c[0]) / m.field.scalar(c[1]))
    return roots
