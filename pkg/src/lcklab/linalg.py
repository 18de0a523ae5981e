"""Exact dense linear algebra over the rationals.

Matrices store ``fractions.Fraction`` entries and every operation stays in
exact arithmetic; nothing here ever touches floating point.  Subspaces are
kept in reduced row-echelon form, so two equal subspaces compare equal as
plain data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import NonSymmetric

Rat = Fraction

Vec = "tuple[Fraction, ...]"


def as_rat(x) -> Fraction:
    """Coerce an int, string or Fraction to Fraction; floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("expected an exact rational, got {!r}".format(x))


def vec(xs: Iterable) -> tuple:
    return tuple(as_rat(x) for x in xs)


def vec_zero(n: int) -> tuple:
    return (Fraction(0),) * n


def vec_add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u: Sequence) -> tuple:
    c = as_rat(c)
    return tuple(c * a for a in u)


def vec_is_zero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class Matrix:
    """Immutable dense rational matrix, row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "Matrix":
        rows = [vec(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ValueError("ragged rows")
        return Matrix(n, m, tuple(x for r in rows for x in r))

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(
            n, n, tuple(Fraction(1 if i == j else 0) for i in range(n) for j in range(n))
        )

    @staticmethod
    def zeros(r: int, c: int) -> "Matrix":
        return Matrix(r, c, (Fraction(0),) * (r * c))

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        return sum((self.entry(i, i) for i in range(self.rows)), Fraction(0))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and self == self.transpose()

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(
            self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(
            self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries))
        )

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "Matrix":
        c = as_rat(c)
        return Matrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")

        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(dot(ri, other.col(j)))
        return Matrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def power(self, k: int) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        out = Matrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def _same_shape(self, other: "Matrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")


@lru_cache(maxsize=4096)
def _rref(m: Matrix):
    """Reduced row-echelon form and its pivot columns."""
    a = m.row_list()
    nr, nc = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(nc):
        pivot = None
        for i in range(r, nr):
            if a[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return Matrix.from_rows(a), tuple(pivots)


def rref(m: Matrix):
    return _rref(m)


def rank(m: Matrix) -> int:
    return len(_rref(m)[1])


def det(m: Matrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    a = m.row_list()
    n = m.rows
    sign = 1
    out = Fraction(1)
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if a[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            sign = -sign
        pv = a[c][c]
        out *= pv
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / pv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return out * sign


def solve(m: Matrix, b: Sequence) -> Optional[tuple]:
    """One exact solution of m x = b, or None if the system is inconsistent.

    Deterministic: free variables of the reduced echelon system are set to 0.
    """
    b = vec(b)
    if len(b) != m.rows:
        raise ValueError("right-hand side length does not match row count")
    aug = Matrix(
        m.rows,
        m.cols + 1,
        tuple(
            x
            for i in range(m.rows)
            for x in tuple(m.row(i)) + (b[i],)
        ),
    )
    r, pivots = _rref(aug)
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for k, c in enumerate(pivots):
        x[c] = r.entry(k, m.cols)
    return tuple(x)


def inverse(m: Matrix) -> Optional[Matrix]:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = Matrix(
        n,
        2 * n,
        tuple(
            x
            for i in range(n)
            for x in tuple(m.row(i))
            + tuple(Fraction(1 if i == j else 0) for j in range(n))
        ),
    )
    r, pivots = _rref(aug)
    if tuple(pivots[:n]) != tuple(range(n)):
        return None
    return Matrix(n, n, tuple(r.entry(i, n + j) for i in range(n) for j in range(n)))


def kernel_basis(m: Matrix) -> "Subspace":
    """Canonical basis of the null space {v : m v = 0}."""
    r, pivots = _rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for k, c in enumerate(pivots):
            v[c] = -r.entry(k, f)
        basis.append(tuple(v))
    return Subspace.span(m.cols, basis)


def is_positive_definite(s: Matrix) -> bool:
    """Sylvester's criterion with exact leading principal minors."""
    if not s.is_symmetric():
        raise NonSymmetric("matrix is not symmetric")
    n = s.rows
    for k in range(1, n + 1):
        minor = Matrix.from_rows([[s.entry(i, j) for j in range(k)] for i in range(k)])
        if det(minor) <= 0:
            return False
    return True


def symmetric_signature(s: Matrix):
    """Exact inertia (n_plus, n_minus, n_zero) of a symmetric matrix.

    Congruence reduction: never extracts eigenvalues, only signs of pivots.
    """
    if not s.is_symmetric():
        raise NonSymmetric("matrix is not symmetric")
    a = s.row_list()
    n = s.rows
    plus = minus = 0
    live = list(range(n))
    while live:
        # prefer a nonzero diagonal pivot
        p = next((i for i in live if a[i][i] != 0), None)
        if p is None:
            pair = next(
                ((i, j) for i in live for j in live if j > i and a[i][j] != 0), None
            )
            if pair is None:
                break
            i, j = pair
            # e_i -> e_i + e_j turns the off-diagonal entry into a diagonal one
            for k in range(n):
                a[i][k] = a[i][k] + a[j][k]
            for k in range(n):
                a[k][i] = a[k][i] + a[k][j]
            p = i
        piv = a[p][p]
        if piv > 0:
            plus += 1
        else:
            minus += 1
        live.remove(p)
        for i in live:
            if a[i][p] != 0:
                f = a[i][p] / piv
                for k in range(n):
                    a[i][k] = a[i][k] - f * a[p][k]
                for k in range(n):
                    a[k][i] = a[k][i] - f * a[k][p]
    return plus, minus, n - plus - minus


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n with a canonical (RREF) basis.

    Equal subspaces are equal as values, so chains of subspaces can be
    compared for stabilization by ``==``.
    """

    ambient_dim: int
    basis: tuple

    @staticmethod
    def span(ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        vectors = [vec(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        if not vectors:
            return Subspace(ambient_dim, ())
        r, pivots = _rref(Matrix.from_rows(vectors))
        rows = tuple(r.row(i) for i in range(len(pivots)))
        return Subspace(ambient_dim, rows)

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, ())

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace.span(ambient_dim, Matrix.identity(ambient_dim).row_list())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        return self.coordinates_of(v) is not None

    def coordinates_of(self, v: Sequence) -> Optional[tuple]:
        """Coefficients of v over the canonical basis, or None if outside."""
        v = vec(v)
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        if not self.basis:
            return () if vec_is_zero(v) else None
        m = Matrix.from_rows(self.basis).transpose()
        x = solve(m, v)
        if x is None:
            return None
        if m.apply(x) != v:
            return None
        return x

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimensions differ")
        return Subspace.span(self.ambient_dim, list(self.basis) + list(other.basis))

    def pivot_columns(self) -> tuple:
        m = Matrix.from_rows(self.basis) if self.basis else Matrix.zeros(0, self.ambient_dim)
        return _rref(m)[1] if self.basis else ()

    def complement_pivots(self) -> tuple:
        """Indices of standard basis vectors spanning a complement."""
        piv = set(self.pivot_columns())
        return tuple(i for i in range(self.ambient_dim) if i not in piv)
