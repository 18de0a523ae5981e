"""Finite-dimensional real Lie algebras given by rational structure constants.

A ``LieAlgebra`` stores brackets for basis pairs (i, j) with i < j only, so
antisymmetry holds by construction.  The constructor evaluates the Jacobi
identity on every basis triple and refuses (by default) to create an
algebra that fails it; the operations in this module that assume a genuine
Lie algebra call :meth:`LieAlgebra.require_valid` first.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Mapping, Optional, Sequence

from .errors import DimensionMismatch, JacobiViolation, UnvalidatedAlgebra
from .linalg import (
    Matrix,
    Subspace,
    as_rat,
    inverse,
    kernel_basis,
    vec,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_zero,
)


class LieAlgebra:
    """A Lie algebra over Q with a distinguished basis.

    ``brackets`` maps index pairs (i, j), i < j, to the coordinate vector of
    [e_i, e_j]; pairs given as (j, i) are accepted and negated, absent pairs
    are zero.  Instances are immutable by convention: no method mutates one.
    """

    def __init__(self, labels: Sequence[str], brackets: Mapping, check: bool = True):
        labels = tuple(str(s) for s in labels)
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be distinct")
        n = len(labels)
        table = {}
        for (i, j), value in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError("bracket index out of range")
            if i == j:
                if not vec_is_zero(vec(value)):
                    raise ValueError("[e_i, e_i] must vanish")
                continue
            coords = self._coerce_coords(value, n)
            if i > j:
                i, j = j, i
                coords = vec_scale(-1, coords)
            if (i, j) in table and table[(i, j)] != coords:
                raise ValueError("conflicting entries for bracket ({}, {})".format(i, j))
            if not vec_is_zero(coords):
                table[(i, j)] = coords
        self.labels = labels
        self.dim = n
        self._table = table
        self._violations = tuple(self._jacobi_scan())
        self.jacobi_ok = not self._violations
        if check and not self.jacobi_ok:
            raise JacobiViolation(self._violations)

    @staticmethod
    def _coerce_coords(value, n: int) -> tuple:
        if isinstance(value, dict):
            out = [Fraction(0)] * n
            for k, c in value.items():
                out[k] = as_rat(c)
            return tuple(out)
        coords = vec(value)
        if len(coords) != n:
            raise ValueError("bracket vector has wrong length")
        return coords

    @classmethod
    def from_brackets(cls, labels: Sequence[str], named: Mapping, check: bool = True):
        """Build from brackets keyed by label pairs with {label: coeff} values."""
        labels = tuple(labels)
        index = {s: i for i, s in enumerate(labels)}
        table = {}
        for (a, b), terms in named.items():
            coords = {index[s]: as_rat(c) for s, c in terms.items()}
            table[(index[a], index[b])] = coords
        return cls(labels, table, check=check)

    @classmethod
    def abelian(cls, labels: Sequence[str]):
        return cls(labels, {})

    @classmethod
    def unchecked(cls, labels: Sequence[str], brackets: Mapping):
        return cls(labels, brackets, check=False)

    def require_valid(self):
        if not self.jacobi_ok:
            raise UnvalidatedAlgebra(
                "operation requires an algebra satisfying the Jacobi identity"
            )

    # -- vectors ------------------------------------------------------------

    def label_index(self, name: str) -> int:
        try:
            return self.labels.index(name)
        except ValueError:
            raise KeyError("unknown basis label {!r}".format(name)) from None

    def basis_vector(self, i) -> tuple:
        if isinstance(i, str):
            i = self.label_index(i)
        out = [Fraction(0)] * self.dim
        out[i] = Fraction(1)
        return tuple(out)

    def vector(self, data) -> tuple:
        """Coordinate tuple from a {label: coeff} mapping or a sequence."""
        if isinstance(data, dict):
            out = [Fraction(0)] * self.dim
            for name, c in data.items():
                out[self.label_index(name)] = as_rat(c)
            return tuple(out)
        coords = vec(data)
        if len(coords) != self.dim:
            raise DimensionMismatch("vector length does not match algebra dimension")
        return coords

    # -- bracket ------------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> tuple:
        if i == j:
            return vec_zero(self.dim)
        if i < j:
            return self._table.get((i, j), vec_zero(self.dim))
        return vec_scale(-1, self._table.get((j, i), vec_zero(self.dim)))

    def bracket(self, u: Sequence, v: Sequence) -> tuple:
        if len(u) != self.dim or len(v) != self.dim:
            raise DimensionMismatch("vector length does not match algebra dimension")
        out = vec_zero(self.dim)
        for (i, j), coords in self._table.items():
            c = u[i] * v[j] - u[j] * v[i]
            if c:
                out = vec_add(out, vec_scale(c, coords))
        return out

    def _jacobi_scan(self):
        for i, j, k in combinations(range(self.dim), 3):
            r = self.bracket(self.bracket_basis(i, j), self.basis_vector(k))
            r = vec_add(r, self.bracket(self.bracket_basis(j, k), self.basis_vector(i)))
            r = vec_add(r, self.bracket(self.bracket_basis(k, i), self.basis_vector(j)))
            if not vec_is_zero(r):
                yield (i, j, k, r)

    def __eq__(self, other):
        return (
            isinstance(other, LieAlgebra)
            and self.labels == other.labels
            and self._table == other._table
        )

    def __repr__(self):
        return "LieAlgebra({}, dim={})".format("/".join(self.labels), self.dim)

    def bracket_items(self):
        """Sorted view of the stored (i, j) -> coords table."""
        return tuple(sorted(self._table.items()))


def jacobi_violations(g: LieAlgebra):
    """All basis triples where [[e_i,e_j],e_k] + cyclic fails, with residuals."""
    return g._violations


def bracket(g: LieAlgebra, u: Sequence, v: Sequence) -> tuple:
    return g.bracket(u, v)


def ad_matrix(g: LieAlgebra, u: Sequence) -> Matrix:
    """Matrix of v -> [u, v]; column j holds the image of e_j."""
    if len(u) != g.dim:
        raise DimensionMismatch("vector length does not match algebra dimension")
    cols = [g.bracket(u, g.basis_vector(j)) for j in range(g.dim)]
    return Matrix.from_rows(cols).transpose()


def is_unimodular(g: LieAlgebra) -> bool:
    return all(ad_matrix(g, g.basis_vector(i)).trace() == 0 for i in range(g.dim))


def bracket_subspaces(g: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    g.require_valid()
    gens = [g.bracket(u, v) for u in a.basis for v in b.basis]
    return Subspace.span(g.dim, gens)


def _descending_series(g: LieAlgebra, step):
    g.require_valid()
    current = Subspace.full(g.dim)
    chain = [current]
    while True:
        nxt = step(current)
        if nxt == current:
            break
        chain.append(nxt)
        current = nxt
    return tuple(chain)


def derived_series(g: LieAlgebra):
    """g ⊇ [g,g] ⊇ [[g,g],[g,g]] ⊇ ... until stabilization."""
    return _descending_series(g, lambda s: bracket_subspaces(g, s, s))


def lower_central_series(g: LieAlgebra):
    """g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ ... until stabilization."""
    full = Subspace.full(g.dim)
    return _descending_series(g, lambda s: bracket_subspaces(g, full, s))


def derived_subalgebra(g: LieAlgebra) -> Subspace:
    full = Subspace.full(g.dim)
    return bracket_subspaces(g, full, full)


def center(g: LieAlgebra) -> Subspace:
    """Kernel of the stacked adjoint matrices: {v : [v, e_j] = 0 for all j}."""
    g.require_valid()
    stacked = [
        [g.bracket_basis(k, j)[i] for k in range(g.dim)]
        for j in range(g.dim)
        for i in range(g.dim)
    ]
    return kernel_basis(Matrix.from_rows(stacked))


def is_nilpotent(g: LieAlgebra) -> bool:
    return lower_central_series(g)[-1].dim == 0


def is_solvable(g: LieAlgebra) -> bool:
    return derived_series(g)[-1].dim == 0


def killing_form(g: LieAlgebra) -> Matrix:
    """K(u, v) = trace(ad_u ad_v) on the basis."""
    g.require_valid()
    ads = [ad_matrix(g, g.basis_vector(i)) for i in range(g.dim)]
    return Matrix.from_rows(
        [[(ads[i] @ ads[j]).trace() for j in range(g.dim)] for i in range(g.dim)]
    )


def change_basis(g: LieAlgebra, p: Matrix, labels: Optional[Sequence[str]] = None) -> LieAlgebra:
    """The same algebra in the basis f_i = sum_k p[k][i] e_k (columns of p)."""
    g.require_valid()
    if p.rows != g.dim or p.cols != g.dim:
        raise DimensionMismatch("change-of-basis matrix has wrong shape")
    pinv = inverse(p)
    if pinv is None:
        raise ValueError("change-of-basis matrix is singular")
    if labels is None:
        labels = tuple("f{}".format(i + 1) for i in range(g.dim))
    table = {}
    for i, j in combinations(range(g.dim), 2):
        w = g.bracket(p.col(i), p.col(j))
        table[(i, j)] = pinv.apply(w)
    return LieAlgebra(labels, table)


def subalgebra(g: LieAlgebra, s: Subspace, labels: Optional[Sequence[str]] = None):
    """Restrict g to a bracket-closed subspace.

    Returns (algebra on s in the coordinates of its canonical basis,
    basis matrix whose columns embed those coordinates back into g).
    """
    g.require_valid()
    if s.ambient_dim != g.dim:
        raise DimensionMismatch("subspace ambient dimension does not match")
    basis = list(s.basis)
    if labels is None:
        labels = tuple("s{}".format(i + 1) for i in range(len(basis)))
    table = {}
    for i, j in combinations(range(len(basis)), 2):
        w = g.bracket(basis[i], basis[j])
        coords = s.coordinates_of(w)
        if coords is None:
            raise ValueError("subspace is not closed under the bracket")
        table[(i, j)] = coords
    emb = Matrix.from_rows(basis).transpose() if basis else Matrix.zeros(g.dim, 0)
    return LieAlgebra(labels, table), emb
