"""Alternating forms on a Lie algebra, the coboundary, and its twist.

Conventions (fixed project-wide; both signs of each appear in the
literature, so they are spelled out here once and tested everywhere):

* Evaluation uses the determinant convention with no 1/p! factor:
  (e_{i1}* ^ ... ^ e_{ip}*)(v_1, ..., v_p) = det [ v_b[i_a] ]_{a,b}.
  In particular (x^y)(X, Y) = 1 and (x^y)(Y, X) = -1.

* The coboundary on a p-form is
  (d w)(x_0, ..., x_p) = sum_{j<k} (-1)^{j+k} w([x_j, x_k], x_0, ..,
  x_j^, .., x_k^, .., x_p), which at p = 1 forces
  (d s)(u, v) = -s([u, v]).

* The twisted coboundary for a closed 1-form t is d_t w = d w - t ^ w,
  i.e. the coboundary of the rank-one module u -> -t(u).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Mapping, Optional, Sequence

from .errors import ArityMismatch, DegreeOverflow, LeeFormNotClosed, NotTwistedClosed
from .lie import LieAlgebra
from .linalg import Matrix, Subspace, as_rat, kernel_basis, rank, solve, vec


@lru_cache(maxsize=None)
def monomials(n: int, p: int):
    """Strictly increasing index tuples of length p, in lexicographic order."""
    return tuple(combinations(range(n), p))


def _sort_with_sign(indices: Sequence[int]):
    """(sorted tuple, permutation sign); sign 0 on a repeated index."""
    idx = list(indices)
    sign = 1
    for a in range(len(idx)):
        for b in range(len(idx) - 1 - a):
            if idx[b] > idx[b + 1]:
                idx[b], idx[b + 1] = idx[b + 1], idx[b]
                sign = -sign
            elif idx[b] == idx[b + 1]:
                return tuple(idx), 0
    return tuple(idx), sign


@dataclass(frozen=True)
class Cochain:
    """An alternating p-form with rational coefficients on a fixed Q^n.

    ``coeffs`` maps strictly increasing index tuples to nonzero Fractions;
    an absent key is zero.  A 0-form is the single coefficient at ().
    """

    n: int
    degree: int
    coeffs: Mapping

    def __post_init__(self):
        if not (0 <= self.degree <= self.n):
            raise ValueError("degree out of range 0..n")
        for key, value in self.coeffs.items():
            if len(key) != self.degree or list(key) != sorted(set(key)):
                raise ValueError("bad monomial key {!r}".format(key))
            if self.degree and not all(0 <= i < self.n for i in key):
                raise ValueError("index out of range in {!r}".format(key))
            if value == 0:
                raise ValueError("zero coefficient stored at {!r}".format(key))

    @staticmethod
    def make(n: int, degree: int, terms: Mapping) -> "Cochain":
        clean = {}
        for key, value in terms.items():
            key, sign = _sort_with_sign(tuple(key))
            if sign == 0:
                continue
            value = as_rat(value) * sign
            if value:
                clean[key] = clean.get(key, Fraction(0)) + value
        clean = {k: v for k, v in clean.items() if v != 0}
        return Cochain(n, degree, clean)

    @staticmethod
    def zero(n: int, degree: int) -> "Cochain":
        return Cochain(n, degree, {})

    @staticmethod
    def monomial(n: int, indices: Sequence[int], coeff=1) -> "Cochain":
        return Cochain.make(n, len(tuple(indices)), {tuple(indices): coeff})

    @staticmethod
    def scalar(n: int, value) -> "Cochain":
        return Cochain.make(n, 0, {(): value})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, key: Sequence[int]) -> Fraction:
        key, sign = _sort_with_sign(tuple(key))
        if sign == 0:
            return Fraction(0)
        return sign * self.coeffs.get(key, Fraction(0))

    def terms(self):
        return tuple(sorted(self.coeffs.items()))

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return Cochain(self.n, self.degree, {k: v for k, v in out.items() if v != 0})

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __neg__(self) -> "Cochain":
        return Cochain(self.n, self.degree, {k: -v for k, v in self.coeffs.items()})

    def scale(self, c) -> "Cochain":
        c = as_rat(c)
        if c == 0:
            return Cochain.zero(self.n, self.degree)
        return Cochain(self.n, self.degree, {k: c * v for k, v in self.coeffs.items()})

    def coordinates(self) -> tuple:
        """Coefficient vector over the lexicographic monomial basis."""
        return tuple(self.coeffs.get(m, Fraction(0)) for m in monomials(self.n, self.degree))

    @staticmethod
    def from_coordinates(n: int, degree: int, coords: Sequence) -> "Cochain":
        basis = monomials(n, degree)
        if len(coords) != len(basis):
            raise ValueError("coordinate vector has wrong length")
        return Cochain.make(n, degree, dict(zip(basis, coords)))

    def _compatible(self, other: "Cochain"):
        if self.n != other.n or self.degree != other.degree:
            raise ValueError("cochains live on different spaces or degrees")


def eval_on_basis(w: Cochain, indices: Sequence[int]) -> Fraction:
    """Value of w on the listed basis vectors (indices may repeat/unsorted)."""
    if len(indices) != w.degree:
        raise ArityMismatch("expected {} arguments".format(w.degree))
    return w.coeff(indices)


def eval_cochain(w: Cochain, vectors: Sequence[Sequence]) -> Fraction:
    """Multilinear alternating evaluation on coordinate vectors."""
    if len(vectors) != w.degree:
        raise ArityMismatch("expected {} arguments".format(w.degree))
    vectors = [vec(v) for v in vectors]
    for v in vectors:
        if len(v) != w.n:
            raise ArityMismatch("argument has wrong length")
    if w.degree == 0:
        return w.coeffs.get((), Fraction(0))
    total = Fraction(0)
    for key, c in w.coeffs.items():
        total += c * _det([[v[i] for i in key] for v in vectors])
    return total


def _det(cols) -> Fraction:
    # cols[b][a] = value of the a-th dual on the b-th vector
    n = len(cols)
    a = [[cols[b][i] for b in range(n)] for i in range(n)]
    sign = 1
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        out *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return out * sign


def wedge(a: Cochain, b: Cochain) -> Cochain:
    """Shuffle-sum wedge product, consistent with the determinant evaluation."""
    if a.n != b.n:
        raise ValueError("cochains live on different spaces")
    p, q = a.degree, b.degree
    if p + q > a.n:
        raise DegreeOverflow("wedge degree {} exceeds dimension {}".format(p + q, a.n))
    out = {}
    for ka, va in a.coeffs.items():
        for kb, vb in b.coeffs.items():
            if set(ka) & set(kb):
                continue
            # sign of merging ka followed by kb into sorted order
            inversions = sum(1 for i in ka for j in kb if j < i)
            key = tuple(sorted(ka + kb))
            sign = -1 if inversions % 2 else 1
            value = out.get(key, Fraction(0)) + sign * va * vb
            out[key] = value
    return Cochain(a.n, p + q, {k: v for k, v in out.items() if v != 0})


def ce_d(g: LieAlgebra, w: Cochain) -> Cochain:
    """Coboundary of w with trivial coefficients (see module conventions)."""
    g.require_valid()
    if w.n != g.dim:
        raise ValueError("cochain does not live on this algebra")
    p = w.degree
    if p >= g.dim:
        raise DegreeOverflow("coboundary of a top-degree form")
    if p == 0:
        return Cochain.zero(g.dim, 1)
    out = {}
    for target in monomials(g.dim, p + 1):
        value = Fraction(0)
        for jpos, kpos in combinations(range(p + 1), 2):
            rest = tuple(target[m] for m in range(p + 1) if m not in (jpos, kpos))
            br = g.bracket_basis(target[jpos], target[kpos])
            term = Fraction(0)
            for k, c in enumerate(br):
                if c:
                    term += c * w.coeff((k,) + rest)
            if term:
                sign = -1 if (jpos + kpos) % 2 else 1
                value += sign * term
        if value:
            out[target] = value
    return Cochain(g.dim, p + 1, out)


def is_closed(g: LieAlgebra, w: Cochain) -> bool:
    if w.degree >= g.dim:
        return True
    return ce_d(g, w).is_zero


def _check_lee_form(g: LieAlgebra, theta: Cochain):
    if theta.degree != 1:
        raise LeeFormNotClosed("twist form must have degree 1")
    if theta.n != g.dim:
        raise LeeFormNotClosed("twist form does not live on this algebra")
    if not ce_d(g, theta).is_zero:
        raise LeeFormNotClosed("twist form is not closed")


def twisted_d(g: LieAlgebra, theta: Cochain, w: Cochain) -> Cochain:
    """d_theta w = d w - theta ^ w for a closed 1-form theta."""
    _check_lee_form(g, theta)
    return ce_d(g, w) - wedge(theta, w)


def d_matrix(g: LieAlgebra, p: int, theta: Optional[Cochain] = None) -> Matrix:
    """Matrix of d (or d_theta) from degree p to p+1 over lex monomial bases."""
    g.require_valid()
    n = g.dim
    source = monomials(n, p)
    target = monomials(n, p + 1)
    cols = []
    for mono in source:
        w = Cochain.monomial(n, mono)
        dw = ce_d(g, w) if theta is None else twisted_d(g, theta, w)
        cols.append(dw.coordinates())
    if not cols:
        return Matrix.zeros(len(target), 0)
    return Matrix.from_rows(cols).transpose()


def twisted_cohomology_dim(g: LieAlgebra, theta: Cochain, p: int) -> int:
    """dim H^p of d_theta; p = 0 has no incoming differential."""
    _check_lee_form(g, theta)
    n = g.dim
    if not (0 <= p <= n):
        raise ValueError("degree out of range 0..n")
    dim_p = len(monomials(n, p))
    if p == n:
        kernel_dim = dim_p
    else:
        kernel_dim = dim_p - rank(d_matrix(g, p, theta))
    image_dim = 0 if p == 0 else rank(d_matrix(g, p - 1, theta))
    assert kernel_dim >= image_dim
    return kernel_dim - image_dim


def solve_potential(g: LieAlgebra, theta: Cochain, omega: Cochain) -> Optional[Cochain]:
    """A 1-form psi with d_theta psi = omega, or None when no solution exists.

    Requires theta closed and omega twisted-closed; the returned potential is
    the deterministic echelon solution (free coefficients set to 0).
    """
    _check_lee_form(g, theta)
    if omega.degree != 2:
        raise ValueError("potential solving expects a 2-form")
    if not twisted_d(g, theta, omega).is_zero:
        raise NotTwistedClosed("the 2-form is not twisted-closed")
    m = d_matrix(g, 1, theta)
    x = solve(m, omega.coordinates())
    if x is None:
        return None
    return Cochain.from_coordinates(g.dim, 1, x)


def closed_one_forms(g: LieAlgebra) -> Subspace:
    """Kernel of the coboundary on 1-forms (the annihilator of [g, g])."""
    return kernel_basis(d_matrix(g, 1))


def contract(w: Cochain, v: Sequence) -> Cochain:
    """Interior product: (i_v w)(u_2, ..., u_p) = w(v, u_2, ..., u_p)."""
    v = vec(v)
    if len(v) != w.n:
        raise ArityMismatch("vector has wrong length")
    if w.degree == 0:
        raise ArityMismatch("cannot contract a 0-form")
    out = {}
    for key in monomials(w.n, w.degree - 1):
        value = Fraction(0)
        for k, c in enumerate(v):
            if c:
                value += c * w.coeff((k,) + key)
        if value:
            out[key] = value
    return Cochain(w.n, w.degree - 1, out)
