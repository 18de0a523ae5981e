"""Classification of 4-dimensional unimodular Lie algebras and the
desk-scale existence search for compatible l.c.K. structures.

Every branch of the classifier uses exact rational invariants only:
discriminant signs, gcd degrees and minimal-polynomial degrees.  No real
roots are ever extracted, so a label is never an approximation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .cochain import Cochain, closed_one_forms, d_matrix, monomials, wedge
from .errors import OddDimension, WrongDimension
from .hermitian import (
    ComplexStructure,
    check_lck,
    is_integrable,
    metric_from,
    omega_matrix,
)
from .lie import (
    LieAlgebra,
    ad_matrix,
    bracket_subspaces,
    center,
    derived_subalgebra,
    is_nilpotent,
    is_solvable,
    is_unimodular,
    killing_form,
    lower_central_series,
    subalgebra,
)
from .linalg import (
    Matrix,
    Subspace,
    det,
    is_positive_definite,
    kernel_basis,
    solve,
    symmetric_signature,
    vec_add,
    vec_scale,
)

CLASS_TAGS = (
    "Prop3-rotation",
    "Prop3-hyperbolic",
    "Prop4-3i",
    "Prop4-3ii",
    "Prop4-4",
    "Prop4-5",
    "Prop4-6",
    "Prop4-7i",
    "Prop4-7ii",
    "Prop4-8",
    "Reductive-compact",
    "Reductive-split",
    "Abelian",
    "OutsideCatalog",
    "NotUnimodular",
)


@dataclass(frozen=True)
class ClassLabel:
    tag: str
    normalized: tuple = ()

    def data(self, key: str) -> str:
        for k, v in self.normalized:
            if k == key:
                return v
        raise KeyError(key)

    def __str__(self):
        return self.tag


# -- polynomial helpers (coefficients ascending, zero poly = ()) -------------


def poly_strip(p) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_degree(p) -> int:
    return len(p) - 1


def poly_eval(p, x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(p):
        out = out * x + c
    return out


def poly_deriv(p) -> tuple:
    return poly_strip(tuple(i * c for i, c in enumerate(p))[1:])


def poly_monic(p) -> tuple:
    p = poly_strip(p)
    if not p:
        return p
    lead = p[-1]
    return tuple(c / lead for c in p)


def poly_divmod(a, b):
    a = list(poly_strip(a))
    b = poly_strip(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        f = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = f
        for i, c in enumerate(b):
            a[k + i] -= f * c
        a = list(poly_strip(a))
        if not a:
            break
    return poly_strip(q), poly_strip(a)


def poly_gcd(a, b) -> tuple:
    a, b = poly_strip(a), poly_strip(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return poly_monic(a)


def rational_roots(p) -> tuple:
    """All rational roots of a nonzero rational polynomial, ascending."""
    p = poly_strip(p)
    if not p:
        raise ValueError("zero polynomial has every root")
    roots = set()
    while p[0] == 0:
        roots.add(Fraction(0))
        p = poly_strip(p[1:])
        if len(p) == 1:
            break
    if len(p) > 1:
        denom_lcm = 1
        for c in p:
            denom_lcm = _lcm(denom_lcm, c.denominator)
        ints = [int(c * denom_lcm) for c in p]
        a0, lead = abs(ints[0]), abs(ints[-1])
        for num in _divisors(a0):
            for den in _divisors(lead):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if poly_eval(p, cand) == 0:
                        roots.add(cand)
    return tuple(sorted(roots))


def _divisors(n: int):
    n = abs(n)
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


def char_poly(m: Matrix) -> tuple:
    """det(tI - m) by the trace recursion, coefficients ascending."""
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    b = Matrix.identity(n)
    for k in range(1, n + 1):
        mb = m @ b
        c = -mb.trace() / k
        coeffs[n - k] = c
        b = mb + Matrix.identity(n).scale(c)
    return tuple(coeffs)


def matrix_is_nilpotent(m: Matrix) -> bool:
    return m.power(m.rows).is_zero()


def min_poly_degree(m: Matrix) -> int:
    """Degree of the minimal polynomial, by rank saturation of powers."""
    flat = [Matrix.identity(m.rows).entries]
    power = Matrix.identity(m.rows)
    from .linalg import rank as _rank

    for k in range(1, m.rows + 1):
        power = power @ m
        flat.append(power.entries)
        if _rank(Matrix.from_rows(flat)) == k:
            return k
    return m.rows


# -- double-root criterion ----------------------------------------------------


@dataclass(frozen=True)
class DoubleRootQuery:
    """Integer coefficients of t^3 - m t^2 + n t - 1."""

    m: int
    n: int

    def poly(self) -> tuple:
        return (Fraction(-1), Fraction(self.n), Fraction(-self.m), Fraction(1))


def double_root_test(q: DoubleRootQuery) -> Optional[Fraction]:
    """The repeated real root of t^3 - m t^2 + n t - 1, when there is one.

    gcd(p, p') is linear for a double root and quadratic only for a perfect
    cube, so any repeated root here is rational and found exactly.  The
    integer discriminant (the resultant of p and p') vanishes exactly when
    that gcd is nonconstant, and screens most inputs cheaply.
    """
    m, n = q.m, q.n
    disc = 18 * m * n - 4 * m**3 + m**2 * n**2 - 4 * n**3 - 27
    if disc != 0:
        return None
    p = q.poly()
    g = poly_gcd(p, poly_deriv(p))
    if poly_degree(g) == 1:
        root = -g[0]
        assert poly_eval(p, root) == 0
        return root
    if poly_degree(g) == 2:
        root = Fraction(q.m, 3)
        if poly_eval(p, root) == 0 and poly_eval(poly_deriv(p), root) == 0:
            return root
    return None


@dataclass(frozen=True)
class LatticeVerdict:
    verdict: str  # "yes" | "no" | "not-applicable"
    reason: str


_LATTICE = {
    "Prop3-rotation": ("yes", "admits a lattice; quotients are secondary Kodaira surfaces"),
    "Prop3-hyperbolic": ("yes", "admits a lattice; quotients are Inoue surfaces of type S+"),
    "Prop4-3i": ("yes", "nilpotent with a rational structure; lattices exist"),
    "Prop4-3ii": ("yes", "admits a lattice; quotients are primary Kodaira surfaces"),
    "Prop4-4": ("yes", "admits lattices for suitable parameters"),
    "Prop4-5": ("yes", "admits lattices; quotients include hyperelliptic surfaces"),
    "Prop4-6": ("yes", "admits lattices for suitable parameters"),
    "Prop4-8": ("yes", "admits lattices; quotients include Inoue surfaces of type S0"),
    "Reductive-compact": ("yes", "admits a lattice; quotients are Hopf surfaces"),
    "Reductive-split": ("yes", "admits a lattice; quotients are properly elliptic surfaces"),
}

_NO_LATTICE_REASON = (
    "no lattice: a lattice would give an integer characteristic polynomial "
    "t^3 - m t^2 + n t - 1 with a real double root, which forces the root "
    "to be 1 or -1, incompatible with the double eigenvalue of this class"
)


def lattice_verdict(label: ClassLabel) -> LatticeVerdict:
    """The recorded lattice existence fact for a classification label."""
    if label.tag in ("Prop4-7i", "Prop4-7ii"):
        return LatticeVerdict("no", _NO_LATTICE_REASON)
    if label.tag in _LATTICE:
        return LatticeVerdict("yes", _LATTICE[label.tag][1])
    return LatticeVerdict("not-applicable", "outside the recorded table")


# -- nilradical (dimension 4) -------------------------------------------------


def _is_nilpotent_ideal(g: LieAlgebra, s: Subspace) -> bool:
    for b in range(g.dim):
        for v in s.basis:
            if not s.contains(g.bracket(g.basis_vector(b), v)):
                return False
    current = s
    while current.dim:
        nxt = bracket_subspaces(g, s, current)
        if nxt == current:
            return False
        current = nxt
    return True


def nilradical4(g: LieAlgebra) -> Subspace:
    """The maximal nilpotent ideal of a solvable algebra of dimension 4.

    Any 3-dimensional nilpotent ideal of a non-nilpotent solvable algebra is
    automatically maximal, so the search is: take [g,g] + center, and if that
    has dimension 2, sweep the pencil of 3-dimensional subspaces above it
    (exactly, via rational root extraction on the defining polynomials).
    """
    g.require_valid()
    if is_nilpotent(g):
        return Subspace.full(g.dim)
    v = derived_subalgebra(g).sum(center(g))
    if v.dim >= 3:
        return v
    if v.dim != 2:
        return v
    comp = v.complement_pivots()
    u1 = g.basis_vector(comp[0])
    u2 = g.basis_vector(comp[1])

    w = v.sum(Subspace.span(g.dim, [u2]))
    if _is_nilpotent_ideal(g, w):
        return w

    rows = list(v.basis) + [u1, u2]
    frame = Matrix.from_rows(rows).transpose()

    def quotient_coords(vector):
        coords = solve(frame, vector)
        assert coords is not None
        return coords[-2], coords[-1]

    polys = []
    for b in range(g.dim):
        p1, p2 = quotient_coords(g.bracket(g.basis_vector(b), u1))
        r1, r2 = quotient_coords(g.bracket(g.basis_vector(b), u2))
        polys.append(poly_strip((-p2, p1 - r2, r1)))
    polys = [p for p in polys if p]
    if not polys:
        # every line through v spans an ideal; nilpotency picks the line
        m0 = _restricted_matrix(g, u1, v)
        m1 = _restricted_matrix(g, u2, v)
        trace_poly = poly_strip((m0.trace(), m1.trace()))
        a0, b0, c0, d0 = m0.entry(0, 0), m0.entry(0, 1), m0.entry(1, 0), m0.entry(1, 1)
        a1, b1, c1, d1 = m1.entry(0, 0), m1.entry(0, 1), m1.entry(1, 0), m1.entry(1, 1)
        det_poly = poly_strip(
            (
                a0 * d0 - b0 * c0,
                a0 * d1 + a1 * d0 - b0 * c1 - b1 * c0,
                a1 * d1 - b1 * c1,
            )
        )
        polys = [p for p in (trace_poly, det_poly) if p]
        if not polys:
            polys = [(Fraction(0), Fraction(1))]  # only t = 0 left to try
    gcd = polys[0]
    for p in polys[1:]:
        gcd = poly_gcd(gcd, p)
        if not gcd or poly_degree(gcd) == 0:
            return v
    for t in rational_roots(gcd):
        w = v.sum(Subspace.span(g.dim, [vec_add(u1, vec_scale(t, u2))]))
        if _is_nilpotent_ideal(g, w):
            return w
    return v


def _restricted_matrix(g: LieAlgebra, u, s: Subspace) -> Matrix:
    cols = []
    for b in s.basis:
        coords = s.coordinates_of(g.bracket(u, b))
        if coords is None:
            raise ValueError("subspace is not invariant under ad_u")
        cols.append(coords)
    return Matrix.from_rows(cols).transpose()


# -- the classifier -----------------------------------------------------------


def classify4(g: LieAlgebra) -> ClassLabel:
    """Decide the unimodular dimension-4 class of g by exact invariants."""
    if g.dim != 4:
        raise WrongDimension("classification requires dimension 4")
    g.require_valid()
    if not is_unimodular(g):
        return ClassLabel("NotUnimodular")
    if not is_solvable(g):
        return _classify_reductive(g)
    if is_nilpotent(g):
        dims = tuple(s.dim for s in lower_central_series(g))
        tag = {(4, 0): "Abelian", (4, 1, 0): "Prop4-3ii", (4, 2, 1, 0): "Prop4-3i"}.get(dims)
        if tag is None:
            return ClassLabel("OutsideCatalog", (("reason", "nilpotent, unrecognized series"),))
        return ClassLabel(tag, (("lower_central_dims", str(dims)),))
    return _classify_solvable(g)


def _classify_reductive(g: LieAlgebra) -> ClassLabel:
    s = derived_subalgebra(g)
    z = center(g)
    if z.dim != 1 or s.dim != 3:
        return ClassLabel("OutsideCatalog", (("reason", "non-solvable, not center + simple"),))
    s_alg, _ = subalgebra(g, s)
    k = killing_form(s_alg)
    if det(k) == 0:
        return ClassLabel("OutsideCatalog", (("reason", "degenerate Killing form"),))
    signature = symmetric_signature(k)
    normalized = (("killing_signature", "{}+,{}-".format(signature[0], signature[1])),)
    if is_positive_definite(k.scale(-1)):
        return ClassLabel("Reductive-compact", normalized)
    return ClassLabel("Reductive-split", normalized)


def _classify_solvable(g: LieAlgebra) -> ClassLabel:
    n = nilradical4(g)
    if n.dim != 3:
        return ClassLabel("OutsideCatalog", (("reason", "nilradical dimension != 3"),))
    n_alg, _ = subalgebra(g, n)
    w = g.basis_vector(n.complement_pivots()[0])
    if n_alg.bracket_items():
        return _classify_heisenberg_radical(g, n, n_alg, w)
    return _classify_abelian_radical(g, n, w)


def _classify_heisenberg_radical(g, n, n_alg, w) -> ClassLabel:
    nn = derived_subalgebra(n_alg)
    if nn.dim != 1 or not is_nilpotent(n_alg):
        return ClassLabel("OutsideCatalog", (("reason", "nilradical is not Heisenberg"),))
    comp = nn.complement_pivots()
    frame = Matrix.from_rows(list(nn.basis) + [_unit(3, c) for c in comp]).transpose()
    cols = []
    for c in comp:
        image = g.bracket(w, _embed(n, _unit(3, c)))
        coords = n.coordinates_of(image)
        assert coords is not None
        q = solve(frame, coords)
        assert q is not None
        cols.append((q[1], q[2]))
    induced = Matrix.from_rows(cols).transpose()
    assert induced.trace() == 0
    q_value = det(induced)
    normalized = (("quadratic_term", str(q_value)),)
    if q_value > 0:
        return ClassLabel("Prop3-rotation", normalized)
    if q_value < 0:
        return ClassLabel("Prop3-hyperbolic", normalized)
    return ClassLabel("OutsideCatalog", (("reason", "degenerate induced action"),))


def _classify_abelian_radical(g, n, w) -> ClassLabel:
    m = _restricted_matrix(g, w, n)
    cp = char_poly(m)
    assert cp[2] == 0, "unimodularity must kill the trace term"
    p, q = cp[1], cp[0]
    normalized = [("char_poly", "t^3 + ({})*t + ({})".format(p, q))]
    if q != 0:
        normalized.append(("scale_invariant", str(p**3 / q**2)))
    else:
        normalized.append(("scale_invariant", "sign({})".format("+" if p > 0 else "-")))
    normalized = tuple(normalized)
    if p == 0 and q == 0:
        return ClassLabel("OutsideCatalog", (("reason", "nilpotent action on the nilradical"),))
    if q == 0:
        return ClassLabel("Prop4-4" if p < 0 else "Prop4-5", normalized)
    disc = -4 * p**3 - 27 * q**2
    if disc > 0:
        return ClassLabel("Prop4-6", normalized)
    if disc < 0:
        return ClassLabel("Prop4-8", normalized)
    degree = min_poly_degree(m)
    return ClassLabel("Prop4-7i" if degree == 2 else "Prop4-7ii", normalized)


def _unit(n: int, i: int) -> tuple:
    out = [Fraction(0)] * n
    out[i] = Fraction(1)
    return tuple(out)


def _embed(s: Subspace, coords) -> tuple:
    out = (Fraction(0),) * s.ambient_dim
    for c, b in zip(coords, s.basis):
        out = vec_add(out, vec_scale(c, b))
    return out


# -- l.c.K. existence search --------------------------------------------------


def standard_complex_candidates(n: int):
    """A fixed, deterministic set of block complex structures on Q^n (n=4)."""
    if n != 4:
        raise WrongDimension("the standard candidate set is for dimension 4")
    pairings = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))
    out = []
    for pairing in pairings:
        for s1 in (1, -1):
            for s2 in (1, -1):
                rows = [[Fraction(0)] * 4 for _ in range(4)]
                for (a, b), s in zip(pairing, (s1, s2)):
                    rows[b][a] = Fraction(s)
                    rows[a][b] = Fraction(-s)
                out.append(ComplexStructure(Matrix.from_rows(rows)))
    return tuple(out)


@dataclass(frozen=True)
class GridSpec:
    """Deterministic search grid: Lee-form coefficients over the closed
    1-form basis, and the sample heights used for kernel combinations."""

    lo: Fraction = Fraction(-3)
    hi: Fraction = Fraction(3)
    step: Fraction = Fraction(1, 2)
    omega_coefficients: tuple = (
        Fraction(0),
        Fraction(1),
        Fraction(-1),
        Fraction(2),
        Fraction(-2),
        Fraction(1, 2),
        Fraction(-1, 2),
    )

    def theta_values(self):
        out = []
        value = self.lo
        while value <= self.hi:
            out.append(value)
            value = value + self.step
        return tuple(out)

    def describe(self) -> str:
        return (
            "theta coefficients {}..{} step {} over the closed 1-form basis; "
            "omega sample heights ({})".format(
                self.lo, self.hi, self.step, ", ".join(str(c) for c in self.omega_coefficients)
            )
        )


@dataclass(frozen=True)
class SearchWitness:
    theta: Cochain
    omega: Cochain
    j: ComplexStructure


@dataclass(frozen=True)
class SearchResult:
    witness: Optional[SearchWitness]
    grid: GridSpec
    theta_points: int
    candidates_considered: int
    candidates_integrable: int
    note: str

    @property
    def found(self) -> bool:
        return self.witness is not None


_NO_WITNESS_NOTE = (
    "no witness on grid ({}); this is evidence from an exhaustive sweep of "
    "the stated grid and sample heights, not a proof of non-existence"
)


def lck_search(
    g: LieAlgebra,
    j: Optional[ComplexStructure] = None,
    grid: Optional[GridSpec] = None,
    candidates: Optional[Sequence[ComplexStructure]] = None,
) -> SearchResult:
    """Sweep closed Lee forms on the grid and solve for compatible 2-forms.

    For each candidate J (the given one, or the supplied candidate list, or
    the standard dimension-4 set) and each grid Lee form, the linear system
    {d_theta Omega = 0, Omega J-invariant} is solved exactly; kernel
    combinations over the deterministic sample heights are tested for
    nondegeneracy and positive definiteness.  The first witness in
    deterministic order is returned and re-verified with check_lck.
    """
    if g.dim % 2 != 0:
        raise OddDimension("l.c.K. structures need an even-dimensional algebra")
    g.require_valid()
    grid = grid or GridSpec()
    if j is not None:
        js: Sequence[ComplexStructure] = (j,)
    elif candidates is not None:
        js = tuple(candidates)
    else:
        js = standard_complex_candidates(g.dim)

    closed = closed_one_forms(g)
    theta_dim = closed.dim
    values = grid.theta_values()
    d2 = d_matrix(g, 2)
    wedge_mats = [
        _wedge_matrix(g, Cochain.from_coordinates(g.dim, 1, basis_vector))
        for basis_vector in closed.basis
    ]

    theta_points = 0
    considered = 0
    tried = 0
    for cand in js:
        considered += 1
        if not is_integrable(g, cand):
            continue
        tried += 1
        inv = _invariant_two_forms(g, cand)
        if inv.dim == 0:
            continue
        inv_cols = Matrix.from_rows(inv.basis).transpose()
        for coeffs in product(values, repeat=theta_dim):
            theta_points += 1
            m = d2
            for c, wm in zip(coeffs, wedge_mats):
                if c:
                    m = m - wm.scale(c)
            kernel = kernel_basis(m @ inv_cols)
            if kernel.dim == 0:
                continue
            theta_coords = [Fraction(0)] * g.dim
            for c, basis_vector in zip(coeffs, closed.basis):
                for idx in range(g.dim):
                    theta_coords[idx] += c * basis_vector[idx]
            theta = Cochain.from_coordinates(g.dim, 1, theta_coords)
            sample = grid.omega_coefficients
            if len(sample) ** kernel.dim > 100_000:
                sample = (Fraction(0), Fraction(1), Fraction(-1))
            pair_index = {mono: pos for pos, mono in enumerate(monomials(g.dim, 2))}
            for weights in product(sample, repeat=kernel.dim):
                if all(wt == 0 for wt in weights):
                    continue
                coords = [Fraction(0)] * inv.dim
                for wt, k_vec in zip(weights, kernel.basis):
                    if wt:
                        for idx in range(inv.dim):
                            coords[idx] += wt * k_vec[idx]
                flat = inv_cols.apply(coords)
                skew = _skew_from_coordinates(g.dim, flat, pair_index)
                if det(skew) == 0:
                    continue
                h = skew @ cand.matrix
                if not h.is_symmetric() or not is_positive_definite(h):
                    continue
                omega = Cochain.from_coordinates(g.dim, 2, flat)
                report = check_lck(g, omega, theta, cand)
                assert report.passed, "witness must verify exactly"
                return SearchResult(
                    SearchWitness(theta, omega, cand),
                    grid,
                    theta_points,
                    considered,
                    tried,
                    "witness found",
                )
    return SearchResult(
        None, grid, theta_points, considered, tried, _NO_WITNESS_NOTE.format(grid.describe())
    )


def _skew_from_coordinates(n: int, flat, pair_index) -> Matrix:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for (a, b), pos in pair_index.items():
        value = flat[pos]
        if value:
            rows[a][b] = value
            rows[b][a] = -value
    return Matrix.from_rows(rows)


def _wedge_matrix(g: LieAlgebra, one_form: Cochain) -> Matrix:
    cols = []
    for mono in monomials(g.dim, 2):
        cols.append(wedge(one_form, Cochain.monomial(g.dim, mono)).coordinates())
    return Matrix.from_rows(cols).transpose()


def _invariant_two_forms(g: LieAlgebra, j: ComplexStructure) -> Subspace:
    """Solutions of Omega(J u, J v) = Omega(u, v) over the 2-form monomials."""
    pairs = monomials(g.dim, 2)
    rows = []
    for a, b in pairs:
        ja = j.apply(g.basis_vector(a))
        jb = j.apply(g.basis_vector(b))
        row = []
        for i, k in pairs:
            value = ja[i] * jb[k] - ja[k] * jb[i]
            if (i, k) == (a, b):
                value -= 1
            row.append(value)
        rows.append(row)
    return kernel_basis(Matrix.from_rows(rows))
