"""Complex structures, Hermitian metrics and the Lee/Reeb machinery.

Metric convention, fixed project-wide: h(u, v) = Omega(u, J v).  With the
catalog data (J X = Y, Omega = x^y + z^w, ...) this is the choice that
makes every catalog metric positive definite; the opposite order
Omega(J u, v) flips its sign.  The Reeb sign is resolved empirically per
structure: eta = eps * J xi with eps in {+1, -1} chosen (trying +1 first)
so that Omega = -theta ^ phi + d phi holds exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .cochain import Cochain, ce_d, contract, eval_cochain, is_closed, wedge
from .errors import (
    DecompositionFails,
    DegenerateOmega,
    DimensionMismatch,
    MetricNotPD,
    NotComplexStructure,
    NotJInvariant,
)
from .lie import LieAlgebra, derived_subalgebra
from .linalg import (
    Matrix,
    det,
    is_positive_definite,
    solve,
    vec,
    vec_is_zero,
    vec_scale,
    vec_sub,
)


@dataclass(frozen=True)
class ComplexStructure:
    """A rational endomorphism J with J^2 = -I."""

    matrix: Matrix

    def __post_init__(self):
        m = self.matrix
        if m.rows != m.cols:
            raise NotComplexStructure("J must be square")
        if m.rows % 2 != 0:
            raise NotComplexStructure("J needs an even-dimensional space")
        if m @ m != Matrix.identity(m.rows).scale(-1):
            raise NotComplexStructure("J^2 != -I")

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def apply(self, v: Sequence) -> tuple:
        return self.matrix.apply(vec(v))

    @staticmethod
    def from_images(g: LieAlgebra, images) -> "ComplexStructure":
        """Build J from a {label: vector-or-{label: coeff}} description."""
        cols = []
        for i in range(g.dim):
            img = images[g.labels[i]]
            cols.append(g.vector(img))
        return ComplexStructure(Matrix.from_rows(cols).transpose())


def nijenhuis(g: LieAlgebra, j: ComplexStructure, u: Sequence, v: Sequence) -> tuple:
    """N(u,v) = [Ju,Jv] - [u,v] - J[Ju,v] - J[u,Jv]; zero iff J integrable there."""
    if j.dim != g.dim:
        raise DimensionMismatch("J does not act on this algebra")
    u = g.vector(u)
    v = g.vector(v)
    ju, jv = j.apply(u), j.apply(v)
    term = g.bracket(ju, jv)
    term = vec_sub(term, g.bracket(u, v))
    term = vec_sub(term, j.apply(g.bracket(ju, v)))
    term = vec_sub(term, j.apply(g.bracket(u, jv)))
    return term


def is_integrable(g: LieAlgebra, j: ComplexStructure) -> bool:
    return all(
        vec_is_zero(nijenhuis(g, j, g.basis_vector(a), g.basis_vector(b)))
        for a, b in combinations(range(g.dim), 2)
    )


def omega_matrix(g: LieAlgebra, omega: Cochain) -> Matrix:
    """Skew matrix Omega(e_i, e_j)."""
    return Matrix.from_rows(
        [[omega.coeff((i, k)) for k in range(g.dim)] for i in range(g.dim)]
    )


def is_j_invariant(g: LieAlgebra, omega: Cochain, j: ComplexStructure) -> bool:
    return _j_invariance_witness(g, omega, j) is None


def _j_invariance_witness(g: LieAlgebra, omega: Cochain, j: ComplexStructure):
    # Omega(Ju, Jv) = Omega(u, v) for all u, v  <=>  J^T S J = S
    s = omega_matrix(g, omega)
    diff = (j.matrix.transpose() @ s @ j.matrix) - s
    if diff.is_zero():
        return None
    for a, b in combinations(range(g.dim), 2):
        if diff.entry(a, b) != 0:
            return (a, b, diff.entry(a, b))
    raise AssertionError("skew difference with no off-diagonal entry")


def metric_from(g: LieAlgebra, omega: Cochain, j: ComplexStructure) -> Matrix:
    """Gram matrix h(e_i, e_j) = Omega(e_i, J e_j); requires J-invariance."""
    w = _j_invariance_witness(g, omega, j)
    if w is not None:
        raise NotJInvariant(
            "Omega(Je{0}, Je{1}) differs from Omega(e{0}, e{1})".format(w[0], w[1])
        )
    h = omega_matrix(g, omega) @ j.matrix
    assert h.is_symmetric()
    return h


def lee_form_from_omega(g: LieAlgebra, omega: Cochain) -> Optional[Cochain]:
    """The 1-form theta with theta ^ Omega = d Omega, when one exists.

    Requires Omega nondegenerate.  Wedging with a nondegenerate 2-form is
    injective on 1-forms in dimension >= 4, so the solution is unique; the
    caller still has to check that it is closed.
    """
    if omega.degree != 2:
        raise ValueError("expected a 2-form")
    if det(omega_matrix(g, omega)) == 0:
        raise DegenerateOmega("the 2-form is degenerate")
    d_omega = ce_d(g, omega)
    cols = [wedge(Cochain.monomial(g.dim, (i,)), omega).coordinates() for i in range(g.dim)]
    m = Matrix.from_rows(cols).transpose()
    x = solve(m, d_omega.coordinates())
    if x is None:
        return None
    return Cochain.from_coordinates(g.dim, 1, x)


def lee_field(g: LieAlgebra, omega: Cochain, theta: Cochain, j: ComplexStructure):
    """Metric dual of theta scaled so that theta(xi) = 1.

    Returns (xi, xi_raw, theta_norm_sq) where xi_raw is the unscaled dual
    and theta_norm_sq = theta(xi_raw) = |theta|_h^2 > 0.
    """
    h = metric_from(g, omega, j)
    if not is_positive_definite(h):
        raise MetricNotPD("metric is not positive definite")
    t = theta.coordinates()
    xi_raw = solve(h, t)
    assert xi_raw is not None
    norm_sq = sum((a * b for a, b in zip(t, xi_raw)), Fraction(0))
    if norm_sq == 0:
        raise ValueError("Lee form is zero; no Lee field")
    xi = vec_scale(Fraction(1) / norm_sq, xi_raw)
    return xi, xi_raw, norm_sq


@dataclass(frozen=True)
class ReebData:
    eta: tuple
    phi: Cochain
    epsilon: int


def reeb_data(g: LieAlgebra, omega: Cochain, theta: Cochain, j: ComplexStructure) -> ReebData:
    """Reeb field eta = eps * J xi and its dual form phi with phi(eta) = 1.

    eps is chosen (trying +1 first) so that Omega = -theta ^ phi + d phi
    holds exactly; raises DecompositionFails when neither sign works.
    """
    xi, _, _ = lee_field(g, omega, theta, j)
    h = metric_from(g, omega, j)
    jxi = j.apply(xi)
    for eps in (1, -1):
        eta = vec_scale(eps, jxi)
        flat = h.apply(eta)
        norm_sq = sum((a * b for a, b in zip(flat, eta)), Fraction(0))
        phi = Cochain.from_coordinates(g.dim, 1, vec_scale(Fraction(1) / norm_sq, flat))
        candidate = ce_d(g, phi) - wedge(theta, phi)
        if candidate == omega:
            return ReebData(eta=eta, phi=phi, epsilon=eps)
    raise DecompositionFails(
        "Omega = -theta^phi + d phi fails for both Reeb signs"
    )


def koszul_nabla(g: LieAlgebra, h: Matrix, u: Sequence, v: Sequence) -> tuple:
    """Levi-Civita connection of a left-invariant metric via the Koszul formula.

    2 h(nabla_u v, z) = h([u,v],z) - h([v,z],u) + h([z,u],v) for basis z.
    """
    if not is_positive_definite(h):
        raise MetricNotPD("metric is not positive definite")
    u = g.vector(u)
    v = g.vector(v)
    uv = g.bracket(u, v)
    rhs = []
    for z_idx in range(g.dim):
        z = g.basis_vector(z_idx)
        val = _h(h, uv, z) - _h(h, g.bracket(v, z), u) + _h(h, g.bracket(z, u), v)
        rhs.append(val / 2)
    out = solve(h, rhs)
    assert out is not None
    return out


def _h(h: Matrix, a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(h.apply(a), b)), Fraction(0))


def is_killing(g: LieAlgebra, h: Matrix, u: Sequence) -> bool:
    """True iff h([u,v],w) + h(v,[u,w]) = 0 on all basis pairs (v, w)."""
    if not is_positive_definite(h):
        raise MetricNotPD("metric is not positive definite")
    u = g.vector(u)
    for a in range(g.dim):
        va = g.basis_vector(a)
        for b in range(a, g.dim):
            vb = g.basis_vector(b)
            if _h(h, g.bracket(u, va), vb) + _h(h, va, g.bracket(u, vb)) != 0:
                return False
    return True


def lie_derivative_j(g: LieAlgebra, j: ComplexStructure, u: Sequence) -> Matrix:
    """Matrix of v -> [u, Jv] - J[u, v]; zero iff u preserves J infinitesimally."""
    u = g.vector(u)
    cols = []
    for b in range(g.dim):
        v = g.basis_vector(b)
        cols.append(vec_sub(g.bracket(u, j.apply(v)), j.apply(g.bracket(u, v))))
    return Matrix.from_rows(cols).transpose()


@dataclass(frozen=True)
class LckStructure:
    algebra: LieAlgebra
    omega: Cochain
    theta: Cochain
    j: ComplexStructure


@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    witness: str = ""


@dataclass(frozen=True)
class LckReport:
    """Outcome of every l.c.K. condition, with exact witnesses on failure."""

    items: tuple
    theta_given: Cochain
    theta_computed: Optional[Cochain]
    lee_field: Optional[tuple]
    lee_field_raw: Optional[tuple]
    theta_norm_sq: Optional[Fraction]
    reeb_field: Optional[tuple]
    reeb_form: Optional[Cochain]
    reeb_sign: Optional[int]
    reeb_ok: Optional[bool]

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    def item(self, name: str) -> CheckItem:
        for it in self.items:
            if it.name == name:
                return it
        raise KeyError(name)

    def failing(self):
        return tuple(it.name for it in self.items if not it.passed)


CHECK_NAMES = (
    "theta_closed",
    "lck_identity",
    "j_squared",
    "j_integrable",
    "omega_j_invariant",
    "metric_positive_definite",
    "theta_vanishes_on_derived",
)


def check_lck(g: LieAlgebra, omega: Cochain, theta: Cochain, j: ComplexStructure) -> LckReport:
    """Exact verification of d(theta)=0, dOmega=theta^Omega, J^2=-I,
    integrability, J-invariance and positive definiteness, with Lee/Reeb
    data attached when the metric conditions allow it.
    """
    g.require_valid()
    items = []

    d_theta = ce_d(g, theta)
    items.append(
        CheckItem("theta_closed", d_theta.is_zero, _cochain_witness(d_theta))
    )

    residual = ce_d(g, omega) - wedge(theta, omega)
    items.append(
        CheckItem("lck_identity", residual.is_zero, _cochain_witness(residual))
    )

    j_sq = j.matrix @ j.matrix + Matrix.identity(g.dim)
    items.append(CheckItem("j_squared", j_sq.is_zero()))

    nij_witness = ""
    integrable = True
    for a, b in combinations(range(g.dim), 2):
        r = nijenhuis(g, j, g.basis_vector(a), g.basis_vector(b))
        if not vec_is_zero(r):
            integrable = False
            nij_witness = "N(e{}, e{}) = {}".format(a, b, _vec_str(r))
            break
    items.append(CheckItem("j_integrable", integrable, nij_witness))

    inv_witness = _j_invariance_witness(g, omega, j)
    items.append(
        CheckItem(
            "omega_j_invariant",
            inv_witness is None,
            "" if inv_witness is None else "pair (e{}, e{}), residual {}".format(*inv_witness),
        )
    )

    metric_ok = False
    metric_witness = ""
    h = None
    if inv_witness is None:
        h = metric_from(g, omega, j)
        metric_ok = is_positive_definite(h)
        if not metric_ok:
            metric_witness = "a leading principal minor is not positive"
    else:
        metric_witness = "metric undefined: Omega is not J-invariant"
    items.append(CheckItem("metric_positive_definite", metric_ok, metric_witness))

    derived = derived_subalgebra(g)
    bad = next(
        (
            v
            for v in derived.basis
            if eval_cochain(theta, [v]) != 0
        ),
        None,
    )
    items.append(
        CheckItem(
            "theta_vanishes_on_derived",
            bad is None,
            "" if bad is None else "theta({}) != 0".format(_vec_str(bad)),
        )
    )

    theta_computed = None
    try:
        theta_computed = lee_form_from_omega(g, omega)
    except DegenerateOmega:
        pass

    xi = xi_raw = norm_sq = None
    eta = phi = eps = None
    reeb_ok = None
    if metric_ok and not theta.is_zero:
        xi, xi_raw, norm_sq = lee_field(g, omega, theta, j)
        try:
            rd = reeb_data(g, omega, theta, j)
            eta, phi, eps = rd.eta, rd.phi, rd.epsilon
            reeb_ok = True
        except DecompositionFails:
            reeb_ok = False

    return LckReport(
        items=tuple(items),
        theta_given=theta,
        theta_computed=theta_computed,
        lee_field=xi,
        lee_field_raw=xi_raw,
        theta_norm_sq=norm_sq,
        reeb_field=eta,
        reeb_form=phi,
        reeb_sign=eps,
        reeb_ok=reeb_ok,
    )


def is_vaisman(g: LieAlgebra, structure: LckStructure) -> bool:
    """True iff the Lee field is parallel for the Levi-Civita connection."""
    report = check_lck(g, structure.omega, structure.theta, structure.j)
    if not report.item("metric_positive_definite").passed:
        raise MetricNotPD("metric is not positive definite")
    if not report.passed:
        raise ValueError(
            "structure fails l.c.K. checks: {}".format(", ".join(report.failing()))
        )
    h = metric_from(g, structure.omega, structure.j)
    xi = report.lee_field
    return all(
        vec_is_zero(koszul_nabla(g, h, g.basis_vector(i), xi)) for i in range(g.dim)
    )


def _cochain_witness(c: Cochain) -> str:
    if c.is_zero:
        return ""
    key, value = sorted(c.coeffs.items())[0]
    return "component {} = {}".format(key, value)


def _vec_str(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"
