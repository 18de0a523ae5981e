import random
from fractions import Fraction

import pytest

from conftest import entry, random_cochain
from lcklab.cochain import Cochain, ce_d, eval_cochain, wedge
from lcklab.errors import (
    DecompositionFails,
    DegenerateOmega,
    MetricNotPD,
    NotComplexStructure,
    NotJInvariant,
)
from lcklab.hermitian import (
    ComplexStructure,
    LckStructure,
    check_lck,
    is_integrable,
    is_killing,
    koszul_nabla,
    lee_field,
    lee_form_from_omega,
    lie_derivative_j,
    metric_from,
    nijenhuis,
    reeb_data,
)
from lcklab.lie import LieAlgebra
from lcklab.linalg import Matrix, det, vec_is_zero, vec_sub

F = Fraction


def test_complex_structure_validation():
    with pytest.raises(NotComplexStructure):
        ComplexStructure(Matrix.identity(4))
    with pytest.raises(NotComplexStructure):
        ComplexStructure(Matrix.zeros(3, 3))


def test_nijenhuis_vanishes_on_abelian():
    g = LieAlgebra.abelian("abcd")
    j = ComplexStructure.from_images(
        g, {"a": {"b": 1}, "b": {"a": -1}, "c": {"d": 1}, "d": {"c": -1}}
    )
    rng = random.Random(0)
    for _ in range(5):
        u = g.vector({lab: rng.randint(-2, 2) for lab in g.labels})
        v = g.vector({lab: rng.randint(-2, 2) for lab in g.labels})
        assert vec_is_zero(nijenhuis(g, j, u, v))


def test_nijenhuis_on_kodaira_class():
    e = entry("surface(1)")
    assert vec_is_zero(
        nijenhuis(e.algebra, e.j, e.algebra.basis_vector("X"), e.algebra.basis_vector("Y"))
    )


def test_nijenhuis_detects_bad_j():
    g = entry("surface(5)").algebra
    bad = ComplexStructure.from_images(
        g, {"X": {"Z": 1}, "Z": {"X": -1}, "Y": {"W": 1}, "W": {"Y": -1}}
    )
    x, y = g.basis_vector("X"), g.basis_vector("Y")
    value = nijenhuis(g, bad, x, y)
    # oracle: the four terms of the defining formula, evaluated directly
    jx, jy = bad.apply(x), bad.apply(y)
    expected = vec_sub(
        vec_sub(g.bracket(jx, jy), g.bracket(x, y)),
        tuple(
            a + b
            for a, b in zip(bad.apply(g.bracket(jx, y)), bad.apply(g.bracket(x, jy)))
        ),
    )
    assert value == expected
    assert not vec_is_zero(value)


def test_integrability_of_catalog_structures():
    for key in ("u2_Jdelta(1,0,+)", "u2_Jdelta(1,0,-)", "inoue_splus_Jq(1)"):
        e = entry(key)
        assert is_integrable(e.algebra, e.j)
    for k in range(1, 7):
        e = entry("surface({})".format(k))
        assert is_integrable(e.algebra, e.j)


def test_metric_identity_on_hopf_and_kodaira():
    for key in ("surface(6)", "surface(1)"):
        e = entry(key)
        assert metric_from(e.algebra, e.omega, e.j) == Matrix.identity(4)


def test_metric_scales_with_omega():
    e = entry("surface(6)")
    doubled = e.omega.scale(2)
    assert metric_from(e.algebra, doubled, e.j) == Matrix.identity(4).scale(2)


def test_metric_requires_j_invariance():
    e = entry("surface(6)")
    bad = Cochain.make(4, 2, {(0, 2): 1, (1, 3): 7})
    with pytest.raises(NotJInvariant):
        metric_from(e.algebra, bad, e.j)


def test_lee_form_hopf_and_inoue_signs():
    hopf = entry("surface(6)")
    w_form = Cochain.monomial(4, (3,))
    assert lee_form_from_omega(hopf.algebra, hopf.omega) == w_form
    inoue = entry("surface(3)")
    assert lee_form_from_omega(inoue.algebra, inoue.omega) == w_form.scale(-1)


def test_lee_form_abelian_symplectic_is_zero():
    g = LieAlgebra.abelian("abcd")
    omega = Cochain.make(4, 2, {(0, 1): 1, (2, 3): 1})
    assert lee_form_from_omega(g, omega) == Cochain.zero(4, 1)


def test_lee_form_rejects_degenerate():
    g = LieAlgebra.abelian("abcd")
    with pytest.raises(DegenerateOmega):
        lee_form_from_omega(g, Cochain.make(4, 2, {(0, 1): 1}))


def test_lee_form_unique_for_nondegenerate_random():
    rng = random.Random(1)
    g = entry("surface(3)").algebra
    found = 0
    while found < 25:
        omega = random_cochain(rng, 4, 2)
        from lcklab.hermitian import omega_matrix

        if det(omega_matrix(g, omega)) == 0:
            continue
        found += 1
        cols = [
            wedge(Cochain.monomial(4, (i,)), omega).coordinates() for i in range(4)
        ]
        assert det(Matrix.from_rows(cols).transpose()) != 0  # wedge map bijective


def test_check_lck_passes_on_hopf():
    e = entry("surface(6)")
    report = check_lck(e.algebra, e.omega, e.theta, e.j)
    assert report.passed
    assert report.theta_computed == e.theta


def test_check_lck_sign_sensitivity_on_inoue():
    e = entry("surface(3)")
    w_form = Cochain.monomial(4, (3,))
    report = check_lck(e.algebra, e.omega, w_form, e.j)
    assert not report.passed
    assert report.failing() == ("lck_identity",)
    report = check_lck(e.algebra, e.omega, w_form.scale(-1), e.j)
    assert report.passed


def test_check_lck_rejects_scaled_lee_form():
    e = entry("surface(6)")
    report = check_lck(e.algebra, e.omega, e.theta.scale(2), e.j)
    assert not report.passed
    assert "lck_identity" in report.failing()


def test_lee_field_hopf():
    e = entry("surface(6)")
    xi, xi_raw, norm_sq = lee_field(e.algebra, e.omega, e.theta, e.j)
    assert xi == e.algebra.basis_vector("W")
    assert norm_sq == 1


def test_lee_field_scale_invariance():
    e = entry("surface(6)")
    xi, _, _ = lee_field(e.algebra, e.omega, e.theta, e.j)
    scaled_omega = e.omega.scale(3)
    scaled_theta = lee_form_from_omega(e.algebra, scaled_omega)
    xi2, _, _ = lee_field(e.algebra, scaled_omega, scaled_theta, e.j)
    assert xi2 == xi


def test_reeb_data_hopf():
    e = entry("surface(6)")
    rd = reeb_data(e.algebra, e.omega, e.theta, e.j)
    assert rd.eta == e.algebra.basis_vector("Z")
    assert rd.phi == Cochain.monomial(4, (2,))
    identity = ce_d(e.algebra, rd.phi) - wedge(e.theta, rd.phi)
    assert identity == e.omega


def test_reeb_data_fails_on_inoue_types():
    for key in ("surface(3)", "surface(4)"):
        e = entry(key)
        with pytest.raises(DecompositionFails):
            reeb_data(e.algebra, e.omega, e.theta, e.j)


def test_koszul_abelian_connection_vanishes():
    g = LieAlgebra.abelian("abcd")
    h = Matrix.identity(4)
    assert vec_is_zero(koszul_nabla(g, h, g.basis_vector(0), g.basis_vector(1)))


def test_koszul_hopf_nabla_x_x():
    e = entry("surface(6)")
    h = metric_from(e.algebra, e.omega, e.j)
    x = e.algebra.basis_vector("X")
    assert vec_is_zero(koszul_nabla(e.algebra, h, x, x))


def test_koszul_requires_positive_definite():
    g = LieAlgebra.abelian("ab")
    with pytest.raises(MetricNotPD):
        koszul_nabla(g, Matrix.from_rows([[1, 0], [0, -1]]), g.basis_vector(0), g.basis_vector(1))


def test_koszul_torsion_free_random():
    rng = random.Random(2)
    e = entry("surface(3)")
    g = e.algebra
    h = metric_from(g, e.omega, e.j)
    for _ in range(20):
        u = g.vector({lab: rng.randint(-2, 2) for lab in g.labels})
        v = g.vector({lab: rng.randint(-2, 2) for lab in g.labels})
        torsion = vec_sub(
            vec_sub(koszul_nabla(g, h, u, v), koszul_nabla(g, h, v, u)),
            g.bracket(u, v),
        )
        assert vec_is_zero(torsion)


def test_killing_fields_on_hopf():
    e = entry("surface(6)")
    g = e.algebra
    h = metric_from(g, e.omega, e.j)
    assert is_killing(g, h, g.basis_vector("W"))  # central
    assert is_killing(g, h, g.basis_vector("Z"))  # the Reeb field
    inoue = entry("surface(3)")
    h3 = metric_from(inoue.algebra, inoue.omega, inoue.j)
    assert not is_killing(inoue.algebra, h3, inoue.algebra.basis_vector("W"))


def test_killing_implies_nabla_skewness():
    rng = random.Random(3)
    e = entry("surface(6)")
    g = e.algebra
    h = metric_from(g, e.omega, e.j)

    def pair(a, b):
        return sum((x * y for x, y in zip(h.apply(a), b)), F(0))

    u = g.basis_vector("Z")
    assert is_killing(g, h, u)
    for _ in range(15):
        v = g.vector({lab: rng.randint(-2, 2) for lab in g.labels})
        w = g.vector({lab: rng.randint(-2, 2) for lab in g.labels})
        assert pair(koszul_nabla(g, h, v, u), w) + pair(koszul_nabla(g, h, w, u), v) == 0


def test_lie_derivative_j():
    g = LieAlgebra.abelian("abcd")
    j = ComplexStructure.from_images(
        g, {"a": {"b": 1}, "b": {"a": -1}, "c": {"d": 1}, "d": {"c": -1}}
    )
    assert lie_derivative_j(g, j, g.basis_vector(0)).is_zero()

    e = entry("heisenberg_type(2)")
    for lab in ("A", "B"):
        assert lie_derivative_j(e.algebra, e.j, e.algebra.basis_vector(lab)).is_zero()

    hopf = entry("surface(6)")
    assert lie_derivative_j(hopf.algebra, hopf.j, hopf.algebra.basis_vector("W")).is_zero()


def test_theta_annihilates_derived_subalgebra():
    from lcklab.lie import derived_subalgebra

    for key in ("surface(5)", "surface(6)", "heisenberg_type(2)"):
        e = entry(key)
        derived = derived_subalgebra(e.algebra)
        for v in derived.basis:
            assert eval_cochain(e.theta, [v]) == 0


def test_center_bound_on_reductive_catalog():
    from lcklab.lie import center

    for key in ("surface(5)", "surface(6)"):
        e = entry(key)
        assert 1 <= center(e.algebra).dim <= 2
