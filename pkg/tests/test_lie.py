import random
from fractions import Fraction

import pytest

from conftest import algebra_pool, entry, random_invertible
from lcklab.errors import DimensionMismatch, JacobiViolation, UnvalidatedAlgebra
from lcklab.lie import (
    LieAlgebra,
    ad_matrix,
    center,
    change_basis,
    derived_series,
    derived_subalgebra,
    is_nilpotent,
    is_solvable,
    is_unimodular,
    jacobi_violations,
    killing_form,
    lower_central_series,
    subalgebra,
)
from lcklab.linalg import Matrix, Subspace, vec_is_zero

F = Fraction


def u2():
    return entry("u2_Jdelta(1,0,+)").algebra


def test_su2_bracket():
    g = u2()
    assert g.bracket(g.basis_vector("X"), g.basis_vector("Y")) == g.basis_vector("Z")


def test_bracket_antisymmetry_on_vectors():
    g = u2()
    u = g.vector({"T": 1, "X": F(1, 2), "Z": -2})
    assert vec_is_zero(g.bracket(u, u))


def test_hopf_bracket():
    g = entry("surface(6)").algebra
    assert g.bracket(g.basis_vector("Z"), g.basis_vector("X")) == g.vector({"Y": -1})


def test_bracket_rejects_wrong_length():
    g = u2()
    with pytest.raises(DimensionMismatch):
        g.bracket((F(1), F(0)), g.basis_vector(0))


def test_jacobi_empty_on_catalog():
    for g in algebra_pool():
        assert jacobi_violations(g) == ()


def test_jacobi_empty_on_abelian():
    assert jacobi_violations(LieAlgebra.abelian("abcd")) == ()


def test_jacobi_catches_corrupted_brackets():
    # Hopf brackets plus a stray [X, W] = Y term break the (X, Z, W) triple
    bad = {
        ("X", "Y"): {"Z": -1},
        ("Z", "X"): {"Y": -1},
        ("Z", "Y"): {"X": 1},
        ("X", "W"): {"Y": 1},
    }
    with pytest.raises(JacobiViolation):
        LieAlgebra.from_brackets(("X", "Y", "Z", "W"), bad)
    g = LieAlgebra.from_brackets(("X", "Y", "Z", "W"), bad, check=False)
    assert not g.jacobi_ok
    assert jacobi_violations(g)
    with pytest.raises(UnvalidatedAlgebra):
        derived_series(g)


def test_ad_matrix_abelian_is_zero():
    g = LieAlgebra.abelian("abcd")
    assert ad_matrix(g, g.vector({"a": 1, "c": -2})).is_zero()


def test_ad_matrix_rotation_block():
    g = entry("prop4_family(5,b=1)").algebra
    w = g.basis_vector("W")
    assert g.bracket(w, g.basis_vector("X2")) == g.vector({"X3": -1})
    assert g.bracket(w, g.basis_vector("X3")) == g.vector({"X2": 1})
    m = ad_matrix(g, w)
    i2, i3 = g.label_index("X2"), g.label_index("X3")
    block = [[m.entry(i2, i2), m.entry(i2, i3)], [m.entry(i3, i2), m.entry(i3, i3)]]
    assert block == [[0, 1], [-1, 0]]


def test_ad_matrix_u2():
    g = u2()
    m = ad_matrix(g, g.basis_vector("X"))
    assert m.apply(g.basis_vector("Y")) == g.basis_vector("Z")
    assert m.apply(g.basis_vector("Z")) == g.vector({"Y": -1})


def test_unimodularity():
    for k in range(1, 7):
        assert is_unimodular(entry("surface({})".format(k)).algebra)
    assert is_unimodular(LieAlgebra.abelian("ab"))
    aff = LieAlgebra.from_brackets(("W", "Y"), {("W", "Y"): {"Y": 1}})
    assert not is_unimodular(aff)


def test_derived_series_abelian():
    g = LieAlgebra.abelian("abcd")
    series = derived_series(g)
    assert [s.dim for s in series] == [4, 0]


def test_lower_central_series_heisenberg():
    g = entry("heisenberg_type(2)").algebra
    assert [s.dim for s in lower_central_series(g)] == [4, 1, 0]


def test_derived_series_u2_stabilizes_at_su2():
    series = derived_series(u2())
    assert [s.dim for s in series] == [4, 3]
    g = u2()
    assert series[-1] == Subspace.span(4, [g.basis_vector(i) for i in "XYZ"])


def test_center_abelian():
    g = LieAlgebra.abelian("abc")
    assert center(g) == Subspace.full(3)


def test_center_u2_is_spanned_by_t():
    g = u2()
    c = center(g)
    assert c.dim == 1
    assert c.contains(g.basis_vector("T"))


def test_center_hopf():
    g = entry("surface(6)").algebra
    c = center(g)
    assert c.dim == 1 and c.contains(g.basis_vector("W"))


def test_nilpotent_solvable_flags():
    h4 = entry("heisenberg_type(2)").algebra
    assert is_nilpotent(h4) and is_solvable(h4)
    s_plus = entry("surface(3)").algebra
    assert is_solvable(s_plus) and not is_nilpotent(s_plus)
    g = u2()
    assert not is_solvable(g) and not is_nilpotent(g)


def test_killing_form_abelian_is_zero():
    assert killing_form(LieAlgebra.abelian("abcd")).is_zero()


def test_killing_form_hopf_su2_block():
    g = entry("surface(6)").algebra
    k = killing_form(g)
    x = g.label_index("X")
    assert k.entry(x, x) == -2


def test_killing_form_sl2_indefinite():
    g = entry("surface(5)").algebra
    s, emb = subalgebra(g, derived_subalgebra(g))
    k = killing_form(s)
    from lcklab.linalg import symmetric_signature

    plus, minus, zero = symmetric_signature(k)
    assert zero == 0 and plus > 0 and minus > 0


def test_trace_of_ad_is_linear():
    rng = random.Random(7)
    for g in algebra_pool():
        traces = [ad_matrix(g, g.basis_vector(i)).trace() for i in range(g.dim)]
        for _ in range(10):
            coeffs = [F(rng.randint(-3, 3)) for _ in range(g.dim)]
            u = g.vector({g.labels[i]: coeffs[i] for i in range(g.dim)})
            expected = sum((c * t for c, t in zip(coeffs, traces)), F(0))
            assert ad_matrix(g, u).trace() == expected


def test_center_elements_commute_with_basis():
    for g in algebra_pool():
        for z in center(g).basis:
            for i in range(g.dim):
                assert vec_is_zero(g.bracket(z, g.basis_vector(i)))


def test_killing_form_symmetric_and_ad_invariant():
    rng = random.Random(11)
    for g in algebra_pool():
        k = killing_form(g)
        assert k.is_symmetric()
        for _ in range(8):
            u = g.vector({g.labels[rng.randrange(g.dim)]: rng.randint(1, 3)})
            v = g.vector({g.labels[rng.randrange(g.dim)]: rng.randint(-3, -1)})
            w = g.vector({g.labels[rng.randrange(g.dim)]: rng.randint(1, 2)})

            def pair(a, b):
                return sum((x * y for x, y in zip(k.apply(a), b)), F(0))

            assert pair(g.bracket(u, v), w) + pair(v, g.bracket(u, w)) == 0


def test_change_basis_preserves_invariants():
    rng = random.Random(3)
    g = entry("surface(3)").algebra
    p = random_invertible(rng, 4)
    h = change_basis(g, p)
    assert is_solvable(h) and not is_nilpotent(h)
    assert [s.dim for s in derived_series(h)] == [s.dim for s in derived_series(g)]


def test_subalgebra_requires_closure():
    g = entry("surface(6)").algebra
    open_subspace = Subspace.span(4, [g.basis_vector("X"), g.basis_vector("Y")])
    with pytest.raises(ValueError):
        subalgebra(g, open_subspace)
