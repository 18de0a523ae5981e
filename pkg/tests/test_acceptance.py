"""Acceptance battery: one test per numbered criterion.

Run under pytest (`pytest tests/test_acceptance.py -v`) or directly
(`python3 tests/test_acceptance.py`) for one pass/fail line per criterion.
Every assertion is an exact rational identity; the only tolerances are the
stated wall-clock budgets.
"""

import contextlib
import io
import random
import time
from fractions import Fraction
from itertools import combinations

from lcklab import catalog
from lcklab.classify import (
    DoubleRootQuery,
    classify4,
    double_root_test,
    lck_search,
)
from lcklab.cli import main as cli_main
from lcklab.cochain import (
    Cochain,
    ce_d,
    closed_one_forms,
    contract,
    eval_cochain,
    monomials,
    twisted_cohomology_dim,
    twisted_d,
    wedge,
)
from lcklab.errors import DecompositionFails
from lcklab.fileformat import (
    algebra_file_from_parts,
    emit_algebra_file,
    parse_algebra_file,
    parse_report,
)
from lcklab.hermitian import (
    LckStructure,
    check_lck,
    is_integrable,
    is_killing,
    koszul_nabla,
    lee_form_from_omega,
    metric_from,
    reeb_data,
    is_vaisman,
)
from lcklab.lie import (
    change_basis,
    derived_subalgebra,
    is_unimodular,
    jacobi_violations,
    killing_form,
    subalgebra,
)
from lcklab.linalg import (
    Matrix,
    det,
    is_positive_definite,
    kernel_basis,
    rank,
    vec_is_zero,
    vec_sub,
)

F = Fraction


def _entry(text):
    return catalog.build(catalog.parse_key(text))


def _lck_entries():
    return [
        (key, catalog.build(key))
        for key in catalog.default_keys()
        if catalog.build(key).omega is not None
    ]


def _passed(n, name):
    print("[acceptance] criterion {:2d} ({}): PASS".format(n, name))


# -- 1 -------------------------------------------------------------------


def test_criterion_1_catalog_validity():
    t0 = time.monotonic()
    for key in catalog.default_keys():
        e = catalog.build(key)
        assert jacobi_violations(e.algebra) == (), key.render()
        if e.omega is not None:
            report = check_lck(e.algebra, e.omega, e.theta, e.j)
            assert report.passed, (key.render(), report.failing())
    elapsed = time.monotonic() - t0
    assert elapsed < 5.0, "catalog battery took {:.2f}s".format(elapsed)
    _passed(1, "catalog validity")


# -- 2 -------------------------------------------------------------------

LEE_SIGN_TABLE = {1: 1, 2: 1, 3: -1, 4: 1, 5: 1, 6: 1}


def test_criterion_2_surface_lee_forms():
    w_form = Cochain.monomial(4, (3,))
    for k, sign in LEE_SIGN_TABLE.items():
        e = _entry("surface({})".format(k))
        theta = lee_form_from_omega(e.algebra, e.omega)
        assert theta == w_form.scale(sign), k
        assert ce_d(e.algebra, theta).is_zero
        h = metric_from(e.algebra, e.omega, e.j)
        assert is_positive_definite(h)
        assert is_integrable(e.algebra, e.j)
        # independent oracle: evaluate d(Omega) directly and compare with
        # both candidate signs of w ^ Omega
        d_omega = ce_d(e.algebra, e.omega)
        matches = [
            s for s in (1, -1) if wedge(w_form.scale(s), e.omega) == d_omega
        ]
        assert matches == [sign], k
    _passed(2, "surface Lee-form signs")


# -- 3 -------------------------------------------------------------------


def _oracle_d_matrix(g, p):
    """Coboundary matrix built through the antiderivation route only."""
    n = g.dim
    duals = {}
    for k in range(n):
        terms = {}
        for (i, j), coords in g.bracket_items():
            if coords[k]:
                terms[(i, j)] = -coords[k]
        duals[k] = Cochain.make(n, 2, terms)

    def d_monomial(indices):
        if not indices:
            return Cochain.zero(n, 1)
        head, rest = indices[0], indices[1:]
        d_head = duals[head]
        if not rest:
            return d_head
        rest_form = Cochain.monomial(n, rest)
        out = wedge(d_head, rest_form)
        tail = d_monomial(rest)
        if not tail.is_zero:
            out = out - wedge(Cochain.monomial(n, (head,)), tail)
        return out

    cols = [d_monomial(m).coordinates() for m in monomials(n, p)]
    if not cols:
        return Matrix.zeros(len(monomials(n, p + 1)), 0)
    return Matrix.from_rows(cols).transpose()


def _oracle_cohomology_dims(g):
    n = g.dim
    mats = [_oracle_d_matrix(g, p) for p in range(n)]
    dims = []
    for p in range(n + 1):
        kernel = len(monomials(n, p)) - (rank(mats[p]) if p < n else 0)
        image = rank(mats[p - 1]) if p > 0 else 0
        dims.append(kernel - image)
    return dims


def test_criterion_3_twisted_vanishing():
    for key_text in ("heisenberg_type(2)", "surface(6)"):
        e = _entry(key_text)
        g = e.algebra
        t0 = time.monotonic()
        for p in range(g.dim + 1):
            assert twisted_cohomology_dim(g, e.theta, p) == 0, (key_text, p)
        elapsed = time.monotonic() - t0
        assert elapsed < 1.0, "{} took {:.2f}s".format(key_text, elapsed)
        zero = Cochain.zero(g.dim, 1)
        untwisted = [twisted_cohomology_dim(g, zero, p) for p in range(g.dim + 1)]
        assert untwisted == _oracle_cohomology_dims(g), key_text
    _passed(3, "twisted vanishing + untwisted oracle")


# -- 4 -------------------------------------------------------------------

REEB_ACCEPTS = ("surface(1)", "surface(2)", "surface(5)", "surface(6)",
                "heisenberg_type(2)", "heisenberg_type(3)")
REEB_REJECTS = ("surface(3)", "surface(4)")


def test_criterion_4_reeb_decomposition_battery():
    for key_text in REEB_ACCEPTS:
        e = _entry(key_text)
        g = e.algebra
        rd = reeb_data(g, e.omega, e.theta, e.j)
        rebuilt = ce_d(g, rd.phi) - wedge(e.theta, rd.phi)
        assert rebuilt == e.omega, key_text
        d_phi = ce_d(g, rd.phi)
        from lcklab.hermitian import lee_field

        xi, _, _ = lee_field(g, e.omega, e.theta, e.j)
        assert contract(d_phi, xi).is_zero, key_text
        assert contract(d_phi, rd.eta).is_zero, key_text
    for key_text in REEB_REJECTS:
        e = _entry(key_text)
        try:
            reeb_data(e.algebra, e.omega, e.theta, e.j)
        except DecompositionFails:
            continue
        raise AssertionError("{} should not admit the decomposition".format(key_text))
    _passed(4, "Reeb decomposition battery")


# -- 5 -------------------------------------------------------------------

VAISMAN_TABLE = {
    "surface(1)": True,
    "surface(2)": True,
    "surface(3)": False,
    "surface(4)": False,
    "surface(5)": True,
    "surface(6)": True,
    "heisenberg_type(2)": True,
}


def _koszul_numerator(g, h, u, xi, z):
    def pair(a, b):
        return sum((x * y for x, y in zip(h.apply(a), b)), F(0))

    return pair(g.bracket(u, xi), z) - pair(g.bracket(xi, z), u) + pair(
        g.bracket(z, u), xi
    )


def test_criterion_5_vaisman_split():
    from lcklab.hermitian import lee_field

    for key_text, expected in VAISMAN_TABLE.items():
        e = _entry(key_text)
        g = e.algebra
        verdict = is_vaisman(g, LckStructure(g, e.omega, e.theta, e.j))
        assert verdict == expected, key_text
        # oracle: the Koszul numerator 2 h(nabla_u xi, z) evaluated directly
        h = metric_from(g, e.omega, e.j)
        xi, _, _ = lee_field(g, e.omega, e.theta, e.j)
        numerators = [
            _koszul_numerator(g, h, g.basis_vector(u), xi, g.basis_vector(z))
            for u in range(g.dim)
            for z in range(g.dim)
        ]
        if expected:
            assert all(value == 0 for value in numerators), key_text
        else:
            assert any(value != 0 for value in numerators), key_text
    # Killing cross-check on the Hopf class
    e = _entry("surface(6)")
    g = e.algebra
    h = metric_from(g, e.omega, e.j)
    from lcklab.hermitian import lee_field

    xi, _, _ = lee_field(g, e.omega, e.theta, e.j)
    rd = reeb_data(g, e.omega, e.theta, e.j)
    assert is_killing(g, h, xi)
    assert is_killing(g, h, rd.eta)
    _passed(5, "Vaisman split + Killing cross-check")


# -- 6 -------------------------------------------------------------------


def test_criterion_6_classification_invariance():
    rng = random.Random(20240809)
    presentations = 0
    for key in catalog.default_keys():
        e = catalog.build(key)
        if e.algebra.dim != 4:
            continue
        expected = catalog.expected_properties(key).label
        label = classify4(e.algebra)
        assert label.tag == expected, key.render()
        for _ in range(20):
            while True:
                p = Matrix.from_rows(
                    [[F(rng.randint(-2, 2)) for _ in range(4)] for _ in range(4)]
                )
                if det(p) != 0:
                    break
            moved = change_basis(e.algebra, p)
            assert classify4(moved).tag == expected, key.render()
        presentations += 1
    assert presentations >= 12
    assert classify4(_entry("surface(1)").algebra).tag == classify4(
        _entry("prop4_family(3ii)").algebra
    ).tag
    # reductive split agrees with Killing definiteness
    for key_text, compact in (("surface(6)", True), ("surface(5)", False)):
        g = _entry(key_text).algebra
        s_alg, _ = subalgebra(g, derived_subalgebra(g))
        k = killing_form(s_alg)
        assert is_positive_definite(k.scale(-1)) == compact
        tag = classify4(g).tag
        assert tag == ("Reductive-compact" if compact else "Reductive-split")
    _passed(6, "classification invariance ({} presentations x21)".format(presentations))


# -- 7 -------------------------------------------------------------------


def test_criterion_7_double_root_sweep():
    t0 = time.monotonic()
    hits = {}
    for m in range(-50, 51):
        for n in range(-50, 51):
            root = double_root_test(DoubleRootQuery(m, n))
            if root is not None:
                hits[(m, n)] = root
    elapsed = time.monotonic() - t0
    assert hits == {(3, 3): F(1), (-1, -1): F(-1)}
    assert elapsed < 1.0, "sweep took {:.2f}s".format(elapsed)

    # numeric-confirmation oracle: batched companion-matrix eigenvalues,
    # rational candidates confirmed by exact substitution
    import numpy as np

    numeric_hits = {}
    for m in range(-50, 51):
        companion = np.zeros((101, 3, 3))
        for idx, n in enumerate(range(-50, 51)):
            companion[idx] = [[0, 0, 1], [1, 0, -n], [0, 1, m]]
        eigenvalues = np.linalg.eigvals(companion)
        for idx, n in enumerate(range(-50, 51)):
            ev = eigenvalues[idx]
            # a numerical triple root splits by ~eps^(1/3) ~ 5e-6, so the
            # pair tolerance is loose; exact substitution filters fakes
            for a, b in combinations(range(3), 2):
                if abs(ev[a] - ev[b]) < 1e-4 and abs(ev[a].imag) < 1e-4:
                    cand = F(ev[a].real).limit_denominator(1000)
                    poly = DoubleRootQuery(m, n).poly()
                    value = sum(c * cand**i for i, c in enumerate(poly))
                    deriv = sum(i * c * cand ** (i - 1) for i, c in enumerate(poly) if i)
                    if value == 0 and deriv == 0:
                        numeric_hits[(m, n)] = cand
    assert numeric_hits == hits
    _passed(7, "double-root sweep vs numeric oracle")


# -- 8 -------------------------------------------------------------------


def test_criterion_8_searches():
    for key_text in ("heisenberg_type(2)", "surface(6)"):
        e = _entry(key_text)
        result = lck_search(e.algebra, j=e.j)
        assert result.found, key_text
        report = check_lck(
            e.algebra, result.witness.omega, result.witness.theta, result.witness.j
        )
        assert report.passed, key_text

    filiform = _entry("prop4_family(3i)")
    result = lck_search(filiform.algebra)
    assert not result.found
    assert "evidence" in result.note and "no witness on grid" in result.note

    for q in (1, 2):
        e = _entry("inoue_splus_Jq({})".format(q))
        result = lck_search(e.algebra, j=e.j)
        assert not result.found, q
        assert "evidence" in result.note
    _passed(8, "existence / non-existence searches")


# -- 9 -------------------------------------------------------------------


def _pool():
    keys = (
        "surface(1)", "surface(2)", "surface(3)", "surface(4)", "surface(5)",
        "surface(6)", "heisenberg_type(2)", "heisenberg_type(3)",
        "u2_Jdelta(1,0,+)", "prop3_family(rotation)", "prop4_family(4,a=1)",
        "prop4_family(8,a=1,b=1)",
    )
    return [_entry(k).algebra for k in keys]


def _random_cochain(rng, n, degree):
    terms = {}
    for mono in monomials(n, degree):
        if rng.random() < 0.6:
            value = F(rng.randint(-6, 6), rng.randint(1, 3))
            if value:
                terms[mono] = value
    return Cochain.make(n, degree, terms)


def test_criterion_9_property_suites():
    pool = _pool()
    rng = random.Random(20240800)

    count = 0
    while count < 110:
        g = pool[rng.randrange(len(pool))]
        w = _random_cochain(rng, g.dim, rng.randint(0, g.dim - 2))
        assert ce_d(g, ce_d(g, w)).is_zero
        count += 1

    count = 0
    while count < 110:
        g = pool[rng.randrange(len(pool))]
        closed = closed_one_forms(g)
        coeffs = [F(rng.randint(-2, 2)) for _ in range(closed.dim)]
        theta_coords = [F(0)] * g.dim
        for c, basis_vec in zip(coeffs, closed.basis):
            for i in range(g.dim):
                theta_coords[i] += c * basis_vec[i]
        theta = Cochain.from_coordinates(g.dim, 1, theta_coords)
        w = _random_cochain(rng, g.dim, rng.randint(0, g.dim - 2))
        assert twisted_d(g, theta, twisted_d(g, theta, w)).is_zero
        for v in derived_subalgebra(g).basis:
            assert eval_cochain(theta, [v]) == 0
        count += 1

    count = 0
    while count < 110:
        g = pool[rng.randrange(len(pool))]
        n = g.dim
        p = rng.randint(0, 2)
        q = rng.randint(0, max(0, min(2, n - p - 1)))
        a = _random_cochain(rng, n, p)
        b = _random_cochain(rng, n, q)
        assert ce_d(g, wedge(a, b)) == wedge(ce_d(g, a), b) + wedge(a, ce_d(g, b)).scale(
            (-1) ** p
        )
        count += 1

    count = 0
    while count < 110:
        n = rng.randint(2, 6)
        p = rng.randint(0, n)
        q = rng.randint(0, n - p)
        a = _random_cochain(rng, n, p)
        b = _random_cochain(rng, n, q)
        assert wedge(a, b) == wedge(b, a).scale((-1) ** (p * q))
        count += 1

    count = 0
    while count < 110:
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = Matrix.from_rows(
            [[F(rng.randint(-4, 4), rng.randint(1, 2)) for _ in range(cols)] for _ in range(rows)]
        )
        assert rank(m) + kernel_basis(m).dim == cols
        count += 1

    count = 0
    vaisman_pool = [
        _entry(k) for k in ("surface(3)", "surface(5)", "surface(6)", "heisenberg_type(2)")
    ]
    while count < 110:
        e = vaisman_pool[rng.randrange(len(vaisman_pool))]
        g = e.algebra
        h = metric_from(g, e.omega, e.j)
        u = g.vector({lab: rng.randint(-2, 2) for lab in g.labels})
        v = g.vector({lab: rng.randint(-2, 2) for lab in g.labels})
        torsion = vec_sub(
            vec_sub(koszul_nabla(g, h, u, v), koszul_nabla(g, h, v, u)),
            g.bracket(u, v),
        )
        assert vec_is_zero(torsion)
        count += 1
    _passed(9, "randomized exact property suites (6 x >=110 cases)")


# -- 10 ------------------------------------------------------------------


def _run_cli(*argv):
    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli_main(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_criterion_10_cli_roundtrip_and_exit_codes():
    import tempfile
    import os

    for key in catalog.default_keys():
        e = catalog.build(key)
        forms = {}
        if e.omega is not None:
            forms["Omega"] = e.omega
        if e.theta is not None:
            forms["theta"] = e.theta
        af = algebra_file_from_parts("entry", e.algebra, forms=forms, j=e.j)
        parsed = parse_algebra_file(emit_algebra_file(af))
        assert parsed == af, key.render()
        assert parsed.to_algebra() == e.algebra, key.render()
        if e.j is not None:
            assert parsed.complex_structure().matrix == e.j.matrix
        if e.omega is not None:
            assert parsed.form("Omega") == e.omega
            assert parsed.form("theta") == e.theta

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "hopf.alg")
        code, _, _ = _run_cli("catalog", "emit", "surface(6)", "--out", path)
        assert code == 0

        code, out, _ = _run_cli("check", path, "--format", "machine")
        assert code == 0
        assert parse_report(out).get("verdict") == "pass"

        broken = os.path.join(tmp, "broken.alg")
        with open(path) as handle:
            text = handle.read()
        with open(broken, "w") as handle:
            handle.write(text.replace("form theta 1 = W:1", "form theta 1 = W:2"))
        code, out, _ = _run_cli("check", broken, "--format", "machine")
        assert code == 1
        assert parse_report(out).get("check:lck_identity").startswith("fail")

        malformed = os.path.join(tmp, "malformed.alg")
        with open(malformed, "w") as handle:
            handle.write(text.replace("W:1", "W:1/0"))
        code, _, err = _run_cli("check", malformed)
        assert code == 2
        assert "line" in err
    _passed(10, "CLI round-trip and exit codes")


CRITERIA = (
    test_criterion_1_catalog_validity,
    test_criterion_2_surface_lee_forms,
    test_criterion_3_twisted_vanishing,
    test_criterion_4_reeb_decomposition_battery,
    test_criterion_5_vaisman_split,
    test_criterion_6_classification_invariance,
    test_criterion_7_double_root_sweep,
    test_criterion_8_searches,
    test_criterion_9_property_suites,
    test_criterion_10_cli_roundtrip_and_exit_codes,
)


if __name__ == "__main__":
    import sys
    import traceback

    failures = 0
    for idx, criterion in enumerate(CRITERIA, start=1):
        try:
            criterion()
        except Exception:
            failures += 1
            print("[acceptance] criterion {:2d}: FAIL".format(idx))
            traceback.print_exc()
    sys.exit(1 if failures else 0)
