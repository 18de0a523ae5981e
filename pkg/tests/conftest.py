import random
from fractions import Fraction

import pytest

from lcklab import catalog
from lcklab.cochain import Cochain, monomials
from lcklab.linalg import Matrix, det


def entry(key_text):
    return catalog.build(catalog.parse_key(key_text))


@pytest.fixture
def hopf():
    return entry("surface(6)")


@pytest.fixture
def inoue_splus():
    return entry("surface(3)")


@pytest.fixture
def heisenberg4():
    return entry("heisenberg_type(2)")


def random_fraction(rng, span=3, max_den=3):
    num = rng.randint(-span * max_den, span * max_den)
    den = rng.randint(1, max_den)
    return Fraction(num, den)


def random_invertible(rng, n, span=2):
    while True:
        m = Matrix.from_rows(
            [[Fraction(rng.randint(-span, span)) for _ in range(n)] for _ in range(n)]
        )
        if det(m) != 0:
            return m


def random_cochain(rng, n, degree, span=3):
    terms = {}
    for mono in monomials(n, degree):
        if rng.random() < 0.6:
            value = random_fraction(rng, span=span)
            if value:
                terms[mono] = value
    return Cochain.make(n, degree, terms)


def algebra_pool():
    """Deterministic pool of Jacobi-valid algebras of mixed dimensions."""
    keys = [
        "surface(1)",
        "surface(2)",
        "surface(3)",
        "surface(4)",
        "surface(5)",
        "surface(6)",
        "heisenberg_type(2)",
        "heisenberg_type(3)",
        "u2_Jdelta(1,0,+)",
        "prop3_family(rotation)",
        "prop4_family(4,a=1)",
        "prop4_family(8,a=1,b=1)",
    ]
    return [entry(k).algebra for k in keys]
