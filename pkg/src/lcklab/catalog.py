"""Constructors for the named algebras and Hermitian structures.

Every entry is built from its printed bracket table.  Where an entry
carries a fundamental 2-form, the stored Lee form is the one *computed*
from it (unique for nondegenerate forms), so each entry is internally
consistent under this project's sign conventions; the per-entry signs are
frozen in the test suite as a regression table.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cochain import Cochain, is_closed
from .errors import BadParameters
from .hermitian import ComplexStructure, lee_form_from_omega
from .lie import LieAlgebra
from .linalg import as_rat

_KINDS = (
    "surface",
    "heisenberg_type",
    "u2_Jdelta",
    "prop3_family",
    "prop4_family",
    "inoue_splus_Jq",
    "hopf_Jd",
)


@dataclass(frozen=True)
class CatalogKey:
    """A catalog entry name plus its canonicalized parameters."""

    kind: str
    args: tuple

    def render(self) -> str:
        parts = []
        for name, value in self.args:
            if name in ("k", "n", "variant", "sign", "c", "d", "q"):
                parts.append(str(value))
            else:
                parts.append("{}={}".format(name, value))
        return "{}({})".format(self.kind, ",".join(parts))

    def arg(self, name):
        for key, value in self.args:
            if key == name:
                return value
        raise KeyError(name)

    def has_arg(self, name) -> bool:
        return any(key == name for key, _ in self.args)

    def __str__(self):
        return self.render()


def _positional(kind):
    return {
        "surface": ("k",),
        "heisenberg_type": ("n",),
        "u2_Jdelta": ("c", "d", "sign"),
        "prop3_family": ("variant",),
        "prop4_family": ("variant",),
        "inoue_splus_Jq": ("q",),
        "hopf_Jd": ("d",),
    }[kind]


def parse_key(text: str) -> CatalogKey:
    text = text.strip()
    m = re.match(r"^([a-zA-Z0-9_]+)\((.*)\)$", text)
    if not m:
        raise BadParameters("catalog key must look like name(args): {!r}".format(text))
    kind, argstr = m.group(1), m.group(2)
    if kind not in _KINDS:
        raise BadParameters("unknown catalog entry {!r}".format(kind))
    raw = [a.strip() for a in argstr.split(",")] if argstr.strip() else []
    positional = _positional(kind)
    named = {}
    pos_index = 0
    for item in raw:
        if "=" in item:
            name, value = item.split("=", 1)
            named[name.strip()] = value.strip()
        else:
            if pos_index >= len(positional):
                raise BadParameters("too many positional arguments in {!r}".format(text))
            named[positional[pos_index]] = item
            pos_index += 1
    return make_key(kind, **named)


def make_key(kind: str, **params) -> CatalogKey:
    """Canonicalize and range-check parameters for a catalog entry."""
    if kind == "surface":
        k = int(params.pop("k"))
        if params or not 1 <= k <= 6:
            raise BadParameters("surface(k) needs k in 1..6")
        return CatalogKey(kind, (("k", k),))
    if kind == "heisenberg_type":
        n = int(params.pop("n"))
        if params or n < 2:
            raise BadParameters("heisenberg_type(n) needs an integer n >= 2")
        return CatalogKey(kind, (("n", n),))
    if kind == "u2_Jdelta":
        c = as_rat(params.pop("c"))
        d = as_rat(params.pop("d"))
        sign = str(params.pop("sign", "+"))
        if params or c == 0 or sign not in ("+", "-"):
            raise BadParameters("u2_Jdelta(c,d,sign) needs c != 0 and sign in {+,-}")
        return CatalogKey(kind, (("c", c), ("d", d), ("sign", sign)))
    if kind == "prop3_family":
        variant = str(params.pop("variant"))
        if params or variant not in ("rotation", "hyperbolic"):
            raise BadParameters("prop3_family(variant) needs rotation or hyperbolic")
        return CatalogKey(kind, (("variant", variant),))
    if kind == "prop4_family":
        variant = str(params.pop("variant"))
        if variant in ("3i", "3ii"):
            if params:
                raise BadParameters("prop4_family({}) takes no parameters".format(variant))
            return CatalogKey(kind, (("variant", variant),))
        if variant == "4":
            a = as_rat(params.pop("a"))
            if params or a == 0:
                raise BadParameters("prop4_family(4) needs a != 0")
            return CatalogKey(kind, (("variant", variant), ("a", a)))
        if variant == "5":
            b = as_rat(params.pop("b"))
            if params or b == 0:
                raise BadParameters("prop4_family(5) needs b != 0")
            return CatalogKey(kind, (("variant", variant), ("b", b)))
        if variant == "6":
            a = as_rat(params.pop("a"))
            b = as_rat(params.pop("b"))
            eigen = (a, b, -(a + b))
            if params or a == 0 or b == 0 or len(set(eigen)) != 3:
                raise BadParameters(
                    "prop4_family(6) needs a, b nonzero with distinct eigenvalues"
                )
            return CatalogKey(kind, (("variant", variant), ("a", a), ("b", b)))
        if variant in ("7i", "7ii"):
            a = as_rat(params.pop("a"))
            if params or a == 0:
                raise BadParameters("prop4_family({}) needs a != 0".format(variant))
            return CatalogKey(kind, (("variant", variant), ("a", a)))
        if variant == "8":
            a = as_rat(params.pop("a"))
            b = as_rat(params.pop("b"))
            if params or a == 0 or b == 0:
                raise BadParameters("prop4_family(8) needs a, b nonzero")
            return CatalogKey(kind, (("variant", variant), ("a", a), ("b", b)))
        raise BadParameters("unknown prop4_family variant {!r}".format(variant))
    if kind == "inoue_splus_Jq":
        q = as_rat(params.pop("q"))
        if params or q == 0:
            raise BadParameters("inoue_splus_Jq(q) needs q != 0")
        return CatalogKey(kind, (("q", q),))
    if kind == "hopf_Jd":
        d = as_rat(params.pop("d"))
        if params or d == 0:
            raise BadParameters("hopf_Jd(d) needs d != 0")
        return CatalogKey(kind, (("d", d),))
    raise BadParameters("unknown catalog entry {!r}".format(kind))


@dataclass(frozen=True)
class CatalogEntry:
    key: CatalogKey
    algebra: LieAlgebra
    j: Optional[ComplexStructure]
    omega: Optional[Cochain]
    theta: Optional[Cochain]


@dataclass(frozen=True)
class Expectation:
    """Recorded facts for an entry, as used by the acceptance suite.

    ``lck``/``vaisman`` refer to the entry's own (Omega, theta, J) data when
    present, otherwise to recorded existence facts; None means unasserted.
    ``lattice`` is one of "yes", "no", "not-applicable".
    """

    label: Optional[str]
    lck: Optional[bool]
    vaisman: Optional[bool]
    lattice: Optional[str]


_SURFACE_BRACKETS = {
    # class 2 rotation action corrected: [W,Y] = X keeps the algebra solvable
    # non-nilpotent (the printed [W,Y] = Z variant would be nilpotent).
    1: {("X", "Y"): {"Z": -1}},
    2: {("X", "Y"): {"Z": -1}, ("W", "X"): {"Y": -1}, ("W", "Y"): {"X": 1}},
    3: {("Y", "Z"): {"X": -1}, ("W", "Y"): {"Y": 1}, ("W", "Z"): {"Z": -1}},
    4: {
        ("W", "X"): {"X": Fraction(-1, 2), "Y": -1},
        ("W", "Y"): {"X": 1, "Y": Fraction(-1, 2)},
        ("W", "Z"): {"Z": 1},
    },
    5: {("X", "Y"): {"Z": -1}, ("Z", "X"): {"Y": 1}, ("Z", "Y"): {"X": -1}},
    6: {("X", "Y"): {"Z": -1}, ("Z", "X"): {"Y": -1}, ("Z", "Y"): {"X": 1}},
}


def _surface_algebra(k: int) -> LieAlgebra:
    return LieAlgebra.from_brackets(("X", "Y", "Z", "W"), _SURFACE_BRACKETS[k])


def _surface_j(g: LieAlgebra) -> ComplexStructure:
    return ComplexStructure.from_images(
        g, {"X": {"Y": 1}, "Y": {"X": -1}, "Z": {"W": 1}, "W": {"Z": -1}}
    )


def _surface_omega(g: LieAlgebra) -> Cochain:
    x, y, z, w = range(4)
    return Cochain.make(4, 2, {(x, y): 1, (z, w): 1})


def build(key: CatalogKey) -> CatalogEntry:
    """Instantiate a catalog entry; Lee forms are computed, not assumed."""
    kind = key.kind
    if kind == "surface":
        g = _surface_algebra(key.arg("k"))
        j = _surface_j(g)
        omega = _surface_omega(g)
        theta = lee_form_from_omega(g, omega)
        assert theta is not None and is_closed(g, theta)
        return CatalogEntry(key, g, j, omega, theta)
    if kind == "heisenberg_type":
        n = key.arg("n")
        m = n - 1
        labels = ("A", "B") + tuple(
            "X{}".format(i + 1) for i in range(m)
        ) + tuple("Y{}".format(i + 1) for i in range(m))
        brackets = {
            ("X{}".format(i + 1), "Y{}".format(i + 1)): {"B": 1} for i in range(m)
        }
        g = LieAlgebra.from_brackets(labels, brackets)
        images = {"A": {"B": 1}, "B": {"A": -1}}
        for i in range(m):
            images["X{}".format(i + 1)] = {"Y{}".format(i + 1): 1}
            images["Y{}".format(i + 1)] = {"X{}".format(i + 1): -1}
        j = ComplexStructure.from_images(g, images)
        terms = {(0, 1): 1}
        for i in range(m):
            terms[(2 + i, 2 + m + i)] = 1
        omega = Cochain.make(2 * n, 2, terms)
        theta = lee_form_from_omega(g, omega)
        assert theta is not None and is_closed(g, theta)
        return CatalogEntry(key, g, j, omega, theta)
    if kind == "u2_Jdelta":
        c, d, sign = key.arg("c"), key.arg("d"), key.arg("sign")
        g = LieAlgebra.from_brackets(
            ("T", "X", "Y", "Z"),
            {("X", "Y"): {"Z": 1}, ("Y", "Z"): {"X": 1}, ("Z", "X"): {"Y": 1}},
        )
        s = 1 if sign == "+" else -1
        j = ComplexStructure.from_images(
            g,
            {
                "T": {"T": -d / c, "X": (c * c + d * d) / c},
                "X": {"T": Fraction(-1) / c, "X": d / c},
                "Y": {"Z": s},
                "Z": {"Y": -s},
            },
        )
        return CatalogEntry(key, g, j, None, None)
    if kind == "prop3_family":
        variant = key.arg("variant")
        base = {("Y", "Z"): {"X": -1}}
        if variant == "rotation":
            base.update({("W", "Y"): {"Z": -1}, ("W", "Z"): {"Y": 1}})
        else:
            base.update({("W", "Y"): {"Y": 1}, ("W", "Z"): {"Z": -1}})
        g = LieAlgebra.from_brackets(("X", "Y", "Z", "W"), base)
        return CatalogEntry(key, g, None, None, None)
    if kind == "prop4_family":
        a_mat = _prop4_matrix(key)
        labels = ("X1", "X2", "X3", "W")
        brackets = {}
        for i in range(3):
            terms = {
                "X{}".format(jj + 1): a_mat[i][jj]
                for jj in range(3)
                if a_mat[i][jj] != 0
            }
            if terms:
                brackets[("W", "X{}".format(i + 1))] = terms
        g = LieAlgebra.from_brackets(labels, brackets)
        return CatalogEntry(key, g, None, None, None)
    if kind == "inoue_splus_Jq":
        q = key.arg("q")
        g = _surface_algebra(3)
        j = ComplexStructure.from_images(
            g,
            {
                "X": {"Y": 1},
                "Y": {"X": -1},
                "Z": {"W": 1, "Y": -q},
                "W": {"Z": -1, "X": -q},
            },
        )
        return CatalogEntry(key, g, j, None, None)
    if kind == "hopf_Jd":
        d = key.arg("d")
        g = _surface_algebra(6)
        j = ComplexStructure.from_images(
            g,
            {
                "X": {"Y": 1},
                "Y": {"X": -1},
                "Z": {"W": 1, "Z": d},
                "W": {"W": -d, "Z": -(1 + d * d)},
            },
        )
        return CatalogEntry(key, g, j, None, None)
    raise BadParameters("unknown catalog entry {!r}".format(kind))


def _prop4_matrix(key: CatalogKey):
    variant = key.arg("variant")
    zero = Fraction(0)
    if variant == "3i":
        rows = [[0, 1, 0], [0, 0, 1], [0, 0, 0]]
    elif variant == "3ii":
        rows = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
    elif variant == "4":
        a = key.arg("a")
        rows = [[zero] * 3, [zero, a, zero], [zero, zero, -a]]
    elif variant == "5":
        b = key.arg("b")
        rows = [[zero] * 3, [zero, zero, -b], [zero, b, zero]]
    elif variant == "6":
        a, b = key.arg("a"), key.arg("b")
        rows = [[a, zero, zero], [zero, b, zero], [zero, zero, -(a + b)]]
    elif variant == "7i":
        a = key.arg("a")
        rows = [[-2 * a, zero, zero], [zero, a, zero], [zero, zero, a]]
    elif variant == "7ii":
        a = key.arg("a")
        rows = [[-2 * a, zero, zero], [zero, a, Fraction(1)], [zero, zero, a]]
    elif variant == "8":
        a, b = key.arg("a"), key.arg("b")
        rows = [[-2 * a, zero, zero], [zero, a, -b], [zero, b, a]]
    else:
        raise BadParameters("unknown prop4_family variant {!r}".format(variant))
    return [[as_rat(x) for x in row] for row in rows]


_SURFACE_EXPECTATIONS = {
    1: Expectation("Prop4-3ii", True, True, "yes"),
    2: Expectation("Prop3-rotation", True, True, "yes"),
    3: Expectation("Prop3-hyperbolic", True, False, "yes"),
    4: Expectation("Prop4-8", True, False, "yes"),
    5: Expectation("Reductive-split", True, True, "yes"),
    6: Expectation("Reductive-compact", True, True, "yes"),
}

_PROP4_EXPECTATIONS = {
    "3i": Expectation("Prop4-3i", False, None, "yes"),
    "3ii": Expectation("Prop4-3ii", True, None, "yes"),
    "4": Expectation("Prop4-4", None, None, "yes"),
    "5": Expectation("Prop4-5", None, None, "yes"),
    "6": Expectation("Prop4-6", None, None, "yes"),
    "7i": Expectation("Prop4-7i", None, None, "no"),
    "7ii": Expectation("Prop4-7ii", None, None, "no"),
    "8": Expectation("Prop4-8", None, None, "yes"),
}


def expected_properties(key: CatalogKey) -> Expectation:
    """The recorded facts for an entry (classification, l.c.K., lattices)."""
    kind = key.kind
    if kind == "surface":
        return _SURFACE_EXPECTATIONS[key.arg("k")]
    if kind == "heisenberg_type":
        if key.arg("n") == 2:
            return Expectation("Prop4-3ii", True, True, "yes")
        return Expectation(None, True, True, None)
    if kind == "u2_Jdelta":
        return Expectation("Reductive-compact", True, None, "yes")
    if kind == "prop3_family":
        tag = "Prop3-rotation" if key.arg("variant") == "rotation" else "Prop3-hyperbolic"
        return Expectation(tag, None, None, "yes")
    if kind == "prop4_family":
        return _PROP4_EXPECTATIONS[key.arg("variant")]
    if kind == "inoue_splus_Jq":
        # these complex structures admit no compatible l.c.K. form
        return Expectation("Prop3-hyperbolic", False, None, "yes")
    if kind == "hopf_Jd":
        return Expectation("Reductive-compact", True, None, "yes")
    raise BadParameters("unknown catalog entry {!r}".format(kind))


def default_keys():
    """The finite key list exercised by the CLI and the test batteries."""
    keys = [make_key("surface", k=k) for k in range(1, 7)]
    keys += [make_key("heisenberg_type", n=2), make_key("heisenberg_type", n=3)]
    keys += [
        make_key("u2_Jdelta", c=1, d=0, sign="+"),
        make_key("u2_Jdelta", c=1, d=0, sign="-"),
        make_key("u2_Jdelta", c=2, d=3, sign="+"),
        make_key("u2_Jdelta", c=Fraction(1, 2), d=-1, sign="+"),
    ]
    keys += [make_key("prop3_family", variant=v) for v in ("rotation", "hyperbolic")]
    keys += [
        make_key("prop4_family", variant="3i"),
        make_key("prop4_family", variant="3ii"),
        make_key("prop4_family", variant="4", a=1),
        make_key("prop4_family", variant="5", b=1),
        make_key("prop4_family", variant="6", a=1, b=2),
        make_key("prop4_family", variant="7i", a=1),
        make_key("prop4_family", variant="7ii", a=1),
        make_key("prop4_family", variant="8", a=1, b=1),
    ]
    keys += [make_key("inoue_splus_Jq", q=1), make_key("inoue_splus_Jq", q=2)]
    keys += [make_key("hopf_Jd", d=1), make_key("hopf_Jd", d=-1)]
    return tuple(keys)
