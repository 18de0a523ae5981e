"""The algebra file format and the machine report format.

Algebra files are line-delimited UTF-8 text; all references are by basis
name, never by position, and rationals are written as "p" or "p/q" with
q > 0.  Reports are line-delimited key/value documents with a schema
version; parse and emit are exact inverses of each other.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cochain import Cochain
from .errors import ParseError
from .hermitian import ComplexStructure
from .lie import LieAlgebra
from .linalg import Matrix

ALGEBRA_SCHEMA = "lck-algebra/1"
REPORT_SCHEMA = "lck-report/1"

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_RATIONAL = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def parse_rational(text: str, line: Optional[int] = None) -> Fraction:
    if not _RATIONAL.match(text):
        raise ParseError("bad rational {!r} (want p or p/q with q > 0)".format(text), line)
    return Fraction(text)


def rational_str(x: Fraction) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class AlgebraFile:
    """Parsed contents of an algebra file, all references resolved by name.

    brackets: tuple of ((left, right), ((name, coeff), ...)) with terms
    sorted by basis position; forms: tuple of (name, degree, terms) where a
    term is ((name, ...), coeff); j: tuple of rows (from, ((to, coeff), ...)).
    """

    name: str
    labels: tuple
    brackets: tuple
    forms: tuple
    j: Optional[tuple]

    def to_algebra(self, check: bool = True) -> LieAlgebra:
        named = {
            pair: {name: coeff for name, coeff in terms}
            for pair, terms in self.brackets
        }
        return LieAlgebra.from_brackets(self.labels, named, check=check)

    def form_names(self):
        return tuple(name for name, _, _ in self.forms)

    def form(self, name: str) -> Cochain:
        index = {s: i for i, s in enumerate(self.labels)}
        for fname, degree, terms in self.forms:
            if fname == name:
                data = {}
                for names, coeff in terms:
                    data[tuple(index[s] for s in names)] = coeff
                return Cochain.make(len(self.labels), degree, data)
        raise KeyError("no form named {!r}".format(name))

    def complex_structure(self) -> Optional[ComplexStructure]:
        if self.j is None:
            return None
        index = {s: i for i, s in enumerate(self.labels)}
        n = len(self.labels)
        rows = [[Fraction(0)] * n for _ in range(n)]
        for source, terms in self.j:
            col = index[source]
            for target, coeff in terms:
                rows[index[target]][col] = coeff
        return ComplexStructure(Matrix.from_rows(rows))


def parse_algebra_file(text: str) -> AlgebraFile:
    name = None
    labels = None
    brackets = {}
    bracket_lines = {}
    forms = []
    form_names = set()
    j_rows = {}
    saw_schema = False
    dim = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        head = tokens[0]
        if not saw_schema:
            if head != "schema" or len(tokens) != 2 or tokens[1] != ALGEBRA_SCHEMA:
                raise ParseError(
                    "expected 'schema {}' first".format(ALGEBRA_SCHEMA), lineno
                )
            saw_schema = True
            continue
        if head == "name":
            if len(tokens) != 2:
                raise ParseError("name takes one token", lineno)
            name = tokens[1]
        elif head == "dim":
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError("dim takes one integer", lineno)
            dim = int(tokens[1])
        elif head == "basis":
            labels = tuple(tokens[1:])
            if len(set(labels)) != len(labels) or not labels:
                raise ParseError("basis names must be distinct and nonempty", lineno)
            for s in labels:
                if not _NAME.match(s):
                    raise ParseError("bad basis name {!r}".format(s), lineno)
        elif head == "bracket":
            if labels is None:
                raise ParseError("bracket before basis", lineno)
            if len(tokens) < 4 or tokens[3] != "=":
                raise ParseError("bracket syntax: bracket A B = N:r ...", lineno)
            left, right = tokens[1], tokens[2]
            for s in (left, right):
                if s not in labels:
                    raise ParseError("unknown basis name {!r}".format(s), lineno)
            if left == right:
                raise ParseError("bracket of a basis vector with itself", lineno)
            terms = _parse_terms(tokens[4:], labels, 1, lineno)
            pair = (left, right)
            if pair in bracket_lines:
                raise ParseError("duplicate bracket {} {}".format(left, right), lineno)
            bracket_lines[pair] = (terms, lineno)
        elif head == "form":
            if labels is None:
                raise ParseError("form before basis", lineno)
            if len(tokens) < 4 or tokens[3] != "=" or not tokens[2].isdigit():
                raise ParseError("form syntax: form NAME DEGREE = I^J:r ...", lineno)
            fname = tokens[1]
            if fname in form_names:
                raise ParseError("duplicate form {!r}".format(fname), lineno)
            degree = int(tokens[2])
            if degree > len(labels):
                raise ParseError("form degree exceeds dimension", lineno)
            terms = _parse_terms(tokens[4:], labels, degree, lineno)
            form_names.add(fname)
            forms.append((fname, degree, terms))
        elif head == "J":
            if labels is None:
                raise ParseError("J before basis", lineno)
            if len(tokens) < 3 or tokens[2] != "=":
                raise ParseError("J syntax: J FROM = TO:r ...", lineno)
            source = tokens[1]
            if source not in labels:
                raise ParseError("unknown basis name {!r}".format(source), lineno)
            if source in j_rows:
                raise ParseError("duplicate J row for {!r}".format(source), lineno)
            j_rows[source] = (_parse_terms(tokens[3:], labels, 1, lineno), lineno)
        else:
            raise ParseError("unknown directive {!r}".format(head), lineno)

    if not saw_schema:
        raise ParseError("empty input; expected 'schema {}'".format(ALGEBRA_SCHEMA))
    if name is None:
        raise ParseError("missing name line")
    if labels is None:
        raise ParseError("missing basis line")
    if dim is not None and dim != len(labels):
        raise ParseError("dim {} does not match basis of size {}".format(dim, len(labels)))

    index = {s: i for i, s in enumerate(labels)}
    canonical = {}
    for (left, right), (terms, lineno) in bracket_lines.items():
        reverse = (right, left)
        if reverse in bracket_lines and index[right] < index[left]:
            continue  # handled from the other orientation
        if reverse in bracket_lines:
            negated = tuple((s, -c) for s, c in bracket_lines[reverse][0])
            if _sort_terms(negated, index) != _sort_terms(terms, index):
                raise ParseError(
                    "brackets {} {} and {} {} are not exact negatives".format(
                        left, right, right, left
                    ),
                    lineno,
                )
        i, jdx = index[left], index[right]
        if i > jdx:
            left, right = right, left
            terms = tuple((s, -c) for s, c in terms)
        canonical[(left, right)] = _sort_terms(terms, index)

    forms_canonical = []
    for fname, degree, terms in forms:
        seen = {}
        for names, coeff in terms:
            if len(set(names)) != len(names):
                raise ParseError("repeated name in form index of {!r}".format(fname))
            key = tuple(sorted(names, key=index.get))
            sign = _perm_sign(tuple(index[s] for s in names))
            value = seen.get(key, Fraction(0)) + sign * coeff
            seen[key] = value
        clean = tuple(
            (key, value) for key, value in sorted(seen.items(), key=lambda kv: tuple(index[s] for s in kv[0])) if value != 0
        )
        forms_canonical.append((fname, degree, clean))

    j_canonical = None
    if j_rows:
        j_canonical = tuple(
            (source, _sort_terms(j_rows[source][0], index))
            for source in labels
            if source in j_rows
        )

    return AlgebraFile(
        name=name,
        labels=labels,
        brackets=tuple(
            sorted(canonical.items(), key=lambda kv: (index[kv[0][0]], index[kv[0][1]]))
        ),
        forms=tuple(sorted(forms_canonical)),
        j=j_canonical,
    )


def _parse_terms(tokens, labels, arity, lineno):
    terms = []
    for token in tokens:
        if arity == 0:
            coeff = parse_rational(token, lineno)
            terms.append(((), coeff))
            continue
        if ":" not in token:
            raise ParseError("term {!r} needs NAME:coeff".format(token), lineno)
        head, _, tail = token.rpartition(":")
        names = tuple(head.split("^"))
        if len(names) != arity:
            raise ParseError(
                "term {!r} has arity {}, expected {}".format(token, len(names), arity),
                lineno,
            )
        for s in names:
            if s not in labels:
                raise ParseError("unknown basis name {!r}".format(s), lineno)
        coeff = parse_rational(tail, lineno)
        if arity == 1:
            terms.append((names[0], coeff))
        else:
            terms.append((names, coeff))
    return tuple(terms)


def _sort_terms(terms, index):
    merged = {}
    for s, c in terms:
        merged[s] = merged.get(s, Fraction(0)) + c
    return tuple(
        (s, c) for s, c in sorted(merged.items(), key=lambda kv: index[kv[0]]) if c != 0
    )


def _perm_sign(indices) -> int:
    sign = 1
    idx = list(indices)
    for a in range(len(idx)):
        for b in range(len(idx) - 1 - a):
            if idx[b] > idx[b + 1]:
                idx[b], idx[b + 1] = idx[b + 1], idx[b]
                sign = -sign
    return sign


def emit_algebra_file(af: AlgebraFile) -> str:
    lines = ["schema {}".format(ALGEBRA_SCHEMA)]
    lines.append("name {}".format(af.name))
    lines.append("dim {}".format(len(af.labels)))
    lines.append("basis {}".format(" ".join(af.labels)))
    for (left, right), terms in af.brackets:
        rendered = " ".join("{}:{}".format(s, rational_str(c)) for s, c in terms)
        lines.append("bracket {} {} = {}".format(left, right, rendered))
    for fname, degree, terms in af.forms:
        rendered = " ".join(
            "{}:{}".format("^".join(names), rational_str(c)) for names, c in terms
        )
        lines.append("form {} {} = {}".format(fname, degree, rendered).rstrip())
    if af.j is not None:
        for source, terms in af.j:
            rendered = " ".join("{}:{}".format(s, rational_str(c)) for s, c in terms)
            lines.append("J {} = {}".format(source, rendered))
    return "\n".join(lines) + "\n"


def algebra_file_from_parts(
    name: str,
    g: LieAlgebra,
    forms: Optional[dict] = None,
    j: Optional[ComplexStructure] = None,
) -> AlgebraFile:
    """Serialize live objects into the canonical file representation."""
    labels = g.labels
    brackets = []
    for (i, jdx), coords in g.bracket_items():
        terms = tuple(
            (labels[k], coords[k]) for k in range(g.dim) if coords[k] != 0
        )
        brackets.append(((labels[i], labels[jdx]), terms))
    forms_data = []
    for fname in sorted(forms or {}):
        cochain = forms[fname]
        terms = tuple(
            (tuple(labels[i] for i in key), value) for key, value in cochain.terms()
        )
        forms_data.append((fname, cochain.degree, terms))
    j_data = None
    if j is not None:
        j_data = []
        for col in range(g.dim):
            column = j.matrix.col(col)
            terms = tuple(
                (labels[row], column[row]) for row in range(g.dim) if column[row] != 0
            )
            j_data.append((labels[col], terms))
        j_data = tuple(j_data)
    return AlgebraFile(
        name=name,
        labels=labels,
        brackets=tuple(brackets),
        forms=tuple(forms_data),
        j=j_data,
    )


@dataclass(frozen=True)
class Report:
    """A machine report: a command name plus ordered key/value items."""

    command: str
    items: tuple

    def get(self, key: str) -> str:
        for k, v in self.items:
            if k == key:
                return v
        raise KeyError(key)

    def get_all(self, key: str):
        return tuple(v for k, v in self.items if k == key)

    def has(self, key: str) -> bool:
        return any(k == key for k, _ in self.items)


def emit_report(report: Report) -> str:
    lines = ["schema {}".format(REPORT_SCHEMA), "command {}".format(report.command)]
    for key, value in report.items:
        lines.append("item {} {}".format(key, value).rstrip())
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> Report:
    lines = [l for l in text.splitlines() if l.strip()]
    if not lines or lines[0].split() != ["schema", REPORT_SCHEMA]:
        raise ParseError("expected 'schema {}' first".format(REPORT_SCHEMA), 1)
    if len(lines) < 2 or not lines[1].startswith("command "):
        raise ParseError("expected a command line", 2)
    command = lines[1][len("command ") :].strip()
    items = []
    for lineno, line in enumerate(lines[2:], start=3):
        parts = line.split(" ", 2)
        if parts[0] != "item" or len(parts) < 2:
            raise ParseError("expected an item line", lineno)
        key = parts[1]
        value = parts[2] if len(parts) == 3 else ""
        items.append((key, value))
    return Report(command=command, items=tuple(items))


def render_human(report: Report) -> str:
    width = max((len(k) for k, _ in report.items), default=0)
    lines = ["[{}]".format(report.command)]
    for key, value in report.items:
        lines.append("  {:<{}}  {}".format(key, width, value).rstrip())
    return "\n".join(lines) + "\n"
