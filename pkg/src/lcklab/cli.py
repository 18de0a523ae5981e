"""Command-line front end.

Exit codes, uniform across subcommands: 0 when the requested computation
succeeds and every requested check passes; 1 when a check fails, a witness
is absent, or the operation rejects the input on mathematical grounds;
2 on input errors (unreadable files, parse errors, bad keys or flags).

LCK_LAB_THREADS bounds the worker count; this build evaluates everything
on a single worker, which always satisfies the bound.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import catalog as cat
from .classify import (
    DoubleRootQuery,
    GridSpec,
    classify4,
    double_root_test,
    lattice_verdict,
    lck_search,
)
from .cochain import Cochain, twisted_cohomology_dim
from .errors import (
    BadParameters,
    LckLabError,
    LeeFormNotClosed,
    ParseError,
    WrongDimension,
)
from .fileformat import (
    AlgebraFile,
    Report,
    algebra_file_from_parts,
    emit_algebra_file,
    emit_report,
    parse_algebra_file,
    parse_rational,
    rational_str,
    render_human,
)
from .hermitian import LckStructure, check_lck, is_vaisman, metric_from
from .linalg import is_positive_definite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    workers = os.environ.get("LCK_LAB_THREADS")
    if workers is not None:
        if not workers.isdigit() or int(workers) < 1:
            print("error: LCK_LAB_THREADS must be a positive integer", file=sys.stderr)
            return EXIT_INPUT_ERROR
    try:
        report, code = args.run(args)
    except ParseError as exc:
        print("error: {}".format(exc), file=sys.stderr)
        return EXIT_INPUT_ERROR
    except BadParameters as exc:
        print("error: {}".format(exc), file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        print("error: {}".format(exc), file=sys.stderr)
        return EXIT_INPUT_ERROR
    except LckLabError as exc:
        print("error: {}".format(exc), file=sys.stderr)
        return EXIT_CHECK_FAILED
    if report is not None:
        text = emit_report(report) if args.format == "machine" else render_human(report)
        sys.stdout.write(text)
    return code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcklab",
        description="Exact verification, cohomology, classification and "
        "search for l.c.K. structures on rational Lie algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument(
            "--format", choices=("human", "machine"), default="human",
            help="report rendering (default: human)",
        )

    p = sub.add_parser("check", help="verify the l.c.K. conditions in a file")
    p.add_argument("file")
    p.add_argument("--omega", default="Omega", help="name of the 2-form (default: Omega)")
    p.add_argument("--theta", default="theta", help="name of the Lee form (default: theta)")
    add_format(p)
    p.set_defaults(run=_cmd_check)

    p = sub.add_parser("cohomology", help="twisted cohomology dimensions")
    p.add_argument("file")
    p.add_argument("--theta", required=True, help="name of the twist 1-form, or 0")
    p.add_argument("--p", default="all", help="degree, or 'all' (default)")
    add_format(p)
    p.set_defaults(run=_cmd_cohomology)

    p = sub.add_parser("classify", help="dimension-4 unimodular classification")
    p.add_argument("file")
    add_format(p)
    p.set_defaults(run=_cmd_classify)

    p = sub.add_parser("catalog", help="list or emit named catalog entries")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("key", nargs="?", help="catalog key, e.g. 'surface(6)'")
    p.add_argument("--out", help="write the emitted file here instead of stdout")
    add_format(p)
    p.set_defaults(run=_cmd_catalog)

    p = sub.add_parser("search", help="grid search for an l.c.K. structure")
    p.add_argument("file")
    p.add_argument(
        "--grid",
        help="lo:hi:step for the Lee-form grid; use --grid=-3:3:1/2 when lo is negative",
    )
    add_format(p)
    p.set_defaults(run=_cmd_search)

    p = sub.add_parser("double-root", help="repeated-root test for t^3 - m t^2 + n t - 1")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    add_format(p)
    p.set_defaults(run=_cmd_double_root)

    return parser


def _load(path: str) -> AlgebraFile:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_algebra_file(handle.read())


def _require_algebra(af: AlgebraFile):
    g = af.to_algebra(check=False)
    if not g.jacobi_ok:
        raise ParseError(
            "structure constants violate the Jacobi identity on triples {}".format(
                ", ".join(str(v[:3]) for v in g._violations[:3])
            )
        )
    return g


def _form_str(af_labels, cochain: Cochain) -> str:
    if cochain.is_zero:
        return "0"
    return " ".join(
        "{}:{}".format("^".join(af_labels[i] for i in key), rational_str(value))
        for key, value in cochain.terms()
    )


def _vector_str(labels, v) -> str:
    parts = [
        "{}:{}".format(labels[i], rational_str(c)) for i, c in enumerate(v) if c != 0
    ]
    return " ".join(parts) if parts else "0"


def _cmd_check(args):
    af = _load(args.file)
    g = _require_algebra(af)
    try:
        omega = af.form(args.omega)
    except KeyError:
        raise ParseError("file has no 2-form named {!r}".format(args.omega))
    if omega.degree != 2:
        raise ParseError("form {!r} does not have degree 2".format(args.omega))
    j = af.complex_structure()
    if j is None:
        raise ParseError("file has no J section")
    theta_source = "given"
    try:
        theta = af.form(args.theta)
    except KeyError:
        theta = None
    if theta is None:
        from .hermitian import lee_form_from_omega

        theta = lee_form_from_omega(g, omega)
        theta_source = "computed"
        if theta is None:
            raise ParseError("no Lee form given and none satisfies theta^Omega = dOmega")
    if theta.degree != 1:
        raise ParseError("form {!r} does not have degree 1".format(args.theta))

    report = check_lck(g, omega, theta, j)
    items = [("input", args.file), ("theta_source", theta_source)]
    for item in report.items:
        value = "pass" if item.passed else "fail"
        if item.witness and not item.passed:
            value += " ({})".format(item.witness)
        items.append(("check:{}".format(item.name), value))
    items.append(("theta", _form_str(af.labels, theta)))
    if report.theta_computed is not None:
        items.append(("lee_form_computed", _form_str(af.labels, report.theta_computed)))
    if report.lee_field is not None:
        items.append(("lee_field", _vector_str(af.labels, report.lee_field)))
        items.append(("lee_norm_sq", rational_str(report.theta_norm_sq)))
    if report.reeb_ok:
        items.append(("reeb_field", _vector_str(af.labels, report.reeb_field)))
        items.append(("reeb_form", _form_str(af.labels, report.reeb_form)))
        items.append(("reeb_sign", "{:+d}".format(report.reeb_sign)))
    elif report.reeb_ok is False:
        items.append(("reeb_decomposition", "fails for both signs"))
    if report.passed:
        structure = LckStructure(g, omega, theta, j)
        items.append(("vaisman", "true" if is_vaisman(g, structure) else "false"))
    items.append(("verdict", "pass" if report.passed else "fail"))
    return (
        Report("check", tuple(items)),
        EXIT_OK if report.passed else EXIT_CHECK_FAILED,
    )


def _cmd_cohomology(args):
    af = _load(args.file)
    g = _require_algebra(af)
    if args.theta in ("0", "zero"):
        theta = Cochain.zero(g.dim, 1)
    else:
        try:
            theta = af.form(args.theta)
        except KeyError:
            raise ParseError("file has no form named {!r}".format(args.theta))
        if theta.degree != 1:
            raise ParseError("form {!r} does not have degree 1".format(args.theta))
    if args.p == "all":
        degrees = list(range(g.dim + 1))
    else:
        try:
            p = int(args.p)
        except ValueError:
            raise ParseError("--p wants an integer or 'all'")
        if not 0 <= p <= g.dim:
            raise ParseError("--p out of range 0..{}".format(g.dim))
        degrees = [p]
    items = [("input", args.file), ("theta", _form_str(af.labels, theta))]
    for p in degrees:
        dim = twisted_cohomology_dim(g, theta, p)  # may raise LeeFormNotClosed
        items.append(("H^{}".format(p), str(dim)))
    return Report("cohomology", tuple(items)), EXIT_OK


def _cmd_classify(args):
    af = _load(args.file)
    g = _require_algebra(af)
    label = classify4(g)  # may raise WrongDimension -> exit 1
    verdict = lattice_verdict(label)
    items = [("input", args.file), ("label", label.tag)]
    items.extend(("normalized:{}".format(k), v) for k, v in label.normalized)
    items.append(("lattice", verdict.verdict))
    items.append(("lattice_reason", verdict.reason))
    return Report("classify", tuple(items)), EXIT_OK


def _cmd_catalog(args):
    if args.action == "list":
        items = [("key", key.render()) for key in cat.default_keys()]
        return Report("catalog", tuple(items)), EXIT_OK
    if not args.key:
        raise BadParameters("catalog emit needs a key")
    key = cat.parse_key(args.key)
    entry = cat.build(key)
    forms = {}
    if entry.omega is not None:
        forms["Omega"] = entry.omega
    if entry.theta is not None:
        forms["theta"] = entry.theta
    af = algebra_file_from_parts(
        _file_name(key), entry.algebra, forms=forms, j=entry.j
    )
    text = emit_algebra_file(af)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        return Report("catalog", (("emitted", args.out), ("key", key.render()))), EXIT_OK
    sys.stdout.write(text)
    return None, EXIT_OK


def _file_name(key) -> str:
    return (
        key.render()
        .replace("(", "_")
        .replace(")", "")
        .replace(",", "_")
        .replace("=", "")
        .replace("/", "over")
        .replace("-", "m")
        .replace("+", "p")
    )


def _cmd_search(args):
    af = _load(args.file)
    g = _require_algebra(af)
    grid = GridSpec()
    if args.grid:
        parts = args.grid.split(":")
        if len(parts) != 3:
            raise ParseError("--grid wants lo:hi:step")
        lo, hi, step = (parse_rational(p) for p in parts)
        if step <= 0 or hi < lo:
            raise ParseError("--grid wants step > 0 and hi >= lo")
        grid = GridSpec(lo=lo, hi=hi, step=step)
    j = af.complex_structure()
    result = lck_search(g, j=j, grid=grid)
    items = [
        ("input", args.file),
        ("grid", "{}:{}:{}".format(grid.lo, grid.hi, grid.step)),
        ("grid_detail", grid.describe()),
        ("theta_points", str(result.theta_points)),
        ("candidates_considered", str(result.candidates_considered)),
        ("candidates_integrable", str(result.candidates_integrable)),
    ]
    if result.found:
        items.append(("result", "witness"))
        items.append(("theta", _form_str(af.labels, result.witness.theta)))
        items.append(("omega", _form_str(af.labels, result.witness.omega)))
        return Report("search", tuple(items)), EXIT_OK
    items.append(("result", "no witness on grid"))
    items.append(("note", result.note))
    return Report("search", tuple(items)), EXIT_CHECK_FAILED


def _cmd_double_root(args):
    root = double_root_test(DoubleRootQuery(m=args.m, n=args.n))
    items = [
        ("polynomial", "t^3 - ({})t^2 + ({})t - 1".format(args.m, args.n)),
        ("double_root", rational_str(root) if root is not None else "none"),
    ]
    return Report("double-root", tuple(items)), EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
