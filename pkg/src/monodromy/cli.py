"""Command-line front end.

Every command reads JSON (a file path or stdin) and writes JSON.  With
``-o FILE`` the document goes to FILE and a one-line summary to stdout;
without it the document goes to stdout and the summary to stderr, so the
output can always be piped.

Exit codes: 0 success, 2 malformed input or shape error, 3 a mathematical
precondition does not hold, 4 a member is singular.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ParseError, PreconditionError, ShapeError, SingularMatrixError
from .levelt import HypergeometricParams, hypergeometric_tuple, levelt_construct, levelt_normalize
from .linalg import SpectrumSpec
from .rigid import MonodromyTuple, analyze, is_pseudo_reflection, simultaneous_conjugator

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_SINGULAR = 4

TRIPLE_CONVENTION = ("members are (h_inf, h_0, h_1) = (A, B^-1, B A^-1); the product h_inf h_0 h_1 "
                     "is the identity and h_1^-1 = A B^-1 is the pseudo-reflection")


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _read_text(path):
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def load_json(path):
    text = _read_text(path)
    name = path or "<stdin>"
    if not text.strip():
        raise ParseError(f"{name}: empty input")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{name}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _with_context(where, fn, obj):
    try:
        return fn(obj)
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}") from exc


def parse_spectra(doc, name="input"):
    if isinstance(doc, dict) and "spectra" in doc:
        doc = doc["spectra"]
    if not isinstance(doc, list):
        raise ParseError(f"{name}: expected a list of spectra")
    return [_with_context(f"{name}: spectrum {k}", SpectrumSpec.from_json, s)
            for k, s in enumerate(doc, 1)]


def parse_tuple(doc, name="input"):
    # accept the normalize output, which wraps the tuple
    if isinstance(doc, dict) and isinstance(doc.get("tuple"), dict):
        doc = doc["tuple"]
    return _with_context(name, MonodromyTuple.from_json, doc)


def _emit(args, doc, summary):
    text = dumps(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(summary)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)


def _yes(flag):
    return "yes" if flag else "no"


def cmd_construct(args):
    specs = parse_spectra(load_json(args.input), args.input or "<stdin>")
    t = levelt_construct(specs)
    _emit(args, t.to_json(), f"constructed n={t.n} p={t.p}; spectra disjoint: confirmed")
    return EXIT_OK


def cmd_analyze(args):
    t = parse_tuple(load_json(args.input), args.input or "<stdin>")
    report = analyze(t)
    chi = "n/a" if report.rigidity_index is None else str(report.rigidity_index)
    summary = (f"n={t.n} p={t.p}; irreducible: {_yes(report.irreducible)}; "
               f"burnside dim: {report.burnside_dim}; rigidity index: {chi}")
    _emit(args, report.to_json(), summary)
    return EXIT_OK


def cmd_hypergeom(args):
    params = HypergeometricParams.parse(args.num, args.den)
    t = hypergeometric_tuple(params)
    report = analyze(t)
    doc = t.to_json()
    doc["params"] = params.to_json()
    doc["convention"] = TRIPLE_CONVENTION
    pseudo = is_pseudo_reflection(t[2])
    summary = (f"n={t.n}; pseudo-reflection: {_yes(pseudo)}; irreducible: {_yes(report.irreducible)}; "
               f"rigidity index: {report.rigidity_index}")
    _emit(args, doc, summary)
    return EXIT_OK


def cmd_conjugate(args):
    t1 = parse_tuple(load_json(args.first), args.first)
    t2 = parse_tuple(load_json(args.second), args.second)
    u = simultaneous_conjugator(t1, t2)
    doc = {"conjugate": u is not None, "conjugator": None if u is None else u.to_json()}
    if u is None:
        summary = "no invertible u with u g_i u^-1 = g'_i for all i"
    else:
        summary = f"found u with u g_i u^-1 = g'_i for all {t1.p} members (verified)"
    _emit(args, doc, summary)
    return EXIT_OK


def cmd_normalize(args):
    t = parse_tuple(load_json(args.input), args.input or "<stdin>")
    T, normalized = levelt_normalize(t)
    doc = {"basis_change": T.to_json(), "tuple": normalized.to_json()}
    _emit(args, doc, f"normalized n={t.n} p={t.p} to companion form")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="monodromy",
        description="Exact construction and analysis of monodromy tuples.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, with_input=True):
        p = sub.add_parser(name, help=help_text)
        if with_input:
            p.add_argument("input", nargs="?", help="JSON input file (default: stdin)")
        p.add_argument("-o", "--output", help="write the JSON document here")
        p.set_defaults(func=func)
        return p

    add("construct", cmd_construct, "companion tuple from a list of spectra")
    p = add("analyze", cmd_analyze, "structural report for a tuple")
    p.add_argument("--report", dest="output", help="same as --output")
    p = add("hypergeom", cmd_hypergeom, "hypergeometric triple from exponents", with_input=False)
    p.add_argument("--num", required=True, help="comma-separated rationals a_1..a_n")
    p.add_argument("--den", required=True, help="comma-separated rationals b_1..b_n")
    p = add("conjugate", cmd_conjugate, "simultaneous conjugator between two tuples",
            with_input=False)
    p.add_argument("first", help="tuple file g_1..g_p")
    p.add_argument("second", help="tuple file g'_1..g'_p")
    add("normalize", cmd_normalize, "reduce a shared-column tuple to companion form")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    try:
        return args.func(args)
    except SingularMatrixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ParseError, ShapeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
