"""

Command line interface: ``legstr <command> [options]``.

    enumerate   closed strings up to a wave number
    solve       characters of a rational modulus
    build       sample a string (or its dual) into a curve document
    constcurv   sample a constant-curvature curve into a curve document
    invariants  linking numbers, Maslov index and tb of a curve document
    verify      differential residuals of a curve document
    plot        SVG portrait of a curve document

Data goes to stdout (or -o FILE), diagnostics to stderr. Exit codes are
listed in EXIT_CODES; a report whose verdict is false exits with 6.

"""

import argparse
import collections
import logging
import sys
from fractions import Fraction

import yaml

from legstr import __version__
from legstr.apps import documents
from legstr.apps.reports import invariants_report, verify_report
from legstr.apps.svg import VIEWS, render_svg, write_svg
from legstr.contrib.config import load_tolerances, setup_logging
from legstr.contrib.errors import (
    ClearanceError,
    ConfigError,
    ConvergenceError,
    DegeneracyError,
    DocumentError,
    DomainError,
    LegstrError,
    MonodromicDomainError,
    PrecisionLossError,
    ResolutionError,
    SingularityError,
)
from legstr.geometry.dynamics import Characters, curvature_profile
from legstr.geometry.moduli import (
    characteristic_numbers,
    density_report,
    enumerate_closed_strings,
    modulus_from_linking,
)
from legstr.geometry.period_map import MonodromicPoint, invert_theta
from legstr.geometry.string_builder import (
    build_string,
    constant_curvature_curve,
    dual_configuration,
)

__all__ = [
    "EXIT_CODES",
    "EXIT_VERIFICATION_FAILED",
    "build_parser",
    "main",
]

logger = logging.getLogger(__name__)

EXIT_CODES = collections.OrderedDict([
    (MonodromicDomainError, 3),
    (DomainError, 3),
    (ConvergenceError, 4),
    (PrecisionLossError, 4),
    (SingularityError, 1),
    (DegeneracyError, 1),
    (ResolutionError, 1),
    (ClearanceError, 1),
    (ConfigError, 2),
    (DocumentError, 5),
])

EXIT_VERIFICATION_FAILED = 6


def exit_code(error):
    for cls in type(error).__mro__:
        if cls in EXIT_CODES:
            return EXIT_CODES[cls]
    return 1


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            "expected a fraction a/b, got {!r}".format(text))


def _tolerance(text):
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(
            "expected KEY=VALUE, got {!r}".format(text))
    return key.strip(), yaml.safe_load(value)


def _emit(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as f:
            f.write(text)
    except OSError as e:
        raise DocumentError(path, str(e))


def _add_modulus_options(p):
    g = p.add_argument_group("modulus")
    g.add_argument("--wave", type=int, help="wave number n")
    g.add_argument("--lk1", type=int, help="linking number with Oz")
    g.add_argument("--lk2", type=int,
                   help="linking number with the second axis")
    g.add_argument("--q2", type=_fraction, help="exact q2 as a/b")
    g.add_argument("--q3", type=_fraction, help="exact q3 as a/b")


def _modulus(args, parser):
    linking = (args.wave, args.lk1, args.lk2)
    direct = (args.q2, args.q3)
    if all(v is not None for v in linking) and \
            all(v is None for v in direct):
        return modulus_from_linking(*linking)
    if all(v is not None for v in direct) and \
            all(v is None for v in linking):
        return MonodromicPoint(*direct)
    parser.error("give either --wave/--lk1/--lk2 or --q2/--q3")


def cmd_enumerate(args, tol):
    classes = enumerate_closed_strings(args.max_wave)
    density = density_report(args.max_wave) if args.density else None
    if args.format == "csv":
        text = documents.classes_to_csv(classes)
    elif args.format == "table":
        text = documents.classes_to_table(classes, density)
    else:
        text = documents.classes_to_json(classes, density)
    _emit(text, args.output)
    return 0


def cmd_solve(args, tol):
    q = _modulus(args, args.parser)
    ch = invert_theta(q, tol)
    cn = characteristic_numbers(q)
    profile = curvature_profile(ch)
    doc = {
        "format_version": documents.FORMAT_VERSION,
        "characters": {"m": ch.m, "ell": ch.ell},
        "omega": profile.omega,
        "total_strain": cn.n * profile.omega,
        "modulus": {"q2": str(q.q2), "q3": str(q.q3)},
        "characteristic": dict(cn._asdict()),
        "label": cn.label,
    }
    _emit(documents.dumps(doc), args.output)
    return 0


def cmd_build(args, tol):
    if args.m is not None or args.ell is not None:
        if args.m is None or args.ell is None:
            args.parser.error("--m and --ell go together")
        curve = build_string(Characters(args.m, args.ell),
                             args.samples_per_period, args.periods, tol=tol)
    else:
        q = _modulus(args, args.parser)
        ch = invert_theta(q, tol)
        curve = build_string(ch, args.samples_per_period, modulus=q,
                             tol=tol)
    if args.dual:
        curve = dual_configuration(curve, tol)
    _emit(documents.dumps(documents.curve_to_document(curve, tol)),
          args.output)
    return 0


def cmd_constcurv(args, tol):
    curve = constant_curvature_curve(args.q, args.samples_per_period, tol)
    _emit(documents.dumps(documents.curve_to_document(curve, tol)),
          args.output)
    return 0


def _report(report, path):
    _emit(documents.dumps(report.as_dict()), path)
    if not report.verdict:
        logger.error("{}: verdict false".format(report.subject))
        return EXIT_VERIFICATION_FAILED
    return 0


def cmd_invariants(args, tol):
    curve = documents.read_curve(args.document)
    return _report(invariants_report(curve, tol), args.output)


def cmd_verify(args, tol):
    curve = documents.read_curve(args.document)
    return _report(verify_report(curve, tol), args.output)


def cmd_plot(args, tol):
    curve = documents.read_curve(args.document)
    if args.output is None or args.output == "-":
        _emit(render_svg(curve, args.view), args.output)
    else:
        write_svg(curve, args.output, args.view)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="legstr",
        description="Closed critical Legendrian curves of the CR strain "
                    "functional: classification, construction and checks.")
    parser.add_argument("--version", action="version",
                        version="%(prog)s {}".format(__version__))
    parser.add_argument("--config", help="YAML file with tolerances")
    parser.add_argument("--tol", action="append", type=_tolerance,
                        default=[], metavar="KEY=VALUE",
                        help="override one tolerance (repeatable)")
    parser.add_argument("--log-level", default=None,
                        help="DEBUG, INFO, WARNING (default) or ERROR")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("enumerate", help="list closed strings")
    p.add_argument("--max-wave", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv", "table"),
                   default="json")
    p.add_argument("--density", action="store_true",
                   help="add the rho(n) growth report")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("solve", help="characters of a rational modulus")
    _add_modulus_options(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("build", help="sample a string")
    _add_modulus_options(p)
    p.add_argument("--m", type=float)
    p.add_argument("--ell", type=float)
    p.add_argument("--periods", type=int, default=1)
    p.add_argument("--samples-per-period", type=int, default=None)
    p.add_argument("--dual", action="store_true",
                   help="emit the dual configuration")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("constcurv", help="sample a constant-curvature curve")
    p.add_argument("--q", type=_fraction, required=True, help="m/n > 1")
    p.add_argument("--samples-per-period", type=int, default=None)
    p.set_defaults(func=cmd_constcurv)

    for name, func, text in (
            ("invariants", cmd_invariants, "topological invariants"),
            ("verify", cmd_verify, "differential residuals")):
        p = sub.add_parser(name, help=text)
        p.add_argument("document")
        p.set_defaults(func=func)

    p = sub.add_parser("plot", help="SVG portrait")
    p.add_argument("document")
    p.add_argument("--view", choices=sorted(VIEWS), default="lagrangian")
    p.set_defaults(func=cmd_plot)

    for p in sub.choices.values():
        p.add_argument("-o", "--output", default=None,
                       help="output file (default stdout)")
        p.set_defaults(parser=p)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    try:
        tol = load_tolerances(args.config, **dict(args.tol))
        return args.func(args, tol)
    except LegstrError as e:
        logger.error(str(e))
        return exit_code(e)


if __name__ == "__main__":
    sys.exit(main())
