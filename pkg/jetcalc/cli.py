from __future__ import annotations

import argparse
import logging
from typing import Any, Dict, List, Optional

from rich.console import Console

from .bigness import MorseReport, morse_criterion, technical_lemma_audit
from .degeneracy import DegeneracyInput, degeneracy_report
from .errors import (
    DomainError,
    GeometryError,
    JetcalcError,
    LevelError,
    ParseError,
    PreconditionError,
    UsageError,
)
from .parser import evaluate, parse, print_expr
from .schur import PositivityReport, numerical_positivity_report
from .sweeps import SweepResult, degree_lemma_sweep, schur_identity_sweep
from .tower import get_geometry, integrate, make_monomial
from .tower import base_segre as compute_base_segre
from .utils import delta_max_default, dump_json, err_console, setup_logging

logger = logging.getLogger(__name__)

console = Console(color_system=None, soft_wrap=True, highlight=False, emoji=False)

EXIT_OK = 0
EXIT_NOT_CERTIFIED = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def _emit(text: str) -> None:
    console.print(text, markup=False)


def _emit_json(data: Any) -> None:
    _emit(dump_json(data))


def _exit_code(exc: JetcalcError) -> int:
    if isinstance(exc, (GeometryError, DomainError, PreconditionError)):
        return EXIT_PRECONDITION
    if isinstance(exc, (UsageError, ParseError, LevelError)):
        return EXIT_USAGE
    return EXIT_PRECONDITION


def _error_payload(exc: JetcalcError) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"error": exc.kind, "message": str(exc)}
    if isinstance(exc, ParseError):
        payload.update(line=exc.line, column=exc.column, expected=exc.expected)
    elif isinstance(exc, LevelError):
        payload["atom"] = exc.atom
        if exc.position:
            payload.update(line=exc.position[0], column=exc.position[1])
    return payload


def _wants_json(args: argparse.Namespace) -> bool:
    if args.output is not None:
        return args.output == "json"
    return args.default_output == "json"


def _print_poly_lines(rows: List[tuple]) -> None:
    for label, value in rows:
        _emit(f"{label} = {value}")


def cmd_segre(args: argparse.Namespace) -> int:
    geom = get_geometry(args.N, args.c)
    segre = compute_base_segre(geom, args.m)
    if _wants_json(args):
        _emit_json(
            {
                "N": geom.N,
                "c": geom.c,
                "m": args.m,
                "segre": [s.to_text() for s in segre],
                "segre_terms": [s.to_json() for s in segre],
            }
        )
    else:
        _print_poly_lines([(f"s{i}", s.to_text()) for i, s in enumerate(segre)])
    return EXIT_OK


def cmd_integrate(args: argparse.Namespace) -> int:
    geom = get_geometry(args.N, args.c)
    level = geom.kappa if args.level is None else args.level
    if level < 0:
        raise UsageError(f"--level must be nonnegative, got {level}")
    expr = parse(args.expr, geom, level)
    cls = evaluate(expr, geom, level)
    if cls.gradings() in ([], [0]):
        value = cls.coefficient(make_monomial((0,) * level))
    else:
        value = integrate(geom, level, cls)
    if _wants_json(args):
        _emit_json(
            {
                "N": geom.N,
                "c": geom.c,
                "level": level,
                "expr": print_expr(expr),
                "value": value.to_text(),
                "value_terms": value.to_json(),
            }
        )
    else:
        _emit(value.to_text())
    return EXIT_OK


def _morse_text(report: MorseReport) -> None:
    geom = report.geometry
    _emit(f"{geom.label()} kappa={report.kappa} b={report.b} level={report.level} m={report.m} a={report.a}")
    _print_poly_lines(
        [
            ("lhs", report.lhs.to_text()),
            ("rhs", report.rhs.to_text()),
            ("difference", report.difference.to_text()),
        ]
    )
    status = "ok" if report.dominant_check else "failed"
    _emit(f"dominant check: {status} ({report.dominant_order.value}, multiplier {report.dominant_multiplier})")
    _emit(f"delta = {report.delta if report.delta is not None else 'not certified'}")


def cmd_delta(args: argparse.Namespace) -> int:
    geom = get_geometry(args.N, args.c)
    report = morse_criterion(geom, args.a, delta_max_default(args.max), level=args.level)
    if _wants_json(args):
        _emit_json(report.to_json())
    else:
        _morse_text(report)
    return EXIT_OK if report.delta is not None else EXIT_NOT_CERTIFIED


def _positivity_text(report: PositivityReport) -> None:
    _emit(f"{report.geometry.label()} a={report.a}")
    for check in report.partitions:
        bound = check.bound if check.bound is not None else "not certified"
        _emit(f"{check.lam} conjugate {check.conjugate}: {check.value.to_text()}  bound {bound}")
    _emit(f"D = {report.D if report.D is not None else 'not certified'}")


def cmd_positivity(args: argparse.Namespace) -> int:
    geom = get_geometry(args.N, args.c)
    if args.a < 0:
        raise DomainError(f"the twist a must be nonnegative, got {args.a}")
    report = numerical_positivity_report(geom, args.a, delta_max_default(args.max))
    if _wants_json(args):
        _emit_json(report.to_json())
    else:
        _positivity_text(report)
    return EXIT_OK if report.D is not None else EXIT_NOT_CERTIFIED


def cmd_audit(args: argparse.Namespace) -> int:
    geom = get_geometry(args.N, args.c)
    if args.samples < 0:
        raise UsageError(f"--samples must be nonnegative, got {args.samples}")
    record = technical_lemma_audit(geom, samples=args.samples, seed=args.seed)
    if _wants_json(args):
        _emit_json(record.to_json())
    else:
        _emit(f"{geom.label()} kappa={geom.kappa} b={geom.b}")
        _emit(f"lattice products: {record.lattice_checked} checked, {len(record.lattice_failures)} failed")
        _emit(f"index estimates: {record.estimate_checked} checked, {len(record.estimate_failures)} failed")
        for entry in record.descent:
            _emit(f"descent to level {entry['level'] - 1}: {'ok' if entry['ok'] else 'failed'}")
        _emit(f"top block: {'ok' if record.top_block_ok else 'failed'}")
        for failure in record.lattice_failures + record.estimate_failures:
            _emit(f"  {failure}")
    return EXIT_OK if record.ok else EXIT_NOT_CERTIFIED


def cmd_degeneracy(args: argparse.Namespace) -> int:
    report = degeneracy_report(DegeneracyInput(args.N, args.c))
    _emit_json(report.to_json())
    return EXIT_OK


def _sweep_output(args: argparse.Namespace, result: SweepResult) -> int:
    if _wants_json(args):
        _emit_json(result.to_json())
    else:
        _emit(f"{result.name}: {result.checked} checked, {len(result.failures)} failed")
        for failure in result.failures:
            _emit(f"  {failure}")
    return EXIT_OK if result.ok else EXIT_NOT_CERTIFIED


def cmd_schur_verify(args: argparse.Namespace) -> int:
    if args.weight < 0:
        raise UsageError(f"--weight must be nonnegative, got {args.weight}")
    result = schur_identity_sweep(args.weight, args.geometries, args.seed, show_progress=args.verbose)
    return _sweep_output(args, result)


def cmd_degree_lemma(args: argparse.Namespace) -> int:
    result = degree_lemma_sweep(args.max_N, show_progress=args.verbose)
    return _sweep_output(args, result)


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    formats = common.add_mutually_exclusive_group()
    formats.add_argument("--json", dest="output", action="store_const", const="json", help="Print JSON")
    formats.add_argument("--text", dest="output", action="store_const", const="text", help="Print text")
    common.add_argument("--verbose", action="store_true", help="Log progress to stderr")

    parser = _ArgumentParser(prog="jetcalc", description="Intersection numbers on jet towers of complete intersections")
    sub = parser.add_subparsers(dest="command")

    def geometry_command(name: str, help_text: str, default_output: str = "text") -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.set_defaults(default_output=default_output)
        p.add_argument("--N", type=int, required=True)
        p.add_argument("--c", type=int, required=True)
        return p

    segre_p = geometry_command("segre", "Segre classes of the twisted cotangent bundle")
    segre_p.add_argument("--m", type=int, default=0)
    segre_p.set_defaults(handler=cmd_segre)

    integrate_p = geometry_command("integrate", "Integrate an expression over a tower level")
    integrate_p.add_argument("--level", type=int)
    integrate_p.add_argument("expr")
    integrate_p.set_defaults(handler=cmd_integrate)

    delta_p = geometry_command("delta", "Morse criterion with a certified degree bound", "json")
    delta_p.add_argument("--a", type=int, default=0)
    delta_p.add_argument("--max", type=int)
    delta_p.add_argument("--level", type=int)
    delta_p.set_defaults(handler=cmd_delta)

    positivity_p = geometry_command("positivity", "Numerical positivity of the twisted cotangent bundle", "json")
    positivity_p.add_argument("--a", type=int, default=0)
    positivity_p.add_argument("--max", type=int)
    positivity_p.set_defaults(handler=cmd_positivity)

    audit_p = geometry_command("audit", "Sampled checks of the degree estimates behind the criterion", "json")
    audit_p.add_argument("--samples", type=int, default=10)
    audit_p.add_argument("--seed", type=int, default=0)
    audit_p.set_defaults(handler=cmd_audit)

    degeneracy_p = geometry_command("degeneracy", "Dimension of the degeneracy locus", "json")
    degeneracy_p.set_defaults(handler=cmd_degeneracy)

    schur_p = sub.add_parser("schur-verify", help="Conjugate Schur identity sweep", parents=[common])
    schur_p.set_defaults(default_output="text")
    schur_p.add_argument("--weight", type=int, required=True)
    schur_p.add_argument("--geometries", type=int, default=10)
    schur_p.add_argument("--seed", type=int, default=0)
    schur_p.set_defaults(handler=cmd_schur_verify)

    lemma_p = sub.add_parser("degree-lemma", help="Exhaustive degree lemma sweep", parents=[common])
    lemma_p.set_defaults(default_output="text")
    lemma_p.add_argument("--max-N", dest="max_N", type=int, default=7)
    lemma_p.set_defaults(handler=cmd_degree_lemma)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required")
        setup_logging(args.verbose)
        return args.handler(args)
    except JetcalcError as exc:
        logger.debug("command failed", exc_info=True)
        err_console.print(dump_json(_error_payload(exc)), markup=False, highlight=False)
        return _exit_code(exc)


def main(argv: Optional[List[str]] = None) -> int:
    return run(argv)
