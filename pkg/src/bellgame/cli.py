"""Command-line front-end.

Exit codes: 0 all checks pass, 1 constraint failure, 2 parse error,
3 internal-consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from bellgame.errors import ConsistencyFailure, ParseError, SamplingExhausted
from bellgame.game_core import constraint_report
from bellgame.quantum_engine import DEFAULT_GRID_STEP, OPTIMUM_TOL
from bellgame.report import (
    classical_section,
    constraints_section,
    quantum_section,
    render_classical,
    render_constraints,
    render_quantum,
    render_report,
    verification_report,
)
from bellgame.sampling import DEFAULT_ATTEMPTS, SampleRanges, sample_documents
from bellgame.specfile import (
    PAPPA_DOCUMENT,
    GameSpecDocument,
    document_to_dict,
    load_game_spec,
    parse_angle,
)

EXIT_OK = 0
EXIT_CONSTRAINT = 1
EXIT_PARSE = 2
EXIT_INTERNAL = 3


class _Refusal(Exception):
    """Preconditions for a subcommand fail; reported with exit code 1."""


def _add_game_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("spec", nargs="?", help="path to a game-spec JSON file")
    p.add_argument("--pappa", action="store_true", help="use the built-in Pappa instance")


def _add_quantum_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid-step", default=None,
                   help="coarse grid step in radians or as 'pi/N' (default pi/32)")
    p.add_argument("--tolerance", type=float, default=None,
                   help="allowed optimizer-vs-analytic mismatch (default 1e-9)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bellgame", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check symmetry, Bell coupling, conflict and fairness")
    _add_game_args(p)
    p = sub.add_parser("classical", help="pure Nash equilibria and the classical payoff bound")
    _add_game_args(p)
    p = sub.add_parser("quantum", help="fair quantum optimum on the Bell state")
    _add_game_args(p)
    _add_quantum_args(p)
    p = sub.add_parser("compare", help="full classical and quantum report")
    _add_game_args(p)
    _add_quantum_args(p)

    p = sub.add_parser("sample", help="draw random conflicting-interest, fair games")
    p.add_argument("--count", type=int, default=1, help="number of games to draw")
    p.add_argument("--seed", type=int, default=0, help="random seed")
    p.add_argument("--attempts", type=int, default=DEFAULT_ATTEMPTS,
                   help="rejection-sampling budget before giving up")
    p.add_argument("--min-num", type=int, default=SampleRanges.min_numerator,
                   help="smallest numerator drawn")
    p.add_argument("--max-num", type=int, default=SampleRanges.max_numerator,
                   help="largest numerator drawn")
    p.add_argument("--denominator", type=int, default=SampleRanges.denominator,
                   help="common denominator of drawn parameters")

    # --format is accepted after the subcommand too.
    for action in sub.choices.values():
        action.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    return parser


def _load(args) -> GameSpecDocument:
    if args.pappa and args.spec:
        raise ParseError("give either a spec file or --pappa, not both")
    if args.pappa:
        return PAPPA_DOCUMENT
    if not args.spec:
        raise ParseError("no game given: pass a spec file or --pappa")
    return load_game_spec(args.spec)


def _quantum_settings(args, doc: GameSpecDocument) -> tuple[float, float]:
    if args.grid_step is not None:
        raw = args.grid_step
        try:
            raw = float(raw)
        except ValueError:
            pass
        grid_step = parse_angle(raw, "--grid-step")
    else:
        grid_step = doc.grid_step or DEFAULT_GRID_STEP
    tolerance = args.tolerance if args.tolerance is not None else (doc.tolerance or OPTIMUM_TOL)
    return grid_step, tolerance


def _emit(fmt: str, payload: dict, text: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        out.write(text)


def cmd_validate(args, out) -> int:
    doc = _load(args)
    report = constraint_report(doc.params)
    section = constraints_section(report)
    text = "\n".join([f"game: {doc.label or '(unlabelled)'}"] + render_constraints(section)) + "\n"
    _emit(args.format, {"command": "validate", "label": doc.label, "constraints": section}, text, out)
    return EXIT_OK if report.all_pass else EXIT_CONSTRAINT


def cmd_classical(args, out) -> int:
    doc = _load(args)
    report = constraint_report(doc.params)
    section = classical_section(doc.params)
    lines = [f"game: {doc.label or '(unlabelled)'}"] + render_classical(section)
    code = EXIT_OK
    if not report.all_pass:
        failed = [i + 1 for i, v in enumerate(report.conflict_inequalities) if not v.strict]
        lines.append(f"verdict: not a conflicting-interest game (conflict conditions {failed} fail)")
        code = EXIT_CONSTRAINT
    else:
        cand = section["candidate"]
        if not (cand["is_equilibrium"] and cand["saturates_bell_bound"]):
            lines.append("verdict: INTERNAL ERROR, candidate profile does not saturate the bound")
            code = EXIT_INTERNAL
        else:
            lines.append("verdict: candidate unfair equilibrium saturates the classical bound")
    payload = {"command": "classical", "label": doc.label, "classical": section, "exit_code": code}
    _emit(args.format, payload, "\n".join(lines) + "\n", out)
    return code


def cmd_quantum(args, out) -> int:
    doc = _load(args)
    report = constraint_report(doc.params)
    if not report.all_pass:
        raise _Refusal("constraint checks fail; run 'validate' for details")
    if not report.fairness_ok:
        raise _Refusal(f"ConstraintViolated: fairness residual is {report.fairness_residual}, not 0")
    grid_step, tolerance = _quantum_settings(args, doc)
    section = quantum_section(doc.params, grid_step, tolerance)
    text = "\n".join([f"game: {doc.label or '(unlabelled)'}"] + render_quantum(section)) + "\n"
    _emit(args.format, {"command": "quantum", "label": doc.label, "quantum": section}, text, out)
    return EXIT_OK


def cmd_compare(args, out) -> int:
    doc = _load(args)
    grid_step, tolerance = _quantum_settings(args, doc)
    report = verification_report(doc.label, doc.params, grid_step, tolerance)
    _emit(args.format, {"command": "compare", **report}, render_report(report), out)
    return EXIT_OK if report["constraints"]["all_pass"] else EXIT_CONSTRAINT


def cmd_sample(args, out) -> int:
    ranges = SampleRanges(args.min_num, args.max_num, args.denominator)
    docs = sample_documents(args.count, args.seed, ranges, args.attempts)
    payload = [document_to_dict(d) for d in docs]
    text = "".join(
        f"{d['label']}: " + " ".join(f"{k}={v}" for k, v in d["params"].items()) + "\n" for d in payload
    )
    _emit(args.format, {"command": "sample", "games": payload}, text, out)
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "classical": cmd_classical,
    "quantum": cmd_quantum,
    "compare": cmd_compare,
    "sample": cmd_sample,
}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except ParseError as exc:
        err.write(f"ParseError: {exc}\n")
        return EXIT_PARSE
    except (_Refusal, SamplingExhausted) as exc:
        name = "SamplingExhausted" if isinstance(exc, SamplingExhausted) else "refused"
        err.write(f"{name}: {exc}\n")
        return EXIT_CONSTRAINT
    except ConsistencyFailure as exc:
        err.write(f"internal-consistency failure: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
