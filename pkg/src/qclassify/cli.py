"""Command-line surface.

Subcommands: check, construct, bound, optimize, simulate, bb84. Global
flags: --input PATH, --format json|text, --tolerance FLOAT, --seed INT.
JSON mode is the machine contract (all numbers at full precision); text
mode is explanatory. Exit codes: 0 success, 1 domain errors, 2 input
errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .ensemble import ClassifiedEnsemble, parse_ensemble
from .optimizer import OptimizationConfig
from .service import handlers
from .strategy import parse_strategy

DOMAIN_ERRORS = frozenset(
    {
        "infeasible ensemble",
        "state lies in complement span",
        "strategy failed validation",
        "not a measurement",
    }
)


@dataclass(frozen=True)
class CommandOutcome:
    exit_code: int
    report: str


class _CliParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 2 without killing run()
        raise _UsageError(f"{message}\n{self.format_usage()}")


class _UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    common = _CliParser(add_help=False)
    common.add_argument("--input", metavar="PATH")
    common.add_argument("--format", choices=["json", "text"], default="text")
    common.add_argument("--tolerance", type=float, default=None)
    common.add_argument("--seed", type=int, default=0)
    parser = _CliParser(prog="qclassify", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    sub.add_parser("check", parents=[common])
    construct = sub.add_parser("construct", parents=[common])
    mode = construct.add_mutually_exclusive_group()
    mode.add_argument("--state-index", type=int, default=None)
    mode.add_argument("--projective", action="store_true")
    sub.add_parser("bound", parents=[common])
    optimize = sub.add_parser("optimize", parents=[common])
    optimize.add_argument("--restarts", type=int, default=16)
    optimize.add_argument("--max-iters", type=int, default=2000)
    optimize.add_argument("--step-size", type=float, default=0.05)
    simulate = sub.add_parser("simulate", parents=[common])
    simulate.add_argument("--trials", type=int, default=10000)
    simulate.add_argument("--strategy", metavar="PATH", default=None)
    sub.add_parser("bb84", parents=[common])
    return parser


def _load_ensemble(path: str | None) -> ClassifiedEnsemble:
    if path is None:
        raise _UsageError("input file required (--input PATH)")
    try:
        with open(path, "rb") as fh:
            text = fh.read()
    except FileNotFoundError:
        raise _UsageError(f"file not found: {path}") from None
    return parse_ensemble(text)


def _render_text(command: str, doc: dict) -> str:
    lines: list[str] = []
    if command == "check":
        lines.append(f"feasible: {str(doc['feasible']).lower()}")
        for s in doc["per_state"]:
            lines.append(
                f"state {s['state_index']} (class {s['class']}): "
                f"classifiable={str(s['classifiable']).lower()} "
                f"residual_weight_sq={s['residual_weight_sq']:.12g}"
            )
    elif command in ("construct", "optimize"):
        if command == "optimize":
            lines.append(f"success lower bound: {doc['success_lower_bound']:.12g}")
            lines.append(f"success upper bound: {doc['upper_bound_reference']:.12g}")
            lines.append(f"converged: {str(doc['converged']).lower()}")
        v = doc["validation"]
        lines.append(f"average success: {v['average_success']:.12g}")
        lines.append(f"average failure: {v['average_failure']:.12g}")
        lines.append(
            f"complete: {str(v['complete']).lower()} "
            f"(defect {v['max_completeness_defect']:.3g})"
        )
        lines.append(
            f"no_error: {str(v['no_error']).lower()} "
            f"(max cross-class probability {v['max_cross_class_probability']:.3g})"
        )
    elif command == "bound":
        lines.append(f"failure lower bound: {doc['failure_lower_bound']:.12g}")
        lines.append(f"success upper bound: {doc['success_upper_bound']:.12g}")
        for pair in doc["pairwise"]:
            lines.append(
                f"states ({pair['state_a']}, {pair['state_b']}): "
                f"min failure product {pair['min_failure_product']:.12g}"
            )
    elif command == "simulate":
        lines.append(f"trials: {doc['trials']}")
        lines.append(f"empirical success: {doc['empirical_success']:.12g}")
        lines.append(f"predicted success: {doc['predicted_success']:.12g}")
        lines.append(f"max deviation (sigma): {doc['max_deviation_sigma']:.12g}")
        lines.append(f"counts: {doc['counts']}")
    elif command == "bb84":
        lines.append(f"feasible: {str(doc['feasibility']['feasible']).lower()}")
        for s in doc["feasibility"]["per_state"]:
            lines.append(
                f"state {s['state_index']} (class {s['class']}): "
                f"classifiable={str(s['classifiable']).lower()}"
            )
        lines.append(
            f"failure lower bound: {doc['bound']['failure_lower_bound']:.12g}"
        )
        lines.append(
            f"success bracket: [{doc['bracket']['success_lower_bound']:.12g}, "
            f"{doc['bracket']['success_upper_bound']:.12g}]"
        )
        lines.append(doc["conclusion"])
    return "\n".join(lines)


def run(argv: list[str]) -> CommandOutcome:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        return CommandOutcome(exit_code=2, report=str(exc))
    try:
        if args.command == "bb84":
            doc = handlers.handle_bb84()
        elif args.command == "check":
            doc = handlers.handle_check(_load_ensemble(args.input))
        elif args.command == "bound":
            doc = handlers.handle_bound(_load_ensemble(args.input))
        elif args.command == "construct":
            e = _load_ensemble(args.input)
            if args.state_index is not None and not 0 <= args.state_index < e.size:
                raise _UsageError("state index out of range")
            doc = handlers.handle_construct(
                e, state_index=args.state_index, tolerance=args.tolerance
            )
        elif args.command == "optimize":
            e = _load_ensemble(args.input)
            cfg = OptimizationConfig(
                restarts=args.restarts,
                max_iterations=args.max_iters,
                step_size=args.step_size,
                seed=args.seed,
            )
            doc = handlers.handle_optimize(e, cfg=cfg, tolerance=args.tolerance)
        elif args.command == "simulate":
            e = _load_ensemble(args.input)
            strat = None
            if args.strategy is not None:
                try:
                    with open(args.strategy, "rb") as fh:
                        strat = parse_strategy(fh.read())
                except FileNotFoundError:
                    raise _UsageError(f"file not found: {args.strategy}") from None
            doc = handlers.handle_simulate(e, strat, args.trials, args.seed)
        else:  # unreachable with required subparsers
            return CommandOutcome(exit_code=2, report="unknown command")
    except _UsageError as exc:
        return CommandOutcome(exit_code=2, report=str(exc))
    except ValueError as exc:
        code = 1 if str(exc) in DOMAIN_ERRORS else 2
        return CommandOutcome(exit_code=code, report=f"error: {exc}")
    except IndexError as exc:
        return CommandOutcome(exit_code=2, report=f"error: {exc}")
    if args.format == "json":
        report = json.dumps(doc, indent=2)
    else:
        report = _render_text(args.command, doc)
    return CommandOutcome(exit_code=0, report=report)


def main() -> None:
    outcome = run(sys.argv[1:])
    stream = sys.stdout if outcome.exit_code == 0 else sys.stderr
    print(outcome.report, file=stream)
    sys.exit(outcome.exit_code)


if __name__ == "__main__":
    main()
