"""Command-line front end: decide, cone, solve, sweep, validate.

Exit codes for decide mirror the trichotomy (0 stable, 10 semistable,
20 unstable, 30 inconclusive in two-term mode); 2 flags validation or
document errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cones import cone_position, dual_cone_generators, weight_vectors
from .documents import DocumentError, canonical_json, load_instance, sweep_rows_csv
from .epspoly import as_fraction
from .instance import ValidationError
from .moment import (
    Divergent,
    MaxIterationsError,
    MomentProblem,
    eps_sweep,
    solve_moment_map,
)
from .slopes import Inconclusive, VerdictKind, decide_stability, two_term_decide

EXIT_STABLE = 0
EXIT_SEMISTABLE = 10
EXIT_UNSTABLE = 20
EXIT_INCONCLUSIVE = 30
EXIT_INVALID = 2

_VERDICT_EXIT = {
    VerdictKind.STABLE: EXIT_STABLE,
    VerdictKind.SEMISTABLE: EXIT_SEMISTABLE,
    VerdictKind.UNSTABLE: EXIT_UNSTABLE,
}


def _interval_obj(interval) -> dict | None:
    if interval is None:
        return None
    return {"lo": interval.lo, "hi": interval.hi}


def _print_report(report: dict, as_json: bool, text_lines: list[str]) -> None:
    if as_json:
        sys.stdout.write(canonical_json(report))
    else:
        for line in text_lines:
            print(line)


def _cmd_decide(args) -> int:
    inst, options = load_instance(args.instance)
    mode = args.mode or options.mode
    if mode == "two-term":
        outcome = two_term_decide(inst)
        if isinstance(outcome, Inconclusive):
            report = {
                "command": "decide",
                "mode": mode,
                "verdict": "Inconclusive",
                "witness": list(outcome.blocking),
                "epsilon_threshold": None,
            }
            _print_report(
                report,
                args.json,
                [
                    "verdict: Inconclusive (two-term test is only sufficient)",
                    f"blocking subset: {set(outcome.blocking)}",
                ],
            )
            return EXIT_INCONCLUSIVE
        verdict = outcome
    else:
        verdict = decide_stability(inst)
    report = {
        "command": "decide",
        "mode": mode,
        "verdict": verdict.kind.value,
        "witness": list(verdict.witness) if verdict.witness else None,
        "epsilon_threshold": _interval_obj(verdict.epsilon_threshold),
    }
    lines = [f"verdict: {verdict.kind.value}"]
    if verdict.witness:
        lines.append(f"witness: {set(verdict.witness)}")
    if verdict.epsilon_threshold is not None:
        lines.append(
            f"first sign change bracketed in {verdict.epsilon_threshold}; "
            f"verdict valid on (0, {verdict.epsilon_threshold.lo})"
        )
    else:
        lines.append("sign pattern constant on (0, 1]")
    _print_report(report, args.json, lines)
    return _VERDICT_EXIT[verdict.kind]


def _generator_obj(gen) -> dict:
    return {
        "coords": list(gen.coords),
        "negative_part": list(gen.negative_part),
        "positive_part": list(gen.positive_part),
        "value_negative": gen.value_negative,
        "value_positive": gen.value_positive,
    }


def _cmd_cone(args) -> int:
    inst, _ = load_instance(args.instance)
    gens = dual_cone_generators(inst)
    position = cone_position(inst)
    report = {
        "command": "cone",
        "weights": [list(w) for w in weight_vectors(inst)],
        "dual_generators": [_generator_obj(g) for g in gens],
        "position": position.placement.value,
        "certificate": _generator_obj(position.certificate)
        if position.certificate
        else None,
    }
    lines = [f"weights: {[list(w) for w in weight_vectors(inst)]}"]
    for g in gens:
        lines.append(
            f"generator ({', '.join(str(c) for c in g.coords)})  "
            f"I-={set(g.negative_part)} I+={set(g.positive_part)}"
        )
    lines.append(f"position: {position.placement.value}")
    if position.certificate is not None:
        lines.append(f"certificate I+: {set(position.certificate.positive_part)}")
    _print_report(report, args.json, lines)
    return 0


def _cmd_solve(args) -> int:
    inst, options = load_instance(args.instance)
    eps = as_fraction(args.eps)
    prob = MomentProblem.from_instance(inst, eps, options.b0_sq)
    try:
        outcome = solve_moment_map(prob, tol=args.tol)
    except MaxIterationsError as err:
        print(f"MaxIterations: best residual {err.residual:.3e}", file=sys.stderr)
        return 1
    if isinstance(outcome, Divergent):
        report = {
            "command": "solve",
            "eps": eps,
            "status": "Divergent",
            "direction": list(outcome.direction),
            "certificate_positive_part": list(outcome.generator.positive_part)
            if outcome.generator
            else None,
        }
        lines = [
            "status: Divergent",
            f"direction: {tuple(round(v, 6) for v in outcome.direction)}",
        ]
        if outcome.generator:
            lines.append(f"certificate I+: {set(outcome.generator.positive_part)}")
        _print_report(report, args.json, lines)
        return EXIT_UNSTABLE
    report = {
        "command": "solve",
        "eps": eps,
        "status": "Solved",
        "x_star": list(outcome.x_star),
        "t": list(outcome.t),
        "residual": outcome.residual,
        "b_norm": outcome.b_norm,
        "newton_iters": outcome.iterations,
    }
    lines = [
        "status: Solved",
        f"x_star: {tuple(round(v, 9) for v in outcome.x_star)}",
        f"t: {tuple(round(v, 9) for v in outcome.t)}",
        f"residual: {outcome.residual:.3e}",
        f"b_norm: {outcome.b_norm:.12g}",
        f"newton iterations: {outcome.iterations}",
    ]
    _print_report(report, args.json, lines)
    return 0


def _cmd_sweep(args) -> int:
    inst, options = load_instance(args.instance)
    start = as_fraction(args.eps_start)
    factor = as_fraction(args.eps_factor)
    if not 0 < factor < 1:
        raise DocumentError("--eps-factor must lie strictly between 0 and 1")
    schedule = [start * factor**k for k in range(args.steps)]
    rows = eps_sweep(
        inst, schedule, tol=args.tol, b0_sq=options.b0_sq, jobs=args.jobs
    )
    csv_text = sweep_rows_csv(rows)
    if args.csv:
        Path(args.csv).write_text(csv_text, encoding="utf-8")
    if args.plot:
        from . import plots

        plots.render_sweep_figure(rows, args.plot)
    if args.json:
        report = {
            "command": "sweep",
            "rows": [
                {
                    "eps": r.eps,
                    "b_norm": r.b_norm,
                    "residual": r.residual,
                    "status": r.status,
                    "newton_iters": r.newton_iters,
                }
                for r in rows
            ],
        }
        sys.stdout.write(canonical_json(report))
    else:
        sys.stdout.write(csv_text)
    return 0


def _cmd_validate(args) -> int:
    inst, options = load_instance(args.instance)
    print(
        f"valid: {inst.ell} component(s), n={inst.ambient.n}, m={inst.ambient.m}, "
        f"{len(inst.quiver.edges)} edge(s), mode={options.mode}"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blowup-stability",
        description=(
            "Decide slope stability of pullback bundles on blow-ups and solve "
            "the associated finite-dimensional moment-map problems."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("instance", help="instance JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument(
            "--text", dest="json", action="store_false", help="plain text output"
        )
        p.set_defaults(json=False)

    p_decide = sub.add_parser("decide", help="stability trichotomy")
    add_common(p_decide)
    p_decide.add_argument(
        "--mode", choices=["full", "two-term"], default=None,
        help="override the document's mode",
    )
    p_decide.set_defaults(func=_cmd_decide)

    p_cone = sub.add_parser("cone", help="weights, dual generators, cone position")
    add_common(p_cone)
    p_cone.set_defaults(func=_cmd_cone)

    p_solve = sub.add_parser("solve", help="moment-map zero at one parameter value")
    add_common(p_solve)
    p_solve.add_argument("--eps", required=True, help="parameter value, e.g. 1/10")
    p_solve.add_argument("--tol", type=float, default=1e-10)
    p_solve.set_defaults(func=_cmd_solve)

    p_sweep = sub.add_parser("sweep", help="solve along a geometric parameter schedule")
    add_common(p_sweep)
    p_sweep.add_argument("--eps-start", default="1/8")
    p_sweep.add_argument("--eps-factor", default="1/2")
    p_sweep.add_argument("--steps", type=int, default=11)
    p_sweep.add_argument("--tol", type=float, default=1e-10)
    p_sweep.add_argument("--csv", default=None, help="write rows to this CSV file")
    p_sweep.add_argument("--plot", default=None, help="render a log-log figure here")
    p_sweep.add_argument("--jobs", type=int, default=1, help="concurrent solves")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_validate = sub.add_parser("validate", help="check the standing hypotheses")
    add_common(p_validate)
    p_validate.set_defaults(func=_cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID
    except json.JSONDecodeError as err:
        print(
            f"error: malformed JSON at line {err.lineno}, column {err.colno}: {err.msg}",
            file=sys.stderr,
        )
        return EXIT_INVALID
    except (DocumentError, ValidationError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
