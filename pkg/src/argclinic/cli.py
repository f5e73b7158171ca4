"""Command-line interface.

Subcommands: solve (extensions and recommended actions), map (bundle to
textual framework), check (validate only), explain (supports and attacks),
oracle (differential fuzzing against the brute-force reference).

Exit codes: 0 success, 1 validation failure, 2 parse failure, 3 size limit
exceeded, 4 oracle disagreement.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .aba_core import (
    AbaFramework,
    attack_kinds,
    canonical_attackers,
    compute_supports,
    extension_sort_key,
    preferred_extensions,
    validate_framework,
)
from .aba_goals import (
    AbapgFramework,
    GoalExtension,
    collect_goal_extensions,
    maximal_goal_extensions,
    validate_abapg,
)
from .aba_text import parse_aba_text, serialize_abapg, serialize_framework
from .bundle import parse_bundle
from .errors import (
    OracleSizeExceeded,
    ParseError,
    SchemaError,
    SizeLimitExceeded,
    ValidationError,
)
from .generators import random_abapg, random_framework
from .mapper import Solution, build_patient_framework, resolve
from .oracle import ORACLE_CAP, brute_force_preferred, brute_force_top_goals

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_SIZE = 3
EXIT_DISAGREEMENT = 4


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _braced(symbols) -> str:
    return "{" + ", ".join(symbols) + "}"


def _extension_text(extension) -> str:
    return _braced(extension_sort_key(extension))


def _goal_extension_text(goal_extension: GoalExtension) -> str:
    achieved = _braced(sorted(s.symbol for s in goal_extension.achieved))
    sources = " | ".join(_extension_text(src) for src in goal_extension.sources)
    return f"{achieved}  <-  {sources}"


def _goal_extension_json(goal_extension: GoalExtension) -> dict:
    return {
        "achieved": sorted(s.symbol for s in goal_extension.achieved),
        "sources": [list(extension_sort_key(src)) for src in goal_extension.sources],
    }


def _print_solution_text(solution: Solution, quiet: bool) -> None:
    out = sys.stdout
    if quiet:
        for extension in solution.preferred:
            out.write(_extension_text(extension) + "\n")
        return
    out.write("preferred extensions:\n")
    for extension in solution.preferred:
        out.write("  " + _extension_text(extension) + "\n")
    out.write("recommendation sets:\n")
    for names in solution.preferred_recommendations:
        out.write("  " + _braced(names) + "\n")
    out.write("goal extensions:\n")
    for goal_extension in solution.goal_extensions:
        out.write("  " + _goal_extension_text(goal_extension) + "\n")
    out.write("top goal extensions:\n")
    for goal_extension in solution.top_goal_extensions:
        out.write("  " + _goal_extension_text(goal_extension) + "\n")
    for warning in solution.report.warnings:
        out.write(f"warning: {warning}\n")
    for plan in solution.follow:
        if plan.items:
            out.write("FOLLOW: " + ", ".join(i.display() for i in plan.items) + "\n")
        else:
            out.write("FOLLOW: (no recommendations)\n")


def _solution_json(solution: Solution) -> dict:
    return {
        "preferred_extensions": [
            list(extension_sort_key(e)) for e in solution.preferred
        ],
        "recommendation_sets": [list(r) for r in solution.preferred_recommendations],
        "goal_extensions": [
            _goal_extension_json(g) for g in solution.goal_extensions
        ],
        "top_goal_extensions": [
            _goal_extension_json(g) for g in solution.top_goal_extensions
        ],
        "follow": [
            {
                "source": list(plan.source),
                "items": [
                    {
                        "recommendation": item.recommendation,
                        "action": item.action,
                        "avoid": item.avoid,
                    }
                    for item in plan.items
                ],
            }
            for plan in solution.follow
        ],
        "warnings": list(solution.report.warnings),
    }


def _parse_program(path: str) -> tuple[AbaFramework, AbapgFramework | None]:
    program = parse_aba_text(_read(path))
    framework = validate_framework(program.raw)
    if program.has_goals:
        return framework, validate_abapg(framework, program.goals, program.priorities)
    return framework, None


def _cmd_solve(args) -> int:
    if args.bundle:
        bundle = parse_bundle(_read(args.bundle))
        solution = resolve(bundle.recommendations, bundle.interactions, bundle.context)
        if args.format == "json":
            sys.stdout.write(
                json.dumps(_solution_json(solution), indent=2, sort_keys=True) + "\n"
            )
        else:
            _print_solution_text(solution, quiet=args.quiet)
        return EXIT_OK

    framework, goal_framework = _parse_program(args.aba)
    extensions = preferred_extensions(framework)
    goal_extensions: tuple[GoalExtension, ...] = ()
    top: tuple[GoalExtension, ...] = ()
    if goal_framework is not None:
        goal_extensions = collect_goal_extensions(goal_framework, extensions)
        top = maximal_goal_extensions(goal_extensions, goal_framework.priority)

    if args.format == "json":
        payload: dict = {
            "preferred_extensions": [list(extension_sort_key(e)) for e in extensions]
        }
        if goal_framework is not None:
            payload["goal_extensions"] = [
                _goal_extension_json(g) for g in goal_extensions
            ]
            payload["top_goal_extensions"] = [_goal_extension_json(g) for g in top]
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return EXIT_OK

    if args.quiet:
        for extension in extensions:
            sys.stdout.write(_extension_text(extension) + "\n")
        return EXIT_OK
    sys.stdout.write("preferred extensions:\n")
    for extension in extensions:
        sys.stdout.write("  " + _extension_text(extension) + "\n")
    if goal_framework is not None:
        sys.stdout.write("goal extensions:\n")
        for goal_extension in goal_extensions:
            sys.stdout.write("  " + _goal_extension_text(goal_extension) + "\n")
        sys.stdout.write("top goal extensions:\n")
        for goal_extension in top:
            sys.stdout.write("  " + _goal_extension_text(goal_extension) + "\n")
    return EXIT_OK


def _cmd_map(args) -> int:
    bundle = parse_bundle(_read(args.bundle))
    goal_framework, report = build_patient_framework(
        bundle.recommendations, bundle.interactions, bundle.context
    )
    sys.stdout.write(serialize_abapg(goal_framework))
    counts = ", ".join(
        f"{name}={count}" for name, count in sorted(report.rule_counts.items()) if count
    )
    sys.stdout.write(f"# rule counts: {counts or 'none'}\n")
    for (kind, display), symbol in sorted(report.symbol_table.items()):
        sys.stdout.write(f"# symbol: {symbol} := {kind} {display!r}\n")
    for first, second in report.symmetric_interactions:
        sys.stdout.write(
            f"# same-sign interaction treated as symmetric conflict: {first} ~ {second}\n"
        )
    for warning in report.warnings:
        sys.stdout.write(f"# warning: {warning}\n")
    return EXIT_OK


def _cmd_check(args) -> int:
    if args.bundle:
        bundle = parse_bundle(_read(args.bundle))
        goal_framework, report = build_patient_framework(
            bundle.recommendations, bundle.interactions, bundle.context
        )
        base = goal_framework.base
        sys.stdout.write(
            f"ok: {len(bundle.recommendations)} recommendations, "
            f"{len(bundle.interactions)} interactions -> "
            f"{len(base.assumptions)} assumptions, {len(base.rules)} rules, "
            f"{len(goal_framework.goals)} goals\n"
        )
        for warning in report.warnings:
            sys.stdout.write(f"warning: {warning}\n")
        return EXIT_OK

    framework, goal_framework = _parse_program(args.aba)
    summary = (
        f"ok: {len(framework.assumptions)} assumptions, {len(framework.rules)} rules"
    )
    if goal_framework is not None:
        summary += f", {len(goal_framework.goals)} goals"
    sys.stdout.write(summary + "\n")
    return EXIT_OK


def _singleton_attack_lines(framework: AbaFramework) -> list[str]:
    table = compute_supports(framework)
    lines = []
    for attacker in framework.assumption_order:
        for target in framework.assumption_order:
            kinds = attack_kinds(framework, [attacker], [target])
            for kind in sorted(kinds):
                if kind == "normal":
                    contrary = framework.contrary(target)
                    witnesses = [
                        s
                        for s in table.supports_of(contrary)
                        if s <= {attacker}
                        and not any(
                            framework.preference.strictly_less(member, target)
                            for member in s
                        )
                    ]
                else:
                    contrary = framework.contrary(attacker)
                    witnesses = [
                        s
                        for s in table.supports_of(contrary)
                        if s <= {target}
                        and any(
                            framework.preference.strictly_less(member, attacker)
                            for member in s
                        )
                    ]
                for witness in sorted(witnesses, key=extension_sort_key):
                    lines.append(
                        f"{{{attacker}}} attacks {{{target}}} [{kind}] "
                        f"via {contrary} <- {_extension_text(witness)}"
                    )
    return lines


def _cmd_explain(args) -> int:
    if args.bundle:
        bundle = parse_bundle(_read(args.bundle))
        goal_framework, _ = build_patient_framework(
            bundle.recommendations, bundle.interactions, bundle.context
        )
        framework = goal_framework.base
    else:
        framework, _ = _parse_program(args.aba)

    table = compute_supports(framework)
    sys.stdout.write("supports:\n")
    for sentence in sorted(table.sentences()):
        supports = sorted(table.supports_of(sentence), key=extension_sort_key)
        rendered = ", ".join(_extension_text(s) for s in supports)
        sys.stdout.write(f"  {sentence} <- {rendered}\n")
    sys.stdout.write("singleton attacks:\n")
    for line in _singleton_attack_lines(framework):
        sys.stdout.write("  " + line + "\n")
    sys.stdout.write("canonical attackers:\n")
    for target in framework.assumption_order:
        attackers = canonical_attackers(framework, [target])
        rendered = ", ".join(
            _extension_text(a) for a in sorted(attackers, key=extension_sort_key)
        )
        sys.stdout.write(f"  of {{{target}}}: {rendered or 'none'}\n")
    return EXIT_OK


def _goal_summary(framework: AbapgFramework, tops) -> set:
    return {
        (g.achieved, tuple(sorted(g.sources, key=extension_sort_key))) for g in tops
    }


def _cmd_oracle(args) -> int:
    if args.max_assumptions > ORACLE_CAP:
        raise OracleSizeExceeded(
            f"--max-assumptions {args.max_assumptions} exceeds the oracle cap "
            f"of {ORACLE_CAP}"
        )
    rng = random.Random(args.seed)
    goal_rounds = max(1, args.count // 2)
    for index in range(args.count):
        framework = random_framework(rng, max_assumptions=args.max_assumptions)
        engine = set(preferred_extensions(framework))
        reference = set(brute_force_preferred(framework))
        if engine != reference:
            sys.stdout.write(
                f"disagreement on preferred extensions (instance {index}):\n"
            )
            sys.stdout.write(serialize_framework(framework))
            _report_sets("engine", engine)
            _report_sets("oracle", reference)
            return EXIT_DISAGREEMENT
    for index in range(goal_rounds):
        goal_framework = random_abapg(rng, max_assumptions=args.max_assumptions)
        engine_tops = _goal_summary(
            goal_framework,
            maximal_goal_extensions(
                collect_goal_extensions(
                    goal_framework, preferred_extensions(goal_framework.base)
                ),
                goal_framework.priority,
            ),
        )
        oracle_tops = _goal_summary(
            goal_framework, brute_force_top_goals(goal_framework)
        )
        if engine_tops != oracle_tops:
            sys.stdout.write(
                f"disagreement on top goal extensions (instance {index}):\n"
            )
            sys.stdout.write(serialize_abapg(goal_framework))
            return EXIT_DISAGREEMENT
    sys.stdout.write(
        f"agreement: {args.count} frameworks, {goal_rounds} goal instances "
        f"(seed {args.seed}, max {args.max_assumptions} assumptions)\n"
    )
    return EXIT_OK


def _report_sets(label: str, extensions) -> None:
    rendered = ", ".join(
        _extension_text(e) for e in sorted(extensions, key=extension_sort_key)
    )
    sys.stdout.write(f"  {label}: {rendered or '(none)'}\n")


def _add_input_arguments(parser: argparse.ArgumentParser, bundle_only: bool = False):
    if bundle_only:
        parser.add_argument("--bundle", required=True, help="guideline bundle (JSON)")
        return
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--bundle", help="guideline bundle (JSON)")
    group.add_argument("--aba", help="framework in textual form")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="argclinic",
        description="Argumentation-based reconciliation of clinical recommendations.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="compute extensions and actions")
    _add_input_arguments(solve)
    solve.add_argument("--format", choices=["text", "json"], default="text")
    solve.add_argument(
        "--quiet", action="store_true", help="print preferred extensions only"
    )
    solve.set_defaults(func=_cmd_solve)

    mapper = commands.add_parser("map", help="print the framework built from a bundle")
    _add_input_arguments(mapper, bundle_only=True)
    mapper.set_defaults(func=_cmd_map)

    check = commands.add_parser("check", help="validate input and exit")
    _add_input_arguments(check)
    check.set_defaults(func=_cmd_check)

    explain = commands.add_parser("explain", help="list supports and attacks")
    _add_input_arguments(explain)
    explain.set_defaults(func=_cmd_explain)

    oracle = commands.add_parser("oracle", help="fuzz the engine against brute force")
    oracle.add_argument("--seed", type=int, default=0)
    oracle.add_argument("--count", type=int, default=200)
    oracle.add_argument("--max-assumptions", type=int, default=8)
    oracle.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, SchemaError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except SizeLimitExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SIZE
    except ValidationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
