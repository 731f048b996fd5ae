import argparse
import logging

from codestab.api.controllers.inputs import InputController
from codestab.api.controllers.output import OutputController
from codestab.services.acceptance import run_suite
from codestab.types import SUITE_GROUPS, ExitCode

logger = logging.getLogger("codestab.api.suite")


def _groups(text: str) -> list[str]:
    groups = [part.strip() for part in text.split(",") if part.strip()]
    unknown = [g for g in groups if g not in SUITE_GROUPS]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown groups {unknown}; choose from {', '.join(SUITE_GROUPS)}")
    return groups


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("suite", parents=parents, help="run the acceptance criteria")
    parser.add_argument("--only", type=_groups, action="extend", help="comma-separated groups, repeatable")
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else 0
    spec = InputController.spec(args, "suite", only=args.only)
    summary = run_suite(seed, only=args.only)
    rows = [
        {"number": c.number, "name": c.name, "group": c.group, "passed": c.passed, "seconds": round(c.seconds, 3)}
        for c in summary.criteria
    ]
    OutputController.emit(spec, summary, args.format, args.out, rows)
    failed = [c.number for c in summary.criteria if not c.passed]
    if failed:
        logger.error(f"criteria failed: {failed}")
        return ExitCode.ACCEPTANCE
    logger.info(f"all {len(summary.criteria)} criteria passed")
    return ExitCode.OK
