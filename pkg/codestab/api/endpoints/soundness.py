import argparse
import logging

from codestab.api.controllers.inputs import InputController
from codestab.api.controllers.output import OutputController
from codestab.services.soundness import expansion_profile, soundness_profile

logger = logging.getLogger("codestab.api.soundness")


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("soundness", parents=parents, help="check soundness and expansion profiles")
    InputController.add_code_arguments(parser)
    parser.add_argument("--m-max", type=int, help="largest stabilizer weight (default n)")
    parser.add_argument("--budget", type=int, help="group elements to enumerate before sampling stops")
    parser.add_argument("--size-max", type=int, default=4, help="largest check subset for expansion")
    parser.add_argument("--samples", type=int, default=1000, help="subsets drawn when a size is not enumerated")
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    spec = InputController.spec(
        args, "soundness", m_max=args.m_max, budget=args.budget, size_max=args.size_max, samples=args.samples
    )
    code = InputController.code(spec)
    profile = soundness_profile(code, args.m_max or code.n, args.budget)
    expansion = expansion_profile(code, args.size_max, args.samples, args.seed or 0)
    if not profile.certified:
        logger.warning(f"enumeration stopped after {profile.explored} of {profile.group_size} stabilizers")
    quadratic = all(row.f_emp <= row.M**2 for row in profile.rows)
    result = {
        "soundness": profile,
        "expansion": expansion,
        "quadratic_envelope": quadratic,
        "certified": profile.certified and expansion.certified,
    }
    OutputController.emit(spec, result, args.format, args.out, profile.rows)
    return 0
