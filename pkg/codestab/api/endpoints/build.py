import argparse
import logging

from codestab.api.controllers.inputs import InputController
from codestab.api.controllers.output import OutputController
from codestab.services.codes import build_code, to_artifact
from codestab.services.stabilizer import code_parameters
from codestab.types import CODE_FAMILIES

logger = logging.getLogger("codestab.api.build")


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("build", parents=parents, help="construct a code and write it as JSON")
    parser.add_argument("family", choices=CODE_FAMILIES)
    parser.add_argument("--w-max", type=int, help="distance search cap")
    InputController.add_family_arguments(parser)
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    """Build, compute ⟦n,k,d⟧, write the artifact and print the parameters."""
    spec = InputController.spec(args, "build", w_max=args.w_max)
    code = build_code(args.family, InputController.family_params(args))
    params = code_parameters(code, args.w_max)
    status = "certified" if params.certified else f"lower bound {params.d_lower_bound}"
    print(f"{code.name} {params.label()} ({code.m} checks, distance {status})")
    if args.out is None:
        logger.info("no --out given; artifact not written")
        return 0
    artifact = to_artifact(code, params)
    artifact.metadata["build_spec"] = spec.model_dump(mode="json")
    OutputController.write_text(artifact.model_dump_json(indent=2) + "\n", args.out)
    return 0
