import argparse
import logging

from codestab.api.controllers.inputs import InputController
from codestab.api.controllers.output import OutputController
from codestab.services.stabilizer import code_parameters, hamiltonian_description, logicals, validate

logger = logging.getLogger("codestab.api.params")


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("params", parents=parents, help="code parameters, logicals and graph metrics")
    InputController.add_code_arguments(parser)
    parser.add_argument("--w-max", type=int, help="distance search cap")
    parser.add_argument("--logicals", action="store_true", help="include a symplectic logical basis")
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    spec = InputController.spec(args, "params", w_max=args.w_max, logicals=args.logicals)
    code = InputController.code(spec)
    metrics = validate(code)
    params = code_parameters(code, args.w_max)
    logger.info(f"{code.name} {params.label()}")
    result = {
        "parameters": params,
        "metrics": metrics,
        "hamiltonian": [{"weight": lam, "check": check.label()} for lam, check in hamiltonian_description(code)],
    }
    if args.logicals:
        result["logicals"] = [[x.label(), z.label()] for x, z in logicals(code)]
    rows = [
        {
            "n": params.n,
            "k": params.k,
            "d": params.d,
            "d_lower_bound": params.d_lower_bound,
            "certified": params.certified,
            "max_degree": metrics.max_degree,
            "q": metrics.q,
            "q_prime": metrics.q_prime,
        }
    ]
    OutputController.emit(spec, result, args.format, args.out, rows)
    return 0
