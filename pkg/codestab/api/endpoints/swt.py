import argparse
import logging

from codestab.api.controllers.inputs import InputController
from codestab.api.controllers.output import OutputController
from codestab.schemas.flow import FlowConstants
from codestab.services.swt.engine import dense, swt_run
from codestab.services.swt.spectral import relative_bound_estimate

logger = logging.getLogger("codestab.api.swt")


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("swt", parents=parents, help="iterated Schrieffer-Wolff transformation")
    InputController.add_code_arguments(parser)
    InputController.add_perturbation_arguments(parser, default="two_body")
    parser.add_argument("--epsilon", type=float, required=True)
    parser.add_argument("--m-target", type=int, default=4)
    parser.add_argument("--d-s", type=int, help="terms with |S| >= d_s go to the garbage term (default n)")
    parser.add_argument("--kappa1", type=float, default=1.0)
    parser.add_argument("--flow-envelope", action="store_true", help="compare norms with the flow trajectory")
    parser.add_argument("--relative-bound", action="store_true", help="estimate c with (D − c_D)² ≼ c² H₀²")
    parser.set_defaults(func=run)


def run(args: argparse.Namespace) -> int:
    spec = InputController.spec(
        args,
        "swt",
        m_target=args.m_target,
        d_s=args.d_s,
        kappa1=args.kappa1,
        flow_envelope=args.flow_envelope,
        relative_bound=args.relative_bound,
    )
    code = InputController.code(spec)
    v = InputController.perturbation(spec, code) * args.epsilon
    consts = FlowConstants(kappa1=args.kappa1) if args.flow_envelope else None
    result = swt_run(code, v, args.m_target, args.d_s or code.n, kappa1=args.kappa1, flow_consts=consts)
    summary = result.summary
    if summary.diverged:
        logger.warning("iteration diverged; norms are reported up to the stopping order")
    payload: dict = {"summary": summary}
    if args.relative_bound:
        payload["relative_bound"] = relative_bound_estimate(code, dense(result.d_ops[-1]))
    OutputController.emit(spec, payload, args.format, args.out, summary.orders)
    return 0
