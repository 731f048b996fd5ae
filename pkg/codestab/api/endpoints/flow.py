import argparse
import logging
import math
from pathlib import Path

from codestab.api.controllers.inputs import InputController
from codestab.api.controllers.output import OutputController
from codestab.core.exceptions import ContractViolationError
from codestab.schemas.flow import FlowConstants
from codestab.services.flow import (
    c1_closed_form,
    c3_estimate,
    c_iter_const,
    epsilon_zero_search,
    flow_trajectory,
    stability_certificate,
)

logger = logging.getLogger("codestab.api.flow")


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("flow", parents=parents, help="flow-equation constants and stability certificate")
    parser.add_argument("--epsilon", type=float, default=0.0, help="perturbation strength in the κ₁-norm")
    parser.add_argument("--n", type=int, default=100, help="qubit count entering ε*")
    parser.add_argument("--d-s", type=int, help="soundness distance d_s")
    parser.add_argument("--c-d", type=float, help="d_s = ceil(c_d ln n) when --d-s is absent")
    parser.add_argument("--c1", type=float, help="relative-boundedness constant (default: closed form)")
    parser.add_argument("--kappa1", type=float, default=1.0)
    parser.add_argument("--delta", type=int, default=5, help="maximum degree Δ of the code graph")
    parser.add_argument("--c-f-prime", type=float, default=0.1)
    parser.add_argument("--c-f-dblprime", type=float, default=1.0)
    parser.add_argument("--alpha", type=float, default=1.0)
    parser.add_argument("--c-tilde-f-dblprime", type=float, default=2.0)
    parser.add_argument("--m-max", type=int, default=200, help="trajectory length")
    parser.add_argument("--m-check", type=int, help="orders checked by the ε₀ search")
    parser.add_argument("--trajectory", help="CSV path for the per-order trajectory")
    parser.set_defaults(func=run)


def _d_s(args: argparse.Namespace) -> int:
    if args.d_s is not None:
        return args.d_s
    if args.c_d is not None:
        return max(1, math.ceil(args.c_d * math.log(args.n)))
    raise ContractViolationError("give --d-s or --c-d")


def run(args: argparse.Namespace) -> int:
    consts = FlowConstants(
        kappa1=args.kappa1,
        delta=args.delta,
        c_f_prime=args.c_f_prime,
        c_f_dblprime=args.c_f_dblprime,
        alpha=args.alpha,
        c_tilde_f_dblprime=args.c_tilde_f_dblprime,
    )
    d_s = _d_s(args)
    spec = InputController.spec(args, "flow", constants=consts.model_dump(), n=args.n, d_s=d_s, c1=args.c1)

    c_iter = c_iter_const(consts)
    eps0 = epsilon_zero_search(consts, m_check=args.m_check, c_iter=c_iter.c_iter)
    if args.c1 is None:
        c1, source = c1_closed_form(consts, c_iter.c_iter), "closed form from (delta, kappa1, c_f', alpha, c_f'', c_iter)"
    else:
        c1, source = args.c1, "input"
    certificate = stability_certificate(consts, args.n, d_s, args.epsilon, c1, eps0, c1_source=source)
    trajectory = flow_trajectory(consts, args.epsilon, m_max=args.m_max, c_iter=c_iter.c_iter)
    c3 = c3_estimate(consts, args.c_d, args.epsilon) if args.c_d is not None else None
    logger.info(f"certificate valid={certificate.valid}, epsilon0={eps0.epsilon0:.4g}, c_iter={c_iter.c_iter:.4g}")

    result = {
        "certificate": certificate,
        "c_iter": c_iter,
        "epsilon0": eps0,
        "c3": c3,
        "trajectory_within_bounds": trajectory.all_within_bounds,
        "trajectory_swt_condition": trajectory.swt_condition_holds,
        "first_violation": trajectory.first_violation,
    }
    OutputController.emit(spec, result, args.format, args.out, trajectory.rows)
    if args.trajectory:
        Path(args.trajectory).write_text(OutputController.rows_csv(trajectory.rows))
        logger.info(f"wrote trajectory to {args.trajectory}")
    return 0
