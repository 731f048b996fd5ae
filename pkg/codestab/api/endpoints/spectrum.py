import argparse
import logging

from codestab.api.controllers.inputs import InputController, parse_floats
from codestab.api.controllers.output import OutputController
from codestab.core.config import settings
from codestab.core.exceptions import CodestabError
from codestab.models.code import StabilizerCode
from codestab.models.operators import PauliSum
from codestab.schemas.experiment import SpectrumRow
from codestab.services.swt.engine import swt_run
from codestab.services.swt.spectral import spectral_report
from codestab.types import SolverMode

logger = logging.getLogger("codestab.api.spectrum")

SpectrumPoint = tuple[StabilizerCode, PauliSum, float, int | None, SolverMode, tuple[int, int] | None]


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("spectrum", parents=parents, help="low-lying spectrum over an ε grid")
    InputController.add_code_arguments(parser)
    InputController.add_perturbation_arguments(parser)
    parser.add_argument("--epsilons", type=parse_floats, default=[0.0], help="'0,0.05,0.1' or '0:0.1:0.02'")
    parser.add_argument("--num-eigs", type=int, help="levels to compute (default 2^k + 4)")
    parser.add_argument("--mode", choices=("dense", "sparse", "auto"), default="auto")
    parser.add_argument("--swt", action="store_true", help="also run the iteration and report projector distances")
    parser.add_argument("--m-target", type=int, default=4, help="SWT orders when --swt is set")
    parser.add_argument("--d-s", type=int, help="support cutoff for the iteration (default n)")
    parser.set_defaults(func=run)


def spectrum_point(point: SpectrumPoint) -> SpectrumRow:
    """One grid point; solver failures are returned as a flagged row."""
    code, v, eps, num_eigs, mode, swt = point
    try:
        run = None
        orders = None
        if swt is not None:
            m_target, d_s = swt
            run = swt_run(code, v * eps, m_target, d_s)
            orders = [row.v for row in run.summary.orders]
        report = spectral_report(code, v, eps, num_eigs=num_eigs, mode=mode, run=run)
    except CodestabError as exc:
        logger.error(f"epsilon={eps:g}: {type(exc).__name__}: {exc}")
        return SpectrumRow(epsilon=eps, flagged=True, error=f"{type(exc).__name__}: {exc}")
    return SpectrumRow(
        epsilon=eps,
        cluster_size=report.cluster_size,
        splitting=report.splitting,
        gap=report.gap,
        well_separated=report.well_separated,
        weyl_holds=report.weyl_holds,
        projector_distance=report.projector_distance,
        swt_orders=orders,
        flagged=not (report.well_separated and report.weyl_holds),
    )


def run(args: argparse.Namespace) -> int:
    spec = InputController.spec(
        args, "spectrum", num_eigs=args.num_eigs, swt=args.swt, m_target=args.m_target, d_s=args.d_s
    )
    code = InputController.code(spec)
    v = InputController.perturbation(spec, code)
    swt = (args.m_target, args.d_s or code.n) if args.swt else None
    points = [(code, v, eps, args.num_eigs, args.mode, swt) for eps in sorted(set(spec.epsilons))]
    rows = OutputController.map_points(spectrum_point, points, args.threads or settings.threads)
    flagged = sum(row.flagged for row in rows)
    if flagged:
        logger.warning(f"{flagged} of {len(rows)} grid points flagged")
    OutputController.emit(spec, {"code": code.name, "n": code.n, "rows": rows}, args.format, args.out, rows)
    return 0
