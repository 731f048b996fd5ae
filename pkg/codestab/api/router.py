import argparse

from codestab.api.endpoints import build, flow, params, soundness, spectrum, suite, swt
from codestab.core.config import settings


def common_arguments() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--out", help="output path (default: stdout)")
    parent.add_argument("--seed", type=int, help="seed for random codes and perturbations")
    parent.add_argument("--threads", type=int, default=settings.threads, help="worker processes for ε grids")
    parent.add_argument("--format", choices=("json", "csv"), default="json")
    parent.add_argument("--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR"))
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codestab",
        description="Stability experiments for LDPC stabilizer-code Hamiltonians.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    parents = [common_arguments()]

    build.register(subparsers, parents)
    params.register(subparsers, parents)
    soundness.register(subparsers, parents)
    flow.register(subparsers, parents)
    swt.register(subparsers, parents)
    spectrum.register(subparsers, parents)
    suite.register(subparsers, parents)
    return parser
