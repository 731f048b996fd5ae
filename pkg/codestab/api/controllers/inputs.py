import argparse
from typing import Any

from codestab.core.exceptions import ContractViolationError
from codestab.models.code import StabilizerCode
from codestab.models.operators import PauliSum
from codestab.schemas.experiment import ExperimentSpec
from codestab.services.codes import build_code, load_code
from codestab.services.perturbations import build_perturbation
from codestab.types import CODE_FAMILIES, PERTURBATION_FAMILIES


def parse_floats(text: str) -> list[float]:
    """``"0,0.02,0.05"`` or ``"0:0.1:0.02"`` (start:stop:step, stop included)."""
    try:
        if ":" in text:
            start, stop, step = (float(part) for part in text.split(":"))
            if step <= 0:
                raise ContractViolationError("grid step must be positive")
            count = int(round((stop - start) / step)) + 1
            return [round(start + i * step, 12) for i in range(count)]
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from exc


def _edges(text: str) -> list[tuple[int, int]]:
    try:
        return [(int(a), int(b)) for a, b in (pair.split("-") for pair in text.split(","))]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad edge list {text!r}; expected '0-1,1-2'") from exc


class InputController:
    """
    Shared command-line arguments for choosing a code and a perturbation.
    """

    @staticmethod
    def add_family_arguments(parser: argparse.ArgumentParser) -> None:
        """
        Constructor parameters used by ``build`` and by ``--family`` on other commands.

        Args:
            parser (argparse.ArgumentParser): The subcommand parser to extend.
        """
        group = parser.add_argument_group("code parameters")
        group.add_argument("--n", type=int, help="qubits (repetition, ising, trivial)")
        group.add_argument("--L", type=int, help="linear size (toric, ising_toric)")
        group.add_argument("--cyclic", action="store_true", help="periodic repetition code")
        group.add_argument("--coupling", type=float, default=1.0, help="Ising check weight")
        group.add_argument("--edges", type=_edges, help="Ising graph as '0-1,1-2,...'")
        group.add_argument("--left", help="left Tanner graph: repN, repNc or an alist path")
        group.add_argument("--right", help="right Tanner graph: repN, repNc or an alist path")
        group.add_argument("--n-bits", type=int, help="bits of a random biregular Tanner graph")
        group.add_argument("--deg-bit", type=int)
        group.add_argument("--deg-check", type=int)
        group.add_argument("--path", help="alist file")

    @staticmethod
    def add_code_arguments(parser: argparse.ArgumentParser) -> None:
        """
        ``--code PATH`` for a built artifact, or ``--family`` with constructor parameters.

        Args:
            parser (argparse.ArgumentParser): The subcommand parser to extend.
        """
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument("--code", help="code artifact written by 'build'")
        source.add_argument("--family", choices=CODE_FAMILIES)
        InputController.add_family_arguments(parser)

    @staticmethod
    def add_perturbation_arguments(parser: argparse.ArgumentParser, default: str = "x_field") -> None:
        group = parser.add_argument_group("perturbation")
        group.add_argument("--perturbation", choices=PERTURBATION_FAMILIES, default=default)
        group.add_argument("--pauli", action="append", dest="labels", help="Pauli label, repeatable")
        group.add_argument("--weight", action="append", type=float, dest="coeffs", help="weight per --pauli")

    @staticmethod
    def family_params(args: argparse.Namespace) -> dict[str, Any]:
        """
        Constructor parameters present on the command line.

        Args:
            args (argparse.Namespace): Parsed arguments.

        Returns:
            dict[str, Any]: Parameters in the form ``build_code`` expects.
        """
        params: dict[str, Any] = {
            "n": args.n,
            "L": args.L,
            "cyclic": args.cyclic,
            "coupling": args.coupling,
            "edges": args.edges,
            "left": args.left,
            "right": args.right,
            "n_bits": args.n_bits,
            "deg_bit": args.deg_bit,
            "deg_check": args.deg_check,
            "seed": args.seed,
            "path": args.path,
        }
        return {key: value for key, value in params.items() if value is not None}

    @staticmethod
    def spec(args: argparse.Namespace, command: str, **options: Any) -> ExperimentSpec:
        """
        Provenance record of a run.

        Args:
            args (argparse.Namespace): Parsed arguments.
            command (str): Subcommand name.
            **options: Command-specific settings to record.

        Returns:
            ExperimentSpec: The validated experiment specification.
        """
        family = getattr(args, "family", None)
        return ExperimentSpec(
            command=command,
            family=family,
            params=InputController.family_params(args) if family else {},
            code_path=getattr(args, "code", None),
            perturbation=getattr(args, "perturbation", None),
            labels=getattr(args, "labels", None),
            coeffs=getattr(args, "coeffs", None),
            epsilons=getattr(args, "epsilons", None) or [getattr(args, "epsilon", 0.0) or 0.0],
            seed=args.seed,
            out=args.out,
            mode=getattr(args, "mode", "auto"),
            options=options,
        )

    @staticmethod
    def code(spec: ExperimentSpec) -> StabilizerCode:
        if spec.code_path:
            return load_code(spec.code_path)
        if spec.family is None:
            raise ContractViolationError("no code given; use --code or --family")
        return build_code(spec.family, spec.params)

    @staticmethod
    def perturbation(spec: ExperimentSpec, code: StabilizerCode) -> PauliSum:
        if spec.perturbation is None:
            raise ContractViolationError("no perturbation given")
        return build_perturbation(
            spec.perturbation, code, seed=spec.seed or 0, labels=spec.labels, coeffs=spec.coeffs
        )
