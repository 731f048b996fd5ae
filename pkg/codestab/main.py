import logging
import sys
from collections.abc import Sequence

from pydantic import ValidationError

from codestab.api.router import build_parser
from codestab.core.config import settings
from codestab.core.exceptions import (
    AlistParseError,
    CodestabError,
    ConstructionError,
    ContractViolationError,
    InvalidCodeError,
    NotAStabilizerError,
    PatchTooLargeError,
)
from codestab.types import ExitCode

logger = logging.getLogger("codestab")

_USAGE_ERRORS = (
    ContractViolationError,
    InvalidCodeError,
    NotAStabilizerError,
    ConstructionError,
    AlistParseError,
    PatchTooLargeError,
)


def exit_code_for(exc: Exception) -> ExitCode:
    if isinstance(exc, (ValidationError, *_USAGE_ERRORS)):
        return ExitCode.USAGE
    return ExitCode.NUMERIC


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=args.log_level or settings.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return int(args.func(args))
    except (ValidationError, CodestabError) as exc:
        code = exit_code_for(exc)
        logger.error(f"{args.command} failed ({type(exc).__name__}): {exc}")
        return int(code)


if __name__ == "__main__":
    sys.exit(main())
