from .common import (
    CODE_FAMILIES,
    CODE_KINDS,
    PERTURBATION_FAMILIES,
    SECTORS,
    SUITE_GROUPS,
    CodeFamily,
    CodeKind,
    CodeKindEnum,
    ExitCode,
    OutputFormat,
    PerturbationFamily,
    Sector,
    SolverMode,
    SolverModeEnum,
    SuiteGroup,
)

__all__ = [
    "CodeKind",
    "Sector",
    "CodeFamily",
    "PerturbationFamily",
    "SolverMode",
    "OutputFormat",
    "SuiteGroup",
    "CODE_KINDS",
    "SECTORS",
    "CODE_FAMILIES",
    "PERTURBATION_FAMILIES",
    "SUITE_GROUPS",
    "CodeKindEnum",
    "SolverModeEnum",
    "ExitCode",
]
