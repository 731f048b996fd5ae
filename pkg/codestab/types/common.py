from enum import Enum
from typing import Literal

CodeKind = Literal["classical", "css", "general"]
CODE_KINDS: tuple[CodeKind, ...] = ("classical", "css", "general")

# Sector of a CSS code: which Pauli type the checks (and stabilizers) carry
Sector = Literal["X", "Z"]
SECTORS: tuple[Sector, ...] = ("X", "Z")

CodeFamily = Literal[
    "repetition", "ising", "trivial", "toric", "ising_toric", "hgp", "biregular", "alist"
]
CODE_FAMILIES: tuple[CodeFamily, ...] = (
    "repetition",
    "ising",
    "trivial",
    "toric",
    "ising_toric",
    "hgp",
    "biregular",
    "alist",
)

PerturbationFamily = Literal["x_field", "z_field", "plaquette_field", "two_body", "random_local", "paulis"]
PERTURBATION_FAMILIES: tuple[PerturbationFamily, ...] = (
    "x_field",
    "z_field",
    "plaquette_field",
    "two_body",
    "random_local",
    "paulis",
)

SolverMode = Literal["dense", "sparse", "auto"]
OutputFormat = Literal["json", "csv"]

SuiteGroup = Literal["swt", "gap", "splitting", "controls", "soundness", "flow", "norms", "locality", "oracles"]
SUITE_GROUPS: tuple[SuiteGroup, ...] = (
    "swt",
    "gap",
    "splitting",
    "controls",
    "soundness",
    "flow",
    "norms",
    "locality",
    "oracles",
)


class CodeKindEnum(str, Enum):
    CLASSICAL = "classical"
    CSS = "css"
    GENERAL = "general"


class SolverModeEnum(str, Enum):
    DENSE = "dense"
    SPARSE = "sparse"
    AUTO = "auto"


class ExitCode(int, Enum):
    OK = 0
    USAGE = 2
    NUMERIC = 3
    ACCEPTANCE = 4
