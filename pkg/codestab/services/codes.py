"""Build codes by family name and move them to and from JSON artifacts."""

import logging
import re
from pathlib import Path
from typing import Any

import networkx as nx

from codestab.core.exceptions import ContractViolationError
from codestab.models.code import BipartiteTanner, StabilizerCode
from codestab.models.pauli import PauliString
from codestab.schemas.code import CheckRecord, CodeArtifact, CodeParameters
from codestab.services.constructors import (
    classical_code,
    hypergraph_product,
    ising_code,
    ising_toric,
    load_alist,
    random_biregular_classical,
    repetition_code,
    repetition_tanner,
    toric_code,
    trivial_field_code,
)
from codestab.services.stabilizer import validate
from codestab.types import CodeFamily

logger = logging.getLogger("codestab.codes")

_REP_SPEC = re.compile(r"^rep(\d+)(c?)$")


def _require(params: dict[str, Any], *names: str) -> list[Any]:
    missing = [name for name in names if params.get(name) is None]
    if missing:
        raise ContractViolationError(f"missing parameters: {', '.join(missing)}")
    return [params[name] for name in names]


def tanner_from_spec(spec: str) -> BipartiteTanner:
    """``repN`` / ``repNc`` for path and cyclic repetition Tanner graphs, otherwise an alist path."""
    match = _REP_SPEC.match(spec)
    if match:
        return repetition_tanner(int(match.group(1)), cyclic=bool(match.group(2)))
    return load_alist(spec)


def build_code(family: CodeFamily, params: dict[str, Any]) -> StabilizerCode:
    if family == "repetition":
        (n,) = _require(params, "n")
        return repetition_code(int(n), cyclic=bool(params.get("cyclic", False)), coupling=float(params.get("coupling", 1.0)))
    if family == "ising":
        n, edges = _require(params, "n", "edges")
        graph = nx.Graph()
        graph.add_nodes_from(range(int(n)))
        graph.add_edges_from(tuple(e) for e in edges)
        return ising_code(graph, coupling=float(params.get("coupling", 1.0)))
    if family == "trivial":
        (n,) = _require(params, "n")
        return trivial_field_code(int(n))
    if family == "toric":
        (L,) = _require(params, "L")
        return toric_code(int(L))
    if family == "ising_toric":
        (L,) = _require(params, "L")
        return ising_toric(int(L))
    if family == "hgp":
        left, right = _require(params, "left", "right")
        return hypergraph_product(tanner_from_spec(str(left)), tanner_from_spec(str(right)))
    if family == "biregular":
        n_bits, deg_bit, deg_check, seed = _require(params, "n_bits", "deg_bit", "deg_check", "seed")
        return classical_code(random_biregular_classical(int(n_bits), int(deg_bit), int(deg_check), int(seed)))
    if family == "alist":
        (path,) = _require(params, "path")
        return classical_code(load_alist(path))
    raise ContractViolationError(f"unknown code family {family!r}")


def to_artifact(code: StabilizerCode, parameters: CodeParameters | None = None) -> CodeArtifact:
    return CodeArtifact(
        name=code.name,
        n=code.n,
        kind=code.kind,
        checks=[CheckRecord(pauli=c.label(), weight=lam) for c, lam in zip(code.checks, code.lambdas)],
        metadata=code.metadata,
        parameters=parameters,
    )


def from_artifact(artifact: CodeArtifact) -> StabilizerCode:
    """Rebuild and re-validate a code read from disk."""
    checks = tuple(PauliString.from_label(record.pauli) for record in artifact.checks)
    if any(c.n != artifact.n for c in checks):
        raise ContractViolationError(f"artifact {artifact.name} has checks of the wrong length")
    code = StabilizerCode(
        n=artifact.n,
        checks=checks,
        lambdas=tuple(record.weight for record in artifact.checks),
        name=artifact.name,
        metadata=artifact.metadata,
    )
    validate(code)
    return code


def save_code(code: StabilizerCode, path: str | Path, parameters: CodeParameters | None = None) -> None:
    Path(path).write_text(to_artifact(code, parameters).model_dump_json(indent=2))
    logger.info(f"wrote {code.name} ({code.n} qubits, {code.m} checks) to {path}")


def load_code(path: str | Path) -> StabilizerCode:
    path = Path(path)
    if not path.exists():
        raise ContractViolationError(f"code file {path} does not exist")
    return from_artifact(CodeArtifact.model_validate_json(path.read_text()))
