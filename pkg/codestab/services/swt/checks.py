"""Numeric checks of the κ-norm inequalities behind the iteration.

Each check returns a :class:`NormCheck` with lhs ≤ rhs expected; ``margin`` is
rhs − lhs. Equality up to rounding passes: a check holds when
margin ≥ −tolerance with tolerance = NORM_SLACK · max(1, |rhs|).
"""

import logging

import numpy as np

from codestab.models.code import StabilizerCode
from codestab.models.operators import QuasiLocalOperator
from codestab.schemas.swt import NormCheck
from codestab.services.perturbations import random_local
from codestab.services.swt.engine import generator_solution
from codestab.services.swt.operators import (
    PatchCache,
    block_split,
    commutator,
    conjugation_series,
    decompose,
    kappa_norm,
    operator_norm,
)
from codestab.utils.bits import bit_indices

logger = logging.getLogger("codestab.swt.checks")

NORM_SLACK = 1e-12


def _check(name: str, lhs: float, rhs: float) -> NormCheck:
    tolerance = NORM_SLACK * max(1.0, abs(rhs))
    holds = rhs - lhs >= -tolerance
    if not holds:
        logger.warning(f"{name}: {lhs:.6e} > {rhs:.6e}")
    return NormCheck(name=name, lhs=lhs, rhs=rhs, margin=rhs - lhs, tolerance=tolerance, holds=holds)


def random_quasi_local(
    code: StabilizerCode,
    seed: int,
    num_terms: int = 6,
    max_weight: int = 2,
    anti_hermitian: bool = False,
) -> QuasiLocalOperator:
    """Seeded random operator decomposed against ``code``; multiplied by i when anti-Hermitian."""
    op = decompose(random_local(code, seed, num_terms=num_terms, max_weight=max_weight), code)
    return op * 1j if anti_hermitian else op


def block_split_checks(code: StabilizerCode, op: QuasiLocalOperator) -> list[NormCheck]:
    """‖ℙV_{S,s}‖ ≤ ‖V_{S,s}‖ and ‖ℙ⊥V_{S,s}‖ ≤ ‖V_{S,s}‖ for every term."""
    cache = PatchCache(code)
    checks = []
    for term in op.terms:
        norm = operator_norm(term.payload, term.support)
        diagonal, off = block_split(term, code, cache)
        checks.append(_check("block_diagonal_norm", operator_norm(diagonal.payload, term.support), norm))
        checks.append(_check("block_off_diagonal_norm", operator_norm(off.payload, term.support), norm))
    return checks


def generator_checks(code: StabilizerCode, v: QuasiLocalOperator, kappa: float) -> list[NormCheck]:
    """Per term ‖A_{S,s}‖ ≤ ‖ℙ⊥V_{S,s}‖ / Σ_{c∈s} λ_c, then ‖A‖_κ ≤ ‖ℙ⊥V‖_κ.

    For unit check weights the denominator is |s|.
    """
    a, _, off = generator_solution(code, v, PatchCache(code))
    off_by_key = off.by_key()
    checks = []
    for term in a.terms:
        energy = sum(code.lambdas[c] for c in bit_indices(term.syndrome))
        off_term = off_by_key.get(term.key)
        off_norm = 0.0 if off_term is None else operator_norm(off_term.payload, term.support)
        checks.append(_check("generator_term_norm", operator_norm(term.payload, term.support), off_norm / energy))
    checks.append(_check("generator_kappa_norm", kappa_norm(a, kappa), kappa_norm(off, kappa)))
    return checks


def commutator_check(
    d: QuasiLocalOperator, a: QuasiLocalOperator, kappa: float, kappa_prime: float
) -> NormCheck:
    """‖[D, A]‖_{κ′} ≤ (2/δκ)‖D‖_κ‖A‖_κ with δκ = κ − κ′."""
    delta = kappa - kappa_prime
    lhs = kappa_norm(commutator(d, a), kappa_prime)
    return _check("commutator", lhs, 2.0 / delta * kappa_norm(d, kappa) * kappa_norm(a, kappa))


def conjugation_check(
    a: QuasiLocalOperator, op: QuasiLocalOperator, kappa: float, kappa_prime: float
) -> NormCheck:
    """‖(e^{−A} · e^{A} − 1)O‖_{κ′} ≤ 18/(κ′δκ)‖A‖_κ‖O‖_κ, valid while ‖A‖_κ ≤ δκ/3."""
    delta = kappa - kappa_prime
    a_norm = kappa_norm(a, kappa)
    if a_norm > delta / 3:
        logger.warning(f"‖A‖_κ = {a_norm:.3e} above δκ/3 = {delta / 3:.3e}; conjugation bound not applicable")
    lhs = kappa_norm(conjugation_series(a, op), kappa_prime)
    return _check("conjugation", lhs, 18.0 / (kappa_prime * delta) * a_norm * kappa_norm(op, kappa))


def inequality_suite(
    code: StabilizerCode, pairs: int, seed: int, kappa: float = 1.0, kappa_prime: float = 0.5
) -> list[NormCheck]:
    """All inequalities on ``pairs`` seeded random operator pairs.

    The generator of each conjugation check is rescaled into ‖A‖_κ ≤ δκ/3.
    """
    rng = np.random.default_rng(seed)
    delta = kappa - kappa_prime
    results: list[NormCheck] = []
    for i in range(pairs):
        s1, s2, s3 = (int(x) for x in rng.integers(0, 2**31, size=3))
        v = random_quasi_local(code, s1)
        a = random_quasi_local(code, s2, anti_hermitian=True)
        results.extend(block_split_checks(code, v))
        results.extend(generator_checks(code, v, kappa))
        results.append(commutator_check(v, a, kappa, kappa_prime))
        a_norm = kappa_norm(a, kappa)
        if a_norm > 0:
            a = a * (float(rng.uniform(0.1, 1.0)) * delta / 3 / a_norm)
        op = random_quasi_local(code, s3)
        results.append(conjugation_check(a, op, kappa, kappa_prime))
        logger.debug(f"inequality pair {i + 1}/{pairs} done")
    return results
