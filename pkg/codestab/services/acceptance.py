"""Acceptance suite: numbered criteria that exercise every layer on desk-scale instances."""

import logging
import math
import time
from collections.abc import Callable
from itertools import product
from typing import Any

import numpy as np

from codestab.core.exceptions import CodestabError
from codestab.models.code import StabilizerCode
from codestab.models.operators import PauliSum
from codestab.models.pauli import PauliString
from codestab.schemas.experiment import CriterionResult, SuiteSummary
from codestab.schemas.flow import FlowConstants
from codestab.schemas.swt import NormCheck
from codestab.services import gf2
from codestab.services.constructors import (
    face_support,
    hypergraph_product,
    ising_toric,
    relabel,
    repetition_code,
    repetition_tanner,
    toric_code,
    toric_relabeling,
)
from codestab.services.flow import (
    c_iter_const,
    epsilon_zero_search,
    flow_step,
    flow_trajectory,
    initial_state,
    kappa_m,
)
from codestab.services.pauli import commutes, pauli_matrix
from codestab.services.perturbations import plaquette_field, x_field, z_field
from codestab.services.soundness import min_expansion, soundness_profile
from codestab.services.stabilizer import product_of_checks, syndrome_bits
from codestab.services.swt.checks import NORM_SLACK, inequality_suite, random_quasi_local
from codestab.services.swt.engine import generator_residual, generator_solution
from codestab.services.swt.operators import PatchCache, checks_inside
from codestab.services.swt.spectral import local_indistinguishability_check, spectral_report
from codestab.types import SUITE_GROUPS, SolverMode, SuiteGroup
from codestab.utils.bits import iter_gray_code, mask_from_indices

logger = logging.getLogger("codestab.acceptance")

Details = dict[str, Any]


def _generator_residuals(seed: int) -> tuple[bool, Details]:
    codes = [repetition_code(6), repetition_code(8, cyclic=True), toric_code(2)]
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i in range(50):
        code = codes[i % len(codes)]
        v = random_quasi_local(code, int(rng.integers(2**31)), num_terms=8, max_weight=3)
        a, p_v, _ = generator_solution(code, v, PatchCache(code))
        worst = max(worst, generator_residual(code, v, a, p_v))
    return worst <= 1e-10, {"max_residual": worst, "samples": 50}


def _gap_stability(seed: int) -> tuple[bool, Details]:
    rows = []
    for L, mode, grid in ((2, "dense", (0.02, 0.05, 0.1)), (3, "sparse", (0.05, 0.1))):
        code = toric_code(L)
        v = x_field(code.n)
        for eps in grid:
            report = spectral_report(code, v, eps, mode=mode)
            rows.append({"L": L, "epsilon": eps, "cluster_size": report.cluster_size, "gap": report.gap})
    passed = all(r["cluster_size"] == 4 and r["gap"] > 0.5 for r in rows)
    return passed, {"rows": rows}


def _splitting(eps: float, code: StabilizerCode, v: PauliSum, mode: SolverMode = "auto") -> float:
    return spectral_report(code, v, eps, mode=mode).splitting


def _distance_splitting(seed: int) -> tuple[bool, Details]:
    eps = 0.1
    sizes = [4, 6, 8]
    splittings = [_splitting(eps, repetition_code(n, coupling=2.0), x_field(n)) for n in sizes]
    slope = float(np.polyfit(sizes, np.log(splittings), 1)[0])
    slope_ok = abs(slope - math.log(eps)) <= 0.25 * abs(math.log(eps))

    toric2 = _splitting(eps, toric_code(2), x_field(8), "dense")
    toric3 = _splitting(eps, toric_code(3), x_field(18), "sparse")
    return slope_ok and toric3 < toric2, {
        "repetition_splittings": splittings,
        "slope": slope,
        "log_epsilon": math.log(eps),
        "toric_L2": toric2,
        "toric_L3": toric3,
    }


def _negative_controls(seed: int) -> tuple[bool, Details]:
    eps = 0.05
    code = repetition_code(6)
    broken = _splitting(eps, code, z_field(6))
    symmetric = _splitting(eps, code, x_field(6))
    longitudinal_ok = broken / eps > 0.5 and broken > 10 * symmetric

    # uniform plaquette field at even L: the all-flipped false vacuum costs only B_{f0}
    eps_plaquette = 0.12
    unstable = spectral_report(ising_toric(2), plaquette_field(2), eps_plaquette, mode="dense")
    stable = spectral_report(toric_code(2), plaquette_field(2), eps_plaquette, mode="dense")
    collapse_ok = stable.gap > 10 * unstable.gap and unstable.gap < 0.1
    return longitudinal_ok and collapse_ok, {
        "z_field_splitting": broken,
        "x_field_splitting": symmetric,
        "ising_toric_gap": unstable.gap,
        "toric_gap": stable.gap,
    }


def _soundness(seed: int) -> tuple[bool, Details]:
    details: Details = {}
    passed = True
    for L in (2, 3):
        code = toric_code(L)
        profile = soundness_profile(code, code.n)
        rows = [r for p in (profile, *profile.sectors.values()) for r in p.rows]
        ok = profile.certified and all(r.f_emp <= r.M**2 for r in rows)
        details[f"toric_L{L}"] = [r.f_emp for r in profile.rows]
        passed &= ok

    hgp = hypergraph_product(repetition_tanner(3), repetition_tanner(3))
    profile = soundness_profile(hgp, hgp.n)
    hgp_ok = profile.certified and all(
        4 * r.f_emp <= r.M**2 for sector in profile.sectors.values() for r in sector.rows
    )
    details["hgp_rep3"] = {s: [r.f_emp for r in p.rows] for s, p in profile.sectors.items()}
    passed &= hgp_ok

    n = 8
    end_to_end = min_expansion(repetition_code(n), PauliString.z_on(n, [0, n - 1]))
    details["repetition_end_to_end"] = end_to_end
    return passed and end_to_end == n - 1, details


def _flow_fidelity(seed: int) -> tuple[bool, Details]:
    consts = FlowConstants(kappa1=1.0)
    c = c_iter_const(consts).c_iter
    eps0 = epsilon_zero_search(consts, c_iter=c).epsilon0
    trajectory = flow_trajectory(consts, eps0, m_max=200, c_iter=c)

    second = flow_step(initial_state(consts, eps0), consts)
    dk1 = kappa_m(1.0, 1) - kappa_m(1.0, 2)
    expected = 27.0 * eps0**2 / (kappa_m(1.0, 2) * dk1)
    unrolled_ok = math.isclose(second.v_tilde, expected, rel_tol=1e-12)
    return trajectory.all_within_bounds and trajectory.swt_condition_holds and unrolled_ok, {
        "c_iter": c,
        "epsilon0": eps0,
        "first_violation": trajectory.first_violation,
        "v_tilde_2": second.v_tilde,
        "v_tilde_2_expected": expected,
    }


def _norm_inequalities(seed: int) -> tuple[bool, Details]:
    checks = inequality_suite(repetition_code(6), 50, seed) + inequality_suite(toric_code(2), 50, seed + 1)
    tightest: dict[str, NormCheck] = {}
    for check in checks:
        if check.name not in tightest or check.margin < tightest[check.name].margin:
            tightest[check.name] = check
    return all(c.holds for c in checks), {
        "checks": len(checks),
        "relative_slack": NORM_SLACK,
        "min_margin": {name: {"margin": c.margin, "tolerance": c.tolerance} for name, c in tightest.items()},
    }


def _annulus(L: int) -> tuple[list[int], PauliString]:
    n = 2 * L * L
    boundary: set[int] = set()
    for x, y in product((1, 2), repeat=2):
        boundary ^= set(face_support(L, x, y))
    region = sorted(boundary)
    return region, PauliString.z_on(n, region)


def _distinguishes(code: StabilizerCode, pauli: PauliString, bar: list[int]) -> bool:
    """Whether ``pauli`` commutes with every check inside ``bar`` without being their product."""
    inside = checks_inside(code, mask_from_indices(bar))
    inside_mask = sum(1 << c for c in inside)
    if syndrome_bits(code, pauli.x, pauli.z) & inside_mask:
        return False
    span, _ = gf2.echelon([code.checks[c].vector for c in inside])
    return not gf2.in_span(pauli.vector, span)


def _local_indistinguishability(seed: int) -> tuple[bool, Details]:
    code = toric_code(4)
    region, loop = _annulus(4)
    open_hole = local_indistinguishability_check(code, region, 0)
    filled = local_indistinguishability_check(code, region, 1)
    loop_witness = _distinguishes(code, loop, open_hole.neighbourhood)
    return (not open_hole.holds) and loop_witness and filled.holds, {
        "region": region,
        "open_counterexample": open_hole.counterexample,
        "z_loop_distinguishes": loop_witness,
        "filled_neighbourhood": len(filled.neighbourhood),
    }


def _commutation_oracle(seed: int) -> tuple[int, int]:
    rng = np.random.default_rng(seed)
    checked = mismatches = 0
    for n in range(1, 6):
        paulis = [PauliString(n=n, x=x, z=z) for x in range(1 << n) for z in range(1 << n)]
        if n <= 3:
            pairs = [(p, q) for p in paulis for q in paulis]
        else:
            idx = rng.integers(len(paulis), size=(2000, 2))
            pairs = [(paulis[i], paulis[j]) for i, j in idx]
        for p, q in pairs:
            mp, mq = pauli_matrix(p), pauli_matrix(q)
            dense = np.allclose(mp @ mq, mq @ mp)
            checked += 1
            mismatches += dense != commutes(p, q)
    return checked, mismatches


def _expansion_oracle(code: StabilizerCode) -> int:
    """Mismatches between min_expansion and an exhaustive walk over all check subsets."""
    best: dict[tuple[int, int], int] = {}
    products: dict[tuple[int, int], PauliString] = {}
    for combo in iter_gray_code([1 << c for c in range(code.m)]):
        p = product_of_checks(code, combo)
        key = (p.vector, p.sign)
        count = combo.bit_count()
        if key not in best or count < best[key]:
            best[key] = count
            products[key] = p
    return sum(min_expansion(code, products[key]) != count for key, count in best.items())


def _oracles(seed: int) -> tuple[bool, Details]:
    checked, mismatches = _commutation_oracle(seed)
    expansion = {
        "toric_L2": _expansion_oracle(toric_code(2)),
        "repetition_8": _expansion_oracle(repetition_code(8)),
        "hgp_rep3": _expansion_oracle(hypergraph_product(repetition_tanner(3), repetition_tanner(3))),
    }
    isomorphic = {}
    for L in (2, 3):
        cyc = repetition_tanner(L, cyclic=True)
        moved = relabel(hypergraph_product(cyc, cyc), toric_relabeling(L))
        isomorphic[L] = sorted((c.x, c.z) for c in moved.checks) == sorted((c.x, c.z) for c in toric_code(L).checks)
    passed = mismatches == 0 and not any(expansion.values()) and all(isomorphic.values())
    return passed, {
        "commutation_pairs": checked,
        "commutation_mismatches": mismatches,
        "expansion_mismatches": expansion,
        "hgp_toric_isomorphic": {str(k): v for k, v in isomorphic.items()},
    }


CRITERIA: list[tuple[int, str, SuiteGroup, Callable[[int], tuple[bool, Details]]]] = [
    (1, "generator defining equation", "swt", _generator_residuals),
    (2, "gap stability under a uniform X field", "gap", _gap_stability),
    (3, "distance-exponential splitting", "splitting", _distance_splitting),
    (4, "symmetry-breaking and unsound-code controls", "controls", _negative_controls),
    (5, "check soundness certification", "soundness", _soundness),
    (6, "flow-equation fidelity", "flow", _flow_fidelity),
    (7, "operator-norm inequalities", "norms", _norm_inequalities),
    (8, "local indistinguishability on an annulus", "locality", _local_indistinguishability),
    (9, "oracle equivalences", "oracles", _oracles),
]


def run_suite(seed: int = 0, only: list[SuiteGroup] | None = None) -> SuiteSummary:
    """Run the selected criteria in order; an exception fails its criterion and is recorded."""
    groups = set(only) if only else set(SUITE_GROUPS)
    results = []
    for number, name, group, criterion in CRITERIA:
        if group not in groups:
            continue
        logger.info(f"criterion {number}: {name}")
        start = time.perf_counter()
        try:
            passed, details = criterion(seed)
        except CodestabError as exc:
            logger.error(f"criterion {number} raised {type(exc).__name__}: {exc}")
            passed, details = False, {"error": f"{type(exc).__name__}: {exc}"}
        seconds = time.perf_counter() - start
        logger.info(f"criterion {number} {'passed' if passed else 'FAILED'} in {seconds:.2f}s")
        results.append(
            CriterionResult(number=number, name=name, group=group, passed=passed, details=details, seconds=seconds)
        )
    return SuiteSummary(passed=all(r.passed for r in results), seed=seed, criteria=results)
