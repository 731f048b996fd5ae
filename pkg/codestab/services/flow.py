"""Flow equations for the local norms of the iterated perturbation and the
stability certificate built on them.

The recursions are evaluated as equalities, which gives the worst-case
envelope of the norms (v_m, ṽ_m, 𝕕_m, 𝕕̃_m).
"""

import logging
import math

import numpy as np

from codestab.core.config import settings
from codestab.core.exceptions import ContractViolationError, InfeasibleError, NumericFailureError
from codestab.schemas.flow import (
    CIterResult,
    EpsilonZeroResult,
    FlowConstants,
    FlowState,
    FlowTrajectory,
    StabilityCertificate,
    TrajectoryRow,
)

logger = logging.getLogger("codestab.flow")

_LOG4 = math.log(4.0)
_EXP_LIMIT = 700.0
_SLACK = 1e-9


def kappa_m(kappa1: float, m: int) -> float:
    """κ_m = (κ₁/2)(1 + 1/(1 + ln m))."""
    if m < 1:
        raise ContractViolationError(f"order must be >= 1, got {m}")
    return 0.5 * kappa1 * (1.0 + 1.0 / (1.0 + math.log(m)))


def kappa_array(kappa1: float, m_max: int) -> np.ndarray:
    """κ_m for m = 0..m_max; entry 0 is unused and set to nan."""
    ms = np.arange(1, m_max + 1, dtype=float)
    out = np.empty(m_max + 1)
    out[0] = np.nan
    out[1:] = 0.5 * kappa1 * (1.0 + 1.0 / (1.0 + np.log(ms)))
    return out


def delta_kappas(kappa1: float, m: int) -> tuple[float, float]:
    """(δκ_m, δκ̃_m) = (κ_m − κ_{m+1}, κ_m − κ_{2m}).

    Both are checked against their lower bounds κ₁/(6m²) and κ₁/(5(1 + ln m)²).
    """
    k = kappa_m(kappa1, m)
    dk = k - kappa_m(kappa1, m + 1)
    dk_tilde = k - kappa_m(kappa1, 2 * m)
    floor = kappa1 / (6.0 * m * m)
    floor_tilde = kappa1 / (5.0 * (1.0 + math.log(m)) ** 2)
    if dk < floor * (1.0 - _SLACK) or dk_tilde < floor_tilde * (1.0 - _SLACK):
        raise NumericFailureError(f"decay-rate decrements at m={m} fall below their lower bounds")
    return dk, dk_tilde


def _dk(kappa1: float, m: int) -> float:
    return kappa_m(kappa1, m) - kappa_m(kappa1, m + 1)


def _dk_tilde(kappa1: float, m: int) -> float:
    return kappa_m(kappa1, m) - kappa_m(kappa1, 2 * m)


def _growth_factor(consts: FlowConstants, j: int) -> float:
    """e^{c_f′ δκ̃_j^{−α}}."""
    exponent = consts.c_f_prime * _dk_tilde(consts.kappa1, j) ** (-consts.alpha)
    if exponent > _EXP_LIMIT:
        raise NumericFailureError(f"e^{{c_f' dk~_{j}^-alpha}} overflows (exponent {exponent:.1f})")
    return math.exp(exponent)


def initial_state(consts: FlowConstants, epsilon: float) -> FlowState:
    if epsilon < 0:
        raise ContractViolationError(f"epsilon must be >= 0, got {epsilon}")
    return FlowState(
        m=1,
        kappa_m=consts.kappa1,
        v=epsilon,
        v_tilde=epsilon,
        d=0.0,
        d_tilde=0.0,
        v_history=[epsilon],
    )


def flow_step(state: FlowState, consts: FlowConstants) -> FlowState:
    """One order of the flow equations, run with equality."""
    m = state.m
    kappa1 = consts.kappa1
    dk = _dk(kappa1, m)
    kappa_next = kappa_m(kappa1, m + 1)
    v, vt, d, dt = state.v, state.v_tilde, state.d, state.d_tilde

    common = 9.0 / (kappa_next * dk) * vt * (3.0 * v + 4.0 / dk * vt * (d + dt))
    v_next = (d * vt + dt * vt) / dk + common
    vt_next = d * vt + dt * vt / dk + common

    d_next = d
    if m % 2 == 1:
        j = (m + 1) // 2
        d_next += consts.c_tilde_f_dblprime * _growth_factor(consts, j) * state.v_history[j - 1]

    history = [*state.v_history, v_next]
    # 𝕕̃_{m+1} = 2 Σ_{m'=⌊(m+1)/2⌋+1}^{m} v_{m'}
    lo = (m + 1) // 2 + 1
    dt_next = 2.0 * sum(history[lo - 1 : m])

    return FlowState(
        m=m + 1,
        kappa_m=kappa_next,
        v=v_next,
        v_tilde=vt_next,
        d=d_next,
        d_tilde=dt_next,
        v_history=history,
    )


def _safe_power(base: float, exponent: int) -> float:
    try:
        return base**exponent
    except OverflowError:
        return math.inf


def trajectory_bounds(
    kappa1: float, m: int, epsilon: float, c_iter: float
) -> tuple[float | None, float | None, float | None, float | None]:
    """Upper bounds on (v_m, ṽ_m, 𝕕_m, 𝕕̃_m) valid for m >= 2 and ε <= ε₀."""
    if m < 2:
        return None, None, None, None
    ce = c_iter * epsilon
    v_bound = epsilon / _dk(kappa1, m - 1) * _safe_power(ce, m - 1)
    vt_bound = epsilon * _safe_power(ce, m - 1)
    d_bound = 2.0 / 3.0 * ce
    dt_bound = 3.0 * epsilon / _dk(kappa1, m - 2) * _safe_power(ce, m // 2) if m >= 3 else None
    return v_bound, vt_bound, d_bound, dt_bound


def _within(value: float, bound: float | None) -> bool:
    return bound is None or value <= bound * (1.0 + _SLACK) + 1e-300


def flow_trajectory(
    consts: FlowConstants, epsilon: float, m_max: int = 200, c_iter: float | None = None
) -> FlowTrajectory:
    """Run the flow equations to order ``m_max`` and compare against the iterate bounds."""
    if m_max < 1:
        raise ContractViolationError(f"m_max must be >= 1, got {m_max}")
    c = c_iter if c_iter is not None else c_iter_const(consts).c_iter
    kappa1 = consts.kappa1
    state = initial_state(consts, epsilon)
    rows: list[TrajectoryRow] = []
    first_violation = None
    while True:
        bounds = trajectory_bounds(kappa1, state.m, epsilon, c)
        ok = all(
            _within(value, bound)
            for value, bound in zip((state.v, state.v_tilde, state.d, state.d_tilde), bounds)
        )
        dk = _dk(kappa1, state.m)
        swt_ok = state.v_tilde <= dk / 3.0 * (1.0 + _SLACK)
        if first_violation is None and not (ok and swt_ok):
            first_violation = state.m
        rows.append(
            TrajectoryRow(
                m=state.m,
                kappa_m=state.kappa_m,
                delta_kappa_m=dk,
                v=state.v,
                v_tilde=state.v_tilde,
                d=state.d,
                d_tilde=state.d_tilde,
                v_bound=bounds[0],
                v_tilde_bound=bounds[1],
                d_bound=bounds[2],
                d_tilde_bound=bounds[3],
                within_bounds=ok,
                swt_condition=swt_ok,
            )
        )
        if state.m >= m_max:
            break
        if not math.isfinite(state.v):
            logger.warning(f"flow trajectory overflowed at m={state.m}")
            break
        state = flow_step(state, consts)

    if first_violation is not None:
        logger.warning(f"flow trajectory at epsilon={epsilon:g} leaves its envelope at m={first_violation}")
    return FlowTrajectory(
        epsilon=epsilon,
        c_iter=c,
        rows=rows,
        all_within_bounds=all(r.within_bounds for r in rows),
        swt_condition_holds=all(r.swt_condition for r in rows),
        first_violation=first_violation,
    )


def c_iter_const(consts: FlowConstants, rtol: float | None = None, m_limit: int = 10**6) -> CIterResult:
    """c_iter, with the infinite sum cut once a decreasing term drops below ``rtol`` of the total."""
    rtol = rtol if rtol is not None else settings.flow_sum_rtol
    kappa1 = consts.kappa1
    dk1 = _dk(kappa1, 1)
    kappa2 = kappa_m(kappa1, 2)

    total = _growth_factor(consts, 1)
    previous = math.inf
    m = 2
    while True:
        log_term = (
            consts.c_f_prime * _dk_tilde(kappa1, m) ** (-consts.alpha)
            - (m - 1) * _LOG4
            - math.log(_dk(kappa1, m - 1))
        )
        if log_term > _EXP_LIMIT:
            raise NumericFailureError(f"c_iter sum term at m={m} overflows")
        term = math.exp(log_term)
        total += term
        if term < previous and term <= rtol * total:
            break
        if m >= m_limit:
            raise NumericFailureError(f"c_iter sum not converged after {m_limit} terms")
        previous = term
        m += 1

    sum_branch = 1.5 * consts.c_tilde_f_dblprime * total
    initial_branch = 27.0 / (kappa2 * dk1) * max(1.0, dk1)
    logger.debug(f"c_iter sum truncated at m={m}: {sum_branch:.6g} vs {initial_branch:.6g}")
    return CIterResult(
        c_iter=max(sum_branch, initial_branch),
        sum_branch=sum_branch,
        initial_branch=initial_branch,
        truncation_index=m,
    )


def citerm_lhs(kappas: np.ndarray, c_iter: float, epsilon: float, ms: np.ndarray) -> np.ndarray:
    """Left side of the per-order condition that fixes ε₀, for each m in ``ms`` (all >= 2).

    ``kappas`` comes from :func:`kappa_array` and must reach index max(ms) + 1.
    """
    dk = kappas[1:-1] - kappas[2:]  # dk[m - 1] = δκ_m
    dk_m = dk[ms - 1]
    dk_prev = dk[ms - 2]
    ce = c_iter * epsilon
    first = 3.0 / (dk_m * dk_prev) * np.power(ce, ms // 2)
    inner = 3.0 / dk_prev + 4.0 * epsilon / dk_m * (2.0 / 3.0 * c_iter + 3.0 / dk_prev)
    second = 9.0 / (kappas[ms + 1] * dk_m) * np.power(ce, ms - 1) * inner
    return first + second


def epsilon_zero_search(
    consts: FlowConstants,
    m_check: int | None = None,
    c_iter: float | None = None,
    iterations: int = 200,
) -> EpsilonZeroResult:
    """Largest ε₀ below min(1/(4c_iter), δκ₁/3) satisfying the per-order condition up to ``m_check``.

    Beyond ``m_check`` the condition is only inferred from the left side
    decreasing between the last two checked orders.
    """
    m_check = m_check if m_check is not None else settings.flow_m_check
    if m_check < 2:
        raise ContractViolationError(f"m_check must be >= 2, got {m_check}")
    c = c_iter if c_iter is not None else c_iter_const(consts).c_iter
    kappa1 = consts.kappa1
    kappas = kappa_array(kappa1, m_check + 3)
    dk1 = kappas[1] - kappas[2]
    dk2 = kappas[2] - kappas[3]
    cap = min(1.0 / (4.0 * c), dk1 / 3.0)
    rhs = c / 3.0 * min(1.0, 1.0 / dk2)
    ms = np.arange(2, m_check + 1)
    tail = np.array([m_check, m_check + 1])

    def feasible(eps: float) -> tuple[bool, bool]:
        lhs = citerm_lhs(kappas, c, eps, ms)
        tail_lhs = citerm_lhs(kappas, c, eps, tail)
        decreasing = bool(tail_lhs[1] <= tail_lhs[0])
        return bool(np.all(lhs <= rhs)) and decreasing, decreasing

    floor = 1e-12
    if not feasible(floor)[0]:
        raise InfeasibleError(f"no epsilon0 above {floor:g} satisfies the iteration condition")
    lo, hi = floor, cap
    if feasible(cap * (1.0 - 1e-12))[0]:
        lo = cap * (1.0 - 1e-12)
    else:
        # bisect in log space; the left side is increasing in epsilon
        for _ in range(iterations):
            mid = math.sqrt(lo * hi)
            if feasible(mid)[0]:
                lo = mid
            else:
                hi = mid
            if hi / lo - 1.0 < 1e-12:
                break
    _, decreasing = feasible(lo)
    logger.info(f"epsilon0={lo:.6g} (cap {cap:.6g}, c_iter={c:.6g}, checked to m={m_check})")
    return EpsilonZeroResult(
        epsilon0=lo, cap=cap, c_iter=c, m_check=m_check, tail_decreasing=decreasing
    )


def stopping_order(
    consts: FlowConstants, c_iter: float, epsilon: float, d_s: int, m_limit: int = 10**7
) -> int:
    """Smallest m* with (6m*²/κ₁)(c_iter ε)^{m*−1} <= e^{−κ₁ d_s/2}."""
    ce = c_iter * epsilon
    if ce >= 1.0:
        raise InfeasibleError(f"c_iter*epsilon = {ce:g} >= 1: no stopping order exists")
    if epsilon < 0:
        raise ContractViolationError(f"epsilon must be >= 0, got {epsilon}")
    kappa1 = consts.kappa1
    target = -kappa1 * d_s / 2.0
    if ce == 0.0:
        return 1 if math.log(6.0 / kappa1) <= target else 2
    log_ce = math.log(ce)
    for m in range(1, m_limit + 1):
        if math.log(6.0 * m * m / kappa1) + (m - 1) * log_ce <= target:
            return m
    raise InfeasibleError(f"no stopping order below {m_limit}")


def c2_const(kappa1: float) -> float:
    return 4.0 * max(1.0, 6.0 / kappa1)


def epsilon_star(kappa1: float, n: int, d_s: int, epsilon: float) -> float:
    """ε* = c₂ n ε e^{−κ₁ d_s/2}."""
    return c2_const(kappa1) * n * epsilon * math.exp(-kappa1 * d_s / 2.0)


def c1_closed_form(consts: FlowConstants, c_iter: float, m_max: int = 10**4) -> float:
    """Relative-boundedness constant from the growth constants and c_iter.

    Uses 𝕕_{m*} <= (2/3)c_iter ε and 𝕕̃_{m*} <= 3ε/δκ_{m*−2} (c_iter ε)^{⌊m*/2⌋}
    with c_iter ε <= 1/4, maximized over m* >= 3.
    """
    kappa1, delta = consts.kappa1, consts.delta
    kappas = kappa_array(kappa1, m_max + 2)
    ms = np.arange(3, m_max + 1)
    dk = kappas[ms - 2] - kappas[ms - 1]
    window = float(np.max(3.0 / dk * np.power(0.25, ms // 2)))
    exponent = consts.c_f_prime * (kappa1 / 4.0) ** (-consts.alpha)
    if exponent > _EXP_LIMIT:
        raise NumericFailureError("c1 growth factor overflows")
    prefactor = 2.0 * (1.0 + delta / kappa1) * delta * math.exp(exponent)
    return prefactor * (2.0 / 3.0 * c_iter + consts.c_f_dblprime * window / 2.0)


def stability_certificate(
    consts: FlowConstants,
    n: int,
    d_s: int,
    epsilon: float,
    c1: float,
    epsilon0: EpsilonZeroResult | None = None,
    c1_source: str = "input",
) -> StabilityCertificate:
    """Spectral intervals, gap and splitting bounds for H₀ + V with ||V||_κ₁ <= ε.

    Precondition failures do not raise; they mark the certificate invalid and
    list the reasons.
    """
    if n < 1 or d_s < 1:
        raise ContractViolationError(f"need n >= 1 and d_s >= 1, got n={n}, d_s={d_s}")
    if epsilon < 0 or c1 < 0:
        raise ContractViolationError("epsilon and c1 must be non-negative")
    eps0 = epsilon0 if epsilon0 is not None else epsilon_zero_search(consts)
    c = eps0.c_iter
    kappa1 = consts.kappa1
    reasons = []

    eps_star = epsilon_star(kappa1, n, d_s, epsilon)
    try:
        m_star: int | None = stopping_order(consts, c, epsilon, d_s)
    except InfeasibleError as exc:
        m_star = None
        reasons.append(str(exc))

    if epsilon > eps0.epsilon0:
        reasons.append(f"epsilon={epsilon:g} exceeds epsilon0={eps0.epsilon0:g}")
    if c1 > 0 and epsilon > 1.0 / (3.0 * c1):
        reasons.append(f"epsilon={epsilon:g} exceeds 1/(3 c1)={1.0 / (3.0 * c1):g}")
    if 3.0 * eps_star > 1.0 / 6.0:
        reasons.append(f"3 epsilon*={3.0 * eps_star:g} exceeds 1/6")

    lower = (-eps_star, eps_star)
    upper = (1.0 - c1 * epsilon - eps_star, math.inf)
    gap = 1.0 - c1 * epsilon - 2.0 * eps_star
    valid = not reasons
    if valid and gap < 0.5:
        raise NumericFailureError(f"certified gap {gap:g} below 1/2")
    if not eps0.tail_decreasing:
        logger.warning("iteration condition is not decreasing at m_check; epsilon0 may be optimistic")

    return StabilityCertificate(
        epsilon=epsilon,
        epsilon0=eps0.epsilon0,
        n=n,
        d_s=d_s,
        c_iter=c,
        m_star=m_star,
        epsilon_star=eps_star,
        c1=c1,
        c2=c2_const(kappa1),
        spectrum_intervals=(lower, upper),
        gap_lower_bound=gap,
        splitting_bound=2.0 * eps_star,
        projector_bound=4.0 * math.sqrt(eps_star),
        valid=valid,
        reasons=reasons,
        tail_heuristic=True,
        provenance={
            "c_iter": "maximum of the truncated growth sum and 27/(kappa2 dk1) max(1, dk1)",
            "epsilon0": f"bisection of the per-order condition up to m={eps0.m_check}",
            "c1": c1_source,
            "c2": "4 max(1, 6/kappa1)",
            "epsilon_star": "c2 n epsilon exp(-kappa1 d_s/2)",
            "m_star": "smallest m with (6 m^2/kappa1)(c_iter epsilon)^(m-1) <= exp(-kappa1 d_s/2)",
        },
    )


def c3_estimate(consts: FlowConstants, c_d: float, epsilon: float) -> int | None:
    """Smallest n with 3ε* <= 1/6 when d_s = c_d ln n; None when ε* does not decay in n."""
    kappa1 = consts.kappa1
    decay = kappa1 * c_d / 2.0 - 1.0
    if decay <= 0:
        return None
    if epsilon == 0:
        return 1
    # ε* = c₂ ε n^{1 − κ₁c_d/2}
    n = math.ceil((18.0 * c2_const(kappa1) * epsilon) ** (1.0 / decay))
    return max(n, 1)
