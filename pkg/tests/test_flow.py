import math

import pytest

from codestab.core.exceptions import ContractViolationError, InfeasibleError
from codestab.schemas.flow import FlowConstants
from codestab.services.flow import (
    c3_estimate,
    c_iter_const,
    delta_kappas,
    epsilon_star,
    epsilon_zero_search,
    flow_step,
    flow_trajectory,
    initial_state,
    kappa_m,
    stability_certificate,
    stopping_order,
)


def test_kappa_schedule() -> None:
    """κ₁ at m = 1, decreasing towards κ₁/2."""
    values = [kappa_m(1.0, m) for m in range(1, 50)]
    assert values[0] == 1.0
    assert all(a > b > 0.5 for a, b in zip(values, values[1:]))
    with pytest.raises(ContractViolationError):
        kappa_m(1.0, 0)


@pytest.mark.parametrize("m", [1, 2, 5, 50, 1000])
def test_decay_decrements_above_floors(m: int) -> None:
    """δκ_m and δκ̃_m respect their lower bounds."""
    dk, dk_tilde = delta_kappas(2.0, m)
    assert dk >= 2.0 / (6 * m * m) * (1 - 1e-9)
    assert dk_tilde >= 2.0 / (5 * (1 + math.log(m)) ** 2) * (1 - 1e-9)


def test_c_iter_defaults(flow_consts: FlowConstants) -> None:
    """With the default constants the initial branch 27/(κ₂δκ₁) dominates."""
    result = c_iter_const(flow_consts)
    kappa2 = kappa_m(1.0, 2)
    assert result.initial_branch == pytest.approx(27.0 / (kappa2 * (1.0 - kappa2)))
    assert result.c_iter == max(result.initial_branch, result.sum_branch)
    assert result.c_iter == pytest.approx(165.8, rel=1e-2)


def test_second_order_unrolled(flow_consts: FlowConstants) -> None:
    """From (ε, ε, 0, 0): ṽ₂ = v₂ = 27ε²/(κ₂δκ₁) and 𝕕̃₂ = 0."""
    eps = 1e-3
    state = flow_step(initial_state(flow_consts, eps), flow_consts)
    kappa2 = kappa_m(1.0, 2)
    expected = 27.0 * eps**2 / (kappa2 * (1.0 - kappa2))
    assert state.m == 2
    assert state.v_tilde == pytest.approx(expected, rel=1e-12)
    assert state.v == pytest.approx(expected, rel=1e-12)
    assert state.d_tilde == 0.0
    assert state.d == pytest.approx(2.0 * math.exp(0.1 / (1.0 - kappa2)) * eps)


def test_negative_epsilon(flow_consts: FlowConstants) -> None:
    """ε must be non-negative."""
    with pytest.raises(ContractViolationError):
        initial_state(flow_consts, -0.1)


def test_epsilon_zero_and_trajectory(flow_consts: FlowConstants) -> None:
    """At ε₀ the trajectory stays inside its envelope and the SWT condition holds."""
    c = c_iter_const(flow_consts).c_iter
    eps0 = epsilon_zero_search(flow_consts, m_check=500, c_iter=c)
    assert 1e-12 < eps0.epsilon0 <= eps0.cap
    assert eps0.cap <= 1.0 / (4.0 * c)
    trajectory = flow_trajectory(flow_consts, eps0.epsilon0, m_max=100, c_iter=c)
    assert trajectory.all_within_bounds
    assert trajectory.swt_condition_holds
    assert trajectory.first_violation is None


def test_large_epsilon_leaves_envelope(flow_consts: FlowConstants) -> None:
    """Far above ε₀ the SWT condition fails at the first order."""
    trajectory = flow_trajectory(flow_consts, 0.5, m_max=20)
    assert trajectory.first_violation == 1
    assert not trajectory.swt_condition_holds


def test_epsilon_star() -> None:
    """ε* = c₂ n ε e^{−κ₁d_s/2} with c₂ = 24 at κ₁ = 1."""
    assert epsilon_star(1.0, 100, 10, 0.001) == pytest.approx(24 * 100 * 0.001 * math.exp(-5))


def test_stopping_order_infeasible() -> None:
    """c_iter ε ≥ 1 has no stopping order."""
    with pytest.raises(InfeasibleError):
        stopping_order(FlowConstants(), 200.0, 0.01, 5)


def test_certificate_at_zero(flow_consts: FlowConstants) -> None:
    """H₀ alone: spectrum {0} ∪ [1, ∞), gap 1, no splitting."""
    eps0 = epsilon_zero_search(flow_consts, m_check=200)
    cert = stability_certificate(flow_consts, 50, 10, 0.0, 1.0, eps0)
    assert cert.valid
    assert cert.gap_lower_bound == 1.0
    assert cert.splitting_bound == 0.0
    assert cert.spectrum_intervals[0] == (0.0, 0.0)


def test_certificate_reports_reasons(flow_consts: FlowConstants) -> None:
    """ε above ε₀ gives an invalid certificate with the reason listed."""
    eps0 = epsilon_zero_search(flow_consts, m_check=200)
    cert = stability_certificate(flow_consts, 50, 10, 10 * eps0.epsilon0, 1.0, eps0)
    assert not cert.valid
    assert any("exceeds epsilon0" in reason for reason in cert.reasons)


def test_c3() -> None:
    """No threshold when ε* grows with n; ε = 0 needs only one qubit."""
    consts = FlowConstants(kappa1=1.0)
    assert c3_estimate(consts, 1.0, 1e-3) is None
    assert c3_estimate(consts, 10.0, 0.0) == 1
    n = c3_estimate(consts, 10.0, 1e-3)
    assert n is not None
    assert 3 * epsilon_star(1.0, n, math.ceil(10.0 * math.log(n)), 1e-3) <= 1 / 6 * (1 + 1e-9)
