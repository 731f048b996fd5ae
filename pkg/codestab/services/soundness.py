"""Check soundness and check expansion of concrete codes, and the f̃ growth bounds."""

import logging
import math
from itertools import combinations
from typing import Literal

import numpy as np
from scipy.optimize import minimize_scalar

from codestab.core.config import settings
from codestab.core.exceptions import ContractViolationError, NotAStabilizerError
from codestab.models.bits import BitVector
from codestab.models.code import StabilizerCode
from codestab.models.pauli import PauliString
from codestab.schemas.code import CodeGraphMetrics
from codestab.schemas.soundness import (
    ExpansionProfile,
    ExpansionRow,
    GrowthConstants,
    ProfileRow,
    SoundnessFunction,
    SoundnessProfile,
    SoundnessSum,
)
from codestab.services import gf2
from codestab.services.stabilizer import check_matrix, product_of_checks, syndrome_bits
from codestab.utils.bits import bit_indices

logger = logging.getLogger("codestab.soundness")

ExpansionMethod = Literal["linear", "search"]


def _stabilizer_combo(code: StabilizerCode, stab: PauliString) -> int:
    """Some set of checks multiplying to ``stab``, sign included."""
    if stab.n != code.n:
        raise ContractViolationError(f"operator on {stab.n} qubits, code has {code.n}")
    if syndrome_bits(code, stab.x, stab.z):
        raise NotAStabilizerError(f"{stab} anticommutes with some check")
    solved = gf2.solve_affine(check_matrix(code), BitVector(length=2 * code.n, bits=stab.vector))
    if solved is None:
        raise NotAStabilizerError(f"{stab} is not a product of checks")
    combo = solved[0].bits
    if product_of_checks(code, combo).sign != stab.sign:
        raise NotAStabilizerError(f"{stab} equals minus a stabilizer")
    return combo


def _search_min_count(generators: list[int], target: int, cap: int) -> int | None:
    """Breadth-first search from the identity over products of generators."""
    if target == 0:
        return 0
    seen = {0}
    frontier = [0]
    for level in range(1, cap + 1):
        nxt = []
        for v in frontier:
            for g in generators:
                w = v ^ g
                if w == target:
                    return level
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        if not nxt:
            return None
        frontier = nxt
    return None


def min_expansion(
    code: StabilizerCode,
    stab: PauliString,
    cap: int | None = None,
    method: ExpansionMethod = "linear",
) -> int | None:
    """Fewest checks whose product is ``stab``; None when more than ``cap`` are needed."""
    _stabilizer_combo(code, stab)
    cap = code.m if cap is None else cap
    if method == "search":
        if code.m > 24:
            raise ContractViolationError("group search is limited to 24 checks")
        return _search_min_count(code.check_vectors(), stab.vector, cap)
    a = check_matrix(code)
    return gf2.min_support_solution(a, BitVector(length=a.cols, bits=stab.vector), cap)


def _group_bfs(generators: list[int], budget: int) -> dict[int, int]:
    """Minimal generator count of every group element, level by level, up to ``budget``."""
    dist = {0: 0}
    frontier = [0]
    level = 0
    while frontier and len(dist) < budget:
        level += 1
        nxt = []
        for v in frontier:
            for g in generators:
                w = v ^ g
                if w not in dist:
                    dist[w] = level
                    nxt.append(w)
                    if len(dist) >= budget:
                        return dist
        frontier = nxt
    return dist


def _profile_from_counts(
    dist: dict[int, int],
    weight,
    label,
    M_max: int,
    certified: bool,
) -> list[ProfileRow]:
    worst: dict[int, tuple[int, int]] = {}
    for v, count in dist.items():
        w = weight(v)
        if 1 <= w <= M_max and (w not in worst or count > worst[w][0]):
            worst[w] = (count, v)
    rows, running = [], 0
    for M in range(1, M_max + 1):
        raw = worst.get(M)
        if raw is not None:
            running = max(running, raw[0])
        rows.append(
            ProfileRow(
                M=M,
                f_emp=running,
                f_raw=raw[0] if raw else None,
                witness=label(raw[1]) if raw else None,
                certified=certified,
            )
        )
    return rows


def _enumerate_profile(
    code: StabilizerCode,
    generators: list[int],
    weight,
    label,
    M_max: int,
    budget: int,
    sector: str | None,
) -> SoundnessProfile:
    group_size = 1 << len(gf2.span_basis(generators))
    dist = _group_bfs(generators, budget)
    certified = len(dist) == group_size
    if not certified:
        logger.warning(
            f"{code.name or 'code'} sector {sector or 'all'}: explored {len(dist)} of "
            f"{group_size} stabilizers; profile is a lower bound"
        )
    return SoundnessProfile(
        code=code.name,
        sector=sector,
        M_max=M_max,
        rows=_profile_from_counts(dist, weight, label, M_max, certified),
        certified=certified,
        group_size=group_size,
        explored=len(dist),
    )


def soundness_profile(
    code: StabilizerCode, M_max: int, budget: int | None = None
) -> SoundnessProfile:
    """Worst minimal check count per stabilizer weight M ≤ M_max.

    CSS codes are enumerated sector by sector; the returned rows then hold
    2·max(f_X, f_Z), the bound the two sectors imply for mixed stabilizers,
    with the sector profiles attached. Classical codes only have a Z sector.
    """
    if M_max < 1:
        raise ContractViolationError("M_max must be at least 1")
    budget = budget if budget is not None else settings.group_budget
    n = code.n

    if code.kind == "general":
        weight = gf2.pauli_weight_fn(n)

        def label(v: int) -> str:
            solved = gf2.solve_affine(check_matrix(code), BitVector(length=2 * n, bits=v))
            sign = product_of_checks(code, solved[0].bits).sign if solved else 1
            return PauliString.from_vector(n, v, sign).label()

        return _enumerate_profile(code, code.check_vectors(), weight, label, M_max, budget, None)

    sectors: dict[str, SoundnessProfile] = {}
    for sector in ("X", "Z"):
        idx = code.sector_indices(sector)
        if not idx:
            continue
        make = PauliString.x_on if sector == "X" else PauliString.z_on

        def label(v: int, make=make) -> str:
            return make(n, bit_indices(v)).label()

        generators = [code.checks[i].support_mask for i in idx]
        sectors[sector] = _enumerate_profile(
            code, generators, int.bit_count, label, M_max, budget, sector
        )
    if len(sectors) == 1:
        only = next(iter(sectors.values()))
        return only.model_copy(update={"sectors": sectors})

    x_rows, z_rows = sectors["X"].rows, sectors["Z"].rows
    rows = []
    for rx, rz in zip(x_rows, z_rows):
        worst = rx if rx.f_emp >= rz.f_emp else rz
        raws = [r for r in (rx.f_raw, rz.f_raw) if r is not None]
        rows.append(
            ProfileRow(
                M=rx.M,
                f_emp=2 * max(rx.f_emp, rz.f_emp),
                f_raw=2 * max(raws) if raws else None,
                witness=worst.witness,
                certified=rx.certified and rz.certified,
            )
        )
    return SoundnessProfile(
        code=code.name,
        sector=None,
        M_max=M_max,
        rows=rows,
        certified=all(p.certified for p in sectors.values()),
        group_size=sectors["X"].group_size * sectors["Z"].group_size,
        # size of the covered product group; the sectors were enumerated separately
        explored=sectors["X"].explored * sectors["Z"].explored,
        sectors=sectors,
    )


def expansion_profile(
    code: StabilizerCode, size_max: int, samples: int = 1000, seed: int = 0
) -> ExpansionProfile:
    """Smallest (product weight)/(subset size) over check subsets of each size.

    Sizes with at most ``settings.expansion_exhaustive_limit`` subsets are
    enumerated; larger ones draw ``samples`` subsets from a generator seeded
    by (seed, size).
    """
    if size_max < 1:
        raise ContractViolationError("size_max must be at least 1")
    vectors = code.check_vectors()
    weight = gf2.pauli_weight_fn(code.n)
    m = len(vectors)
    rows = []
    for size in range(1, min(size_max, m) + 1):
        total = math.comb(m, size)
        exhaustive = total <= settings.expansion_exhaustive_limit
        if exhaustive:
            subsets = combinations(range(m), size)
        else:
            rng = np.random.default_rng([seed, size])
            subsets = (
                tuple(sorted(rng.choice(m, size=size, replace=False).tolist()))
                for _ in range(samples)
            )
        best: tuple[int, tuple[int, ...]] | None = None
        count = 0
        for subset in subsets:
            count += 1
            value = 0
            for c in subset:
                value ^= vectors[c]
            w = weight(value)
            if best is None or w < best[0]:
                best = (w, subset)
        assert best is not None
        rows.append(
            ExpansionRow(
                size=size,
                min_ratio=best[0] / size,
                min_weight=best[0],
                witness=list(best[1]),
                subsets=count,
                certified=exhaustive,
            )
        )
        if not exhaustive:
            logger.info(f"size {size}: sampled {samples} of {total} check subsets")
    return ExpansionProfile(
        code=code.name,
        size_max=size_max,
        eta_emp=min((r.min_ratio for r in rows), default=0.0),
        rows=rows,
        certified=all(r.certified for r in rows),
        seed=seed,
    )


def tilde_f_sequence(f: SoundnessFunction, delta: float, r_max: int) -> list[float]:
    """f̃(0..r_max) with f̃(0) = 0, f̃(1) = f⁻¹(1) and
    f̃(r+1) = f⁻¹(f(f̃(r)) + min(d_c, f̃(r))/Δ)."""
    if delta < 1:
        raise ContractViolationError("Δ must be at least 1")
    values = [0.0]
    if r_max >= 1:
        values.append(f.inverse(1.0))
    while len(values) <= r_max:
        prev = values[-1]
        values.append(f.inverse(f(prev) + min(f.d_c, prev) / delta))
    return values


def tilde_f_eval(f: SoundnessFunction, delta: float, r: int) -> float:
    if r < 0:
        raise ContractViolationError("r must be non-negative")
    return tilde_f_sequence(f, delta, r)[r]


def growth_constants(
    f: SoundnessFunction,
    delta: float,
    dimension: int | None = None,
    c_dim: float = 1.0,
) -> GrowthConstants:
    """Constants (α, c_f′, c_f″) making Σ γ(r) e^{−δκ f̃(r)} ≤ c_f″ e^{c_f′ δκ^{−α}}.

    Without ``dimension`` the Δ^r envelope is assumed and β > 0 is required;
    with it, γ(r) ≤ c_dim r^{D−1} and β may be negative. β above 0.9 is
    replaced by 0.9, which still bounds f from above for M ≥ 1.
    """
    beta = min(f.beta, 0.9)
    if dimension is None and beta <= 0:
        raise ContractViolationError(
            f"β = {f.beta} gives no convergent bound on an exponentially growing graph"
        )
    if delta < 2 and dimension is None:
        raise ContractViolationError("the exponential envelope needs Δ >= 2")
    p = 2.0 - beta
    c_g = (f.c_f ** (-1.0 / p) * (1.0 - beta) / (delta * p)) ** (p / (1.0 - beta))
    c_tilde_f = (c_g / f.c_f) ** (1.0 / p)

    if dimension is None:
        log_delta = math.log(delta)
        alpha = (1.0 - beta) / beta
        c_f_prime = 2 * beta * log_delta * ((1.0 - beta) * log_delta / c_tilde_f) ** alpha
        c_tilde_f_prime = 1.0 - delta ** (1.0 - 2.0 ** (beta / (1.0 - beta)))
        c_f_dblprime = 1.0 / c_tilde_f_prime + 2.0 / (math.e * beta * log_delta)
        return GrowthConstants(
            geometry="expander",
            beta_used=beta,
            alpha=alpha,
            c_g=c_g,
            c_tilde_f=c_tilde_f,
            c_tilde_f_prime=c_tilde_f_prime,
            c_f_prime=c_f_prime,
            c_f_dblprime=c_f_dblprime,
        )

    if dimension < 1:
        raise ContractViolationError("dimension must be at least 1")
    alpha = 1.0 - beta
    c_f_prime = ((1.0 - beta) * (dimension - 1) / c_tilde_f) ** alpha
    # prefactor c_D (2r + 2) r^{D−1} e^{−r}, maximized over r ≥ 0
    res = minimize_scalar(
        lambda r: -c_dim * (2 * r + 2) * r ** (dimension - 1) * math.exp(-r),
        bounds=(0.0, 4.0 * dimension + 10.0),
        method="bounded",
    )
    c_f_dblprime = max(-float(res.fun), 2.0 * c_dim) * 1.01
    return GrowthConstants(
        geometry="finite_dimension",
        beta_used=beta,
        alpha=alpha,
        c_g=c_g,
        c_tilde_f=c_tilde_f,
        c_tilde_f_prime=None,
        c_f_prime=c_f_prime,
        c_f_dblprime=c_f_dblprime,
    )


def soundness_sum(
    f: SoundnessFunction,
    delta_kappa: float,
    growth: CodeGraphMetrics | int,
    dimension: int | None = None,
    r_limit: int = 100_000,
) -> SoundnessSum:
    """Evaluate Σ_{r: f̃(r) < d_c} γ(r) e^{−δκ f̃(r)} against its growth bound.

    ``growth`` is either measured code-graph metrics (γ(r) is the maximum
    over qubits) or a degree Δ for the Δ^r envelope.
    """
    if delta_kappa <= 0:
        raise ContractViolationError("δκ must be positive")
    if isinstance(growth, CodeGraphMetrics):
        delta = max(growth.max_degree, 2)
        radius = max(len(p) for p in growth.growth) - 1

        def gamma(r: int) -> float:
            return float(growth.max_gamma(r)) if r <= radius else 0.0
    else:
        delta = int(growth)
        radius = None

        def gamma(r: int) -> float:
            return float(delta) ** r

    constants = growth_constants(f, delta, dimension)

    terms: list[float] = []
    total = 0.0
    tf = 0.0
    r = 0
    while r <= r_limit:
        if r == 1:
            tf = f.inverse(1.0)
        elif r > 1:
            tf = f.inverse(f(tf) + min(f.d_c, tf) / delta)
        if tf >= f.d_c or (radius is not None and r > radius):
            break
        log_term = (
            -delta_kappa * tf + (math.log(gamma(r)) if gamma(r) > 0 else -math.inf)
        )
        term = math.exp(log_term) if log_term > -745 else 0.0
        terms.append(term)
        total += term
        if radius is None and r > 2 and term < 1e-16 * total and term < terms[-2]:
            break
        r += 1
    else:
        raise ContractViolationError(f"sum did not settle within r <= {r_limit}")

    exponent = constants.c_f_prime * delta_kappa ** (-constants.alpha)
    bound = constants.c_f_dblprime * math.exp(exponent) if exponent < 700 else math.inf
    return SoundnessSum(
        sum=total,
        bound=bound,
        holds=total <= bound,
        delta_kappa=delta_kappa,
        terms=terms,
        constants=constants,
    )
