"""Offline benchmarks: optimal static level (realized and in-expectation
forms), the dynamic offline optimum, and an exhaustive enumerator used to
cross-validate the dynamic program.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import backend
from .model import ArrivalSequence, CostParams, HostingLadder


@dataclass(frozen=True)
class StaticBenchmark:
    """Best fixed hosting level and its cost."""

    level: int
    cost: float


def optimal_static_realized(arrivals: ArrivalSequence, ladder: HostingLadder,
                            params: CostParams) -> StaticBenchmark:
    """Cheapest static level in hindsight: min_i c*a_i*T + g_i*R_T + M*a_i."""
    T = arrivals.T
    R = arrivals.total
    costs = params.c * ladder.alpha_array * T + ladder.g_array * R \
        + params.M * ladder.alpha_array
    i = int(np.argmin(costs))
    return StaticBenchmark(i, float(costs[i]))


def optimal_static_stochastic(mu: float, T: int, ladder: HostingLadder,
                              params: CostParams) -> StaticBenchmark:
    """Cheapest static level in expectation: min_i (c*a_i + g_i*mu)*T + M*a_i."""
    if mu <= 0.0:
        raise ValueError("mean arrival rate mu must be positive")
    mu_i = params.c * ladder.alpha_array + ladder.g_array * mu
    costs = mu_i * T + params.M * ladder.alpha_array
    i = int(np.argmin(costs))
    return StaticBenchmark(i, float(costs[i]))


def offline_optimal_dp(arrivals: ArrivalSequence, ladder: HostingLadder,
                       params: CostParams) -> tuple[np.ndarray, float]:
    """Exact minimum over all K^T schedules via dynamic programming.

    Returns one optimal schedule (lower levels preferred on ties) and its
    cost. O(T*K^2) time.
    """
    schedule, cost = backend.offline_dp(
        np.ascontiguousarray(arrivals.r), ladder, params)
    return schedule, cost


class EnumerationBudgetExceeded(RuntimeError):
    pass


def brute_force_offline(arrivals: ArrivalSequence, ladder: HostingLadder,
                        params: CostParams, budget: int = 10**6) -> float:
    """Exhaustive minimum over all schedules; the test oracle for the DP.

    Accumulates each schedule's cost slot by slot in the same order as the
    DP, so the two minima agree bit for bit. Raises when K^T exceeds the
    enumeration budget.
    """
    T = arrivals.T
    K = ladder.K
    if T == 0:
        return 0.0
    if K ** T > budget:
        raise EnumerationBudgetExceeded(f"K^T = {K}**{T} exceeds budget {budget}")
    schedules = np.array(list(product(range(K), repeat=T)), dtype=np.int64)
    alphas = ladder.alpha_array
    gs = ladder.g_array
    acc = np.zeros(schedules.shape[0])
    prev_alpha = np.zeros(schedules.shape[0])
    for t in range(T):
        lv = schedules[:, t]
        a = alphas[lv]
        base = params.c * a + gs[lv] * float(arrivals.r[t])
        d = a - prev_alpha
        slot = np.where(d > 0.0, base + params.M * d, base)
        acc = acc + slot
        prev_alpha = a
    return float(np.min(acc))
