"""Online hosting policies: perturbed-leader (with and without a wait phase),
retro-renting, and constant-level baselines.

All policies share the same per-slot contract: ``decide(t)`` returns the level
index to host in slot t using only information from slots 1..t-1 plus the
policy's own randomness; ``observe(t, r_t)`` then feeds the slot's arrivals
back into the state.

The arithmetic here is the reference implementation; the compiled kernels in
``_kernels.pyx`` mirror it operation for operation so that both backends
produce bit-identical decisions.
"""

from __future__ import annotations

import math

import numpy as np

from .model import CostParams, HostingLadder


def wait_threshold_coeff(kappa: float, beta: float, delta: float, M: float) -> float:
    """Coefficient kappa^2 * beta * (ln M)^(1+delta) of the wait-release test.

    The latch releases at the end of slot t when t * coeff < G^2, where G is
    the spread of the accumulated score vector.
    """
    if M <= 1.0:
        raise ValueError("wait threshold needs fetch cost M > 1 (ln M must be positive)")
    if beta <= 1.0:
        raise ValueError("wait scale beta must exceed 1")
    if delta < 0.0:
        raise ValueError("wait exponent delta must be non-negative")
    return kappa * kappa * beta * math.log(M) ** (1.0 + delta)


class FtplPolicy:
    """Follow the perturbed leader.

    Hosts the level minimizing the historical cumulative cost plus a Gaussian
    perturbation ``eta_t * gamma`` sampled once per trial. ``eta_t`` is
    ``eta_scale * sqrt(t - eta_offset)`` with offset 0 or 1.
    """

    def __init__(self, ladder: HostingLadder, params: CostParams,
                 gamma: np.ndarray, eta_scale: float = 0.1, eta_offset: int = 0):
        if eta_offset not in (0, 1):
            raise ValueError("eta_offset selects sqrt(t) or sqrt(t-1); must be 0 or 1")
        if eta_scale < 0.0:
            raise ValueError("eta_scale must be non-negative")
        gamma = np.asarray(gamma, dtype=np.float64)
        if gamma.shape != (ladder.K,):
            raise ValueError("gamma must hold one draw per hosting level")
        self.ladder = ladder
        self.params = params
        self.gamma = gamma
        self.eta_scale = float(eta_scale)
        self.eta_offset = int(eta_offset)
        self.theta = np.zeros(ladder.K)
        # per-slot score increment is theta_t = c*s + r_t*f
        self._cs = params.c * ladder.alpha_array
        self._f = ladder.g_array

    def eta(self, t: int) -> float:
        return self.eta_scale * math.sqrt(t - self.eta_offset)

    def decide(self, t: int) -> int:
        # lowest index wins ties, so zero perturbation prefers hosting less
        return int(np.argmin(self.theta + self.eta(t) * self.gamma))

    def observe(self, t: int, r_t: float) -> None:
        self.theta += self._cs + r_t * self._f


class WftplPolicy:
    """Perturbed leader preceded by a data-dependent wait phase.

    Hosts nothing while waiting; the latch releases at the end of the first
    slot t with t * kappa^2 * beta * (ln M)^(1+delta) < G^2, where G is the
    spread max(Theta) - min(Theta) after the slot's score update. From slot
    t+1 on the policy is exactly FTPL (and matches an FTPL instance seeded
    with the same gamma on every later slot).
    """

    def __init__(self, ladder: HostingLadder, params: CostParams,
                 gamma: np.ndarray, eta_scale: float = 0.1, eta_offset: int = 0,
                 beta: float = 6.0, delta: float = 0.0):
        self.inner = FtplPolicy(ladder, params, gamma, eta_scale, eta_offset)
        self.beta = float(beta)
        self.delta = float(delta)
        self.wait_coeff = wait_threshold_coeff(params.kappa, beta, delta, params.M)
        self.waiting = True
        self.wait_end: int | None = None

    def decide(self, t: int) -> int:
        if self.waiting:
            return 0
        return self.inner.decide(t)

    def observe(self, t: int, r_t: float) -> None:
        self.inner.observe(t, r_t)
        if self.waiting:
            theta = self.inner.theta
            gap = float(np.max(theta) - np.min(theta))
            if t * self.wait_coeff < gap * gap:
                self.waiting = False
                self.wait_end = t


class AlphaRrPolicy:
    """Retro-renting over up to three levels (none / one partial / full).

    After each slot the policy compares, in hindsight over the window since
    its last level change, the cost of holding the current level against the
    cheapest "hold then switch to v" alternative for every level v. The
    hindsight cost charges M*|alpha_v - alpha_cur| at the switch point
    (downward moves included, unlike the incurred cost). A switch wins cost
    ties; among tied alternatives the lowest level index is taken. On a
    switch the window resets.

    The scan over switch points is folded into running minima, so each slot
    costs O(K).
    """

    def __init__(self, ladder: HostingLadder, params: CostParams):
        if ladder.K > 3:
            raise ValueError("retro-renting is defined for at most one partial level (K <= 3)")
        self.ladder = ladder
        self.params = params
        self.alphas = ladder.alpha_array
        self.gs = ladder.g_array
        self._cav = params.c * self.alphas
        self.cur = 0
        self._reset_window()

    def _reset_window(self):
        K = self.ladder.K
        a_cur = self.alphas[self.cur]
        g_cur = self.gs[self.cur]
        # hold-part coefficients: cost(v, k) = cda[v]*k + dg[v]*S_k + cav[v]*W + g[v]*S + pen[v]
        self._cda = self.params.c * (a_cur - self.alphas)
        self._dg = g_cur - self.gs
        self._pen = np.array([self.params.M * abs(self.alphas[v] - a_cur) if v != self.cur else 0.0
                              for v in range(K)])
        self._hmin = np.zeros(K)   # k = 0 candidate contributes 0
        self._W = 0
        self._S = 0.0

    def decide(self, t: int) -> int:
        return self.cur

    def observe(self, t: int, r_t: float) -> None:
        K = self.ladder.K
        # switch point k = previous window length joins the candidate set
        for v in range(K):
            cand = self._cda[v] * self._W + self._dg[v] * self._S
            if cand < self._hmin[v]:
                self._hmin[v] = cand
        self._S = self._S + r_t
        self._W += 1
        best_v = -1
        best_cost = math.inf
        cur_cost = math.inf
        for v in range(K):
            cost = self._hmin[v] + self._cav[v] * self._W + self.gs[v] * self._S + self._pen[v]
            if v == self.cur:
                cur_cost = cost
            elif cost < best_cost:
                best_v = v
                best_cost = cost
        if best_v >= 0 and best_cost <= cur_cost:
            self.cur = best_v
            self._reset_window()


class StaticPolicy:
    """Hosts the same level every slot (one fetch at t=1 if the level is non-zero)."""

    def __init__(self, ladder: HostingLadder, params: CostParams, level: int):
        if not 0 <= level < ladder.K:
            raise ValueError(f"level {level} outside ladder with K={ladder.K}")
        self.level = int(level)

    def decide(self, t: int) -> int:
        return self.level

    def observe(self, t: int, r_t: float) -> None:
        pass
