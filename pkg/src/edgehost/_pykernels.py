"""Pure-Python trial loops: the fallback backend when the compiled kernels
are unavailable. Thin wrappers around the reference policy classes plus a
plain dynamic program; semantics (including float operation order) match the
Cython kernels exactly.
"""

from __future__ import annotations

import numpy as np

from .model import CostParams, HostingLadder
from .policies import AlphaRrPolicy, FtplPolicy, WftplPolicy

BACKEND_NAME = "python"


def ftpl_family_run(r: np.ndarray, ladder: HostingLadder, params: CostParams,
                    gamma: np.ndarray, eta_scale: float, eta_offset: int,
                    use_wait: bool, beta: float, delta: float
                    ) -> tuple[np.ndarray, int]:
    """Run FTPL (or its wait-then-act variant) over a whole arrival sequence.

    Returns (levels, wait_end) with wait_end = 0 when the policy never left
    the wait phase and -1 for plain FTPL.
    """
    T = r.shape[0]
    if use_wait:
        pol = WftplPolicy(ladder, params, gamma, eta_scale, eta_offset, beta, delta)
    else:
        pol = FtplPolicy(ladder, params, gamma, eta_scale, eta_offset)
    levels = np.empty(T, dtype=np.int64)
    for t in range(1, T + 1):
        levels[t - 1] = pol.decide(t)
        pol.observe(t, float(r[t - 1]))
    if not use_wait:
        return levels, -1
    return levels, (pol.wait_end if pol.wait_end is not None else 0)


def alpha_rr_run(r: np.ndarray, ladder: HostingLadder, params: CostParams) -> np.ndarray:
    """Run retro-renting over a whole arrival sequence; returns the level per slot."""
    T = r.shape[0]
    pol = AlphaRrPolicy(ladder, params)
    levels = np.empty(T, dtype=np.int64)
    for t in range(1, T + 1):
        levels[t - 1] = pol.decide(t)
        pol.observe(t, float(r[t - 1]))
    return levels


def offline_dp(r: np.ndarray, ladder: HostingLadder, params: CostParams
               ) -> tuple[np.ndarray, float]:
    """Exact offline optimum by forward dynamic programming over (slot, level).

    Starts from level 0 before slot 1; transition cost M*(alpha_j - alpha_i)+.
    Per-path cost accumulates slot by slot so the value is bit-comparable with
    a schedule enumerator using the same accumulation order. Backtracking
    prefers the lower level on ties.
    """
    T = r.shape[0]
    K = ladder.K
    alphas = ladder.alphas
    gs = ladder.gs
    c, M = params.c, params.M
    if T == 0:
        return np.empty(0, dtype=np.int64), 0.0
    prev = [0.0] * K
    # virtual slot 0 at level 0: jumping straight to level j costs M*alpha_j
    start = [M * (alphas[j] - alphas[0]) if alphas[j] > alphas[0] else 0.0 for j in range(K)]
    ptr = np.empty((T, K), dtype=np.int64)
    cur = [0.0] * K
    for t in range(T):
        rt = float(r[t])
        for j in range(K):
            base = c * alphas[j] + gs[j] * rt
            if t == 0:
                cur[j] = start[j] + base
                ptr[t, j] = 0
                continue
            best = -1
            best_val = 0.0
            aj = alphas[j]
            for i in range(K):
                d = aj - alphas[i]
                slot = base + M * d if d > 0.0 else base
                val = prev[i] + slot
                if best < 0 or val < best_val:
                    best = i
                    best_val = val
            cur[j] = best_val
            ptr[t, j] = best
        prev, cur = cur, prev
    final = prev
    best_j = 0
    for j in range(1, K):
        if final[j] < final[best_j]:
            best_j = j
    schedule = np.empty(T, dtype=np.int64)
    j = best_j
    for t in range(T - 1, -1, -1):
        schedule[t] = j
        j = int(ptr[t, j])
    return schedule, float(final[best_j])
