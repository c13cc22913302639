import math
from pathlib import Path

import numpy as np
import pytest

from edgehost import CostParams, HostingLadder

PRESETS = Path(__file__).resolve().parent.parent / "presets"


@pytest.fixture
def two_level():
    return HostingLadder.from_pairs([(0.0, 1.0), (1.0, 0.0)])


@pytest.fixture
def three_level():
    # one partial level: host half the service, forward 45% of each request
    return HostingLadder.from_pairs([(0.0, 1.0), (0.5, 0.45), (1.0, 0.0)])


@pytest.fixture
def bernoulli_params():
    return CostParams(c=0.45, M=5.0, kappa=1.0)


def random_instance(rng: np.random.Generator, max_T: int = 10,
                    kappa_range=(1.0, 5.0)) -> tuple:
    """A random valid (ladder, params, arrivals) triple for property tests.

    kappa stays >= 1 (the request-count regime); the offline cost floor
    (R_T / kappa^2) * min_i(c a_i + g_i kappa) needs it.
    """
    K = int(rng.integers(2, 4))
    if K == 2:
        ladder = HostingLadder.from_pairs([(0.0, 1.0), (1.0, 0.0)])
    else:
        a2 = float(rng.uniform(0.1, 0.9))
        g2 = float(rng.uniform(0.0, 1.0 - a2))
        ladder = HostingLadder.from_pairs([(0.0, 1.0), (a2, g2), (1.0, 0.0)])
    kappa = float(rng.uniform(*kappa_range))
    c = float(rng.uniform(0.1, 0.9)) * kappa
    M = float(rng.uniform(1.05, 20.0))
    params = CostParams(c=c, M=M, kappa=kappa)
    T = int(rng.integers(1, max_T + 1))
    r = rng.uniform(0.0, kappa, T)
    return ladder, params, r


def hysteresis_windows(ladder, params):
    """Minimum idle run after a full eviction, and minimum hosted run after a fetch."""
    ratios = []
    for a, g in zip(ladder.alphas[1:], ladder.gs[1:]):
        denom = params.kappa - params.c * a - g * params.kappa
        if denom > 0.0:
            ratios.append(params.M * a / denom)
    evict_window = math.ceil(min(ratios)) if ratios else None
    fetch_window = math.ceil(params.M / params.c)
    return evict_window, fetch_window


def check_hysteresis(schedule, ladder, params):
    """Walk the schedule checking both hysteresis windows.

    After a full eviction taking effect at slot e, the next fetch may take
    effect no earlier than slot e + evict_window (the policy starts in the
    evicted state, so slot 1 counts as an eviction point). After a fetch
    taking effect at slot f, a full eviction may take effect no earlier than
    slot f + fetch_window.
    """
    evict_window, fetch_window = hysteresis_windows(ladder, params)
    alphas = np.array([0.0] + [ladder.alphas[i] for i in schedule])
    last_evict = 1
    last_fetch = None
    for t in range(1, len(schedule) + 1):
        if alphas[t] > alphas[t - 1]:
            if alphas[t - 1] == 0.0 and last_evict is not None and evict_window is not None:
                assert t - last_evict >= evict_window, \
                    f"fetch at slot {t} only {t - last_evict} slots after eviction"
            last_fetch = t
        elif alphas[t] == 0.0 and alphas[t - 1] > 0.0:
            assert last_fetch is not None
            assert t - last_fetch >= fetch_window, \
                f"eviction at slot {t} only {t - last_fetch} slots after fetch"
            last_evict = t
