"""Domain types and cost accounting for the edge service-hosting simulator.

The system rents edge capacity for a service that can be hosted at one of K
discrete levels (fractions of the service). Each slot incurs rent proportional
to the hosted fraction, a service (forwarding) cost per request for the part
that stays in the cloud, and a one-time fetch cost on upward level moves.
Eviction is free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class ValidationError(ValueError):
    """A model assumption is violated. `assumption` names which one."""

    def __init__(self, assumption: str, message: str):
        super().__init__(f"{assumption}: {message}")
        self.assumption = assumption


@dataclass(frozen=True)
class HostingLadder:
    """The K hosting levels: fractions ``alphas`` and service-cost factors ``gs``.

    Level 0 is always "host nothing" (alpha=0, g=1); the last level is full
    hosting (alpha=1). ``gs[i]`` is the per-request cost of forwarding the
    un-hosted remainder when ``alphas[i]`` is hosted.
    """

    alphas: tuple[float, ...]
    gs: tuple[float, ...]

    def __post_init__(self):
        if len(self.alphas) != len(self.gs):
            raise ValueError("alphas and gs must have the same length")
        if len(self.alphas) < 2:
            raise ValueError("a ladder needs at least the empty and full levels")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, float]]) -> "HostingLadder":
        """Build from (alpha, g) pairs, e.g. ``[(0, 1), (0.5, 0.45), (1, 0)]``."""
        alphas, gs = zip(*pairs)
        return cls(tuple(float(a) for a in alphas), tuple(float(g) for g in gs))

    @property
    def K(self) -> int:
        return len(self.alphas)

    @property
    def alpha_array(self) -> np.ndarray:
        return np.asarray(self.alphas, dtype=np.float64)

    @property
    def g_array(self) -> np.ndarray:
        return np.asarray(self.gs, dtype=np.float64)


@dataclass(frozen=True)
class CostParams:
    """Rent rate ``c`` per slot for full hosting, fetch cost ``M``, request cap ``kappa``."""

    c: float
    M: float
    kappa: float = 1.0


@dataclass(frozen=True)
class ArrivalSequence:
    """Per-slot request counts. Entries are non-negative reals bounded by kappa."""

    r: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "r", np.asarray(self.r, dtype=np.float64))

    @property
    def T(self) -> int:
        return int(self.r.shape[0])

    @property
    def total(self) -> float:
        return float(np.sum(self.r))


def validate(ladder: HostingLadder, params: CostParams) -> None:
    """Check every model assumption; raise ValidationError naming the first violated one.

    Checks:
      - ladder shape: alpha_1 = 0, alpha_K = 1, strictly increasing; g(0) = 1,
        g strictly decreasing
      - Assumption 1: c <= kappa
      - Assumption 2: alpha_i + g(alpha_i) <= 1 for every level
      - Assumption 3: c*alpha_i + g(alpha_i)*kappa <= kappa for every level
      - M > 1 and kappa > 0
    """
    a, g = ladder.alphas, ladder.gs
    if a[0] != 0.0:
        raise ValidationError("ladder", "first hosting level must be 0")
    if a[-1] != 1.0:
        raise ValidationError("ladder", "last hosting level must be 1")
    if any(a[i] >= a[i + 1] for i in range(ladder.K - 1)):
        raise ValidationError("ladder", "hosting levels must be strictly increasing")
    if g[0] != 1.0:
        raise ValidationError("ladder", "service-cost factor at level 0 must be 1")
    if any(g[i] <= g[i + 1] for i in range(ladder.K - 1)):
        raise ValidationError("ladder", "service-cost factor must be strictly decreasing")
    if any(gi < 0.0 for gi in g):
        raise ValidationError("ladder", "service-cost factors must be non-negative")
    if params.kappa <= 0.0:
        raise ValidationError("params", "kappa must be positive")
    if params.c > params.kappa:
        raise ValidationError(
            "Assumption 1", f"rent rate c={params.c} must not exceed kappa={params.kappa}")
    for ai, gi in zip(a, g):
        if ai + gi > 1.0:
            raise ValidationError(
                "Assumption 2",
                f"level alpha={ai}: alpha + g(alpha) = {ai + gi} exceeds 1")
    for ai, gi in zip(a, g):
        if params.c * ai + gi * params.kappa > params.kappa:
            raise ValidationError(
                "Assumption 3",
                f"level alpha={ai}: c*alpha + g(alpha)*kappa exceeds kappa")
    if params.M <= 1.0:
        raise ValidationError("params", f"fetch cost M={params.M} must exceed 1")


def check_arrivals(arrivals: ArrivalSequence, params: CostParams) -> None:
    """Raise if any per-slot count leaves [0, kappa]."""
    r = arrivals.r
    if r.size and (float(np.min(r)) < 0.0 or float(np.max(r)) > params.kappa):
        raise ValidationError("arrivals", "request counts must lie in [0, kappa]")


@dataclass(frozen=True)
class CostBreakdown:
    """Rent / service / fetch components; total is their sum by construction."""

    rent: float
    service: float
    fetch: float

    @property
    def total(self) -> float:
        return self.rent + self.service + self.fetch

    def __add__(self, other: "CostBreakdown") -> "CostBreakdown":
        return CostBreakdown(self.rent + other.rent,
                             self.service + other.service,
                             self.fetch + other.fetch)


def slot_cost(level_now: int, level_prev: int, r_t: float,
              ladder: HostingLadder, params: CostParams) -> CostBreakdown:
    """Cost of one slot at ``level_now`` after ``level_prev`` with ``r_t`` requests.

    rent = c*alpha, service = g*r_t, fetch = M*(alpha_now - alpha_prev)+.
    """
    a_now = ladder.alphas[level_now]
    a_prev = ladder.alphas[level_prev]
    rent = params.c * a_now
    service = ladder.gs[level_now] * r_t
    diff = a_now - a_prev
    fetch = params.M * diff if diff > 0.0 else 0.0
    return CostBreakdown(rent, service, fetch)


def cost_components(schedule: np.ndarray, r: np.ndarray,
                    ladder: HostingLadder, params: CostParams
                    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-slot rent/service/fetch arrays for a whole schedule (level 0 before slot 1)."""
    sched = np.asarray(schedule, dtype=np.int64)
    r = np.asarray(r, dtype=np.float64)
    if sched.shape[0] != r.shape[0]:
        raise ValueError("schedule and arrivals must have the same length")
    alphas = ladder.alpha_array[sched]
    rent = params.c * ladder.alpha_array[sched]
    service = ladder.g_array[sched] * r
    prev = np.concatenate(([0.0], alphas[:-1]))
    fetch = params.M * np.maximum(alphas - prev, 0.0)
    return rent, service, fetch


def horizon_cost(schedule: Sequence[int] | np.ndarray, arrivals: ArrivalSequence,
                 ladder: HostingLadder, params: CostParams) -> CostBreakdown:
    """Cumulative cost of a schedule over the whole horizon (component-wise sum)."""
    sched = np.asarray(schedule, dtype=np.int64)
    if sched.shape[0] == 0:
        return CostBreakdown(0.0, 0.0, 0.0)
    rent, service, fetch = cost_components(sched, arrivals.r, ladder, params)
    return CostBreakdown(float(np.sum(rent)), float(np.sum(service)), float(np.sum(fetch)))


@dataclass
class RunRecord:
    """One simulated trial: the decisions plus the per-slot and cumulative costs."""

    policy: str
    schedule: np.ndarray
    rent: np.ndarray
    service: np.ndarray
    fetch: np.ndarray
    seed: int | None = None
    wait_end: int | None = None   # slot at which a wait-then-act policy released
    cumulative: CostBreakdown = field(init=False)

    def __post_init__(self):
        self.cumulative = CostBreakdown(float(np.sum(self.rent)),
                                        float(np.sum(self.service)),
                                        float(np.sum(self.fetch)))

    @property
    def T(self) -> int:
        return int(self.schedule.shape[0])

    @property
    def total_cost(self) -> float:
        return self.cumulative.total

    @property
    def fetch_count(self) -> int:
        """Number of slots in which a fetch was paid (upward level moves)."""
        return int(np.count_nonzero(self.fetch > 0.0))

    def per_slot(self) -> list[CostBreakdown]:
        return [CostBreakdown(float(a), float(b), float(c))
                for a, b, c in zip(self.rent, self.service, self.fetch)]
