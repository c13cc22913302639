"""Trial execution: turn a policy description plus an arrival sequence into a
RunRecord with the full cost breakdown.

Determinism contract: (policy spec, gamma or seed, arrivals) fully determine
the RunRecord. Perturbed-leader policies draw their Gaussian vector once per
trial; the wait-then-act variant given the same gamma matches plain FTPL on
every slot after its wait phase ends.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import backend
from .model import (ArrivalSequence, CostParams, HostingLadder, RunRecord,
                    check_arrivals, cost_components)

FTPL_FAMILY = ("ftpl", "wftpl")


@dataclass(frozen=True)
class PolicySpec:
    """Declarative policy description used by the runner and the CLI."""

    kind: str                      # ftpl | wftpl | alpha-rr | static
    eta_scale: float = 0.1
    eta_offset: int = 0
    beta: float = 6.0
    delta: float = 0.0
    level: int = 0                 # static policies only
    label: str = field(default="")

    def __post_init__(self):
        if self.kind not in ("ftpl", "wftpl", "alpha-rr", "static"):
            raise ValueError(f"unknown policy kind: {self.kind!r}")
        if not self.label:
            default = self.kind if self.kind != "static" else f"static-{self.level}"
            object.__setattr__(self, "label", default)

    @property
    def needs_gamma(self) -> bool:
        return self.kind in FTPL_FAMILY


def draw_gamma(rng: np.random.Generator, K: int) -> np.ndarray:
    """The once-per-trial standard-normal perturbation vector."""
    return rng.standard_normal(K)


def simulate(spec: PolicySpec, arrivals: ArrivalSequence, ladder: HostingLadder,
             params: CostParams, gamma: np.ndarray | None = None,
             seed: int | None = None) -> RunRecord:
    """Run one policy over one arrival sequence and account its costs.

    ``gamma`` is required for perturbed-leader policies unless ``seed`` is
    given, in which case the vector is drawn from a fresh generator.
    """
    check_arrivals(arrivals, params)
    r = arrivals.r
    wait_end: int | None = None
    if spec.kind in FTPL_FAMILY:
        if gamma is None:
            if seed is None:
                raise ValueError(f"{spec.kind} needs gamma or a seed")
            gamma = draw_gamma(np.random.default_rng(seed), ladder.K)
        gamma = np.ascontiguousarray(gamma, dtype=np.float64)
        levels, ts = backend.ftpl_family_run(
            np.ascontiguousarray(r), ladder, params, gamma,
            spec.eta_scale, spec.eta_offset,
            spec.kind == "wftpl", spec.beta, spec.delta)
        if spec.kind == "wftpl":
            wait_end = ts if ts > 0 else None
    elif spec.kind == "alpha-rr":
        levels = backend.alpha_rr_run(np.ascontiguousarray(r), ladder, params)
    elif spec.kind == "static":
        levels = np.full(arrivals.T, spec.level, dtype=np.int64)
    else:  # pragma: no cover - rejected in PolicySpec
        raise ValueError(spec.kind)
    rent, service, fetch = cost_components(levels, r, ladder, params)
    return RunRecord(policy=spec.label, schedule=levels, rent=rent,
                     service=service, fetch=fetch, seed=seed, wait_end=wait_end)
