"""Arrival-sequence generators and trace ingestion.

All generators are pure functions of their parameters and a seed: the same
(spec, seed) pair yields a bit-identical sequence on any machine (PCG64 via
numpy's default_rng). The runner derives per-trial seeds by XORing the base
seed with the trial index and splits arrival/policy streams with distinct
SeedSequence spawn keys.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .model import ArrivalSequence, CostParams, HostingLadder

log = logging.getLogger(__name__)

KINDS = ("iid-bernoulli", "iid-discrete", "adversarial-frames",
         "stochastic-lower-bound", "trace")


@dataclass(frozen=True)
class ArrivalSpec:
    """Declarative arrival description; `extra` holds kind-specific parameters."""

    kind: str
    mu: float | None = None                 # iid-bernoulli
    values: tuple[float, ...] | None = None  # iid-discrete
    probs: tuple[float, ...] | None = None
    mode: str = "full"                      # adversarial-frames: full | partial
    path: str | None = None                 # trace
    clip: str = "clip"                      # trace: clip | reject
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown arrival kind: {self.kind!r}")

    def mean(self, ladder: HostingLadder, params: CostParams) -> float | None:
        """Known per-slot mean for i.i.d. kinds; None for frames and traces."""
        if self.kind == "iid-bernoulli":
            return self.mu
        if self.kind == "iid-discrete":
            return float(np.dot(self.values, self.probs))
        if self.kind == "stochastic-lower-bound":
            ell = hardest_bernoulli_level(ladder)
            g = ladder.gs[ell]
            return params.c * ladder.alphas[ell] / (1.0 - g)
        return None

    def describe(self) -> str:
        """Compact label for the CSV mu_or_trace column."""
        if self.kind == "iid-bernoulli":
            return f"{self.mu:.9g}"
        if self.kind == "iid-discrete":
            return f"discrete:{float(np.dot(self.values, self.probs)):.9g}"
        if self.kind == "adversarial-frames":
            return f"frames-{self.mode}"
        if self.kind == "stochastic-lower-bound":
            return "stochastic-lower-bound"
        return f"trace:{Path(self.path).name}"


def _arrival_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(0,)))


def gen_iid_bernoulli(mu: float, kappa: float, T: int, seed: int) -> ArrivalSequence:
    """i.i.d. slots of kappa * Bernoulli(mu / kappa); per-slot mean mu."""
    if mu <= 0.0:
        raise ValueError("mean arrival rate mu must be positive")
    p = mu / kappa
    if p > 1.0:
        raise ValueError(f"mu={mu} exceeds the per-slot cap kappa={kappa}")
    rng = _arrival_rng(seed)
    r = np.where(rng.random(T) < p, kappa, 0.0)
    return ArrivalSequence(r)


def gen_iid_discrete(values, probs, kappa: float, T: int, seed: int) -> ArrivalSequence:
    """i.i.d. draws from a finite request distribution."""
    values = np.asarray(values, dtype=np.float64)
    probs = np.asarray(probs, dtype=np.float64)
    if values.shape != probs.shape or values.size == 0:
        raise ValueError("values and probs must be non-empty and the same length")
    if np.any(values < 0.0) or np.any(values > kappa):
        raise ValueError("request values must lie in [0, kappa]")
    if np.any(probs < 0.0) or not math.isclose(float(np.sum(probs)), 1.0, abs_tol=1e-9):
        raise ValueError("probs must be a distribution")
    rng = _arrival_rng(seed)
    r = rng.choice(values, size=T, p=probs)
    return ArrivalSequence(r)


def frame_lengths(params: CostParams, ladder: HostingLadder, mode: str = "full"
                  ) -> tuple[int, int]:
    """Burst and idle lengths (t_f, t_e) of one adversarial frame.

    mode="full" uses t_f = ceil(M / (kappa - c)); mode="partial" uses the
    cheapest-to-fetch level's hysteresis window
    ceil(M*a / (kappa - c*a - g(a)*kappa)). Both use t_e = ceil(M / c).
    """
    c, M, kappa = params.c, params.M, params.kappa
    if c <= 0.0:
        raise ValueError("frames need a positive rent rate c")
    if mode == "full":
        denom = kappa - c
        if denom <= 0.0:
            raise ValueError("frames need kappa > c")
        t_f = math.ceil(M / denom)
    elif mode == "partial":
        ratios = []
        for a, g in zip(ladder.alphas[1:], ladder.gs[1:]):
            denom = kappa - c * a - g * kappa
            if denom > 0.0:
                ratios.append(M * a / denom)
        if not ratios:
            raise ValueError(
                "frames need kappa > c*alpha + g(alpha)*kappa for some non-zero level")
        t_f = math.ceil(min(ratios))
    else:
        raise ValueError(f"unknown frame mode: {mode!r}")
    t_e = math.ceil(M / c)
    return t_f, t_e


def gen_adversarial_frames(params: CostParams, ladder: HostingLadder,
                           n_frames: int, mode: str = "full") -> ArrivalSequence:
    """Repeat n_frames copies of [t_f slots of kappa requests, t_e slots of 0].

    The burst is exactly long enough that hosting beats forwarding in
    hindsight, and the idle run exactly long enough to trigger eviction, so
    retro-renting pays a fetch every frame.
    """
    t_f, t_e = frame_lengths(params, ladder, mode)
    frame = np.concatenate([np.full(t_f, params.kappa), np.zeros(t_e)])
    return ArrivalSequence(np.tile(frame, n_frames))


def hardest_bernoulli_level(ladder: HostingLadder) -> int:
    """Level minimizing alpha / (1 - g(alpha)) over non-zero levels."""
    ratios = ladder.alpha_array[1:] / (1.0 - ladder.g_array[1:])
    return 1 + int(np.argmin(ratios))


def gen_stochastic_lower_bound(params: CostParams, ladder: HostingLadder,
                               T: int, seed: int) -> ArrivalSequence:
    """Bernoulli sequence that makes every policy pay sqrt(T)-order regret.

    Requests are kappa * Ber(c*a / (kappa*(1 - g(a)))) at the level a that
    minimizes alpha/(1-g), balancing the forwarding and hosting costs.
    """
    ell = hardest_bernoulli_level(ladder)
    a = ladder.alphas[ell]
    g = ladder.gs[ell]
    p = params.c * a / (params.kappa * (1.0 - g))
    if not 0.0 < p <= 1.0:
        raise ValueError(f"degenerate Bernoulli parameter {p}")
    rng = _arrival_rng(seed)
    r = np.where(rng.random(T) < p, params.kappa, 0.0)
    return ArrivalSequence(r)


def load_trace(path: str | Path, kappa: float, clip_policy: str = "clip"
               ) -> ArrivalSequence:
    """Read pre-binned per-slot counts: one number per line, or a
    "slot,count" CSV with a header row and slots consecutive from 1.

    Counts above kappa are clipped with a warning (clip_policy="clip") or
    rejected (clip_policy="reject"). Negative counts always reject.
    """
    if clip_policy not in ("clip", "reject"):
        raise ValueError(f"unknown clip policy: {clip_policy!r}")
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"trace file {path} is empty")
    counts: list[float] = []
    if "," in lines[0]:
        rows = list(csv.reader(lines))
        for idx, row in enumerate(rows[1:], start=1):  # first row is the header
            if len(row) != 2:
                raise ValueError(f"trace row {idx + 1}: expected 'slot,count'")
            slot = int(row[0])
            if slot != idx:
                raise ValueError(f"trace slots must be consecutive from 1; got {slot} at row {idx + 1}")
            counts.append(float(row[1]))
        if not counts:
            raise ValueError(f"trace file {path} has a header but no rows")
    else:
        counts = [float(ln) for ln in lines]
    r = np.asarray(counts, dtype=np.float64)
    if np.any(r < 0.0):
        raise ValueError("trace contains negative counts")
    over = r > kappa
    if np.any(over):
        if clip_policy == "reject":
            raise ValueError(
                f"trace contains {int(np.count_nonzero(over))} counts above kappa={kappa}")
        log.warning("clipping %d trace counts above kappa=%g",
                    int(np.count_nonzero(over)), kappa)
        r = np.minimum(r, kappa)
    return ArrivalSequence(r)


def generate(spec: ArrivalSpec, T: int, ladder: HostingLadder,
             params: CostParams, seed: int) -> ArrivalSequence:
    """Produce exactly T slots for any arrival kind (frames and traces are
    cut or tiled to length)."""
    if spec.kind == "iid-bernoulli":
        return gen_iid_bernoulli(spec.mu, params.kappa, T, seed)
    if spec.kind == "iid-discrete":
        return gen_iid_discrete(spec.values, spec.probs, params.kappa, T, seed)
    if spec.kind == "stochastic-lower-bound":
        return gen_stochastic_lower_bound(params, ladder, T, seed)
    if spec.kind == "adversarial-frames":
        t_f, t_e = frame_lengths(params, ladder, spec.mode)
        n = max(1, math.ceil(T / (t_f + t_e)))
        full = gen_adversarial_frames(params, ladder, n, spec.mode)
        return ArrivalSequence(full.r[:T])
    if spec.kind == "trace":
        full = load_trace(spec.path, params.kappa, spec.clip)
        if full.T < T:
            raise ValueError(f"trace has {full.T} slots, horizon needs {T}")
        return ArrivalSequence(full.r[:T])
    raise ValueError(spec.kind)  # pragma: no cover
