"""Config-driven experiment runner.

A single JSON document describes the ladder, cost parameters (c and M may be
sweep lists), the arrival process, the policy roster, the horizon (possibly a
sweep list), and the trial count. For every sweep point and trial the runner
generates one arrival sequence (seed = base_seed XOR trial index, arrival and
perturbation streams split by SeedSequence spawn keys) and runs every policy
on it, so policy comparisons are paired. Results go to two CSVs: one row per
trial and an aggregate with means and standard errors.

Reruns with the same config and base seed produce byte-identical CSVs.
"""

from __future__ import annotations

import json
import os
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .arrivals import ArrivalSpec, generate
from .metrics import summarize
from .model import (ArrivalSequence, CostBreakdown, CostParams, HostingLadder,
                    ValidationError, validate)
from .oracles import offline_optimal_dp, optimal_static_realized, optimal_static_stochastic
from .sim import PolicySpec, draw_gamma, simulate

OUTDIR_ENV = "EDGEHOST_OUTDIR"

TRIAL_COLUMNS = ("experiment", "policy", "T", "M", "c", "mu_or_trace", "trial",
                 "seed", "arrival_checksum", "cost", "rent", "service", "fetch",
                 "regret_stoch", "regret_adv", "cr_adv", "fetch_count", "T_s")
AGGREGATE_COLUMNS = ("experiment", "policy", "T", "M", "c", "mu_or_trace", "trials",
                     "mean_cost", "se_cost", "mean_rent", "mean_service", "mean_fetch",
                     "mean_regret_stoch", "mean_regret_adv", "mean_cr_adv",
                     "mean_fetch_count", "mean_T_s")


class ConfigError(ValueError):
    """The experiment configuration is invalid."""


@dataclass(frozen=True)
class TrialSummary:
    """One policy run on one trial's arrivals, with its benchmarks and metrics.

    Regret fields always equal cost total minus the corresponding benchmark;
    stochastic entries are None when the arrival process has no known mean.
    """

    policy: str
    trial: int
    seed: int
    arrival_checksum: str
    cost: CostBreakdown
    static_realized_cost: float
    static_stochastic_cost: float | None
    offline_dp_cost: float
    fetch_count: int
    wait_end: int | None        # slot at which a wait phase released, else None

    @property
    def regret_adv(self) -> float:
        return self.cost.total - self.static_realized_cost

    @property
    def regret_stoch(self) -> float | None:
        if self.static_stochastic_cost is None:
            return None
        return self.cost.total - self.static_stochastic_cost

    @property
    def cr_adv(self) -> float | None:
        if self.offline_dp_cost <= 0.0:
            return None
        return self.cost.total / self.offline_dp_cost


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    ladder: HostingLadder
    c_values: tuple[float, ...]
    m_values: tuple[float, ...]
    kappa: float
    arrivals: ArrivalSpec
    horizons: tuple[int, ...]
    policies: tuple[PolicySpec, ...]
    trials: int
    base_seed: int
    outdir: str

    @classmethod
    def from_dict(cls, doc: dict, source: str = "<config>") -> "ExperimentConfig":
        try:
            ladder = HostingLadder.from_pairs(doc["ladder"])
            cost = doc["cost"]
            c_values = tuple(_as_list(cost["c"]))
            m_values = tuple(_as_list(cost["M"]))
            kappa = float(cost.get("kappa", 1.0))
            arr = dict(doc["arrivals"])
            kind = arr.pop("kind")
            spec = ArrivalSpec(
                kind=kind,
                mu=arr.pop("mu", None),
                values=tuple(arr.pop("values")) if "values" in arr else None,
                probs=tuple(arr.pop("probs")) if "probs" in arr else None,
                mode=arr.pop("mode", "full"),
                path=arr.pop("path", None),
                clip=arr.pop("clip", "clip"),
                extra=arr)
            horizons = tuple(int(t) for t in _as_list(doc["T"]))
            policies = tuple(_policy_from_dict(p) for p in doc["policies"])
            config = cls(name=str(doc["name"]), ladder=ladder, c_values=c_values,
                         m_values=m_values, kappa=kappa, arrivals=spec,
                         horizons=horizons, policies=policies,
                         trials=int(doc["trials"]), base_seed=int(doc["base_seed"]),
                         outdir=str(doc.get("outdir", "results")))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"{source}: {exc}") from exc
        config.check()
        return config

    @classmethod
    def from_file(cls, path: str | Path) -> "ExperimentConfig":
        path = Path(path)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: not valid JSON ({exc})") from exc
        return cls.from_dict(doc, source=str(path))

    def check(self) -> None:
        if not self.c_values or not self.m_values or not self.horizons:
            raise ConfigError("sweep lists for c, M and T must be non-empty")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if not self.policies:
            raise ConfigError("at least one policy is required")
        labels = [p.label for p in self.policies]
        if len(set(labels)) != len(labels):
            raise ConfigError(f"duplicate policy labels: {labels}")
        for c in self.c_values:
            for m in self.m_values:
                try:
                    validate(self.ladder, CostParams(c=c, M=m, kappa=self.kappa))
                except ValidationError as exc:
                    raise ConfigError(str(exc)) from exc

    def sweep_points(self) -> Iterable[tuple[float, float, int]]:
        for c in self.c_values:
            for m in self.m_values:
                for t in self.horizons:
                    yield c, m, t


def _as_list(x) -> list:
    return list(x) if isinstance(x, (list, tuple)) else [x]


def _policy_from_dict(doc: dict) -> PolicySpec:
    doc = dict(doc)
    kind = doc.pop("kind")
    return PolicySpec(kind=kind, **doc)


def fmt(x) -> str:
    """Serialize one CSV cell: 9 significant digits, empty for missing."""
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    xf = float(x)
    if xf != xf:  # NaN
        return ""
    return f"{xf:.9g}"


def arrival_checksum(arrivals: ArrivalSequence) -> str:
    """Stable 8-hex checksum of the sequence bytes (crc32 of little-endian f64)."""
    return f"{zlib.crc32(arrivals.r.astype('<f8').tobytes()) & 0xFFFFFFFF:08x}"


def trial_seed(base_seed: int, trial: int) -> int:
    return base_seed ^ trial


def gamma_rng(seed: int) -> np.random.Generator:
    """Perturbation stream for a trial; shared by all perturbed-leader policies
    so that wait-then-act and plain FTPL are coupled."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(1,)))


def run_experiment(config: ExperimentConfig, outdir: str | Path | None = None
                   ) -> tuple[Path, Path]:
    """Execute the full sweep; returns (per-trial CSV path, aggregate CSV path)."""
    out = Path(outdir if outdir is not None else os.environ.get(OUTDIR_ENV, config.outdir))
    out.mkdir(parents=True, exist_ok=True)
    mu_label = config.arrivals.describe()

    trial_rows: list[tuple[tuple, tuple]] = []   # (sort key, row)
    agg_rows: list[tuple] = []
    policy_order = {p.label: i for i, p in enumerate(config.policies)}
    for sweep_index, (c, m, horizon) in enumerate(config.sweep_points()):
        params = CostParams(c=c, M=m, kappa=config.kappa)
        mu = config.arrivals.mean(config.ladder, params)
        stoch_bench = (optimal_static_stochastic(mu, horizon, config.ladder, params).cost
                       if mu is not None else None)
        per_policy: dict[str, list[TrialSummary]] = {p.label: [] for p in config.policies}
        for trial in range(config.trials):
            seed = trial_seed(config.base_seed, trial)
            arr = generate(config.arrivals, horizon, config.ladder, params, seed)
            checksum = arrival_checksum(arr)
            static_bench = optimal_static_realized(arr, config.ladder, params)
            _, dp_cost = offline_optimal_dp(arr, config.ladder, params)
            gamma = draw_gamma(gamma_rng(seed), config.ladder.K)
            for pol in config.policies:
                rec = simulate(pol, arr, config.ladder, params,
                               gamma=gamma if pol.needs_gamma else None)
                summary = TrialSummary(
                    policy=pol.label, trial=trial, seed=seed,
                    arrival_checksum=checksum, cost=rec.cumulative,
                    static_realized_cost=static_bench.cost,
                    static_stochastic_cost=stoch_bench,
                    offline_dp_cost=dp_cost,
                    fetch_count=rec.fetch_count,
                    # an unreleased wait lasted the whole horizon
                    wait_end=(rec.wait_end if rec.wait_end is not None else horizon)
                             if pol.kind == "wftpl" else None)
                per_policy[pol.label].append(summary)
                trial_rows.append((
                    (sweep_index, policy_order[pol.label], trial),
                    (config.name, pol.label, horizon, m, c, mu_label, trial, seed,
                     checksum, summary.cost.total, summary.cost.rent,
                     summary.cost.service, summary.cost.fetch,
                     summary.regret_stoch, summary.regret_adv, summary.cr_adv,
                     summary.fetch_count, summary.wait_end)))
        for pol in config.policies:
            rows = per_policy[pol.label]
            cost_summary = summarize([s.cost.total for s in rows])

            def mean_of(values: list) -> float | None:
                vals = [v for v in values if v is not None]
                return summarize(vals).mean if vals else None

            agg_rows.append((
                config.name, pol.label, horizon, m, c, mu_label, len(rows),
                cost_summary.mean, cost_summary.se,
                mean_of([s.cost.rent for s in rows]),
                mean_of([s.cost.service for s in rows]),
                mean_of([s.cost.fetch for s in rows]),
                mean_of([s.regret_stoch for s in rows]),
                mean_of([s.regret_adv for s in rows]),
                mean_of([s.cr_adv for s in rows]),
                mean_of([float(s.fetch_count) for s in rows]),
                mean_of([float(s.wait_end) if s.wait_end is not None else None
                         for s in rows])))

    # concurrency over trials must never change bytes, so order is pinned here
    trial_rows.sort(key=lambda item: item[0])
    trials_path = out / f"{config.name}_trials.csv"
    agg_path = out / f"{config.name}_aggregate.csv"
    _write_csv(trials_path, TRIAL_COLUMNS, [row for _, row in trial_rows])
    _write_csv(agg_path, AGGREGATE_COLUMNS, agg_rows)
    return trials_path, agg_path


def _write_csv(path: Path, columns: tuple[str, ...], rows: list[tuple]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(fmt(x) if not isinstance(x, str) else x for x in row) + "\n")
