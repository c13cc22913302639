"""edgehost: simulator for the online edge service-hosting problem.

Library layers:
  model     domain types, validation, cost accounting
  policies  online policies (perturbed leader, wait-then-act, retro-renting)
  sim       trial execution producing RunRecords
  oracles   offline benchmarks (static optima, dynamic program)
  arrivals  sequence generators and trace ingestion
  metrics   regret / competitive ratio / closed-form bounds
  runner    config-driven Monte-Carlo sweeps writing CSV
"""

__version__ = "0.1.0"

from .arrivals import (ArrivalSpec, gen_adversarial_frames, gen_iid_bernoulli,
                       gen_stochastic_lower_bound, load_trace)
from .backend import BACKEND
from .model import (ArrivalSequence, CostBreakdown, CostParams, HostingLadder,
                    RunRecord, ValidationError, horizon_cost, slot_cost, validate)
from .metrics import (ArrivalStats, arrival_stats, competitive_ratio,
                      regret_adversarial, regret_stochastic, summarize,
                      theoretical_bound)
from .oracles import (StaticBenchmark, brute_force_offline, offline_optimal_dp,
                      optimal_static_realized, optimal_static_stochastic)
from .policies import AlphaRrPolicy, FtplPolicy, StaticPolicy, WftplPolicy
from .runner import ConfigError, ExperimentConfig, TrialSummary, run_experiment
from .sim import PolicySpec, simulate

__all__ = [
    "ArrivalSequence", "ArrivalSpec", "ArrivalStats", "AlphaRrPolicy", "BACKEND",
    "ConfigError", "CostBreakdown", "CostParams", "ExperimentConfig", "FtplPolicy", "HostingLadder",
    "PolicySpec", "RunRecord", "StaticBenchmark", "StaticPolicy", "TrialSummary", "ValidationError",
    "WftplPolicy", "arrival_stats", "brute_force_offline", "competitive_ratio",
    "gen_adversarial_frames", "gen_iid_bernoulli", "gen_stochastic_lower_bound",
    "horizon_cost", "load_trace", "offline_optimal_dp", "optimal_static_realized",
    "optimal_static_stochastic", "regret_adversarial", "regret_stochastic",
    "run_experiment", "simulate", "slot_cost", "summarize", "theoretical_bound",
    "validate",
]
