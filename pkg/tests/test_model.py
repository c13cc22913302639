import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgehost import (ArrivalSequence, CostParams, HostingLadder, RunRecord,
                      ValidationError, horizon_cost, slot_cost, validate)
from edgehost.model import cost_components


def test_validate_accepts_reference_setup(three_level, bernoulli_params):
    validate(three_level, bernoulli_params)


def test_rent_rate_above_cap_rejected(two_level):
    with pytest.raises(ValidationError) as exc:
        validate(two_level, CostParams(c=2.0, M=5.0, kappa=1.0))
    assert exc.value.assumption == "Assumption 1"


def test_partial_level_with_high_service_factor_rejected():
    ladder = HostingLadder.from_pairs([(0.0, 1.0), (0.5, 0.6), (1.0, 0.0)])
    with pytest.raises(ValidationError) as exc:
        validate(ladder, CostParams(c=0.45, M=5.0, kappa=1.0))
    assert exc.value.assumption == "Assumption 2"


@pytest.mark.parametrize("pairs, message", [
    ([(0.1, 1.0), (1.0, 0.0)], "first"),
    ([(0.0, 1.0), (0.5, 0.5)], "last"),
    ([(0.0, 1.0), (0.6, 0.3), (0.6, 0.2), (1.0, 0.0)], "increasing"),
    ([(0.0, 0.9), (1.0, 0.0)], "must be 1"),
    ([(0.0, 1.0), (0.4, 0.5), (0.6, 0.5), (1.0, 0.0)], "decreasing"),
])
def test_malformed_ladders_rejected(pairs, message):
    ladder = HostingLadder.from_pairs(pairs)
    with pytest.raises(ValidationError, match=message):
        validate(ladder, CostParams(c=0.2, M=5.0, kappa=1.0))


def test_fetch_cost_at_most_one_rejected(two_level):
    with pytest.raises(ValidationError, match="M"):
        validate(two_level, CostParams(c=0.2, M=1.0, kappa=1.0))


def test_slot_cost_full_fetch(two_level):
    params = CostParams(c=0.1, M=50.0, kappa=5.0)
    got = slot_cost(1, 0, 5.0, two_level, params)
    assert (got.rent, got.service, got.fetch) == (0.1, 0.0, 50.0)
    assert got.total == pytest.approx(50.1)


def test_slot_cost_forwarding_only(two_level, bernoulli_params):
    params = CostParams(c=0.1, M=50.0, kappa=5.0)
    got = slot_cost(0, 0, 3.0, two_level, params)
    assert (got.rent, got.service, got.fetch, got.total) == (0.0, 3.0, 0.0, 3.0)


def test_slot_cost_downgrade_is_free(three_level, bernoulli_params):
    got = slot_cost(1, 2, 1.0, three_level, bernoulli_params)
    assert got.rent == pytest.approx(0.225)
    assert got.service == pytest.approx(0.45)
    assert got.fetch == 0.0
    assert got.total == pytest.approx(0.675)


def test_horizon_cost_forwarding(two_level):
    params = CostParams(c=1.0, M=2.0, kappa=5.0)
    arr = ArrivalSequence(np.array([3.0, 3.0, 0.0]))
    assert horizon_cost([0, 0, 0], arr, two_level, params).total == pytest.approx(6.0)


def test_horizon_cost_host_then_drop(two_level):
    params = CostParams(c=1.0, M=2.0, kappa=5.0)
    arr = ArrivalSequence(np.array([3.0, 3.0, 0.0]))
    got = horizon_cost([1, 1, 0], arr, two_level, params)
    assert got.total == pytest.approx(4.0)
    assert got.fetch == pytest.approx(2.0)
    assert got.rent == pytest.approx(2.0)


def test_horizon_cost_empty(two_level, bernoulli_params):
    arr = ArrivalSequence(np.empty(0))
    assert horizon_cost([], arr, two_level, bernoulli_params).total == 0.0


def test_horizon_cost_length_mismatch(two_level, bernoulli_params):
    arr = ArrivalSequence(np.zeros(3))
    with pytest.raises(ValueError, match="length"):
        horizon_cost([0, 0], arr, two_level, bernoulli_params)


@st.composite
def schedule_and_requests(draw):
    T = draw(st.integers(1, 30))
    sched = draw(st.lists(st.integers(0, 2), min_size=T, max_size=T))
    r = draw(st.lists(st.floats(0.0, 1.0, allow_nan=False), min_size=T, max_size=T))
    return sched, r


@given(schedule_and_requests())
@settings(max_examples=200, deadline=None)
def test_fetch_charged_only_on_upward_moves(case):
    sched, r = case
    ladder = HostingLadder.from_pairs([(0.0, 1.0), (0.5, 0.45), (1.0, 0.0)])
    params = CostParams(c=0.45, M=5.0, kappa=1.0)
    arr = ArrivalSequence(np.array(r))
    got = horizon_cost(sched, arr, ladder, params)
    alphas = np.array([0.0] + [ladder.alphas[i] for i in sched])
    expected = params.M * float(np.sum(np.maximum(np.diff(alphas), 0.0)))
    assert got.fetch == pytest.approx(expected, rel=1e-12, abs=1e-12)


@given(schedule_and_requests(), st.integers(0, 30))
@settings(max_examples=100, deadline=None)
def test_horizon_cost_additive_over_slot_ranges(case, cut):
    sched, r = case
    cut = min(cut, len(sched))
    ladder = HostingLadder.from_pairs([(0.0, 1.0), (0.5, 0.45), (1.0, 0.0)])
    params = CostParams(c=0.45, M=5.0, kappa=1.0)
    whole = horizon_cost(sched, ArrivalSequence(np.array(r)), ladder, params)
    head = horizon_cost(sched[:cut], ArrivalSequence(np.array(r[:cut])), ladder, params)
    # tail restarts from the boundary level, not from level 0
    tail_rent, tail_service, tail_fetch = 0.0, 0.0, 0.0
    prev = sched[cut - 1] if cut > 0 else 0
    for lvl, rt in zip(sched[cut:], r[cut:]):
        piece = slot_cost(lvl, prev, rt, ladder, params)
        tail_rent += piece.rent
        tail_service += piece.service
        tail_fetch += piece.fetch
        prev = lvl
    assert whole.total == pytest.approx(head.total + tail_rent + tail_service + tail_fetch,
                                        rel=1e-9, abs=1e-9)


@given(st.integers(0, 2), st.integers(0, 2), st.floats(0.0, 1.0, allow_nan=False))
@settings(max_examples=200, deadline=None)
def test_slot_total_bounded_by_cap_plus_fetch(now, prev, r):
    ladder = HostingLadder.from_pairs([(0.0, 1.0), (0.5, 0.45), (1.0, 0.0)])
    params = CostParams(c=0.45, M=5.0, kappa=1.0)
    got = slot_cost(now, prev, r, ladder, params)
    assert got.total <= params.kappa + params.M + 1e-12


def test_run_record_cumulative_matches_per_slot(three_level, bernoulli_params):
    sched = np.array([0, 2, 2, 1, 0])
    r = np.array([1.0, 0.0, 1.0, 1.0, 0.0])
    rent, service, fetch = cost_components(sched, r, three_level, bernoulli_params)
    rec = RunRecord(policy="x", schedule=sched, rent=rent, service=service, fetch=fetch)
    parts = rec.per_slot()
    assert rec.cumulative.rent == pytest.approx(sum(p.rent for p in parts))
    assert rec.cumulative.service == pytest.approx(sum(p.service for p in parts))
    assert rec.cumulative.fetch == pytest.approx(sum(p.fetch for p in parts))
    assert rec.fetch_count == 1
