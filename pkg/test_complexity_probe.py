import math

import pytest
from hypothesis import given, settings, strategies as st

from aitgl.models.experiment import EstimateMode
from aitgl.services.complexity_probe import (
    Alternating,
    FinitePath,
    Ones,
    Zeros,
    build_sequence,
    default_k_max,
    estimate_C_seq,
    estimate_Cinf_seq,
    estimate_M,
    estimate_Minf_seq,
    estimate_Minf_string,
)
from aitgl.services.toy_machine import run_program

BUDGET = 10_000


def test_sequences():
    assert Zeros()(4) == "0000"
    assert Ones()(3) == "111"
    assert Alternating()(5) == "01010"
    assert FinitePath("0110")(2) == "01"
    with pytest.raises(IndexError):
        FinitePath("0110")(5)


def test_finite_path_from_chain():
    assert FinitePath.from_chain(["", "1", "10"]).bits == "10"
    assert len(FinitePath.from_chain([])) == 0
    with pytest.raises(ValueError):
        FinitePath.from_chain(["", "1", "00"])


def test_estimate_M():
    zeros = estimate_M(Zeros(), 8, 10, BUDGET)
    assert zeros.value == 2
    assert zeros.witness == "00"

    alt = estimate_M(Alternating(), 8, 10, BUDGET)
    assert alt.value == 4
    assert alt.witness == "0001"
    assert alt.mode is EstimateMode.M
    assert alt.direction == "upper_bound"


def test_estimate_M_reports_missing_witness():
    estimate = estimate_M(FinitePath("0110100110010110"), 12, 4, BUDGET)
    assert estimate.value is None
    assert estimate.note


def test_estimate_Minf_seq():
    assert estimate_Minf_seq(Zeros(), 4, 8, 10, BUDGET).value == 2
    assert estimate_Minf_seq(Ones(), 4, 8, 10, BUDGET).value == 2
    with pytest.raises(ValueError):
        estimate_Minf_seq(Zeros(), 8, 4, 10, BUDGET)


def test_estimate_Minf_string():
    one = estimate_Minf_string("1", 10, 10, BUDGET)
    assert one.value == 3
    assert one.witness == "101"
    assert one.n_range == (5, 10)

    root = estimate_Minf_string("", 6, 10, BUDGET)
    assert root.value == 2
    assert root.witness == "10"

    with pytest.raises(ValueError):
        estimate_Minf_string("0110", 3, 10, BUDGET)


def test_estimate_C_seq():
    assert estimate_C_seq(Alternating(), 8, 10, BUDGET).witness == "0001"
    assert estimate_C_seq(Ones(), 8, 10, BUDGET).witness == "11"
    assert estimate_Cinf_seq(Zeros(), 4, 8, 10, BUDGET).value == 2


def test_uniform_estimate_respects_k_max():
    path = FinitePath("1011")
    m = estimate_M(path, 3, 10, BUDGET)
    assert (m.value, m.witness, m.n) == (4, "0010", 3)
    assert estimate_C_seq(path, 3, 3, BUDGET).value is None
    assert estimate_C_seq(path, 3, 8, BUDGET).witness == "0010"


@settings(max_examples=50, deadline=None)
@given(st.text(alphabet="01", min_size=1, max_size=10))
def test_estimates_are_ordered(bits):
    path = FinitePath(bits)
    n = len(bits)
    k_max = default_k_max(n)
    m = estimate_M(path, n, k_max, BUDGET)
    minf = estimate_Minf_seq(path, (n + 1) // 2, n, k_max, BUDGET)
    assert minf.value <= m.value
    c = estimate_C_seq(path, n, k_max + 2, BUDGET)
    if c.value is not None:
        assert m.value <= c.value
    assert run_program(m.witness, m.n, BUDGET).output == bits[: m.n]


def test_build_sequence():
    assert isinstance(build_sequence("zeros"), Zeros)
    assert isinstance(build_sequence("alt"), Alternating)
    assert build_sequence("game-trace:x.jsonl", ["", "0"]).bits == "0"
    with pytest.raises(ValueError):
        build_sequence("game-trace:x.jsonl")
    with pytest.raises(ValueError):
        build_sequence("primes")


def upper_bound(estimate):
    return math.inf if estimate.value is None else estimate.value


sequences = st.one_of(
    st.sampled_from([Zeros(), Ones(), Alternating()]),
    st.text(alphabet="01", min_size=8, max_size=8).map(FinitePath),
)
budgets = st.sampled_from([1, 5, 20, 60, 300, 10_000])


@settings(max_examples=80, deadline=None, derandomize=True)
@given(sequences, st.integers(1, 8), st.integers(0, 10), st.integers(0, 4), budgets, budgets)
def test_estimates_shrink_with_budget_and_k_max(seq, N, k_max, extra_k, b1, b2):
    low, high = sorted((b1, b2))
    lo = (N + 1) // 2
    x = seq(lo)
    pairs = [
        (estimate_M(seq, N, k_max, low), estimate_M(seq, N, k_max + extra_k, high)),
        (estimate_Minf_seq(seq, lo, N, k_max, low), estimate_Minf_seq(seq, lo, N, k_max + extra_k, high)),
        (estimate_Minf_string(x, N, k_max, low), estimate_Minf_string(x, N, k_max + extra_k, high)),
    ]
    for small, large in pairs:
        assert upper_bound(large) <= upper_bound(small)


@settings(max_examples=80, deadline=None, derandomize=True)
@given(sequences, st.integers(1, 8), st.integers(0, 7), st.integers(0, 12), budgets)
def test_window_maximum_is_below_the_uniform_program(seq, N_hi, width, k_max, budget):
    N_lo = max(N_hi - width, 1)
    minf = estimate_Minf_seq(seq, N_lo, N_hi, k_max, budget)
    cinf = estimate_Cinf_seq(seq, N_lo, N_hi, k_max, budget)
    assert upper_bound(minf) <= upper_bound(cinf)
    if cinf.value is not None:
        for n in range(N_lo, N_hi + 1):
            assert run_program(cinf.witness, n, budget).output == seq(n)
