import pytest
from hypothesis import given, settings, strategies as st

from aitgl.models.bitstring import shortlex_key, width_of
from aitgl.services.toy_machine import (
    Dovetailer,
    OutcomeKind,
    ProgramMode,
    ToyProgram,
    enumerate_S,
    find_uniform_witness,
    find_witness,
    iter_programs,
    min_program_length,
    parse_program,
    program_cost,
    run_program,
)

bits = st.text(alphabet="01", max_size=6)


def test_parse_program():
    assert parse_program("00101") == ToyProgram(ProgramMode.CYCLIC, "101")
    assert parse_program("1") is None
    assert parse_program("") is None
    assert parse_program("10") == ToyProgram(ProgramMode.CONSTANT, "")


def test_run_program_modes():
    assert run_program("0010", 5, 100).output == "10101"
    assert run_program("01101", 5, 100).output == "10100"
    assert run_program("10110", 0, 100).output == "110"
    assert run_program("11", 3, 100).output == "111"
    assert run_program("00", 4, 100).output == "0000"


def test_run_program_budget():
    outcome = run_program("111", 3, 50)
    assert outcome.kind is OutcomeKind.OUT_OF_BUDGET
    assert outcome.output is None
    assert program_cost(parse_program("111"), 3) == 128
    assert run_program("111", 3, 128).output == "111"
    assert run_program("1", 3, 100).kind is OutcomeKind.INVALID_PROGRAM
    with pytest.raises(ValueError):
        run_program("00", 1, 0)


def test_enumerate_S_small():
    assert enumerate_S(1, 10_000, 8) == set()
    assert enumerate_S(2, 10_000, 3) == {"", "0", "00", "000", "1", "11", "111"}
    assert width_of(enumerate_S(2, 10_000, 8)) == 2


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_enumerate_S_width_bound(k):
    s = enumerate_S(k, 100_000, 32)
    for n in range(33):
        assert s.count_at(n) < 2 ** (k + 1)
        assert s.count_at(n) == len(s.at_length(n))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.integers(1, 400), st.integers(0, 400), st.integers(0, 6))
def test_enumerate_S_grows_with_budget(k, budget, extra, max_len):
    small = enumerate_S(k, budget, max_len).as_frozenset()
    large = enumerate_S(k, budget + extra, max_len).as_frozenset()
    assert small <= large


def test_enumerate_S_deterministic():
    assert enumerate_S(4, 5_000, 10).members == enumerate_S(4, 5_000, 10).members


def test_dovetailer_matches_round_by_round_simulation():
    k, max_len, rounds = 3, 4, 200
    expected = []
    seen = set()
    programs = list(iter_programs(k))
    for r in range(1, rounds + 1):
        found = {}
        for p in programs:
            for n in range(min(r, max_len) + 1):
                outcome = run_program(p, n, r)
                x = outcome.output
                if outcome.halted and len(x) == n and x not in seen and x not in found:
                    found[x] = p.raw
        seen.update(found)
        expected.extend((r, x, found[x]) for x in sorted(found, key=shortlex_key))

    got = [tuple(d) for d in Dovetailer(k, max_len=max_len).discoveries(max_round=rounds)]
    assert got == expected


def test_dovetailer_advance_one_round_at_a_time():
    dovetailer = Dovetailer(2, max_len=2)
    first = dovetailer.advance()
    assert dovetailer.round == 1
    assert [d.string for d in first] == ["", "0"]
    assert [d.program for d in first] == ["00", "00"]
    assert [d.string for d in dovetailer.advance()] == ["00"]
    assert dovetailer.round == 2


def test_min_program_length_examples():
    assert min_program_length("000", 3, 8, 10_000) == 2
    assert find_witness("000", 3, 8, 10_000).raw == "00"
    assert min_program_length("1", 7, 8, 10_000) == 3
    assert find_witness("1", 7, 8, 10_000).raw == "101"
    assert min_program_length("01", 3, 4, 10_000) == 4
    assert find_witness("01", 3, 4, 10_000).raw == "1001"
    assert min_program_length("01", 3, 3, 10_000) is None


def test_min_program_length_period_search():
    assert find_witness("0101010", 7, 16, 10_000).raw == "0001"
    assert find_witness("1101101", 7, 16, 10_000).raw == "00110"
    assert find_witness("1" * 40 + "0", 41, 64, 10_000).raw == "01" + "1" * 40
    assert find_witness("10" * 40, 80, 64, 10_000).raw == "0010"


@settings(max_examples=300, deadline=None)
@given(bits, st.integers(0, 7), st.integers(0, 8), st.sampled_from([1, 3, 6, 40, 200, 10_000]))
def test_find_witness_matches_exhaustive_search(x, n, k_max, budget):
    expected = next(
        (p.raw for p in iter_programs(k_max) if run_program(p, n, budget).output == x),
        None,
    )
    witness = find_witness(x, n, k_max, budget)
    assert (witness.raw if witness else None) == expected


@settings(max_examples=100, deadline=None)
@given(bits, st.integers(0, 7))
def test_witness_reruns_to_its_string(x, n):
    witness = find_witness(x, n, 16, 10_000)
    assert witness is not None
    assert run_program(witness, n, 10_000).output == x


def test_absent_from_S_means_no_short_program():
    s = enumerate_S(3, 10_000, 4)
    for n in range(5):
        for x in ("0110"[:n], "1011"[:n], "0100"[:n]):
            length = min_program_length(x, n, 3, 10_000)
            assert (length is not None) == (x in s)


def test_find_uniform_witness():
    targets = {n: ("01" * n)[:n] for n in range(1, 9)}
    assert find_uniform_witness(targets, 8, 10_000).raw == "0001"
    # no single program prints 1 on n=1 and 00 on n=2
    assert find_uniform_witness({1: "1", 2: "00"}, 8, 10_000) is None
    assert find_uniform_witness({5: "1"}, 8, 10_000).raw == "101"
    assert find_uniform_witness({}, 8, 10_000) is None


def test_dovetailer_exhausts_under_a_budget():
    dovetailer = Dovetailer(3, budget=100, max_len=5)
    assert not dovetailer.exhausted
    found = [d.string for d in dovetailer.discoveries()]
    assert dovetailer.exhausted
    assert found == list(enumerate_S(3, 100, 5))
