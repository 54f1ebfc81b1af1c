"""
TRM-1, the fixed reference machine behind every ``p(n)`` in the workbench.

A program is a bit string ``mode . payload`` with a 2-bit mode:

  00  payload repeated cyclically, truncated to n (empty payload gives 0^n); n steps
  01  first n bits of payload . 0^inf; n steps
  10  the payload itself, whatever n is; l(payload) + 1 steps
  11  1^n after (val(payload) + 1) * (n + 1) * 16 steps, val(empty) = 0

Programs shorter than two bits never halt.
"""

import heapq
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from aitgl.models.bitstring import BitString, StringSet, iter_strings, shortlex_key
from aitgl.utils.logger import logger

STEP_UNIT = 16
MIN_PROGRAM_LENGTH = 2


class ProgramMode(str, Enum):
    CYCLIC = "00"
    PADDED = "01"
    CONSTANT = "10"
    ONES = "11"


ALL_MODES: Tuple[ProgramMode, ...] = tuple(ProgramMode)


class OutcomeKind(str, Enum):
    OUTPUT = "output"
    OUT_OF_BUDGET = "out_of_budget"
    INVALID_PROGRAM = "invalid_program"


@dataclass(frozen=True)
class ToyProgram:
    mode: ProgramMode
    payload: BitString = ""

    @property
    def raw(self) -> BitString:
        return self.mode.value + self.payload

    def __len__(self) -> int:
        return len(self.raw)

    def __str__(self) -> str:
        return self.raw


@dataclass(frozen=True)
class RunOutcome:
    kind: OutcomeKind
    output: Optional[BitString] = None
    steps: Optional[int] = None

    @property
    def halted(self) -> bool:
        return self.kind is OutcomeKind.OUTPUT


class Discovery(NamedTuple):
    round: int
    string: BitString
    program: BitString


def parse_program(raw: BitString) -> Optional[ToyProgram]:
    """Split raw into mode and payload; None when raw is too short to halt"""
    if len(raw) < MIN_PROGRAM_LENGTH:
        return None
    return ToyProgram(ProgramMode(raw[:2]), raw[2:])


def program_cost(p: ToyProgram, n: int) -> int:
    if p.mode is ProgramMode.CONSTANT:
        return len(p.payload) + 1
    if p.mode is ProgramMode.ONES:
        value = int(p.payload, 2) if p.payload else 0
        return (value + 1) * (n + 1) * STEP_UNIT
    return n


def _output(p: ToyProgram, n: int) -> BitString:
    if p.mode is ProgramMode.CYCLIC:
        if not p.payload:
            return "0" * n
        repeats = n // len(p.payload) + 1
        return (p.payload * repeats)[:n]
    if p.mode is ProgramMode.PADDED:
        return (p.payload + "0" * n)[:n]
    if p.mode is ProgramMode.CONSTANT:
        return p.payload
    return "1" * n


def run_program(p: Union[ToyProgram, BitString], n: int, budget: int) -> RunOutcome:
    """Run p on input n with a step budget; deterministic"""
    if budget < 1:
        raise ValueError(f"budget must be at least 1, got {budget}")
    if not isinstance(p, ToyProgram):
        parsed = parse_program(p)
        if parsed is None:
            return RunOutcome(OutcomeKind.INVALID_PROGRAM)
        p = parsed
    cost = program_cost(p, n)
    if cost > budget:
        return RunOutcome(OutcomeKind.OUT_OF_BUDGET)
    return RunOutcome(OutcomeKind.OUTPUT, _output(p, n), cost)


def iter_programs(max_len: int) -> Iterator[ToyProgram]:
    """Every program of length <= max_len in shortlex order"""
    for raw in iter_strings(max_len):
        p = parse_program(raw)
        if p is not None:
            yield p


class Dovetailer:
    """Round-by-round simulation of all programs of length <= max_program_len.

    In round r every program runs on every n <= r with budget min(r, budget);
    strings whose length equals their input are reported the first time they
    appear, in shortlex order within a round. A pair (p, n) first succeeds in
    round max(1, n, cost(p, n)), which is nondecreasing in n, so a heap keyed on
    that round replays the schedule without re-running earlier pairs.
    """

    def __init__(
        self,
        max_program_len: int,
        budget: Optional[int] = None,
        max_len: Optional[int] = None,
    ):
        self.max_program_len = max_program_len
        self.budget = budget
        self.max_len = max_len
        self.round = 0
        self.programs: List[ToyProgram] = list(iter_programs(max_program_len))
        self._seen: set = set()
        self._heap: List[Tuple[int, int, int]] = []
        for index, program in enumerate(self.programs):
            self._schedule(index, self._first_input(program))

    def _first_input(self, p: ToyProgram) -> int:
        return len(p.payload) if p.mode is ProgramMode.CONSTANT else 0

    def _schedule(self, index: int, n: int) -> None:
        if self.max_len is not None and n > self.max_len:
            return
        cost = program_cost(self.programs[index], n)
        if self.budget is not None and cost > self.budget:
            return
        heapq.heappush(self._heap, (max(1, n, cost), index, n))

    @property
    def exhausted(self) -> bool:
        return not self._heap

    def advance(self) -> List[Discovery]:
        """Run one more round and return its new strings"""
        self.round += 1
        found: Dict[BitString, int] = {}
        while self._heap and self._heap[0][0] <= self.round:
            _, index, n = heapq.heappop(self._heap)
            program = self.programs[index]
            x = _output(program, n)
            if x not in self._seen and (x not in found or index < found[x]):
                found[x] = index
            if program.mode is not ProgramMode.CONSTANT:
                self._schedule(index, n + 1)
        self._seen.update(found)
        batch = [
            Discovery(self.round, x, self.programs[found[x]].raw)
            for x in sorted(found, key=shortlex_key)
        ]
        if batch:
            logger.debug(f"Dovetail round {self.round}: {len(batch)} new strings")
        return batch

    def discoveries(self, max_round: Optional[int] = None) -> Iterator[Discovery]:
        """All remaining discoveries, skipping rounds in which nothing halts"""
        while self._heap:
            next_round = self._heap[0][0]
            if max_round is not None and next_round > max_round:
                break
            self.round = max(self.round, next_round - 1)
            yield from self.advance()


def enumerate_S(k: int, budget: int, max_len: int) -> StringSet:
    """{x : l(x) <= max_len, some p with l(p) <= k has p(l(x)) = x within budget},
    in dovetailing order"""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    dovetailer = Dovetailer(k, budget=budget, max_len=max_len)
    members = StringSet(d.string for d in dovetailer.discoveries())
    logger.debug(f"enumerate_S(k={k}, budget={budget}, max_len={max_len}) -> {len(members)} strings")
    return members


def _smallest_period(x: BitString) -> int:
    """Smallest period of a nonempty x.

    A period p <= l(x) - m must repeat the first m bits at offset p, so
    candidates are found with str.find before the full comparison.
    """
    n = len(x)
    m = min(n, 32)
    head = x[:m]
    p = x.find(head, 1)
    while p != -1 and p <= n - m:
        if x[p:] == x[: n - p]:
            return p
        p = x.find(head, p + 1)
    return next(p for p in range(max(1, n - m + 1), n + 1) if x[p:] == x[: n - p])


def _mode_candidates(
    x: BitString, n: int, budget: int, modes: Iterable[ProgramMode]
) -> List[ToyProgram]:
    """For each mode, the shortest program of that mode printing x on n, if any"""
    candidates: List[ToyProgram] = []
    for mode in modes:
        if mode is ProgramMode.CONSTANT:
            if len(x) + 1 <= budget:
                candidates.append(ToyProgram(mode, x))
            continue
        if len(x) != n:
            continue
        if mode is ProgramMode.CYCLIC and n <= budget:
            period = _smallest_period(x) if "1" in x else 0
            candidates.append(ToyProgram(mode, x[:period]))
        elif mode is ProgramMode.PADDED and n <= budget:
            candidates.append(ToyProgram(mode, x.rstrip("0")))
        elif mode is ProgramMode.ONES and x == "1" * n and (n + 1) * STEP_UNIT <= budget:
            candidates.append(ToyProgram(mode, ""))
    return candidates


def find_witness(
    x: BitString,
    n: int,
    k_max: int,
    budget: int,
    modes: Sequence[ProgramMode] = ALL_MODES,
) -> Optional[ToyProgram]:
    """Shortlex-first shortest program of length <= k_max with p(n) = x"""
    candidates = _mode_candidates(x, n, budget, modes)
    best = min(candidates, key=lambda p: shortlex_key(p.raw), default=None)
    if best is None or len(best) > k_max:
        return None
    return best


def min_program_length(x: BitString, n: int, k_max: int, budget: int) -> Optional[int]:
    """Budgeted upper approximation of C(x|n), capped at k_max"""
    if k_max < 0:
        raise ValueError(f"k_max must be nonnegative, got {k_max}")
    witness = find_witness(x, n, k_max, budget)
    return len(witness) if witness is not None else None


def find_uniform_witness(
    targets: Dict[int, BitString], k_max: int, budget: int
) -> Optional[ToyProgram]:
    """Shortest single program with p(n) = targets[n] for every n in targets"""
    if not targets:
        return None
    top = max(targets)
    modes = ALL_MODES if len(targets) == 1 else tuple(m for m in ALL_MODES if m is not ProgramMode.CONSTANT)
    for candidate in sorted(_mode_candidates(targets[top], top, budget, modes), key=lambda p: shortlex_key(p.raw)):
        if len(candidate) > k_max:
            break
        if all(run_program(candidate, n, budget).output == x for n, x in targets.items()):
            return candidate
        logger.debug(f"Candidate {candidate.raw} fails below n={top}; targets are not prefix-monotone")
    return None
