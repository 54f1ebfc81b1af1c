"""
Strategies for both sides of the painting game.

Alice's w-strategy runs as a stack of frames. A 1-frame paints root, root0,
root00, ... forever. A w-frame paints its root, then runs a (w-1)-frame in the
subtree root1. Once w-1 strings of one length inside that subtree carry both
colours, the inner run is stopped, the zero chain root0, ..., root0^m is painted
with m exceeding every length the frame has painted, and a fresh (w-1)-frame
starts at root0^m1.
"""

import abc
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Deque, Dict, Iterable, List, Optional, Tuple

from aitgl.exceptions import UsageError
from aitgl.models.bitstring import ROOT, BitString
from aitgl.models.experiment import GameMoveRecord, MoveKind, Player
from aitgl.services.game_engine import GameState, Move
from aitgl.services.toy_machine import Dovetailer
from aitgl.storage.trace_store import TraceStore
from aitgl.utils.logger import logger


class FramePhase(str, Enum):
    START = "start"
    RUN = "run"
    ZERO = "zero"


@dataclass
class Frame:
    root: BitString
    w: int
    phase: FramePhase = FramePhase.START
    zero_len: int = 0
    target: int = 0
    max_painted: int = 0
    inner_root: Optional[BitString] = None
    inner_counts: Counter = field(default_factory=Counter)
    inner_best: int = 0

    def inner_won(self) -> bool:
        return self.phase is FramePhase.RUN and self.inner_best >= self.w - 1


class AliceStrategy:
    """Recursive w-strategy, rebased at each frame's subtree root"""

    def __init__(self, w: int, root: BitString = ROOT):
        if w < 1:
            raise ValueError(f"w must be at least 1, got {w}")
        self.w = w
        self.frames: List[Frame] = [Frame(root=root, w=w)]
        self._coincidences_seen = 0
        self.restarts = 0

    @property
    def roots(self) -> Tuple[BitString, ...]:
        return tuple(frame.root for frame in self.frames)

    def _absorb_coincidences(self, state: GameState) -> None:
        for x in state.coincidences[self._coincidences_seen:]:
            for frame in self.frames:
                if frame.phase is FramePhase.RUN and x.startswith(frame.inner_root):
                    frame.inner_counts[len(x)] += 1
                    frame.inner_best = max(frame.inner_best, frame.inner_counts[len(x)])
        self._coincidences_seen = len(state.coincidences)

        for depth, frame in enumerate(self.frames):
            if frame.inner_won():
                del self.frames[depth + 1:]
                frame.phase = FramePhase.ZERO
                frame.target = frame.max_painted + 1
                frame.inner_counts = Counter()
                frame.inner_best = 0
                self.restarts += 1
                logger.debug(
                    f"Frame w={frame.w} at {frame.root!r} stopped its inner run; zero chain to {frame.target}"
                )
                break

    def _start_inner(self, frame: Frame, inner_root: BitString) -> None:
        frame.phase = FramePhase.RUN
        frame.inner_root = inner_root
        self.frames.append(Frame(root=inner_root, w=frame.w - 1))

    def next_move(self, state: GameState) -> Move:
        self._absorb_coincidences(state)
        top = self.frames[-1]
        roots = self.roots

        if top.w == 1:
            x = top.root + "0" * top.zero_len
            top.zero_len += 1
        elif top.phase is FramePhase.START:
            x = top.root
            self._start_inner(top, top.root + "1")
        else:
            top.zero_len += 1
            x = top.root + "0" * top.zero_len
            if top.zero_len == top.target:
                self._start_inner(top, x + "1")

        for frame in self.frames:
            if x.startswith(frame.root):
                frame.max_painted = max(frame.max_painted, len(x) - len(frame.root))
        return Move.paint(x, roots)


def alice_next(strategy: AliceStrategy, state: GameState) -> Move:
    return strategy.next_move(state)


class BaseBob(abc.ABC):
    """Base class for all Bob strategies"""

    name = "bob"

    @abc.abstractmethod
    def next_move(self, state: GameState) -> Move:
        pass


class PassBob(BaseBob):
    name = "pass"

    def next_move(self, state: GameState) -> Move:
        return Move.pass_()


class CopycatBob(BaseBob):
    """Repaints Alice's strings in the order she painted them, one per turn"""

    name = "copycat"

    def __init__(self):
        self._cursor = 0

    def next_move(self, state: GameState) -> Move:
        green = list(state.green)
        while self._cursor < len(green):
            x = green[self._cursor]
            self._cursor += 1
            if x not in state.red:
                return Move.paint(x)
        return Move.pass_()


class BobBlind(BaseBob):
    """Paints x of length n once some TRM-1 program shorter than f_m prints x on n.

    One dovetailing round per turn; discoveries queue up and are painted one per
    turn in discovery order.
    """

    def __init__(self, f_m: int, budget: Optional[int] = None):
        self.name = f"blind:{f_m}"
        self.f_m = f_m
        self.dovetailer = Dovetailer(max(f_m - 1, 0), budget=budget)
        self.queue: Deque[BitString] = deque()
        self.painted_per_length: Counter = Counter()

    def next_move(self, state: GameState) -> Move:
        self.queue.extend(d.string for d in self.dovetailer.advance())
        if not self.queue:
            return Move.pass_()
        x = self.queue.popleft()
        self.painted_per_length[len(x)] += 1
        return Move.paint(x)


def bob_blind_next(bob: BobBlind, state: GameState) -> Move:
    return bob.next_move(state)


class ChaserBob(BaseBob):
    """Paints the lex-first green string of the deepest length where it is not yet red"""

    name = "chaser"

    def next_move(self, state: GameState) -> Move:
        for n in range(max(state.lexfirst_green, default=-1), -1, -1):
            x = state.lexfirst_green.get(n)
            if x is not None and x not in state.red:
                return Move.paint(x)
        return Move.pass_()


class RandomBob(BaseBob):
    """Seeded adversary mixing repaints of green strings, fresh strings and passes"""

    def __init__(self, seed: int):
        self.name = f"random:{seed}"
        self.rng = random.Random(seed)

    def next_move(self, state: GameState) -> Move:
        roll = self.rng.random()
        if roll < 0.2:
            return Move.pass_()
        if roll < 0.7 and state.green:
            return Move.paint(self.rng.choice(list(state.green)))
        reach = max(state.lexfirst_green, default=0) + 1
        n = self.rng.randint(0, reach)
        return Move.paint(format(self.rng.getrandbits(n), f"0{n}b") if n else "")


class ScriptBob(BaseBob):
    """Paints a fixed list of strings in order, then passes"""

    def __init__(self, strings: Iterable[BitString], name: str = "script"):
        self.name = name
        self.script: Deque[BitString] = deque(strings)

    def next_move(self, state: GameState) -> Move:
        if self.script:
            return Move.paint(self.script.popleft())
        return Move.pass_()


def build_bob(spec: str, budget: Optional[int] = None) -> BaseBob:
    """Bob strategy from its command-line form"""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "pass" and not arg:
            return PassBob()
        if kind == "copycat" and not arg:
            return CopycatBob()
        if kind == "chaser" and not arg:
            return ChaserBob()
        if kind == "blind":
            return BobBlind(int(arg), budget=budget)
        if kind == "random":
            return RandomBob(int(arg))
        if kind == "script":
            return ScriptBob(arg.split(","), name=spec)
        if kind == "file" and arg:
            return ScriptBob((r["s"] for r in TraceStore.read_string_records(Path(arg))), name=spec)
    except (ValueError, KeyError, OSError) as e:
        raise UsageError(f"cannot build Bob from {spec!r}: {str(e)}", "--bob")
    raise UsageError(f"unknown Bob strategy {spec!r}", "--bob")


def subrun_length_ranges(moves: Iterable[GameMoveRecord]) -> Dict[Tuple[BitString, ...], Tuple[int, int]]:
    """Length range [lo, hi] of Alice's paints per strategy run, keyed by the run's frame roots"""
    ranges: Dict[Tuple[BitString, ...], Tuple[int, int]] = {}
    for move in moves:
        if move.player is not Player.ALICE or move.move is not MoveKind.PAINT or not move.frames:
            continue
        for depth in range(1, len(move.frames) + 1):
            key = tuple(move.frames[:depth])
            lo, hi = ranges.get(key, (move.len, move.len))
            ranges[key] = (min(lo, move.len), max(hi, move.len))
    return ranges


def overlapping_subruns(moves: Iterable[GameMoveRecord]) -> List[Tuple[Tuple[BitString, ...], Tuple[BitString, ...]]]:
    """Pairs of sibling runs whose painted length ranges intersect"""
    ranges = subrun_length_ranges(moves)
    clashes = []
    keys = sorted(ranges)
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            if len(a) == len(b) and a[:-1] == b[:-1]:
                (lo_a, hi_a), (lo_b, hi_b) = ranges[a], ranges[b]
                if lo_a <= hi_b and lo_b <= hi_a:
                    clashes.append((a, b))
    return clashes
