"""
Online token algorithm: label the infinite paths of a leafless width-w set T
with at most w tokens while T is being enumerated.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set

from aitgl.exceptions import CapacityOverflowError, DuplicateObservationError, InvariantBreach
from aitgl.models.bitstring import BitString, StringSet, consistent, is_prefix, maximal_paths
from aitgl.models.experiment import TokenEventKind, TokenEventRecord
from aitgl.utils.logger import logger


@dataclass
class TokenBoard:
    """Distinguished vertices, each holding one token.

    Distinguished vertices stay pairwise inconsistent; every observed string is
    a prefix of one of them; tokens only move to descendants.
    """

    w: int
    distinguished: Dict[BitString, int] = field(default_factory=dict)
    next_token: int = 1
    history: Dict[int, List[BitString]] = field(default_factory=dict)
    observed: Set[BitString] = field(default_factory=set)
    events: List[TokenEventRecord] = field(default_factory=list)

    @property
    def tokens_used(self) -> int:
        return self.next_token - 1

    def position(self, token: int) -> Optional[BitString]:
        trail = self.history.get(token)
        return trail[-1] if trail else None

    def observe(self, x: BitString) -> TokenEventRecord:
        if x in self.observed:
            raise DuplicateObservationError(f"string {x!r} was already observed")
        step = len(self.events) + 1
        self.observed.add(x)

        if any(is_prefix(x, y) for y in self.distinguished):
            event = TokenEventRecord(step=step, observed=x, event=TokenEventKind.NO_OP)
        else:
            below = [y for y in self.distinguished if is_prefix(y, x)]
            if len(below) > 1:
                raise InvariantBreach(
                    "pairwise_inconsistent",
                    f"{x!r} extends {len(below)} distinguished vertices {below}",
                    step,
                )
            if below:
                source = below[0]
                token = self.distinguished.pop(source)
                event = TokenEventRecord(
                    step=step, observed=x, event=TokenEventKind.MOVED, token=token, from_=source, to=x
                )
            else:
                token = self.next_token
                if token > self.w:
                    raise CapacityOverflowError(self.w, step)
                self.next_token += 1
                self.history[token] = []
                event = TokenEventRecord(step=step, observed=x, event=TokenEventKind.PLACED, token=token, to=x)
            self.distinguished[x] = token
            self.history[token].append(x)

        self.events.append(event)
        logger.debug(f"Token board step {step}: {event.event.value} {x!r}")
        return event

    def decode_path(self, i: int, n: int) -> Optional[BitString]:
        """First n bits of token i's position, or None while it is not yet long enough"""
        if i < 1:
            raise ValueError(f"token ids start at 1, got {i}")
        where = self.position(i)
        if where is None or len(where) < n:
            return None
        return where[:n]

    def check_invariants(self) -> None:
        """Raise InvariantBreach when the board state is corrupt"""
        vertices = sorted(self.distinguished)
        for a in vertices:
            for b in vertices:
                if a != b and consistent(a, b):
                    raise InvariantBreach("pairwise_inconsistent", f"{a!r} and {b!r} are consistent")
        for x in self.observed:
            if not any(is_prefix(x, y) for y in vertices):
                raise InvariantBreach("covered", f"{x!r} is not a prefix of a distinguished vertex")
        for token, trail in self.history.items():
            for prev, cur in zip(trail, trail[1:]):
                if not (is_prefix(prev, cur) and len(cur) > len(prev)):
                    raise InvariantBreach("monotone_moves", f"token {token} moved from {prev!r} to {cur!r}")


def observe(board: TokenBoard, x: BitString) -> TokenEventRecord:
    return board.observe(x)


def decode_path(board: TokenBoard, i: int, n: int) -> Optional[BitString]:
    return board.decode_path(i, n)


def replay(strings: Iterable[BitString], w: int) -> TokenBoard:
    """Feed strings to a fresh board in the given order"""
    board = TokenBoard(w=w)
    for x in strings:
        board.observe(x)
    return board


def label_bits(w: int) -> int:
    """Bits needed to name one of w tokens"""
    return math.ceil(math.log2(w)) if w > 1 else 0


def label_paths(T: StringSet, w: int, depth: int, order: Optional[Iterable[BitString]] = None) -> Dict[BitString, int]:
    """Token id for the endpoint of every maximal path of T.

    T is replayed in the given order (shortlex by default); every token ends at
    depth on exactly one maximal path.
    """
    strings = list(order) if order is not None else T.shortlex()
    board = replay(strings, w)
    labels: Dict[BitString, int] = {}
    for path in maximal_paths(T, depth):
        holders = [token for y, token in board.distinguished.items() if y == path.end]
        if len(holders) != 1:
            raise InvariantBreach("path_labels", f"path ending at {path.end!r} holds tokens {holders}")
        labels[path.end] = holders[0]
    logger.info(f"Labelled {len(labels)} paths with {board.tokens_used} tokens ({label_bits(w)} bits)")
    return labels
