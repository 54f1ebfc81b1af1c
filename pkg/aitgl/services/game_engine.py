"""
Referee for the string-painting game.

Alice paints green, Bob paints red; on each ply the player to move paints one
string or passes. Alice may own at most w distinct strings of any one length.
She wins outright once w strings of one length carry both colours; the second
win condition (her lex-first green path is red only finitely often) is only
reported as a finite-horizon diagnostic.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Protocol, Tuple

from aitgl.exceptions import RuleViolation, WrongTurnError
from aitgl.models.bitstring import BitString, StringSet
from aitgl.models.experiment import DiagnosticRecord, GameMoveRecord, MoveKind, Player
from aitgl.utils.logger import logger


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    string: Optional[BitString] = None
    frames: Optional[Tuple[BitString, ...]] = None

    @classmethod
    def paint(cls, x: BitString, frames: Optional[Tuple[BitString, ...]] = None) -> "Move":
        return cls(MoveKind.PAINT, x, frames)

    @classmethod
    def pass_(cls) -> "Move":
        return cls(MoveKind.PASS)


@dataclass
class GameState:
    w: int
    turn: Player = Player.ALICE
    green: Dict[BitString, int] = field(default_factory=dict)
    red: Dict[BitString, int] = field(default_factory=dict)
    alice_quota: Counter = field(default_factory=Counter)
    move_log: List[GameMoveRecord] = field(default_factory=list)
    coincidences: List[BitString] = field(default_factory=list)
    coincidence_counts: Counter = field(default_factory=Counter)
    lexfirst_green: Dict[int, BitString] = field(default_factory=dict)
    won_at: Optional[int] = None

    @property
    def ply(self) -> int:
        return len(self.move_log)

    def apply_move(self, player: Player, move: Move) -> "GameState":
        """Referee one ply; repainting an owned string is a no-op"""
        if player is not self.turn:
            raise WrongTurnError(f"{player.value} moved on {self.turn.value}'s turn at ply {self.ply + 1}")
        ply = self.ply + 1
        x = move.string
        if move.kind is MoveKind.PAINT:
            if x is None:
                raise ValueError("paint move without a string")
            own, other = (self.green, self.red) if player is Player.ALICE else (self.red, self.green)
            if x not in own:
                if player is Player.ALICE:
                    if self.alice_quota[len(x)] + 1 > self.w:
                        raise RuleViolation(len(x), self.w, ply)
                    self.alice_quota[len(x)] += 1
                    current = self.lexfirst_green.get(len(x))
                    if current is None or x < current:
                        self.lexfirst_green[len(x)] = x
                own[x] = ply
                if x in other:
                    self.coincidences.append(x)
                    self.coincidence_counts[len(x)] += 1
                    if self.coincidence_counts[len(x)] >= self.w and (self.won_at is None or len(x) < self.won_at):
                        self.won_at = len(x)

        self.move_log.append(
            GameMoveRecord(
                ply=ply,
                player=player,
                move=move.kind,
                string=x,
                len=len(x) if x is not None else None,
                quota_n=self.alice_quota[len(x)] if x is not None else None,
                coincidence=win_by_coincidence(self),
                frames=list(move.frames) if move.frames is not None else None,
            )
        )
        self.turn = player.other
        return self


def apply_move(state: GameState, player: Player, move: Move) -> GameState:
    return state.apply_move(player, move)


def win_by_coincidence(state: GameState) -> Optional[int]:
    """Smallest n with at least w doubly painted strings of length n"""
    return state.won_at


@dataclass(frozen=True)
class Diagnostic:
    chain: List[BitString]
    non_red_count: int
    consistent_to: int


def lexfirst_green_diagnostic(state: GameState, depth: int) -> Diagnostic:
    """The chain of lex-first green strings from the root, up to depth.

    consistent_to is -1 with an empty chain when the root is not green.
    """
    chain: List[BitString] = []
    for n in range(depth + 1):
        pick = state.lexfirst_green.get(n)
        if pick is None or (chain and pick[:-1] != chain[-1]):
            break
        chain.append(pick)
    non_red = sum(1 for x in chain if x not in state.red)
    return Diagnostic(chain=chain, non_red_count=non_red, consistent_to=len(chain) - 1)


def green_set(state: GameState) -> StringSet:
    """Alice's paint in painting order"""
    return StringSet(state.green)


class Strategy(Protocol):
    def next_move(self, state: GameState) -> Move:
        ...


@dataclass
class GameTrace:
    w: int
    horizon: int
    state: GameState
    diagnostic: DiagnosticRecord

    @property
    def moves(self) -> List[GameMoveRecord]:
        return self.state.move_log

    @property
    def coincidence(self) -> Optional[int]:
        return win_by_coincidence(self.state)


def play(
    w: int,
    alice: Strategy,
    bob: Strategy,
    horizon: int,
    first: Player = Player.ALICE,
    depth: Optional[int] = None,
) -> GameTrace:
    """Alternate both strategies through the referee for horizon plies"""
    if horizon < 1:
        raise ValueError(f"horizon must be at least 1, got {horizon}")
    state = GameState(w=w, turn=first)
    try:
        for _ in range(horizon):
            player = state.turn
            strategy = alice if player is Player.ALICE else bob
            state.apply_move(player, strategy.next_move(state))
    except RuleViolation as e:
        logger.error(f"Game w={w} stopped: {str(e)}")
        raise

    depth = depth if depth is not None else max(state.lexfirst_green, default=0)
    diag = lexfirst_green_diagnostic(state, depth)
    diagnostic = DiagnosticRecord(
        depth=depth,
        chain=diag.chain,
        non_red_count=diag.non_red_count,
        consistent_to=diag.consistent_to,
        coincidence=win_by_coincidence(state),
    )
    logger.info(
        f"Played w={w} for {horizon} plies: coincidence={diagnostic.coincidence}, "
        f"consistent_to={diag.consistent_to}, non_red={diag.non_red_count}"
    )
    return GameTrace(w=w, horizon=horizon, state=state, diagnostic=diagnostic)
