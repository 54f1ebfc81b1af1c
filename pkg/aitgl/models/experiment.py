from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from aitgl.config import get_limits


class Player(str, Enum):
    ALICE = "A"
    BOB = "B"

    @property
    def other(self) -> "Player":
        return Player.BOB if self is Player.ALICE else Player.ALICE


class MoveKind(str, Enum):
    PAINT = "paint"
    PASS = "pass"


class TokenEventKind(str, Enum):
    NO_OP = "no_op"
    MOVED = "moved"
    PLACED = "placed"


class EstimateMode(str, Enum):
    M = "M"
    MINF_SEQ = "Minf-seq"
    MINF_STR = "Minf-str"
    C_SEQ = "C-seq"
    CINF_SEQ = "Cinf-seq"


class TrimConfig(BaseModel):
    w: int = Field(..., ge=1, description="Width bound")
    depth: int = Field(..., ge=1, description="Truncation length")
    horizon: int = Field(..., ge=1, description="Largest snapshot index j of the S enumeration")


class ExperimentConfig(BaseModel):
    """Parameters shared by every subcommand; unused ones stay None"""

    command: str = Field(..., description="Subcommand name")
    k: Optional[int] = Field(None, ge=0, description="Program length bound for S")
    w: Optional[int] = Field(None, ge=1, description="Width bound / game parameter")
    depth: Optional[int] = Field(None, ge=0, description="Truncation length")
    horizon: Optional[int] = Field(None, ge=1, description="Snapshot index or plies")
    f_m: Optional[int] = Field(None, ge=0, description="Blind Bob program length bound")
    budget: Optional[int] = Field(None, ge=1, description="Step budget per run")
    max_len: Optional[int] = Field(None, ge=0, description="Largest enumerated length")
    n_lo: Optional[int] = Field(None, ge=0)
    n_hi: Optional[int] = Field(None, ge=0)
    k_max: Optional[int] = Field(None, ge=0)
    seed: int = Field(default=0, description="Seed for shuffled orders and random adversaries")
    out: Optional[str] = Field(None, description="Trace directory")
    jobs: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def check_desk_scale(self) -> "ExperimentConfig":
        limits = get_limits()
        for name in ("w", "depth", "horizon", "jobs", "k", "f_m"):
            value = getattr(self, name)
            if value is not None and value > limits[name]:
                raise ValueError(f"{name}={value} exceeds the limit {limits[name]}")
        if self.n_lo is not None and self.n_hi is not None and self.n_lo > self.n_hi:
            raise ValueError(f"n_lo={self.n_lo} exceeds n_hi={self.n_hi}")
        return self


class SetMemberRecord(BaseModel):
    s: str = Field(..., pattern=r"^[01]*$", description="Bit string, empty for the root")
    len: int = Field(..., ge=0, description="Length of s")

    @model_validator(mode="after")
    def check_length(self) -> "SetMemberRecord":
        if self.len != len(self.s):
            raise ValueError(f"len={self.len} does not match {self.s!r}")
        return self


class EnumerationRecord(BaseModel):
    round: int = Field(..., description="Dovetailing round of discovery")
    s: str
    len: int
    program: str = Field(..., description="First program that produced s in that round")


class TrimDecisionRecord(BaseModel):
    index: int = Field(..., description="Position of s in shortlex order")
    s: str
    len: int
    included: bool
    first_failing_step: Optional[int] = Field(
        None, description="Earliest snapshot with no acceptable superset (rejections only)"
    )


class LimitRecord(BaseModel):
    step: int = Field(..., description="Snapshot index j")
    size: int
    members: List[str] = Field(..., description="R_j in shortlex order")


class TokenEventRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    step: int
    observed: str
    event: TokenEventKind
    token: Optional[int] = None
    from_: Optional[str] = Field(None, alias="from")
    to: Optional[str] = None


class GameMoveRecord(BaseModel):
    ply: int
    player: Player
    move: MoveKind
    string: Optional[str] = None
    len: Optional[int] = None
    quota_n: Optional[int] = Field(None, description="Alice's distinct strings at that length")
    coincidence: Optional[int] = Field(None, description="Smallest length won by coincidence so far")
    frames: Optional[List[str]] = Field(None, description="Roots of Alice's active strategy frames")


class DiagnosticRecord(BaseModel):
    kind: str = "diagnostic"
    depth: int
    chain: List[str]
    non_red_count: int
    consistent_to: int
    coincidence: Optional[int] = None


class Estimate(BaseModel):
    value: Optional[int] = Field(None, description="Upper bound on the budgeted quantity")
    witness: Optional[str] = Field(None, description="Program achieving value")
    n: Optional[int] = Field(None, description="Input length where value is attained")
    n_range: Tuple[int, int]
    k_max: int
    budget: int
    mode: EstimateMode
    direction: str = "upper_bound"
    note: str = ""


class SummaryRecord(BaseModel):
    kind: str = "summary"
    command: str
    data: Dict[str, Any] = Field(default_factory=dict)
