"""
Budgeted upper estimates of the complexity measures over TRM-1.

  M          max over 1 <= n <= N of C(seq(n) | n)
  Minf-seq   max over a window [N_lo, N_hi] (limsup proxy)
  Minf-str   min of C(x | n) over the upper half [ceil(N_hi / 2), N_hi] (liminf proxy)
  C-seq      one program printing seq(n) on every n <= N
  Cinf-seq   one program printing seq(n) on every n in a window
"""

import abc
import math
from typing import Dict, List, Optional, Sequence

from aitgl.models.bitstring import BitString
from aitgl.models.experiment import Estimate, EstimateMode
from aitgl.services.toy_machine import find_uniform_witness, find_witness
from aitgl.utils.logger import logger


class SequenceGen(abc.ABC):
    """Prefix-monotone rule n -> first n bits of a sequence"""

    name = "sequence"

    @abc.abstractmethod
    def bit(self, i: int) -> str:
        pass

    def __call__(self, n: int) -> BitString:
        return "".join(self.bit(i) for i in range(n))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


class Zeros(SequenceGen):
    name = "zeros"

    def bit(self, i: int) -> str:
        return "0"


class Ones(SequenceGen):
    name = "ones"

    def bit(self, i: int) -> str:
        return "1"


class Alternating(SequenceGen):
    """(01)^inf"""

    name = "alt"

    def bit(self, i: int) -> str:
        return "01"[i % 2]


class FinitePath(SequenceGen):
    """A finite chain (e.g. a lex-first green path) read as a sequence prefix.

    Only n <= its length is defined.
    """

    def __init__(self, bits: BitString, name: str = "path"):
        self.bits = bits
        self.name = name

    @classmethod
    def from_chain(cls, chain: Sequence[BitString], name: str = "path") -> "FinitePath":
        for prev, cur in zip(chain, chain[1:]):
            if cur[:-1] != prev:
                raise ValueError(f"{cur!r} does not extend {prev!r}")
        return cls(chain[-1] if chain else "", name)

    def __len__(self) -> int:
        return len(self.bits)

    def bit(self, i: int) -> str:
        if i >= len(self.bits):
            raise IndexError(f"{self.name} is only defined up to n={len(self.bits)}")
        return self.bits[i]

    def __call__(self, n: int) -> BitString:
        if n > len(self.bits):
            raise IndexError(f"{self.name} is only defined up to n={len(self.bits)}")
        return self.bits[:n]


def _max_over(
    seq: SequenceGen, lo: int, hi: int, k_max: int, budget: int, mode: EstimateMode
) -> Estimate:
    best: Optional[Estimate] = None
    for n in range(lo, hi + 1):
        witness = find_witness(seq(n), n, k_max, budget)
        if witness is None:
            logger.debug(f"{mode.value}: no program of length <= {k_max} for n={n}")
            return Estimate(value=None, n=n, n_range=(lo, hi), k_max=k_max, budget=budget, mode=mode,
                            note=f"no witness at n={n}")
        if best is None or len(witness) > best.value:
            best = Estimate(value=len(witness), witness=witness.raw, n=n, n_range=(lo, hi),
                            k_max=k_max, budget=budget, mode=mode)
    return best


def estimate_M(seq: SequenceGen, N: int, k_max: int, budget: int) -> Estimate:
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    return _max_over(seq, 1, N, k_max, budget, EstimateMode.M)


def estimate_Minf_seq(seq: SequenceGen, N_lo: int, N_hi: int, k_max: int, budget: int) -> Estimate:
    if N_lo > N_hi:
        raise ValueError(f"N_lo={N_lo} exceeds N_hi={N_hi}")
    estimate = _max_over(seq, N_lo, N_hi, k_max, budget, EstimateMode.MINF_SEQ)
    estimate.note = estimate.note or "window maximum; proxy for the limsup"
    return estimate


def estimate_Minf_string(x: BitString, N_hi: int, k_max: int, budget: int) -> Estimate:
    if N_hi < len(x):
        raise ValueError(f"N_hi={N_hi} is shorter than l(x)={len(x)}")
    lo = max(math.ceil(N_hi / 2), 0)
    best: Optional[Estimate] = None
    for n in range(lo, N_hi + 1):
        witness = find_witness(x, n, k_max, budget)
        if witness is not None and (best is None or len(witness) < best.value):
            best = Estimate(value=len(witness), witness=witness.raw, n=n, n_range=(lo, N_hi),
                            k_max=k_max, budget=budget, mode=EstimateMode.MINF_STR,
                            note="upper-half window minimum; proxy for the liminf")
    if best is None:
        return Estimate(value=None, n_range=(lo, N_hi), k_max=k_max, budget=budget,
                        mode=EstimateMode.MINF_STR, note="no witness in window")
    return best


def _uniform(seq: SequenceGen, lo: int, hi: int, k_max: int, budget: int, mode: EstimateMode) -> Estimate:
    targets: Dict[int, BitString] = {n: seq(n) for n in range(lo, hi + 1)}
    witness = find_uniform_witness(targets, k_max, budget)
    if witness is None:
        return Estimate(value=None, n_range=(lo, hi), k_max=k_max, budget=budget, mode=mode,
                        note="no single program covers the range")
    return Estimate(value=len(witness), witness=witness.raw, n=hi, n_range=(lo, hi),
                    k_max=k_max, budget=budget, mode=mode)


def estimate_C_seq(seq: SequenceGen, N: int, k_max: int, budget: int) -> Estimate:
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    return _uniform(seq, 1, N, k_max, budget, EstimateMode.C_SEQ)


def estimate_Cinf_seq(seq: SequenceGen, N_lo: int, N_hi: int, k_max: int, budget: int) -> Estimate:
    if N_lo > N_hi:
        raise ValueError(f"N_lo={N_lo} exceeds N_hi={N_hi}")
    return _uniform(seq, N_lo, N_hi, k_max, budget, EstimateMode.CINF_SEQ)


def default_k_max(n_hi: int) -> int:
    """Large enough for the constant-mode witness at every n <= n_hi"""
    return n_hi + 2


def build_sequence(spec: str, chain: Optional[List[BitString]] = None) -> SequenceGen:
    """Sequence from its command-line name; game traces are passed in as a chain"""
    if spec == "zeros":
        return Zeros()
    if spec == "ones":
        return Ones()
    if spec == "alt":
        return Alternating()
    if spec.startswith("game-trace:"):
        if chain is None:
            raise ValueError("a game-trace sequence needs its diagnostic chain")
        return FinitePath.from_chain(chain, name=spec)
    raise ValueError(f"unknown sequence {spec!r}")
