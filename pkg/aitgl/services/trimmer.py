"""
Leaf trimming: the largest leafless set T whose union with S keeps width <= w.

A set R is acceptable at time j when it is leafless (truncated at depth) and
width(R | S_j) <= w. T is built greedily over all strings of length <= depth in
shortlex order, keeping a string when the strings kept so far plus it still sit
inside some acceptable set.
"""

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from aitgl.enumerators.base import BaseEnumerator
from aitgl.models.bitstring import (
    BitString,
    StringSet,
    children,
    iter_leafless_sets,
    iter_strings,
    set_order_key,
    width_of,
)
from aitgl.models.experiment import TrimConfig, TrimDecisionRecord
from aitgl.utils.logger import logger


class _AcceptabilitySearch:
    """Level-by-level search for a leafless R containing E.

    Above the longest string of E | S nothing constrains R, so every R-string
    there can be continued by appending zeros; the search stops at that level.
    A child whose subtree meets no string of E | S costs one slot per level
    whichever way it is chosen, so only ``x0`` is tried for such children.
    """

    def __init__(self, e: FrozenSet[BitString], s: FrozenSet[BitString], w: int, depth: int):
        self.w = w
        self.top = min(max(len(x) for x in e | s), depth)
        self.e_at: Dict[int, FrozenSet[BitString]] = self._by_level(e)
        self.s_at: Dict[int, FrozenSet[BitString]] = self._by_level(s)
        self.relevant: Set[BitString] = {x[:i] for x in e | s for i in range(len(x) + 1)}
        self._dead: Set[Tuple[int, FrozenSet[BitString]]] = set()

    @staticmethod
    def _by_level(strings: Iterable[BitString]) -> Dict[int, FrozenSet[BitString]]:
        levels: Dict[int, Set[BitString]] = defaultdict(set)
        for x in strings:
            levels[len(x)].add(x)
        return defaultdict(frozenset, {n: frozenset(xs) for n, xs in levels.items()})

    def run(self) -> bool:
        return self._extend(0, self.e_at[0])

    def _child_options(self, r: BitString) -> List[BitString]:
        return [c for c in children(r) if c in self.relevant] or [r + "0"]

    def _extend(self, m: int, level_set: FrozenSet[BitString]) -> bool:
        if len(level_set | self.s_at[m]) > self.w:
            return False
        if m == self.top:
            return True
        key = (m, level_set)
        if key in self._dead:
            return False
        next_e = self.e_at[m + 1]
        pending = sorted(r for r in level_set if r + "0" not in next_e and r + "1" not in next_e)
        for choice in itertools.product(*(self._child_options(r) for r in pending)):
            if self._extend(m + 1, next_e | frozenset(choice)):
                return True
        self._dead.add(key)
        return False


def _check_lengths(strings: Iterable[BitString], depth: int, what: str) -> None:
    too_long = [x for x in strings if len(x) > depth]
    if too_long:
        raise ValueError(f"{what} holds strings longer than depth {depth}: {too_long[:3]}")


def acceptable_at(E: Iterable[BitString], S_j: Iterable[BitString], w: int, depth: int) -> bool:
    """True iff some leafless R containing E has width(R | S_j) <= w up to depth"""
    e = frozenset(E)
    s = frozenset(x for x in S_j if len(x) <= depth)
    _check_lengths(e, depth, "E")
    if not e:
        return True
    if width_of(s, depth) > w:
        logger.warning(f"width(S_j)={width_of(s, depth)} exceeds w={w}; no nonempty set is acceptable")
    return _AcceptabilitySearch(e, s, w, depth).run()


def _greedy(S_j: StringSet, w: int, depth: int) -> Tuple[List[BitString], List[Tuple[BitString, bool]]]:
    s = frozenset(x for x in S_j if len(x) <= depth)
    universe = list(iter_strings(depth))
    if width_of(s, depth) > w:
        logger.warning(f"width(S_j)={width_of(s, depth)} exceeds w={w}; every string is rejected")
        return [], [(x, False) for x in universe]
    occupied: Dict[int, Set[BitString]] = defaultdict(set)
    for x in s:
        occupied[len(x)].add(x)
    kept: List[BitString] = []
    decisions: List[Tuple[BitString, bool]] = []
    for x in universe:
        level = occupied[len(x)]
        # a full level only admits strings already counted through S
        included = (x in level or len(level) < w) and acceptable_at(kept + [x], s, w, depth)
        if included:
            kept.append(x)
            level.add(x)
        decisions.append((x, included))
    return kept, decisions


def largest_acceptable_at(S_j: Iterable[BitString], w: int, depth: int) -> StringSet:
    """The set-order-largest set acceptable at time j (shortlex greedy)"""
    s = S_j if isinstance(S_j, StringSet) else StringSet(S_j)
    kept, _ = _greedy(s, w, depth)
    return StringSet(kept)


def largest_acceptable_bruteforce(S_j: Iterable[BitString], w: int, depth: int) -> StringSet:
    """Exhaustive oracle: the order-largest of all acceptable sets"""
    s = [x for x in S_j if len(x) <= depth]
    universe = list(iter_strings(depth))
    if width_of(s, depth) > w:
        return StringSet()
    best = max(iter_leafless_sets(depth, w, base=s), key=lambda r: set_order_key(r, universe))
    return StringSet(sorted(best, key=lambda x: (len(x), x)))


def acceptable_bruteforce(E: Iterable[BitString], S_j: Iterable[BitString], w: int, depth: int) -> bool:
    """Exhaustive oracle for acceptable_at"""
    e = frozenset(E)
    if not e:
        return True
    s = [x for x in S_j if len(x) <= depth]
    return any(e <= r for r in iter_leafless_sets(depth, w, base=s))


@dataclass
class TrimResult:
    t: StringSet
    s_final: StringSet
    config: TrimConfig
    decisions: List[TrimDecisionRecord] = field(default_factory=list)

    @property
    def rejected(self) -> List[BitString]:
        return [d.s for d in self.decisions if not d.included]


def first_failing_step(
    kept: List[BitString],
    x: BitString,
    enumerator: BaseEnumerator,
    cfg: TrimConfig,
) -> Optional[int]:
    """Earliest snapshot j <= horizon at which kept + [x] is not acceptable.

    Acceptability only gets harder as S_j grows, so a binary search over the
    distinct snapshots finds the first failure.
    """
    steps = [0] + enumerator.snapshot_steps(cfg.horizon)
    lo, hi = 0, len(steps)
    while lo < hi:
        mid = (lo + hi) // 2
        if acceptable_at(kept + [x], enumerator.snapshot(steps[mid]), cfg.w, cfg.depth):
            lo = mid + 1
        else:
            hi = mid
    return steps[lo] if lo < len(steps) else None


def trim(S_enum: BaseEnumerator, cfg: TrimConfig) -> TrimResult:
    """T from the enumeration of S, testing acceptability for all j <= horizon.

    Acceptability at time horizon implies it at every earlier time, so each
    inclusion is decided on the horizon snapshot alone.
    """
    try:
        s_final = S_enum.snapshot(cfg.horizon).restricted(cfg.depth)
        kept, decisions = _greedy(s_final, cfg.w, cfg.depth)
        records: List[TrimDecisionRecord] = []
        so_far: List[BitString] = []
        for index, (x, included) in enumerate(decisions):
            failing_at = None if included else first_failing_step(so_far, x, S_enum, cfg)
            records.append(
                TrimDecisionRecord(
                    index=index, s=x, len=len(x), included=included, first_failing_step=failing_at
                )
            )
            if included:
                so_far.append(x)
        t = StringSet(kept)
        logger.info(f"Trimmed S (|S|={len(s_final)}) to |T|={len(t)} with w={cfg.w}, depth={cfg.depth}")
        return TrimResult(t=t, s_final=s_final, config=cfg, decisions=records)
    except Exception as e:
        logger.error(f"Error trimming {S_enum.name}: {str(e)}")
        raise


def largest_sequence(S_enum: BaseEnumerator, cfg: TrimConfig) -> List[Tuple[int, StringSet]]:
    """R_j for every distinct snapshot j <= horizon; the last one is T"""
    steps = [0] + S_enum.snapshot_steps(cfg.horizon)
    sequence = [
        (j, largest_acceptable_at(S_enum.snapshot(j).restricted(cfg.depth), cfg.w, cfg.depth))
        for j in steps
    ]
    logger.debug(f"Computed {len(sequence)} largest acceptable sets up to step {cfg.horizon}")
    return sequence
