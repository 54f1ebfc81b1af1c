"""
Bit strings as vertices of the rooted binary tree, and finite string sets.

A BitString is a plain ``str`` over ``"0"``/``"1"``; the empty string is the root.
"""

import itertools
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

BitString = str

ROOT: BitString = ""


class Ordering(str, Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


def shortlex_key(x: BitString) -> Tuple[int, str]:
    """Sort key: length first, then lexicographic with 0 < 1"""
    return (len(x), x)


def shortlex_compare(a: BitString, b: BitString) -> Ordering:
    ka, kb = shortlex_key(a), shortlex_key(b)
    if ka < kb:
        return Ordering.LESS
    if ka > kb:
        return Ordering.GREATER
    return Ordering.EQUAL


def strings_of_length(n: int) -> Iterator[BitString]:
    """All strings of length n in lexicographic order"""
    for bits in itertools.product("01", repeat=n):
        yield "".join(bits)


def iter_strings(max_len: int) -> Iterator[BitString]:
    """All strings of length <= max_len in shortlex order"""
    for n in range(max_len + 1):
        yield from strings_of_length(n)


def parent(x: BitString) -> Optional[BitString]:
    return x[:-1] if x else None


def children(x: BitString) -> Tuple[BitString, BitString]:
    return (x + "0", x + "1")


def is_prefix(a: BitString, b: BitString) -> bool:
    return b.startswith(a)


def consistent(a: BitString, b: BitString) -> bool:
    """True when one string is a prefix of the other"""
    return a.startswith(b) or b.startswith(a)


class StringSet:
    """Finite set of bit strings kept in arrival order, with per-length counts.

    Values are immutable: the ``with_*`` methods return new sets.
    """

    __slots__ = ("_members", "_index", "_per_length")

    def __init__(self, members: Iterable[BitString] = ()):
        ordered: List[BitString] = []
        seen = set()
        for x in members:
            if x not in seen:
                seen.add(x)
                ordered.append(x)
        self._members: Tuple[BitString, ...] = tuple(ordered)
        self._index: FrozenSet[BitString] = frozenset(seen)
        self._per_length: Dict[int, int] = dict(Counter(len(x) for x in ordered))

    @property
    def members(self) -> Tuple[BitString, ...]:
        return self._members

    @property
    def per_length(self) -> Dict[int, int]:
        return dict(self._per_length)

    def count_at(self, n: int) -> int:
        return self._per_length.get(n, 0)

    def at_length(self, n: int) -> List[BitString]:
        return sorted(x for x in self._members if len(x) == n)

    def max_length(self) -> int:
        return max(self._per_length, default=-1)

    def as_frozenset(self) -> FrozenSet[BitString]:
        return self._index

    def shortlex(self) -> List[BitString]:
        return sorted(self._members, key=shortlex_key)

    def union(self, other: Iterable[BitString]) -> "StringSet":
        return StringSet(itertools.chain(self._members, other))

    def restricted(self, max_len: int) -> "StringSet":
        return StringSet(x for x in self._members if len(x) <= max_len)

    def __contains__(self, x: object) -> bool:
        return x in self._index

    def __iter__(self) -> Iterator[BitString]:
        return iter(self._members)

    def __len__(self) -> int:
        return len(self._members)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, StringSet):
            return self._index == other._index
        if isinstance(other, (set, frozenset)):
            return self._index == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._index)

    def __repr__(self) -> str:
        shown = ", ".join(x or "Λ" for x in self.shortlex())
        return f"StringSet({{{shown}}})"


@dataclass(frozen=True)
class Path:
    """Child-chain x_0, x_1, ... ; x_0 need not be the root"""

    vertices: Tuple[BitString, ...]

    def __post_init__(self):
        for prev, cur in zip(self.vertices, self.vertices[1:]):
            if len(cur) != len(prev) + 1 or not cur.startswith(prev):
                raise ValueError(f"{cur!r} is not a child of {prev!r}")

    @property
    def start(self) -> BitString:
        return self.vertices[0]

    @property
    def end(self) -> BitString:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.vertices)


def width_of(s: Iterable[BitString], max_len: Optional[int] = None) -> int:
    """Largest number of members sharing one length n <= max_len"""
    counts = s.per_length if isinstance(s, StringSet) else Counter(len(x) for x in set(s))
    return max(
        (c for n, c in counts.items() if max_len is None or n <= max_len),
        default=0,
    )


def is_leafless(s: Iterable[BitString], depth: int) -> bool:
    """Every member shorter than depth has a child in s; members at depth are exempt"""
    members = s.as_frozenset() if isinstance(s, StringSet) else frozenset(s)
    return all(
        x + "0" in members or x + "1" in members
        for x in members
        if len(x) < depth
    )


def maximal_paths(s: Iterable[BitString], depth: int) -> List[Path]:
    """Brute-force oracle: every child-chain in s that starts at a member whose
    parent is not in s and ends at length depth, in shortlex order."""
    members = s.as_frozenset() if isinstance(s, StringSet) else frozenset(s)
    roots = sorted(
        (x for x in members if len(x) <= depth and (not x or x[:-1] not in members)),
        key=shortlex_key,
    )
    paths: List[Path] = []

    def dfs(chain: List[BitString]) -> None:
        tip = chain[-1]
        if len(tip) == depth:
            paths.append(Path(tuple(chain)))
            return
        for child in children(tip):
            if child in members:
                chain.append(child)
                dfs(chain)
                chain.pop()

    for root in roots:
        dfs([root])
    return sorted(paths, key=lambda p: shortlex_key(p.end))


def iter_leafless_sets(
    depth: int,
    w: int,
    base: Iterable[BitString] = (),
) -> Iterator[FrozenSet[BitString]]:
    """Brute-force oracle: every truncated-leafless R of strings of length <= depth
    with width(R | base) <= w, generated level by level."""
    base_counts = Counter(len(x) for x in set(base))
    base_set = frozenset(base)

    def extend(level: int, previous: Tuple[BitString, ...], acc: FrozenSet[BitString]):
        if level > depth:
            yield acc
            return
        level_strings = list(strings_of_length(level))
        outside_base = base_counts.get(level, 0)
        for size in range(0, min(w, len(level_strings)) + 1):
            for chosen in itertools.combinations(level_strings, size):
                extra = sum(1 for x in chosen if x not in base_set)
                if outside_base + extra > w:
                    continue
                chosen_set = set(chosen)
                if any(x + "0" not in chosen_set and x + "1" not in chosen_set for x in previous):
                    continue
                yield from extend(level + 1, chosen, acc | chosen_set)

    yield from extend(0, (), frozenset())


def set_order_key(r: Iterable[BitString], universe: List[BitString]) -> Tuple[bool, ...]:
    """Characteristic sequence of r over universe (shortlex); a larger key is a
    larger set in the order where the first differing string decides."""
    members = frozenset(r)
    return tuple(x in members for x in universe)
