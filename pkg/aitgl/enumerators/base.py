import abc
import bisect
from typing import List, NamedTuple, Optional

from aitgl.models.bitstring import BitString, StringSet
from aitgl.utils.logger import logger


class Arrival(NamedTuple):
    step: int
    string: BitString


class BaseEnumerator(abc.ABC):
    """Base class for all enumerations of S.

    An enumeration is a fixed sequence of arrivals (step, string) with
    nondecreasing steps; the snapshot S_j holds every string that arrived at a
    step <= j, so S_1 <= S_2 <= ... by construction.
    """

    def __init__(self, name: str):
        self.name = name
        self._arrivals: Optional[List[Arrival]] = None

    @abc.abstractmethod
    def generate(self) -> List[Arrival]:
        """Produce the full arrival sequence of this source"""
        pass

    @property
    def arrivals(self) -> List[Arrival]:
        if self._arrivals is None:
            arrivals = self.generate()
            steps = [a.step for a in arrivals]
            if steps != sorted(steps):
                raise ValueError(f"{self.name}: arrival steps must be nondecreasing")
            self._arrivals = arrivals
            logger.info(f"Enumerator {self.name}: {len(arrivals)} arrivals")
        return self._arrivals

    def snapshot(self, j: int) -> StringSet:
        """S_j"""
        steps = [a.step for a in self.arrivals]
        cut = bisect.bisect_right(steps, j)
        return StringSet(a.string for a in self.arrivals[:cut])

    def snapshot_steps(self, horizon: int) -> List[int]:
        """Distinct steps <= horizon at which the snapshot grows"""
        return sorted({a.step for a in self.arrivals if a.step <= horizon})

    def __iter__(self):
        return iter(self.arrivals)
