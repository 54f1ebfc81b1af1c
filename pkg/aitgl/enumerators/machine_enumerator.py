from typing import List, Optional

from aitgl.enumerators.base import Arrival, BaseEnumerator
from aitgl.services.toy_machine import Discovery, Dovetailer


class MachineEnumerator(BaseEnumerator):
    """S = {x : C(x|l(x)) <= k} over TRM-1; step j is the dovetailing round"""

    def __init__(self, k: int, max_len: int, horizon: int, budget: Optional[int] = None):
        super().__init__(f"machine(k={k})")
        self.k = k
        self.max_len = max_len
        self.horizon = horizon
        self.budget = budget
        self.discoveries: List[Discovery] = []

    def generate(self) -> List[Arrival]:
        dovetailer = Dovetailer(self.k, budget=self.budget, max_len=self.max_len)
        self.discoveries = list(dovetailer.discoveries(max_round=self.horizon))
        return [Arrival(d.round, d.string) for d in self.discoveries]
