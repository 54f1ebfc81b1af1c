from pathlib import Path
from typing import Iterable, List, Union

from aitgl.enumerators.base import Arrival, BaseEnumerator
from aitgl.models.bitstring import BitString
from aitgl.storage.trace_store import TraceStore


class SequenceEnumerator(BaseEnumerator):
    """A fixed list of strings; the i-th string arrives at step i"""

    def __init__(self, strings: Iterable[BitString], name: str = "sequence"):
        super().__init__(name)
        self.strings = list(strings)

    def generate(self) -> List[Arrival]:
        return [Arrival(i, x) for i, x in enumerate(self.strings, start=1)]


class FileEnumerator(BaseEnumerator):
    """S read from a StringSet JSON array, in arrival order.

    Records may carry an explicit ``step``; otherwise the i-th record arrives
    at step i.
    """

    def __init__(self, path: Union[str, Path]):
        super().__init__(f"file({path})")
        self.path = Path(path)

    def generate(self) -> List[Arrival]:
        records = TraceStore.read_string_records(self.path)
        return [
            Arrival(int(record.get("step", i)), record["s"])
            for i, record in enumerate(records, start=1)
        ]
