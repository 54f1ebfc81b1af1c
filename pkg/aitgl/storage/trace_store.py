"""
JSON-lines trace files: one record per event, summary last
"""

import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

from pydantic import BaseModel

from aitgl.models.bitstring import StringSet
from aitgl.models.experiment import SetMemberRecord
from aitgl.utils.logger import logger

PathLike = Union[str, Path]


class TraceStore:
    """Writes and reads the trace files of one output directory"""

    def __init__(self, directory: PathLike):
        self.directory = Path(directory)
        self.records_written = 0

    def path_for(self, name: str) -> Path:
        return self.directory / f"{name}.jsonl"

    def write(self, name: str, records: Iterable[BaseModel]) -> Path:
        """Write records as JSON lines; identical records give identical bytes"""
        path = self.path_for(name)
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            count = 0
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                for record in records:
                    f.write(record.model_dump_json(by_alias=True))
                    f.write("\n")
                    count += 1
            self.records_written += count
            logger.info(f"Wrote {count} records to {path}")
            return path
        except OSError as e:
            logger.error(f"Error writing trace {path}: {str(e)}")
            raise

    @staticmethod
    def read(path: PathLike) -> List[Dict[str, Any]]:
        with open(path, "r", encoding="utf-8") as f:
            return [json.loads(line) for line in f if line.strip()]

    @staticmethod
    def read_string_records(path: PathLike) -> List[Dict[str, Any]]:
        """String records from a StringSet JSON array or from JSON lines carrying "s" """
        text = Path(path).read_text(encoding="utf-8")
        if text.lstrip().startswith("["):
            records = json.loads(text)
        else:
            records = [json.loads(line) for line in text.splitlines() if line.strip()]
        records = [r for r in records if "s" in r]
        for r in records:
            SetMemberRecord(s=r["s"], len=r.get("len", len(r["s"])))
        logger.debug(f"Read {len(records)} strings from {path}")
        return records

    @staticmethod
    def write_string_set(path: PathLike, s: StringSet) -> Path:
        """StringSet as a JSON array of {"s", "len"} in arrival order"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        body = ",".join(SetMemberRecord(s=x, len=len(x)).model_dump_json() for x in s)
        path.write_text(f"[{body}]\n", encoding="utf-8")
        return path

    @staticmethod
    def read_string_set(path: PathLike) -> StringSet:
        return StringSet(r["s"] for r in TraceStore.read_string_records(path))

    @staticmethod
    def read_diagnostic_chain(path: PathLike) -> Optional[List[str]]:
        """The lex-first green chain stored in a game trace, if any"""
        for record in TraceStore.read(path):
            if record.get("kind") == "diagnostic":
                return list(record["chain"])
        return None
