"""
Run metrics for the console summary (never written to traces)
"""

import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from aitgl.utils.logger import logger


@dataclass
class RunMetrics:
    """One experiment run"""
    command: str
    started: float
    duration_seconds: float = 0.0
    records_written: int = 0
    success: bool = False
    error: Optional[str] = None


@dataclass
class SessionMetrics:
    total_runs: int = 0
    successful_runs: int = 0
    failed_runs: int = 0
    total_records: int = 0
    runs: List[RunMetrics] = field(default_factory=list)


class RunMonitor:
    """Times experiment runs and counts their records"""

    def __init__(self):
        self.metrics = SessionMetrics()

    def start(self, command: str) -> RunMetrics:
        run = RunMetrics(command=command, started=time.perf_counter())
        self.metrics.runs.append(run)
        return run

    def finish(self, run: RunMetrics, records: int = 0, error: Optional[Exception] = None) -> RunMetrics:
        run.duration_seconds = time.perf_counter() - run.started
        run.records_written = records
        run.success = error is None
        run.error = str(error) if error is not None else None

        self.metrics.total_runs += 1
        self.metrics.total_records += records
        if run.success:
            self.metrics.successful_runs += 1
        else:
            self.metrics.failed_runs += 1
        logger.debug(f"Run {run.command} finished in {run.duration_seconds:.3f}s ({records} records)")
        return run

    def get_summary(self) -> Dict[str, Any]:
        summary = asdict(self.metrics)
        summary.pop("runs")
        summary["durations"] = {r.command: round(r.duration_seconds, 3) for r in self.metrics.runs}
        return summary

    def format_duration(self, seconds: float) -> str:
        if seconds >= 60:
            return f"{int(seconds // 60)}m {seconds % 60:.1f}s"
        return f"{seconds:.2f}s"


# Global run monitor instance
run_monitor = RunMonitor()


def get_run_monitor() -> RunMonitor:
    """Get the global run monitor instance"""
    return run_monitor
