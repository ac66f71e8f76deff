"""
Run Logger for the billiards CLI.

Records each command run (checks, mismatches, timings, results) to:
- Console (via loguru, bound to the command name)
- JSON Lines files (structured data for later analysis)
"""

import json
import uuid
from dataclasses import asdict, dataclass, field
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

from loguru import logger


class StepType(str, Enum):
    """Types of run steps."""
    COMMAND_START = "command_start"
    CHECK = "check"
    MISMATCH = "mismatch"
    TIMING = "timing"
    RESULT = "result"
    ERROR = "error"


@dataclass
class RunStep:
    """Single step of a command run."""
    timestamp: str
    step_type: StepType
    action: str
    data: Optional[Dict[str, Any]] = None
    duration_ns: Optional[int] = None


@dataclass
class RunRecord:
    """Complete record of one command run."""
    run_id: str
    command: str
    start_time: str
    params: Dict[str, Any] = field(default_factory=dict)
    end_time: Optional[str] = None
    steps: List[RunStep] = field(default_factory=list)
    result: Optional[Dict[str, Any]] = None
    success: bool = True
    error_message: Optional[str] = None


class RunLogger:
    """
    Logs CLI command runs to the console and, optionally, to JSONL files.

    A run is opened with start_run, receives steps, and is closed (and
    saved when a log directory is set) with end_run.
    """

    def __init__(self, log_dir: Optional[Path] = None):
        """
        Initialize Run Logger.

        Args:
            log_dir: Directory for JSONL run files; None disables file output
        """
        self.log_dir = Path(log_dir) if log_dir else None
        if self.log_dir:
            self.log_dir.mkdir(parents=True, exist_ok=True)

        # Active runs by id
        self._runs: Dict[str, RunRecord] = {}

    def start_run(self, command: str, params: Optional[Dict[str, Any]] = None) -> RunRecord:
        """
        Start tracking a new run.

        Args:
            command: CLI command name
            params: Parsed command parameters

        Returns:
            New RunRecord
        """
        record = RunRecord(
            run_id=uuid.uuid4().hex[:12],
            command=command,
            start_time=datetime.now().isoformat(),
            params=params or {},
        )
        self._runs[record.run_id] = record
        self._log_step(record, RunStep(
            timestamp=datetime.now().isoformat(),
            step_type=StepType.COMMAND_START,
            action=f"{command} started",
            data=record.params,
        ))
        return record

    def log_check(self, run_id: str, name: str, passed: bool, data: Optional[Dict[str, Any]] = None):
        """Log the outcome of a consistency check."""
        record = self._runs.get(run_id)
        if not record:
            return
        step_type = StepType.CHECK if passed else StepType.MISMATCH
        self._log_step(record, RunStep(
            timestamp=datetime.now().isoformat(),
            step_type=step_type,
            action=f"{name}: {'ok' if passed else 'MISMATCH'}",
            data=data,
        ))

    def log_timing(self, run_id: str, name: str, duration_ns: int):
        """Log a measured duration."""
        record = self._runs.get(run_id)
        if not record:
            return
        self._log_step(record, RunStep(
            timestamp=datetime.now().isoformat(),
            step_type=StepType.TIMING,
            action=name,
            duration_ns=duration_ns,
        ))

    def log_error(self, run_id: str, error: str, details: Optional[Dict[str, Any]] = None):
        """Log an error and mark the run failed."""
        record = self._runs.get(run_id)
        if not record:
            return
        self._log_step(record, RunStep(
            timestamp=datetime.now().isoformat(),
            step_type=StepType.ERROR,
            action=error,
            data=details,
        ))
        record.success = False
        record.error_message = error

    def end_run(self, run_id: str, result: Optional[Dict[str, Any]] = None) -> Optional[RunRecord]:
        """
        End and save a run.

        Args:
            run_id: Run identifier
            result: Final output to save

        Returns:
            Completed RunRecord
        """
        record = self._runs.pop(run_id, None)
        if not record:
            return None

        record.end_time = datetime.now().isoformat()
        record.result = result
        self._log_step(record, RunStep(
            timestamp=datetime.now().isoformat(),
            step_type=StepType.RESULT,
            action=f"{record.command} finished",
        ))
        if self.log_dir:
            self._save_run(record)
        return record

    def _log_step(self, record: RunRecord, step: RunStep):
        """Append a step and echo it on the console."""
        record.steps.append(step)
        log = logger.bind(command=record.command)
        if step.step_type == StepType.ERROR:
            log.error(f"[ERROR] {step.action}")
        elif step.step_type == StepType.MISMATCH:
            log.warning(f"[CHECK] {step.action} {self._truncate(step.data)}")
        elif step.step_type == StepType.TIMING:
            log.info(f"[TIME] {step.action}: {step.duration_ns / 1e6:.3f} ms")
        elif step.step_type == StepType.RESULT:
            log.success(f"[DONE] {step.action}")
        else:
            log.debug(f"[{step.step_type.value.upper()}] {step.action} {self._truncate(step.data)}")

    def _truncate(self, data: Any, max_length: int = 200) -> str:
        """Truncate data for console display."""
        if data is None:
            return ""
        s = str(data)
        if len(s) > max_length:
            return s[:max_length] + "..."
        return s

    def _save_run(self, record: RunRecord):
        """Append the run to the JSON Lines file of the day."""
        date_str = datetime.now().strftime("%Y%m%d")
        log_file = self.log_dir / f"runs_{date_str}.jsonl"
        with open(log_file, "a", encoding="utf-8") as f:
            f.write(json.dumps(asdict(record), default=str) + "\n")
        logger.debug(f"Saved run {record.run_id} to {log_file}")
