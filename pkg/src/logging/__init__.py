"""Run logging utilities for the billiards CLI."""

from .run_logger import RunLogger, RunRecord, StepType

__all__ = ["RunLogger", "RunRecord", "StepType"]
