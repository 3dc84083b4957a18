# jobs/report.py
from typing import Any, Dict, List

from pydantic import BaseModel, Field


class JobReport(BaseModel):
    """What a command measured; serialized as the JSON report."""

    command: str
    space: Dict[str, float]
    passed: bool = True
    checks: Dict[str, bool] = Field(default_factory=dict)
    metrics: Dict[str, float] = Field(default_factory=dict)
    details: Dict[str, Any] = Field(default_factory=dict)
    files: List[str] = Field(default_factory=list)

    def check(self, name: str, value: float, threshold: float) -> bool:
        """Record ``value`` under ``name`` and whether it stays below ``threshold``."""
        ok = bool(value == value and value < threshold)
        self.metrics[name] = float(value)
        self.checks[name] = ok
        self.passed = self.passed and ok
        return ok

    def fail(self, name: str, message: str):
        self.checks[name] = False
        self.details.setdefault("errors", {})[name] = message
        self.passed = False

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1
