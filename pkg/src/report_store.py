#!/usr/bin/env python3
"""
Run reports and the content-addressed report cache.

A report is cached under the SHA-256 of its canonical (command, parameters,
version) JSON. Replaying a cached command returns the stored text unchanged.
"""

import hashlib
import json
import logging
import os
from typing import Any, Dict, List, Optional

import pandas as pd
from pydantic import BaseModel, Field, computed_field

from src import __version__
from src.config import Config

logger = logging.getLogger(__name__)


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class RunReport(BaseModel):
    command: str
    parameters: Dict[str, Any]
    results: Dict[str, Any] = Field(default_factory=dict)
    checks: List[CheckResult] = Field(default_factory=list)
    wall_time: float = 0.0
    version: str = __version__

    @computed_field
    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add_check(self, name: str, passed: bool, detail: str = "") -> bool:
        passed = bool(passed)
        self.checks.append(CheckResult(name=name, passed=passed, detail=detail))
        if passed:
            logger.debug(f"[{self.command}] check {name}: pass")
        else:
            logger.error(f"[{self.command}] check {name} FAILED {detail}".rstrip())
        return passed

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for key in sorted(self.parameters):
            rows.append({"section": "parameter", "name": key, "value": _cell(self.parameters[key])})
        for key in sorted(self.results):
            rows.append({"section": "result", "name": key, "value": _cell(self.results[key])})
        for check in self.checks:
            rows.append({"section": "check", "name": check.name, "value": "pass" if check.passed else "FAIL"})
        return pd.DataFrame(rows, columns=["section", "name", "value"])

    def to_csv(self) -> str:
        return self.to_frame().to_csv(index=False)

    def to_table(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [
            "=" * 60,
            f"{self.command.upper()} - {status} (v{self.version}, {self.wall_time:.2f}s)",
            "=" * 60,
            self.to_frame().to_string(index=False),
            "=" * 60,
        ]
        return "\n".join(lines) + "\n"


def _cell(value: Any) -> str:
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value)


def cache_key(command: str, parameters: Dict[str, Any], version: str = __version__) -> str:
    canonical = json.dumps({"command": command, "parameters": parameters, "version": version},
                           sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class ReportCache:
    def __init__(self, cache_dir: Optional[str] = None):
        self.cache_dir = cache_dir or Config.CACHE_DIR

    def _path(self, key: str) -> str:
        return os.path.join(self.cache_dir, f"{key}.json")

    def load(self, command: str, parameters: Dict[str, Any]) -> Optional[str]:
        """Stored report text, or None on a miss or an unreadable entry"""
        path = self._path(cache_key(command, parameters))
        if not os.path.exists(path):
            return None
        try:
            with open(path, 'r') as f:
                text = f.read()
            RunReport.model_validate_json(text)
            logger.info(f"Cache hit for {command}: {path}")
            return text
        except Exception as e:
            logger.warning(f"Ignoring unreadable cache entry {path}: {e}")
            return None

    def store(self, report: RunReport) -> str:
        os.makedirs(self.cache_dir, exist_ok=True)
        path = self._path(cache_key(report.command, report.parameters, report.version))
        with open(path, 'w') as f:
            f.write(report.to_json())
        logger.debug(f"Stored report for {report.command} at {path}")
        return path
