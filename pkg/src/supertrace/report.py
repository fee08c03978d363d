"""Structured results for the verification suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    """One verified equality: what was compared, on which inputs, and whether it held."""

    check_id: str
    passed: bool
    expected: str
    actual: str
    inputs: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "check": self.check_id,
            "pass": self.passed,
            "expected": self.expected,
            "actual": self.actual,
            "inputs": self.inputs,
        }


def check(check_id: str, expected, actual, **inputs) -> CheckResult:
    """Record an exact comparison; expected/actual are rendered as strings."""
    return CheckResult(
        check_id, expected == actual, str(expected), str(actual),
        {k: str(v) for k, v in inputs.items()},
    )


def check_true(check_id: str, condition: bool, detail: str = "", **inputs) -> CheckResult:
    return CheckResult(
        check_id, bool(condition), "true", detail or str(bool(condition)),
        {k: str(v) for k, v in inputs.items()},
    )


def info(check_id: str, detail: str, **inputs) -> CheckResult:
    """A recorded observation that carries data but cannot fail."""
    return CheckResult(check_id, True, "(recorded)", detail, {k: str(v) for k, v in inputs.items()})


def report_dict(suite: str, algebra: str, results: list[CheckResult]) -> dict:
    failed = [r.check_id for r in results if not r.passed]
    return {
        "suite": suite,
        "algebra": algebra,
        "checks": [r.to_dict() for r in results],
        "total": len(results),
        "failed": len(failed),
        "failed_checks": failed,
        "pass": not failed,
    }


def render_lines(results: list[CheckResult]) -> list[str]:
    lines = []
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        lines.append(f"[{mark}] {r.check_id}: expected {r.expected}, got {r.actual}")
    return lines


def to_json_lines(report: dict) -> str:
    header = {k: v for k, v in report.items() if k != "checks"}
    lines = [json.dumps({"record": "report", **header}, sort_keys=True)]
    for c in report["checks"]:
        lines.append(json.dumps({"record": "check", **c}, sort_keys=True))
    return "\n".join(lines)
