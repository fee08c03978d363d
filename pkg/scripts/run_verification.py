#!/usr/bin/env python3
"""Run every verification suite and write the aggregated JSON report.

Usage: python scripts/run_verification.py [REPORT_PATH]

Exits 0 only if every exact check passed (same contract as `supertrace verify`).
"""

import json
import sys
import time

from supertrace.report import render_lines, CheckResult
from supertrace.suites import run_verification


def main() -> int:
    out_path = sys.argv[1] if len(sys.argv) > 1 else "verification_report.json"
    t0 = time.time()
    report = run_verification(["all"])
    results = [
        CheckResult(c["check"], c["pass"], c["expected"], c["actual"], c["inputs"])
        for c in report["checks"]
    ]
    for line in render_lines(results):
        print(line)
    with open(out_path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
    print(f"\n{report['total']} checks, {report['failed']} failed "
          f"({time.time() - t0:.1f}s); report written to {out_path}")
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
