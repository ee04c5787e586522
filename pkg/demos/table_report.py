"""Run part of the classification table and show one JSON report."""

import sys

from fix3.groupfile import emit_report
from fix3.harness import run_all

pattern = sys.argv[1] if len(sys.argv) > 1 else "psl3"
reports = run_all(pattern)
for r in reports:
    print(f"{r.case:<22} {r.tier:<12} {r.verdict:<14} {r.status}")
if reports:
    sys.stdout.write(emit_report(reports[0]).decode())
