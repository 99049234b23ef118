#!/usr/bin/env python3
"""Render a summary of the most recent lambdastar run."""
from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from dotenv import load_dotenv

load_dotenv(override=True)

ROOT = Path(__file__).resolve().parents[2]
DATA_DIR = Path(os.getenv("LAMBDASTAR_DATA_DIR") or ROOT / "data")
RUNS_DIR = DATA_DIR / "runs"
LATEST_FILE = RUNS_DIR / "latest.json"


def load_summary(path: Path = LATEST_FILE) -> Dict:
    if not path.exists():
        print(f"No existe {path}. Ejecuta scripts/lambdastar/cli.py primero.")
        raise SystemExit(1)
    return json.loads(path.read_text(encoding="utf-8"))


def format_duration(seconds: float) -> str:
    mins, sec = divmod(int(seconds), 60)
    hrs, mins = divmod(mins, 60)
    if hrs:
        return f"{hrs}h {mins}m {sec}s"
    if mins:
        return f"{mins}m {sec}s"
    return f"{sec}s"


def histogram_rows(histogram: Dict[str, int]) -> List[Tuple[int, int]]:
    return sorted((int(k), v) for k, v in histogram.items())


def render(summary: Dict) -> List[str]:
    lines = ["=" * 70, "LAMBDASTAR RUN SUMMARY", "=" * 70]
    lines.append(f"Run    : {summary.get('run_id')}")
    lines.append(f"Command: {summary.get('command')} (jobs={summary.get('jobs')})")
    lines.append(f"Started: {summary.get('started_at')}")
    lines.append(f"Ended  : {summary.get('ended_at')}")
    lines.append(f"Duration: {format_duration(summary.get('duration_seconds', 0.0))}")
    status = "PASS" if summary.get("passed") else f"FAIL (exit {summary.get('exit_code')})"
    lines.append(f"Status : {status}")
    lines.append(f"Output : {summary.get('output') or '-'}")
    lines.append(f"Log file: {summary.get('log_file')}")

    counts = summary.get("counts") or {}
    if counts:
        lines.append("")
        lines.append("Counts:")
        for key, value in counts.items():
            lines.append(f"  - {key}: {value}")

    histogram = summary.get("histogram") or {}
    if histogram:
        rows = histogram_rows(histogram)
        lines.append("")
        lines.append(f"{'Key':<8}{'Count':>10}")
        lines.append("-" * 18)
        for key, count in rows:
            lines.append(f"{key:<8}{count:>10}")
        lines.append(f"{'total':<8}{sum(c for _, c in rows):>10}")
    return lines


def main(argv: Optional[List[str]] = None) -> int:
    path = Path(argv[0]) if argv else LATEST_FILE
    for line in render(load_summary(path)):
        print(line)
    return 0


if __name__ == "__main__":
    import sys

    raise SystemExit(main(sys.argv[1:]))
