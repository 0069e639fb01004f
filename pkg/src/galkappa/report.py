"""Deterministic JSON reports for the command-line entry points.

Payloads are plain dictionaries of JSON-native values rendered with sorted
keys and no timestamps, so identical inputs produce byte-identical files and
``json.loads(render(p)) == p`` holds.  Writing is opt-in via the
GALKAPPA_REPORT_DIR environment variable; without it the CLI only prints.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import List, Optional

REPORT_DIR_ENV = "GALKAPPA_REPORT_DIR"


def check_record(anchor: str, passed: bool, detail: dict) -> dict:
    """One named check inside a command payload."""
    return {"anchor": anchor, "passed": passed, "detail": detail}


def build_payload(command: str, checks: List[dict]) -> dict:
    from . import __version__

    return {
        "command": command,
        "passed": all(c["passed"] for c in checks),
        "checks": list(checks),
        "tool_version": __version__,
    }


def render(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def write(name: str, payload: dict) -> Optional[Path]:
    """Write payload under $GALKAPPA_REPORT_DIR/name.json if the var is set."""
    directory = os.environ.get(REPORT_DIR_ENV)
    if not directory:
        return None
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    out = root / f"{name}.json"
    out.write_text(render(payload))
    return out
