"""Process-wide defaults. ``DRCEMBED_BUDGET`` overrides the enumeration budget."""

from __future__ import annotations

import os

DEFAULT_RETRIES = 64


def default_budget() -> int:
    raw = os.environ.get("DRCEMBED_BUDGET")
    if raw:
        try:
            return int(float(raw))
        except ValueError:
            pass
    return 10_000_000
