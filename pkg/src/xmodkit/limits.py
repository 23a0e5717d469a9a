"""Size guard for constructions that enumerate cells."""

from __future__ import annotations

import os

from .errors import SizeLimitExceeded

DEFAULT_MAX_CELLS = 5000


def max_cells() -> int:
    """Cap on 1-cells plus 2-cells, from ``XMODKIT_MAX_ORDER`` (default 5000)."""
    raw = os.environ.get("XMODKIT_MAX_ORDER", "")
    try:
        return int(raw) if raw.strip() else DEFAULT_MAX_CELLS
    except ValueError:
        return DEFAULT_MAX_CELLS


def check_size(n: int, what: str) -> None:
    cap = max_cells()
    if n > cap:
        raise SizeLimitExceeded(f"{what} would have {n} cells, above the limit {cap} (raise XMODKIT_MAX_ORDER to allow it)", (n, cap))
