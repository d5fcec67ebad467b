from __future__ import annotations

import json
import logging
import os
from math import comb
from typing import Any, List, Optional, Tuple

from rich.console import Console
from rich.logging import RichHandler
from sympy.utilities.iterables import partitions

from .errors import DomainError, UsageError

DELTA_MAX_ENV = "JETCALC_DELTA_MAX"
DEFAULT_DELTA_MAX = 200

err_console = Console(stderr=True, color_system=None, soft_wrap=True, emoji=False)


def binomial(x: int, k: int) -> int:
    if k < 0:
        return 0
    if x < 0:
        raise DomainError(f"binomial coefficient with negative top {x} is not defined here")
    return comb(x, k)


def integer_partitions(total: int) -> List[Tuple[int, ...]]:
    """Partitions of total as weakly decreasing tuples, lexicographically decreasing."""
    if total < 0:
        raise DomainError(f"cannot partition a negative integer, got {total}")
    if total == 0:
        return [()]
    out = []
    for p in partitions(total):
        # sympy reuses the yielded dict
        parts: List[int] = []
        for part, mult in sorted(p.items(), reverse=True):
            parts.extend([part] * mult)
        out.append(tuple(parts))
    return sorted(out, reverse=True)


def delta_max_default(explicit: Optional[int] = None) -> int:
    if explicit is not None:
        if explicit < 0:
            raise UsageError(f"--max must be nonnegative, got {explicit}")
        return explicit
    raw = os.environ.get(DELTA_MAX_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_DELTA_MAX
    try:
        value = int(raw.strip())
    except ValueError:
        raise UsageError(f"{DELTA_MAX_ENV} must be an integer, got {raw!r}") from None
    if value < 0:
        raise UsageError(f"{DELTA_MAX_ENV} must be nonnegative, got {value}")
    return value


def setup_logging(verbose: bool = False) -> None:
    root = logging.getLogger("jetcalc")
    root.handlers.clear()
    handler = RichHandler(console=err_console, show_path=False, show_time=False)
    handler.setFormatter(logging.Formatter("%(message)s"))
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)
    root.propagate = False


def dump_json(data: Any) -> str:
    return json.dumps(data, separators=(",", ":"), ensure_ascii=False)
