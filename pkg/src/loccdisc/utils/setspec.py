"""Text form of Bell-index sets: comma-separated "nm" tokens, or "n.m" for d >= 10."""

from __future__ import annotations

import re
from typing import List

from ..bell import BellIndex, BellSet, Pair

_DOTTED = re.compile(r"^(\d+)\.(\d+)$")
_COMPACT = re.compile(r"^(\d)(\d)$")


def parse_index(token: str, d: int) -> Pair:
    token = token.strip()
    match = _DOTTED.match(token)
    if match is None:
        if d >= 10:
            raise ValueError(f"index '{token}' must use the n.m form when d >= 10")
        match = _COMPACT.match(token)
    if match is None:
        raise ValueError(f"cannot parse index '{token}'")
    n, m = int(match.group(1)), int(match.group(2))
    if not (0 <= n < d and 0 <= m < d):
        raise ValueError(f"index '{token}' out of range for d={d}")
    return (n, m)


def parse_set(spec: str, d: int) -> BellSet:
    """Parse "00,11,31,32" into a BellSet.

    Raises:
        ValueError: empty spec, malformed or out-of-range token, or duplicate index.
    """
    tokens = [t for t in spec.split(",") if t.strip()]
    if not tokens:
        raise ValueError("empty set specification")
    pairs: List[Pair] = [parse_index(t, d) for t in tokens]
    if len(set(pairs)) != len(pairs):
        raise ValueError(f"duplicate index in '{spec}'")
    return BellSet.of(d, pairs)


def format_index(idx: BellIndex) -> str:
    if idx.d >= 10:
        return f"{idx.n}.{idx.m}"
    return f"{idx.n}{idx.m}"


def format_set(s: BellSet) -> str:
    return ",".join(format_index(i) for i in s)
