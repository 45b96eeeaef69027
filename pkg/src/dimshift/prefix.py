"""Prefix length and minimal prefix of an ``m``-digit base-``q`` integer.

``prefix_length(n)`` is the least ``j`` in ``1..m`` with
``part(n, j) >= res(n, m - j)``; the minimal prefix zeroes the trailing
``m - l`` digits of ``n``.  The minimal prefix of the cutoff determines the
characteristic polynomial of the truncated transition matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

from .base_arith import Context, part, res
from .errors import RangeError

__all__ = [
    "PrefixInfo",
    "prefix_info",
    "prefix_length",
    "minimal_prefix",
    "is_minimal",
    "down_prefix",
]


@dataclass(frozen=True)
class PrefixInfo:
    n: int
    l: int
    nbar: int


def _check_range(n: int, ctx: Context) -> None:
    if not 0 <= n < ctx.size:
        raise RangeError(f"n={n} outside [0, {ctx.size}) for q={ctx.q}, m={ctx.m}")


def prefix_length(n: int, ctx: Context) -> int:
    _check_range(n, ctx)
    m = ctx.m
    for j in range(1, m + 1):
        if part(n, j, ctx) >= res(n, m - j, ctx):
            return j
    raise AssertionError("unreachable: part(n, m) = res(n, 0) = 0")


def prefix_info(n: int, ctx: Context) -> PrefixInfo:
    l = prefix_length(n, ctx)
    return PrefixInfo(n=n, l=l, nbar=n - res(n, ctx.m - l, ctx))


def minimal_prefix(n: int, ctx: Context) -> int:
    return prefix_info(n, ctx).nbar


def is_minimal(n: int, ctx: Context) -> bool:
    """True when the ``l``-th power of the transition matrix has a one at
    diagonal position ``n + 1``, ``l`` being the prefix length of ``n``."""
    l = prefix_length(n, ctx)
    return res(n, ctx.m - l, ctx) == part(n, l, ctx)


def down_prefix(i: int, M: int, ctx: Context) -> int:
    """Drop the last ``M - m`` digits of an ``M``-digit word (``m = ctx.m``)."""
    m = ctx.m
    if M < m:
        raise RangeError(f"source length M={M} is shorter than target m={m}")
    if not 0 <= i < ctx.q**M:
        raise RangeError(f"i={i} outside [0, {ctx.q ** M})")
    return part(i, M - m, ctx)
