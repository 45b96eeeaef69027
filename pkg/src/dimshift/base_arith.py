"""Base-q integer division: parts, residues and fixed-length digit words.

For a radix ``q`` every nonnegative ``n`` splits uniquely as
``n = q**k * part(n, k) + res(n, k)`` with ``0 <= res(n, k) < q**k``.
In digit terms ``res`` keeps the ``k`` least significant digits and ``part``
drops them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import RangeError

__all__ = ["Context", "part", "res", "part_res", "to_digits", "from_digits"]


@dataclass(frozen=True)
class Context:
    """Radix ``q`` and word length ``m``.

    Python integers are unbounded, so ``q**m`` is always exact.
    """

    q: int
    m: int
    size: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("q", "m"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise TypeError(f"{name} must be an int, got {type(v).__name__}")
        if self.q < 2:
            raise RangeError(f"radix q must be >= 2, got {self.q}")
        if self.m < 1:
            raise RangeError(f"word length m must be >= 1, got {self.m}")
        object.__setattr__(self, "size", self.q**self.m)

    def with_m(self, m: int) -> "Context":
        return Context(self.q, m)


def _check(n: int, k: int) -> None:
    if n < 0:
        raise RangeError(f"n must be nonnegative, got {n}")
    if k < 0:
        raise RangeError(f"k must be nonnegative, got {k}")


def part(n: int, k: int, ctx: Context) -> int:
    """``floor(n / q**k)``."""
    _check(n, k)
    return n // ctx.q**k


def res(n: int, k: int, ctx: Context) -> int:
    """``n mod q**k``."""
    _check(n, k)
    return n % ctx.q**k


def part_res(n: int, k: int, ctx: Context) -> tuple[int, int]:
    _check(n, k)
    return divmod(n, ctx.q**k)


def to_digits(n: int, ctx: Context) -> tuple[int, ...]:
    """The ``m``-digit base-``q`` word of ``n``, most significant digit first.

    ``n == q**m`` is accepted and encoded as ``(q, 0, ..., 0)``; this is the
    coefficient word of the uncut matrix.
    """
    q, m = ctx.q, ctx.m
    if n < 0 or n > ctx.size:
        raise RangeError(f"{n} does not fit in {m} base-{q} digits")
    if n == ctx.size:
        return (q,) + (0,) * (m - 1)
    digits = [0] * m
    for j in range(m - 1, -1, -1):
        n, digits[j] = divmod(n, q)
    return tuple(digits)


def from_digits(word, ctx: Context) -> int:
    q, m = ctx.q, ctx.m
    word = tuple(word)
    if len(word) != m:
        raise RangeError(f"expected {m} digits, got {len(word)}")
    if word == (q,) + (0,) * (m - 1):
        return ctx.size
    n = 0
    for d in word:
        if not 0 <= d < q:
            raise RangeError(f"digit {d} out of range for radix {q}")
        n = n * q + d
    return n
