"""Characteristic polynomials of the truncated transition matrices.

The fast path needs only the minimal prefix of the cutoff: the nontrivial
factor is ``x**m - a_1 x**(m-1) - ... - a_m`` where ``a_1 ... a_m`` are the
base-q digits of ``q**m - minimal_prefix(i)``.  Two brute-force routes check
it: Newton's identities on exact traces, and a signed sum over disjoint
cycle families (the principal-minor expansion).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .base_arith import Context, to_digits
from .errors import CapacityError, ConsistencyError, RangeError
from .prefix import minimal_prefix
from .subshift import TransitionMatrix, simple_cycles, trace_powers

__all__ = [
    "CharPoly",
    "charpoly_fast",
    "charpoly_newton",
    "charpoly_minors",
    "newton_coefficients",
    "MINORS_LIMIT",
]

MINORS_LIMIT = 20


@dataclass(frozen=True)
class CharPoly:
    """``det(xI - A_m(i)) = (x**m - sum_j a_j x**(m-j)) * x**trailing``.

    When ``i > q**m - m`` the matrix has fewer than ``m`` rows; ``trailing`` is
    then 0 and the last ``m - (q**m - i)`` coefficients are zero, so the full
    polynomial is ``g`` divided by the surplus power of ``x``.
    """

    ctx: Context
    i: int
    coeffs: tuple
    ibar: int

    @property
    def degree(self) -> int:
        """Degree of the full polynomial, the dimension of the matrix."""
        return self.ctx.size - self.i

    @property
    def trailing(self) -> int:
        return max(self.degree - self.ctx.m, 0)

    def full_coeffs(self) -> tuple:
        """``(a_1, ..., a_n)`` of the full polynomial, ``n = q**m - i``."""
        n = self.degree
        m = self.ctx.m
        if n >= m:
            return self.coeffs + (0,) * (n - m)
        surplus = self.coeffs[n:]
        if any(surplus):
            raise ConsistencyError(
                f"g_{self.i} is not divisible by x^{m - n}: coefficients {self.coeffs}"
            )
        return self.coeffs[:n]

    def g_at(self, x):
        """Evaluate ``x**m - sum_j a_j x**(m-j)`` by Horner's rule."""
        acc = 1
        for a in self.coeffs:
            acc = acc * x - a
        return acc

    def to_dict(self) -> dict:
        return {
            "q": self.ctx.q,
            "m": self.ctx.m,
            "i": self.i,
            "a": list(self.coeffs),
            "trailing": self.trailing,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "CharPoly":
        cp = charpoly_fast(d["i"], Context(d["q"], d["m"]))
        if list(cp.coeffs) != list(d["a"]) or cp.trailing != d["trailing"]:
            raise ConsistencyError(f"serialized polynomial {d} disagrees with recomputation")
        return cp


def charpoly_fast(i: int, ctx: Context) -> CharPoly:
    if not 0 <= i < ctx.size:
        raise RangeError(f"cutoff i={i} outside [0, {ctx.size})")
    if i == 0:
        # uncut matrix: g = x**m - q x**(m-1), Perron root q
        return CharPoly(ctx, 0, (ctx.q,) + (0,) * (ctx.m - 1), 0)
    ibar = minimal_prefix(i, ctx)
    return CharPoly(ctx, i, to_digits(ctx.size - ibar, ctx), ibar)


def newton_coefficients(traces) -> list[int]:
    """Coefficients ``a_j`` of ``x**n - a_1 x**(n-1) - ... - a_n`` from power
    sums ``p_k = trace(A**k)``.

    ``j a_j = p_j - a_1 p_(j-1) - ... - a_(j-1) p_1``; every division must be
    exact.
    """
    a: list[int] = []
    for j in range(1, len(traces) + 1):
        acc = traces[j - 1]
        for t in range(1, j):
            acc -= a[t - 1] * traces[j - t - 1]
        aj, rem = divmod(acc, j)
        if rem:
            raise ConsistencyError(f"Newton step {j}: {acc} is not divisible by {j}")
        a.append(aj)
    return a


def _self_test() -> None:
    # 2x2 all-ones matrix: traces 2, 4 and characteristic polynomial x^2 - 2x
    if newton_coefficients([2, 4]) != [2, 0]:
        raise ConsistencyError("Newton recurrence fails on the 2x2 all-ones matrix")


_self_test()


def charpoly_newton(i: int, ctx: Context) -> tuple:
    """Full coefficient sequence of ``det(xI - A_m(i))`` from exact traces."""
    if not 0 <= i <= ctx.size:
        raise RangeError(f"cutoff i={i} outside [0, {ctx.size}]")
    tm = TransitionMatrix(ctx, i)
    return tuple(newton_coefficients(trace_powers(tm, tm.dim)))


def charpoly_minors(i: int, ctx: Context, limit: int = MINORS_LIMIT) -> tuple:
    """Full coefficient sequence from the principal-minor expansion.

    The sum of ``j x j`` principal minors is expanded over families of
    vertex-disjoint cycles covering ``j`` indices, each family contributing
    ``(-1)**(j - #cycles)``.  Only permutation submatrices have nonzero
    determinant, and for those this is exactly the determinant.
    """
    if not 0 <= i <= ctx.size:
        raise RangeError(f"cutoff i={i} outside [0, {ctx.size}]")
    tm = TransitionMatrix(ctx, i)
    n = tm.dim
    if n > limit:
        raise CapacityError(f"minor expansion on {n} indices exceeds limit {limit}")

    offset = tm.first
    by_min: dict[int, list[tuple[int, int]]] = {}
    for cyc in simple_cycles(tm):
        mask = 0
        for e in cyc:
            mask |= 1 << (e - offset)
        by_min.setdefault(cyc[0] - offset, []).append((mask, len(cyc)))

    @lru_cache(maxsize=None)
    def families(v: int, used: int) -> tuple:
        # signed counts, indexed by covered size, of cycle families whose
        # minima are all >= v; ``used`` holds the occupied indices >= v
        if v == n:
            return (1,)
        acc = list(families(v + 1, used >> 1))
        if not used & 1:
            for mask, length in by_min.get(v, ()):
                if (mask >> v) & used:
                    continue
                sign = -1 if length % 2 == 0 else 1
                rest = (used | (mask >> v)) >> 1
                for size, count in enumerate(families(v + 1, rest)):
                    while len(acc) <= size + length:
                        acc.append(0)
                    acc[size + length] += sign * count
        return tuple(acc)

    minor_sums = list(families(0, 0)) + [0] * (n + 1)
    families.cache_clear()
    # det(xI - A) = sum_j (-1)^j E_j x^(n-j), so a_j = (-1)^(j+1) E_j
    return tuple((-1) ** (j + 1) * minor_sums[j] for j in range(1, n + 1))
