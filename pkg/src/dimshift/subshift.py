"""The transition matrix of the base-q shift on words of length m.

Matrix indices are 1-based (``1..q**m``) and index ``r`` stands for the word
with integer value ``r - 1``.  Entry ``(r, c)`` is 1 exactly when the last
``m - 1`` digits of ``r - 1`` equal the first ``m - 1`` digits of ``c - 1``,
i.e. ``res(r - 1, m - 1) == part(c - 1, 1)``.  A cutoff ``i`` deletes the
first ``i`` rows and columns.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .base_arith import Context, part, res, to_digits
from .errors import CapacityError, DomainError, RangeError
from .prefix import is_minimal, prefix_length

__all__ = [
    "DEFAULT_DENSE_BUDGET",
    "dense_budget",
    "TransitionMatrix",
    "Cycle",
    "entry",
    "power_entry",
    "dense",
    "dump_dense",
    "matrix_power",
    "trace_power",
    "trace_powers",
    "is_permutation_submatrix",
    "successors",
    "simple_cycles",
    "unique_cycle",
    "cycle_down",
    "cycle_up",
    "count_cycles",
]

DEFAULT_DENSE_BUDGET = 4096
_INT64_SAFE = 2**62


def dense_budget() -> int:
    """Largest matrix dimension the dense path will materialize.

    ``DIMSHIFT_DENSE_BUDGET`` overrides the default of 4096.
    """
    raw = os.environ.get("DIMSHIFT_DENSE_BUDGET")
    if raw is None:
        return DEFAULT_DENSE_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise RangeError(f"DIMSHIFT_DENSE_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise RangeError("DIMSHIFT_DENSE_BUDGET must be positive")
    return value


@dataclass(frozen=True)
class TransitionMatrix:
    """``A_m(cutoff)``: the full matrix with its first ``cutoff`` rows and
    columns removed.  Entries are computed on demand; :attr:`dense` caches the
    materialized 0-1 array."""

    ctx: Context
    cutoff: int = 0

    def __post_init__(self):
        if not 0 <= self.cutoff <= self.ctx.size:
            raise RangeError(f"cutoff {self.cutoff} outside [0, {self.ctx.size}]")

    @property
    def dim(self) -> int:
        return self.ctx.size - self.cutoff

    @property
    def first(self) -> int:
        """Smallest 1-based index kept."""
        return self.cutoff + 1

    def indices(self) -> range:
        return range(self.cutoff + 1, self.ctx.size + 1)

    def contains(self, r: int) -> bool:
        return self.cutoff < r <= self.ctx.size

    @cached_property
    def dense(self) -> np.ndarray:
        n = self.dim
        if n > dense_budget():
            raise CapacityError(
                f"dense {n}x{n} matrix exceeds budget {dense_budget()} "
                "(set DIMSHIFT_DENSE_BUDGET to raise it)"
            )
        values = np.arange(self.cutoff, self.ctx.size, dtype=np.int64)
        tails = values % (self.ctx.size // self.ctx.q)
        heads = values // self.ctx.q
        a = (tails[:, None] == heads[None, :]).astype(np.int64)
        a.setflags(write=False)
        return a

    @cached_property
    def _column_sources(self) -> np.ndarray:
        # row k of the result lists, for every column, the k-th row holding a 1;
        # unused slots point at a padding column of zeros (index dim)
        n, q = self.dim, self.ctx.q
        a = self.dense
        src = np.full((q, n), n, dtype=np.int64)
        for col in range(n):
            rows = np.flatnonzero(a[:, col])
            src[: len(rows), col] = rows
        src.setflags(write=False)
        return src


def _check_index(r: int, tm: TransitionMatrix) -> None:
    if not tm.contains(r):
        raise RangeError(f"index {r} outside [{tm.first}, {tm.ctx.size}]")


def entry(r: int, c: int, tm: TransitionMatrix) -> int:
    _check_index(r, tm)
    _check_index(c, tm)
    ctx = tm.ctx
    return int(res(r - 1, ctx.m - 1, ctx) == part(c - 1, 1, ctx))


def power_entry(r: int, c: int, k: int, tm: TransitionMatrix) -> int:
    """Entry ``(r, c)`` of ``A_m**k`` for ``1 <= k <= m`` on the full matrix.

    In that range every power is still a 0-1 matrix, with a one exactly when
    ``res(r - 1, m - k) == part(c - 1, k)``.
    """
    ctx = tm.ctx
    if tm.cutoff != 0:
        raise DomainError("power_entry is only valid on the full matrix (cutoff 0)")
    if not 1 <= k <= ctx.m:
        raise RangeError(f"k={k} outside [1, {ctx.m}]")
    _check_index(r, tm)
    _check_index(c, tm)
    return int(res(r - 1, ctx.m - k, ctx) == part(c - 1, k, ctx))


def dense(tm: TransitionMatrix) -> np.ndarray:
    return tm.dense


def dump_dense(tm: TransitionMatrix) -> str:
    """Plain-text 0/1 grid, one row per line."""
    return "\n".join("".join(str(int(x)) for x in row) for row in tm.dense)


def _times_a(b: np.ndarray, tm: TransitionMatrix) -> np.ndarray:
    # b @ A using the sparsity of A: each column of A has at most q ones
    padded = np.concatenate([b, np.zeros((b.shape[0], 1), dtype=b.dtype)], axis=1)
    src = tm._column_sources
    out = padded[:, src[0]]
    for k in range(1, src.shape[0]):
        out = out + padded[:, src[k]]
    return out


def _powers(tm: TransitionMatrix, kmax: int):
    """Yield ``A, A**2, ..., A**kmax`` exactly.

    Entries of ``A**k`` are bounded by ``q**k``; the arrays switch from int64
    to Python integers before that bound can overflow.
    """
    q = tm.ctx.q
    b = tm.dense.copy()
    for k in range(1, kmax + 1):
        if k > 1:
            if b.dtype != object and q**k >= _INT64_SAFE:
                b = b.astype(object)
            b = _times_a(b, tm)
        yield b


def matrix_power(tm: TransitionMatrix, k: int) -> np.ndarray:
    if k < 1:
        raise RangeError(f"k must be >= 1, got {k}")
    for b in _powers(tm, k):
        pass
    return b


def trace_powers(tm: TransitionMatrix, kmax: int) -> list[int]:
    """``[trace(A), trace(A**2), ..., trace(A**kmax)]`` as exact integers."""
    if kmax < 1:
        return []
    if tm.dim == 0:
        return [0] * kmax
    return [sum(int(x) for x in np.diagonal(b)) for b in _powers(tm, kmax)]


def trace_power(tm: TransitionMatrix, k: int) -> int:
    if k < 1:
        raise RangeError(f"k must be >= 1, got {k}")
    ctx = tm.ctx
    if tm.cutoff == 0 and k <= ctx.m:
        q_mk = ctx.q ** (ctx.m - k)
        q_k = ctx.q**k
        return sum(1 for v in range(ctx.size) if v % q_mk == v // q_k)
    return trace_powers(tm, k)[-1]


def is_permutation_submatrix(P, tm: TransitionMatrix) -> bool:
    """True when ``A(P)`` has exactly one 1 in every row and every column."""
    P = sorted(set(P))
    for r in P:
        _check_index(r, tm)
    if not P:
        return False
    ctx = tm.ctx
    heads = [part(c - 1, 1, ctx) for c in P]
    col_count = [0] * len(P)
    for r in P:
        tail = res(r - 1, ctx.m - 1, ctx)
        hits = [j for j, h in enumerate(heads) if h == tail]
        if len(hits) != 1:
            return False
        col_count[hits[0]] += 1
    return all(n == 1 for n in col_count)


def successors(r: int, tm: TransitionMatrix) -> list[int]:
    """Indices ``c`` with entry ``(r, c) == 1`` inside the submatrix."""
    _check_index(r, tm)
    ctx = tm.ctx
    base = res(r - 1, ctx.m - 1, ctx) * ctx.q + 1
    return [c for c in range(base, base + ctx.q) if c > tm.cutoff]


def simple_cycles(tm: TransitionMatrix, max_len: int | None = None):
    """Yield every simple cycle once, rotated so its minimum comes first.

    Plain depth-first search over the successor relation; exponential in
    general, so only meant for small matrices.
    """
    if max_len is None:
        max_len = tm.dim
    for start in tm.indices():
        path = [start]
        on_path = {start}
        stack = [iter(successors(start, tm))]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if nxt == start:
                yield tuple(path)
            elif nxt > start and nxt not in on_path and len(path) < max_len:
                path.append(nxt)
                on_path.add(nxt)
                stack.append(iter(successors(nxt, tm)))


@dataclass(frozen=True)
class Cycle:
    """An ordered tuple of distinct 1-based indices, each followed by the next
    (and the last by the first) in the full ``A_m``."""

    elements: tuple
    ctx: Context

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(int(e) for e in self.elements))
        els = self.elements
        if not els:
            raise DomainError("a cycle needs at least one element")
        if len(set(els)) != len(els):
            raise DomainError(f"cycle elements are not distinct: {els}")
        full = TransitionMatrix(self.ctx)
        for a, b in zip(els, els[1:] + els[:1]):
            if not full.contains(a):
                raise DomainError(f"element {a} outside [1, {self.ctx.size}]")
            if not entry(a, b, full):
                raise DomainError(f"no transition {a} -> {b} in A_{self.ctx.m}")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def canonical(self) -> "Cycle":
        j = self.elements.index(min(self.elements))
        return Cycle(self.elements[j:] + self.elements[:j], self.ctx)

    def lies_in(self, tm: TransitionMatrix) -> bool:
        return tm.ctx == self.ctx and min(self.elements) > tm.cutoff


def unique_cycle(i: int, tm: TransitionMatrix) -> Cycle:
    """The cycle of length ``k = l(i - 1)`` whose smallest element is ``i``.

    Requires ``i - 1`` to be minimal, which makes its word ``k``-periodic.
    Element ``n`` is the window of ``m`` digits starting at digit ``n`` of the
    periodic continuation of that word.  When ``k`` divides ``m`` this is the
    left rotation ``q**(n-1) * res(i-1, m-n+1) + part(i-1, m-n+1)``.
    """
    _check_index(i, tm)
    ctx = tm.ctx
    v = i - 1
    if not is_minimal(v, ctx):
        raise DomainError(f"{v} is not {ctx.m}-minimal for q={ctx.q}")
    k = prefix_length(v, ctx)
    q, m = ctx.q, ctx.m
    digits = to_digits(v, ctx)
    elements = []
    for n in range(k):
        w = 0
        for j in range(m):
            w = w * q + digits[(n + j) % k]
        elements.append(w + 1)
    cyc = Cycle(tuple(elements), ctx)
    if min(cyc.elements) != i:
        raise DomainError(f"cycle through {i} has smaller element {min(cyc.elements)}")
    return cyc


def cycle_down(P: Cycle, m: int, cutoff: int | None = None) -> Cycle:
    """Map a cycle of ``A_M`` to ``A_m`` by dropping the last ``M - m`` digits.

    With ``cutoff`` given, ``P`` must lie in ``A_M(cutoff)`` and
    ``l_M(cutoff) == m``; the result then lies in ``A_m(part(cutoff, M - m))``.
    """
    big = P.ctx
    M = big.m
    if not 1 <= m <= M:
        raise RangeError(f"target length m={m} outside [1, {M}]")
    if cutoff is not None:
        if not P.lies_in(TransitionMatrix(big, cutoff)):
            raise DomainError(f"cycle {P.elements} does not lie in A_{M}({cutoff})")
        if cutoff < big.size and prefix_length(cutoff, big) != m:
            raise DomainError(f"prefix length of cutoff {cutoff} is not {m}")
    small = big.with_m(m)
    try:
        out = Cycle(tuple(part(e - 1, M - m, big) + 1 for e in P.elements), small)
    except DomainError as exc:
        raise DomainError(f"image of {P.elements} is not a cycle: {exc}") from None
    if cutoff is not None and not out.lies_in(TransitionMatrix(small, part(cutoff, M - m, big))):
        raise DomainError("image cycle leaves the down-mapped submatrix")
    return out


def _lift_once(values: list[int], q: int) -> list[int]:
    k = len(values)
    return [q * values[j] + values[(j + 1) % k] % q for j in range(k)]


def cycle_up(P: Cycle, M: int) -> Cycle:
    """Lift a cycle of ``A_m`` to ``A_M`` by appending, to every word, the last
    digit of its successor, once per extra digit."""
    m = P.ctx.m
    if M < m:
        raise RangeError(f"target length M={M} is shorter than m={m}")
    values = [e - 1 for e in P.elements]
    for _ in range(M - m):
        values = _lift_once(values, P.ctx.q)
    return Cycle(tuple(v + 1 for v in values), P.ctx.with_m(M))


def count_cycles(tm: TransitionMatrix, k: int) -> int:
    """Number of ``k``-cycles (counted as vertex sets) inside ``A_m(cutoff)``.

    For ``k <= m`` the cycles correspond one-to-one with minimal values of
    prefix length ``k``, each cycle's minimum being ``value + 1``.  Longer
    cycles fall back to depth-first enumeration.
    """
    if k < 1:
        raise RangeError(f"k must be >= 1, got {k}")
    ctx = tm.ctx
    if k <= ctx.m:
        return sum(
            1
            for v in range(tm.cutoff, ctx.size)
            if prefix_length(v, ctx) == k and is_minimal(v, ctx)
        )
    if tm.dim > dense_budget():
        raise CapacityError(f"cycle enumeration on {tm.dim} indices exceeds budget")
    return sum(1 for c in simple_cycles(tm, k) if len(c) == k)
