"""Perron roots and the dimension function.

At a parameter ``c = i / q**m`` the dimension is ``log(rho) / log(q)`` with
``rho`` the unique positive root of the nontrivial characteristic factor.
Arbitrary real ``c`` is only ever reported as a bracket between the two
neighbouring grid points at resolution ``m``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .base_arith import Context
from .charpoly import CharPoly, charpoly_fast
from .errors import ConsistencyError, RangeError
from .prefix import minimal_prefix
from .subshift import TransitionMatrix

__all__ = [
    "PerronRoot",
    "DimPoint",
    "DimBracket",
    "Plateau",
    "AsymRow",
    "CSV_HEADER",
    "perron_root",
    "power_iteration_root",
    "phi_exact",
    "plateau",
    "repunit",
    "psi",
    "phi_bracket",
    "asymptotic_check",
    "sweep",
]

ROOT_RTOL = 1e-12
CSV_HEADER = "q,m,i,c_num,c_den,rho,phi,psi,residual"


def _fmt(x) -> str:
    return "" if x is None else format(x, ".17g")


@dataclass(frozen=True)
class PerronRoot:
    rho: float
    residual: float


def _horner(coeffs, x):
    acc = 1
    for a in coeffs:
        acc = acc * x - a
    return acc


def _horner_deriv(coeffs, x):
    d = len(coeffs)
    acc = float(d)
    for j, a in enumerate(coeffs[:-1], start=1):
        acc = acc * x - (d - j) * a
    return acc


def perron_root(p: CharPoly) -> PerronRoot:
    """Unique positive root of ``x**m - a_1 x**(m-1) - ... - a_m``.

    Trailing zero coefficients are stripped first (they only add zero
    eigenvalues), leaving a polynomial negative at 0 and nonnegative at ``q``
    with a single sign change.  Bisection brackets the root to ``1e-12``
    relative width, then Newton steps polish it as long as they stay inside
    the bracket and do not increase the residual.
    """
    q = p.ctx.q
    if p.i == 0:
        return PerronRoot(float(q), 0.0)
    coeffs = list(p.coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ConsistencyError(f"polynomial for i={p.i} has no nonzero coefficient")
    if len(coeffs) == 1:
        rho = float(coeffs[0])
    else:
        lo, hi = 0.0, float(q)
        if _horner(coeffs, q) == 0:
            lo = hi
        while hi - lo > ROOT_RTOL * hi:
            mid = 0.5 * (lo + hi)
            if _horner(coeffs, mid) < 0:
                lo = mid
            else:
                hi = mid
        rho = 0.5 * (lo + hi)
        best = abs(_horner(coeffs, rho))
        for _ in range(4):
            if best == 0:
                break
            step = _horner(coeffs, rho) / _horner_deriv(coeffs, rho)
            cand = rho - step
            if not lo <= cand <= hi:
                break
            r = abs(_horner(coeffs, cand))
            if r >= best:
                break
            rho, best = cand, r
    # residual of the unstripped factor, evaluated exactly at the float root
    residual = abs(float(p.g_at(Fraction(rho))))
    return PerronRoot(rho, residual)


def power_iteration_root(
    tm: TransitionMatrix, tol: float = 1e-15, max_iter: int = 200_000
) -> float:
    """Spectral radius of a dense nonnegative matrix by power iteration.

    Iterates on ``A + I`` so that peripheral eigenvalues of a periodic matrix
    cannot tie with the Perron root, then subtracts the shift.
    """
    n = tm.dim
    if n == 0:
        return 0.0
    b = tm.dense.astype(float) + np.eye(n)
    x = np.full(n, 1.0 / n)
    est = 0.0
    stable = 0
    for _ in range(max_iter):
        y = b @ x
        s = y.sum()
        new = s / x.sum()
        x = y / s
        if abs(new - est) <= tol * new:
            stable += 1
            if stable >= 5:
                est = new
                break
        else:
            stable = 0
        est = new
    return est - 1.0


@dataclass(frozen=True)
class DimPoint:
    q: int
    m: int
    i: int
    rho: float
    phi: float
    residual: float

    @property
    def c(self) -> Fraction:
        return Fraction(self.i, self.q**self.m)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["c_num"] = self.i
        d["c_den"] = self.q**self.m
        return d

    def csv_row(self, psi_value: float | None = None) -> str:
        return ",".join(
            [
                str(self.q),
                str(self.m),
                str(self.i),
                str(self.i),
                str(self.q**self.m),
                _fmt(self.rho),
                _fmt(self.phi),
                _fmt(psi_value),
                _fmt(self.residual),
            ]
        )


def phi_exact(i: int, ctx: Context) -> DimPoint:
    if not 0 <= i < ctx.size:
        raise RangeError(f"cutoff i={i} outside [0, {ctx.size})")
    root = perron_root(charpoly_fast(i, ctx))
    phi = 1.0 if i == 0 else math.log(root.rho) / math.log(ctx.q)
    return DimPoint(ctx.q, ctx.m, i, root.rho, phi, root.residual)


def repunit(i: int, q: int, m: int) -> int:
    """``i * (1 + q + ... + q**(m-1))``: the word of ``m`` copies of digit ``i``."""
    return sum(i * q**n for n in range(m))


@dataclass(frozen=True)
class Plateau:
    left: Fraction
    right: Fraction
    value: float


def plateau(i: int, ctx: Context) -> Plateau:
    """Interval ``[i/q, i/(q-1)]`` on which the dimension is constant.

    Checked at every word length up to ``ctx.m``: the cutoffs ``i q**(m-1)``
    and ``i i ... i`` (base q) share their minimal prefix.
    """
    q = ctx.q
    if not 0 <= i < q:
        raise RangeError(f"plateau index i={i} outside [0, {q})")
    for m in range(1, ctx.m + 1):
        sub = ctx.with_m(m)
        if minimal_prefix(repunit(i, q, m), sub) != q ** (m - 1) * i:
            raise ConsistencyError(f"minimal prefix of the repunit breaks at m={m}")
    return Plateau(Fraction(i, q), Fraction(i, q - 1), phi_exact(i, ctx.with_m(1)).phi)


def psi(c, q: int) -> float:
    """``1 + log(1 - c) / log(q)`` below ``(q-1)/q``, zero from there on."""
    if not 0 <= c < 1:
        raise RangeError(f"c={c} outside [0, 1)")
    if q < 2:
        raise RangeError(f"radix q must be >= 2, got {q}")
    if c >= Fraction(q - 1, q):
        return 0.0
    if isinstance(c, Fraction):
        return 1.0 + (math.log(c.denominator - c.numerator) - math.log(c.denominator)) / math.log(q)
    return 1.0 + math.log1p(-c) / math.log(q)


@dataclass(frozen=True)
class DimBracket:
    c: object
    m: int
    lower: DimPoint
    upper: DimPoint

    @property
    def collapsed(self) -> bool:
        return self.lower.i == self.upper.i

    def to_dict(self) -> dict:
        return {
            "c": str(self.c),
            "m": self.m,
            "lower": self.lower.to_dict(),
            "upper": self.upper.to_dict(),
        }


def phi_bracket(c, ctx: Context) -> DimBracket:
    """Sandwich the dimension at ``c`` between neighbouring grid points.

    An exact rational ``c`` (``Fraction`` or ``int``) lying on the grid
    ``i / q**m`` collapses to that single point; a float always yields the
    interval ``[phi((i+1)/q**m), phi(i/q**m)]`` with ``i = floor(c q**m)``.
    """
    if not 0 <= c < 1:
        raise RangeError(f"c={c} outside [0, 1)")
    scaled = Fraction(c) * ctx.size
    i = math.floor(scaled)
    upper = phi_exact(i, ctx)
    on_grid = isinstance(c, (Fraction, int)) and scaled == i
    lower = upper if on_grid else phi_exact(min(i + 1, ctx.size - 1), ctx)
    return DimBracket(c, ctx.m, lower, upper)


@dataclass(frozen=True)
class AsymRow:
    q: int
    i: int
    phi_lo: float
    phi_hi: float
    psi: float
    ratio_lo: float | None
    ratio_hi: float | None
    bound_lo: float
    bound_hi: float
    ok: bool


def asymptotic_check(c, q_list, rtol: float = 1e-12) -> list[AsymRow]:
    """Bound ``phi(c) / psi(c)`` for each radix at resolution ``m = 1``.

    With ``i = floor(q c)`` the ratio must lie between
    ``log(q-i-1)/log(q-i)`` and its reciprocal.  When ``q c`` is an integer
    ``c`` is itself a grid point and ``phi(c)`` is evaluated exactly.
    """
    if not 0 <= c < 1:
        raise RangeError(f"c={c} outside [0, 1)")
    rows = []
    for q in q_list:
        ctx = Context(q, 1)
        scaled = Fraction(c) * q
        i = math.floor(scaled)
        hi = phi_exact(i, ctx).phi
        lo = hi if scaled == i else phi_exact(min(i + 1, q - 1), ctx).phi
        s = psi(c, q)
        if q - i - 1 >= 2:
            b_lo = math.log(q - i - 1) / math.log(q - i)
            b_hi = 1.0 / b_lo
        else:
            b_lo, b_hi = 0.0, math.inf
        if s > 0:
            r_lo, r_hi = lo / s, hi / s
            ok = b_lo * (1 - rtol) <= r_lo <= r_hi <= b_hi * (1 + rtol)
        else:
            r_lo = r_hi = None
            ok = hi == 0.0
        rows.append(AsymRow(q, i, lo, hi, s, r_lo, r_hi, b_lo, b_hi, ok))
    return rows


def _point(args):
    i, q, m = args
    return phi_exact(i, Context(q, m))


def sweep(ctx: Context, i_lo: int = 0, i_hi: int | None = None, jobs: int = 1) -> list[DimPoint]:
    """``phi_exact`` for every cutoff in ``[i_lo, i_hi]``, in index order."""
    if i_hi is None:
        i_hi = ctx.size - 1
    if not 0 <= i_lo <= i_hi < ctx.size:
        raise RangeError(f"sweep range [{i_lo}, {i_hi}] invalid for q^m={ctx.size}")
    tasks = [(i, ctx.q, ctx.m) for i in range(i_lo, i_hi + 1)]
    if jobs <= 1:
        return [_point(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_point, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
