"""Exhaustive consistency checks over small radices and word lengths.

Each check returns a :class:`CheckResult`; :func:`run_all` runs every check
for ``2 <= q <= q_max`` and ``1 <= m <= m_max``.  Brute-force routes are
skipped above :data:`NEWTON_LIMIT` (Newton oracle) and :data:`MINORS_LIMIT`
(minor expansion) matrix dimensions.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .base_arith import Context, from_digits, part, res, to_digits
from .charpoly import charpoly_fast, charpoly_minors, charpoly_newton
from .prefix import down_prefix, is_minimal, minimal_prefix, prefix_info, prefix_length
from .spectrum import phi_exact, plateau, power_iteration_root, repunit
from .subshift import (
    TransitionMatrix,
    count_cycles,
    cycle_down,
    cycle_up,
    matrix_power,
    simple_cycles,
    trace_power,
    unique_cycle,
)

log = logging.getLogger(__name__)

NEWTON_LIMIT = 128
MINORS_LIMIT = 12
POWER_ITERATION_LIMIT = 256


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def expect(self, cond: bool, detail) -> None:
        self.cases += 1
        if not cond:
            self.failures.append(detail)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"{status} {self.name}: {self.cases} cases, {self.seconds:.2f}s"
        if self.failures:
            text += f"; first failure {self.failures[0]!r}"
        return text


def contexts(q_max: int, m_max: int):
    for q in range(2, q_max + 1):
        for m in range(1, m_max + 1):
            yield Context(q, m)


def check_arith(ctxs) -> CheckResult:
    out = CheckResult("part/residue identities")
    for ctx in ctxs:
        m = ctx.m
        for n in range(ctx.size):
            out.expect(from_digits(to_digits(n, ctx), ctx) == n, ("digits", ctx, n))
            for k in range(m + 2):
                p, r = part(n, k, ctx), res(n, k, ctx)
                out.expect(n == ctx.q**k * p + r and 0 <= r < ctx.q**k, ("split", ctx, n, k))
                for j in range(m + 2):
                    out.expect(res(res(n, j, ctx), k, ctx) == res(n, min(j, k), ctx), ("res", ctx, n, j, k))
                    out.expect(part(part(n, k, ctx), j, ctx) == part(n, k + j, ctx), ("part", ctx, n, j, k))
                    if j > k:
                        out.expect(
                            part(res(n, j, ctx), k, ctx) == res(part(n, k, ctx), j - k, ctx),
                            ("commute", ctx, n, j, k),
                        )
    return out


def check_prefix(ctxs) -> CheckResult:
    out = CheckResult("prefix scaling/decrement/recursion")
    for ctx in ctxs:
        up = ctx.with_m(ctx.m + 1)
        prev = None
        for n in range(ctx.size):
            info = prefix_info(n, ctx)
            out.expect(info.nbar <= n and info.nbar % ctx.q ** (ctx.m - info.l) == 0, ("nbar", ctx, n))
            out.expect(q_scaled_ok(n, ctx, up), ("scaling", ctx, n))
            if prev is not None:
                out.expect(info.nbar >= prev.nbar, ("monotone", ctx, n))
                if prev.l == ctx.m:
                    out.expect(info.nbar == prev.nbar + 1, ("decrement", ctx, n))
            if info.l < ctx.m:
                small = ctx.with_m(info.l)
                d = down_prefix(n, ctx.m, small)
                out.expect(prefix_length(d, small) == info.l, ("down length", ctx, n))
                out.expect(
                    info.nbar == ctx.q ** (ctx.m - info.l) * minimal_prefix(d, small),
                    ("recursion", ctx, n),
                )
            prev = info
    return out


def q_scaled_ok(n: int, ctx: Context, up: Context) -> bool:
    a, b = prefix_info(n, ctx), prefix_info(ctx.q * n, up)
    return ctx.q * a.nbar == b.nbar and a.l == b.l


def check_power_predicate(ctxs) -> CheckResult:
    out = CheckResult("power predicate")
    for ctx in ctxs:
        if ctx.size > POWER_ITERATION_LIMIT:
            continue
        tm = TransitionMatrix(ctx)
        v = np.arange(ctx.size)
        out.expect(bool((tm.dense.sum(axis=0) == ctx.q).all() and (tm.dense.sum(axis=1) == ctx.q).all()), ("sums", ctx))
        for k in range(1, ctx.m + 1):
            pred = (v[:, None] % ctx.q ** (ctx.m - k)) == (v[None, :] // ctx.q**k)
            out.expect(np.array_equal(matrix_power(tm, k), pred.astype(np.int64)), ("power", ctx, k))
    return out


def check_traces(ctxs) -> CheckResult:
    out = CheckResult("trace invariance")
    ctxs = [c for c in ctxs if c.size <= 64]
    by_q = {}
    for ctx in ctxs:
        by_q.setdefault(ctx.q, []).append(ctx)
    for group in by_q.values():
        for big in group:
            M = big.m
            for small in group:
                m = small.m
                if m > M:
                    continue
                for k in range(1, m + 1):
                    for c in range(small.size + 1):
                        lhs = trace_power(TransitionMatrix(small, c), k)
                        rhs = trace_power(TransitionMatrix(big, big.q ** (M - m) * c), k)
                        out.expect(lhs == rhs, ("scaled", big.q, m, M, k, c))
                    # holds when the prefix length of c is at most m
                    for c in range(big.size):
                        if prefix_length(c, big) <= m:
                            lhs = trace_power(TransitionMatrix(small, part(c, M - m, big)), k)
                            rhs = trace_power(TransitionMatrix(big, c), k)
                            out.expect(lhs == rhs, ("part", big.q, m, M, k, c))
    return out


def check_cycles(ctxs) -> CheckResult:
    out = CheckResult("cycle structure")
    for ctx in ctxs:
        if ctx.size > 64:
            continue
        tm = TransitionMatrix(ctx)
        found = {}
        for cyc in simple_cycles(tm, ctx.m):
            found.setdefault(len(cyc), []).append(cyc)
            v = cyc[0] - 1
            out.expect(is_minimal(v, ctx) and prefix_length(v, ctx) == len(cyc), ("minimum", ctx, cyc))
            uc = unique_cycle(cyc[0], tm)
            out.expect(uc.elements == cyc, ("unique", ctx, cyc))
            lifted = cycle_up(uc, ctx.m + 1)
            out.expect(cycle_down(lifted, ctx.m) == uc, ("round trip", ctx, cyc))
        for k in range(1, ctx.m + 1):
            for cut in range(ctx.size + 1):
                sub = TransitionMatrix(ctx, cut)
                brute = sum(1 for c in found.get(k, []) if c[0] > cut)
                out.expect(count_cycles(sub, k) == brute, ("count", ctx, k, cut))
            walks = sum(d * len(found.get(d, [])) for d in range(1, k + 1) if k % d == 0)
            out.expect(walks == trace_power(tm, k), ("walks", ctx, k))
    return out


def check_charpoly(ctxs) -> CheckResult:
    out = CheckResult("characteristic polynomial oracles")
    for ctx in ctxs:
        for i in range(ctx.size):
            cp = charpoly_fast(i, ctx)
            out.expect(cp.g_at(ctx.q) == cp.ibar, ("evaluation", ctx, i))
            if ctx.size - i <= NEWTON_LIMIT:
                out.expect(charpoly_newton(i, ctx) == cp.full_coeffs(), ("newton", ctx, i))
            if ctx.size - i <= MINORS_LIMIT:
                out.expect(charpoly_minors(i, ctx) == cp.full_coeffs(), ("minors", ctx, i))
    return out


def check_spectrum(ctxs) -> CheckResult:
    out = CheckResult("Perron roots and dimension")
    for ctx in ctxs:
        prev = math.inf
        for i in range(ctx.size):
            pt = phi_exact(i, ctx)
            out.expect(pt.phi <= prev, ("monotone", ctx, i))
            out.expect(pt.residual <= 1e-9, ("residual", ctx, i, pt.residual))
            prev = pt.phi
            if ctx.size - i <= POWER_ITERATION_LIMIT:
                pi = power_iteration_root(TransitionMatrix(ctx, i))
                out.expect(abs(pt.rho - pi) <= 1e-9, ("power iteration", ctx, i, pt.rho, pi))
        for i in range(ctx.q):
            left = phi_exact(i * ctx.q ** (ctx.m - 1), ctx).phi
            right = phi_exact(repunit(i, ctx.q, ctx.m), ctx).phi
            out.expect(abs(left - right) <= 1e-12, ("plateau", ctx, i))
            out.expect(abs(plateau(i, ctx).value - left) <= 1e-12, ("plateau value", ctx, i))
    return out


CHECKS = [
    check_arith,
    check_prefix,
    check_power_predicate,
    check_traces,
    check_cycles,
    check_charpoly,
    check_spectrum,
]


def run_all(q_max: int, m_max: int) -> list[CheckResult]:
    ctxs = list(contexts(q_max, m_max))
    results = []
    for check in CHECKS:
        t0 = time.perf_counter()
        r = check(ctxs)
        r.seconds = time.perf_counter() - t0
        log.info(r.line())
        results.append(r)
    return results
