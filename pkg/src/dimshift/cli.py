"""Command-line entry point.

Exit codes: 0 success, 1 verification failure or oracle mismatch, 2 usage or
range error.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .base_arith import Context
from .charpoly import charpoly_fast, charpoly_newton
from .errors import ConsistencyError, DimshiftError
from .prefix import prefix_info
from .spectrum import CSV_HEADER, asymptotic_check, phi_bracket, phi_exact, psi, sweep
from .table import format_table, table_rows
from .verify import run_all

log = logging.getLogger("dimshift")


class UsageError(Exception):
    pass


def _ctx(args) -> Context:
    return Context(args.q, args.m)


def cmd_prefix(args) -> int:
    info = prefix_info(args.n, _ctx(args))
    print(f"n={info.n} l={info.l} nbar={info.nbar}")
    return 0


def cmd_charpoly(args) -> int:
    ctx = _ctx(args)
    cp = charpoly_fast(args.i, ctx)
    status = 0
    if args.json:
        d = cp.to_dict()
    else:
        print(f"a=({','.join(map(str, cp.coeffs))}) trailing={cp.trailing} ibar={cp.ibar}")
    if args.oracle:
        match = charpoly_newton(args.i, ctx) == cp.full_coeffs()
        status = 0 if match else 1
        if args.json:
            d["oracle"] = "match" if match else "mismatch"
        else:
            print("oracle: " + ("match" if match else "mismatch"))
    if args.json:
        print(json.dumps(d))
    return status


def cmd_table(args) -> int:
    ctx = _ctx(args)
    rows = table_rows(ctx, oracle=args.oracle)
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in rows]))
    elif args.format == "csv":
        cols = ["i", "ibar"] + [f"a_{j + 1}" for j in range(ctx.m)] + ["l"]
        cols += [f"diag_{k}" for k in range(1, ctx.m)] + ["minimal"]
        print(",".join(cols))
        for r in rows:
            vals = [r.i, r.ibar, *r.a, r.l, *r.diag, int(r.minimal)]
            print(",".join(map(str, vals)))
    else:
        print(format_table(rows, ctx))
    return 0


def _parse_fraction(text: str, q: int, m: int | None) -> tuple[int, int]:
    """``"i/q^k"`` -> ``(i', m')`` with the parameter equal to ``i' / q**m'``."""
    num_s, den_s = text.split("/", 1)
    num, den = int(num_s), int(den_s)
    k, d = 0, 1
    while d < den:
        d *= q
        k += 1
    if d != den:
        raise UsageError(f"denominator {den} is not a power of q={q}")
    if m is None:
        m = max(k, 1)
    if m < k:
        raise UsageError(f"-m {m} is too small for denominator {den}")
    return num * q ** (m - k), m


def cmd_dim(args) -> int:
    if (args.i is None) == (args.c is None):
        raise UsageError("give exactly one of -i or -c")
    if args.c is not None and "/" in args.c:
        i, m = _parse_fraction(args.c, args.q, args.m)
        result = phi_exact(i, Context(args.q, m))
    elif args.c is not None:
        if args.m is None:
            raise UsageError("decimal -c needs a resolution -m")
        result = phi_bracket(float(args.c), _ctx(args))
    else:
        if args.m is None:
            raise UsageError("-i needs -m")
        result = phi_exact(args.i, _ctx(args))
    if args.json:
        print(json.dumps(result.to_dict()))
    elif hasattr(result, "lower"):
        for tag, pt in (("lower", result.lower), ("upper", result.upper)):
            print(f"{tag}: i={pt.i} rho={pt.rho!r} phi={pt.phi!r} residual={pt.residual!r}")
    else:
        print(f"c={result.c} rho={result.rho!r} phi={result.phi!r} residual={result.residual!r}")
    return 0


def cmd_sweep(args) -> int:
    ctx = _ctx(args)
    points = sweep(ctx, args.lo, args.hi, jobs=args.jobs)
    psis = [psi(p.c, ctx.q) if args.psi else None for p in points]
    if args.format == "json":
        out = []
        for p, s in zip(points, psis):
            d = p.to_dict()
            if args.psi:
                d["psi"] = s
            out.append(d)
        print(json.dumps(out))
    else:
        lines = [CSV_HEADER] + [p.csv_row(s) for p, s in zip(points, psis)]
        sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_verify(args) -> int:
    results = run_all(args.q_max, args.m_max)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def cmd_asym(args) -> int:
    c = float(args.c)
    qs = [int(s) for s in args.q.split(",") if s]
    rows = asymptotic_check(c, qs)
    print("q,i,phi_lo,phi_hi,psi,ratio_lo,ratio_hi,bound_lo,bound_hi,ok")
    for r in rows:
        vals = [r.q, r.i, r.phi_lo, r.phi_hi, r.psi, r.ratio_lo, r.ratio_hi, r.bound_lo, r.bound_hi]
        print(",".join("" if v is None else (str(v) if isinstance(v, int) else format(v, ".17g")) for v in vals) + f",{int(r.ok)}")
    return 0 if all(r.ok for r in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dimshift", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def qm(p, m_required=True):
        p.add_argument("-q", type=int, required=True, help="radix q >= 2")
        p.add_argument("-m", type=int, required=m_required, help="word length m >= 1")

    p = sub.add_parser("prefix", help="prefix length and minimal prefix of n")
    qm(p)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_prefix)

    p = sub.add_parser("charpoly", help="characteristic polynomial coefficients at cutoff i")
    qm(p)
    p.add_argument("i", type=int)
    p.add_argument("--oracle", action="store_true", help="also run the Newton-identity oracle")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("table", help="per-cutoff table of minimal prefixes and coefficients")
    qm(p)
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("dim", help="dimension at i/q^m, or a bracket for decimal c")
    qm(p, m_required=False)
    p.add_argument("-i", type=int)
    p.add_argument("-c", help="'i/q^k' fraction or decimal")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("sweep", help="dimension at every cutoff in a range")
    qm(p)
    p.add_argument("--lo", type=int, default=0)
    p.add_argument("--hi", type=int, default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--psi", action="store_true", help="include the comparison function")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the exhaustive consistency suite")
    p.add_argument("--q-max", type=int, default=3)
    p.add_argument("--m-max", type=int, default=3)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("asym", help="ratio bounds against the comparison function")
    p.add_argument("-c", required=True)
    p.add_argument("-q", required=True, help="comma-separated radices")
    p.set_defaults(func=cmd_asym)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except ConsistencyError as exc:
        print(f"dimshift {args.command}: consistency failure: {exc}", file=sys.stderr)
        return 1
    except (DimshiftError, UsageError, ValueError) as exc:
        print(f"dimshift {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
