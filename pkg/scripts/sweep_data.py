"""Write dimension-vs-cutoff CSV files for plotting.

One file per (q, m): q in {2, 3, 5, 7} at moderate resolution, plus the
q=50000, m=1 curve.  Columns match ``dimshift sweep --psi``.
"""

import argparse
from pathlib import Path

from dimshift import Context
from dimshift.spectrum import CSV_HEADER, psi, sweep

DEFAULT_RUNS = [(2, 10), (3, 6), (5, 4), (7, 3), (50000, 1)]


def write(ctx: Context, out: Path, jobs: int) -> Path:
    path = out / f"sweep_q{ctx.q}_m{ctx.m}.csv"
    rows = [p.csv_row(psi(p.c, ctx.q)) for p in sweep(ctx, jobs=jobs)]
    path.write_text("\n".join([CSV_HEADER, *rows]) + "\n")
    return path


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("data"))
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for q, m in DEFAULT_RUNS:
        path = write(Context(q, m), args.out, args.jobs)
        print(path)


if __name__ == "__main__":
    main()
