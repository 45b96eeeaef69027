"""Print the q=3, m=3 per-cutoff table, cross-checked by the Newton oracle."""

import argparse

from dimshift import Context
from dimshift.table import format_table, table_rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-q", type=int, default=3)
    ap.add_argument("-m", type=int, default=3)
    args = ap.parse_args()
    ctx = Context(args.q, args.m)
    print(format_table(table_rows(ctx, oracle=True), ctx))


if __name__ == "__main__":
    main()
