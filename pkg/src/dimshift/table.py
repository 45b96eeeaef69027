"""Per-cutoff summary table: minimal prefix, coefficients, prefix length and
diagonal entries of the low powers of the full transition matrix."""

from __future__ import annotations

from dataclasses import dataclass

from .base_arith import Context
from .charpoly import charpoly_fast, charpoly_newton
from .errors import ConsistencyError
from .prefix import is_minimal, prefix_info
from .subshift import TransitionMatrix, matrix_power

__all__ = ["TableRow", "table_rows", "format_table"]


@dataclass(frozen=True)
class TableRow:
    i: int
    ibar: int
    a: tuple
    l: int
    diag: tuple  # (A^1)_{i+1,i+1}, ..., (A^(m-1))_{i+1,i+1}
    minimal: bool

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "ibar": self.ibar,
            "a": list(self.a),
            "l": self.l,
            "diag": list(self.diag),
            "minimal": self.minimal,
        }


def table_rows(ctx: Context, oracle: bool = False) -> list[TableRow]:
    """One row per cutoff ``0 <= i < q**m``.

    The diagonal columns come from dense matrix powers, not from the power
    predicate.  With ``oracle=True`` every coefficient row is also checked
    against the Newton-identity characteristic polynomial.
    """
    full = TransitionMatrix(ctx)
    diags = [matrix_power(full, k).diagonal() for k in range(1, ctx.m)]
    rows = []
    for i in range(ctx.size):
        cp = charpoly_fast(i, ctx)
        if oracle and charpoly_newton(i, ctx) != cp.full_coeffs():
            raise ConsistencyError(f"fast and Newton polynomials differ at i={i}")
        info = prefix_info(i, ctx)
        rows.append(
            TableRow(
                i=i,
                ibar=cp.ibar,
                a=cp.coeffs,
                l=info.l,
                diag=tuple(int(d[i]) for d in diags),
                minimal=is_minimal(i, ctx),
            )
        )
    return rows


def format_table(rows: list[TableRow], ctx: Context) -> str:
    """Transposed text layout: one line per quantity, one column per cutoff."""
    lines = [("i", [r.i for r in rows]), ("ibar", [r.ibar for r in rows])]
    for j in range(ctx.m):
        lines.append((f"a_{j + 1}", [r.a[j] for r in rows]))
    lines.append(("l(i)", [r.l for r in rows]))
    for k in range(1, ctx.m):
        label = "A_ii" if k == 1 else f"A^{k}_ii"
        lines.append((label, [r.diag[k - 1] for r in rows]))
    lines.append(("minimal", [int(r.minimal) for r in rows]))
    width = max(len(str(v)) for _, vals in lines for v in vals)
    head = max(len(name) for name, _ in lines)
    return "\n".join(
        name.ljust(head) + " | " + " ".join(str(v).rjust(width) for v in vals) for name, vals in lines
    )
