"""Dimension of base-q orbit-avoiding sets via truncated shift matrices.

For ``F_c = {x in [0,1) : frac(q**n x) >= c for all n}`` with ``c = i/q**m``
the dimension is ``log(rho) / log(q)``, ``rho`` being the Perron root of the
transition matrix of length-``m`` words with its first ``i`` rows and
columns removed.
"""

from .base_arith import Context, from_digits, part, res, to_digits
from .charpoly import CharPoly, charpoly_fast, charpoly_minors, charpoly_newton
from .errors import CapacityError, ConsistencyError, DimshiftError, DomainError, RangeError
from .prefix import PrefixInfo, down_prefix, is_minimal, minimal_prefix, prefix_info
from .spectrum import (
    DimBracket,
    DimPoint,
    asymptotic_check,
    perron_root,
    phi_bracket,
    phi_exact,
    plateau,
    psi,
)
from .subshift import (
    Cycle,
    TransitionMatrix,
    count_cycles,
    cycle_down,
    cycle_up,
    dense,
    entry,
    is_permutation_submatrix,
    power_entry,
    trace_power,
    unique_cycle,
)

__version__ = "0.1.0"
