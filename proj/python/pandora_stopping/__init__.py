"""Box-opening policies, benchmarks, and exact or simulated ratios.

Instances travel as json strings (see gen/exact_run/mc_run); everything
else comes back as plain dicts and floats.
"""

from ._core import (
    closed_form,
    exact_run,
    families,
    gen,
    mc_run,
    oracle_value,
    ratio_rows,
    reservation,
    table_csv,
    version,
)

__all__ = [
    "closed_form",
    "exact_run",
    "families",
    "gen",
    "mc_run",
    "oracle_value",
    "ratio_rows",
    "reservation",
    "table_csv",
    "version",
]

__version__ = version()
