"""Exact counting of non-crossing partitions on surfaces with boundary.

The package splits into an exact series kernel (`series`), surface and
combinatorial-map primitives (`surfaces`, `maps`), the tree generating
functions (`trees`), scheme enumeration (`schemes`), the assembled counting
series (`assembly`), singularity analysis and bounds (`asymptotics`), a
brute-force ground-truth enumerator (`oracle`), and a command-line front end
(`cli`).
"""

from .series import TruncatedSeries, SeriesError
from .surfaces import Surface, parse_surface

__all__ = ["TruncatedSeries", "SeriesError", "Surface", "parse_surface"]

__version__ = "0.1.0"
