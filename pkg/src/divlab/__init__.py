"""divlab: a numerical laboratory for divisor-problem error terms.

Exact Delta_k(x) from sieved divisor tables, the truncated Voronoi
expansion and its remainder, zeta mean-square error terms E(x) and E*(t),
and a moment engine for mean squares, cross-correlations and growth
exponents, with dyadic reporting.
"""
from . import (arith_core, cli_reports, error_terms, moment_engine,
               residue_poly, voronoi, zeta_line)

__all__ = ["arith_core", "residue_poly", "error_terms", "voronoi",
           "moment_engine", "zeta_line", "cli_reports"]
__version__ = "0.1.0"
