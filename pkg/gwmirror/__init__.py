"""Exact genus-0 Gromov-Witten computations: hypergeometric J-functions, mirror maps and enumerative oracles."""

__version__ = "1.0.0"
