"""Exact generating functions of planar hypermaps and constellations with alternating boundaries."""

from .series import LaurentSeries, SeriesSpace, TruncatedSeries, compose, inverse, revert, sqrt
from .spectral import HypermapWeights, monochromatic_W, solve_spectral
from .constellation import ConstellationParams, alternating_A, solve
from .tables import CoefficientTable

__version__ = "0.1.0"

__all__ = [
    "LaurentSeries", "SeriesSpace", "TruncatedSeries", "compose", "inverse", "revert", "sqrt",
    "HypermapWeights", "monochromatic_W", "solve_spectral",
    "ConstellationParams", "alternating_A", "solve", "CoefficientTable",
]
