"""Exact computations on osculating spaces, secant varieties and defectivity bounds of Grassmannians."""

from .combinat import GrassSpec

__version__ = "0.1.0"

__all__ = ["GrassSpec", "__version__"]
