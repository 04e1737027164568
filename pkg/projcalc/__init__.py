"""
projcalc - Moore-Penrose inverse calculus for pairs of projections.

Exact computations over the Gaussian rationals, SVD based floating-point
computations, an independent subspace oracle and a verification harness.

Licensed under a MIT style license - see LICENSE
"""

from .version import __version__

__all__ = ["__version__"]
