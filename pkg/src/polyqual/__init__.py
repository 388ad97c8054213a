"""Polygonal mesh quality workbench.

Generates t-parametrized polygonal mesh families, evaluates per-element
quality metrics, runs external PEM solvers (and a built-in lowest-order
virtual element Poisson solver) over mesh datasets, and correlates mesh
quality against solver performance.
"""

__version__ = "0.1.0"
