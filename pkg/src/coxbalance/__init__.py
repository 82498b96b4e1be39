"""Exact-arithmetic toolkit for balance constants of convex sets in Coxeter groups.

Submodules:

* ``rootsys``   crystallographic root systems, root posets, order ideals
* ``weyl``      finite Weyl group elements as signed root permutations
* ``coxgen``    generic Coxeter systems (labels 2, 3, inf) and word combinatorics
* ``posets``    labelled posets, heaps, ideal statistics
* ``convex``    convex subsets, inversion fractions, balance constants
* ``semiorder`` generalized semiorders and the single-exit witness scans
* ``alcove``    fundamental alcoves, order polytopes, exponential bounds
* ``verify``    verification campaigns with exact reports
* ``cli``       the ``coxbalance`` command-line entry point
"""

from .rootsys import RootSystem, build_root_system
from .convex import ConvexSet, CoxContext, WeylContext

__version__ = "0.1.0"

__all__ = [
    "RootSystem",
    "build_root_system",
    "ConvexSet",
    "CoxContext",
    "WeylContext",
    "__version__",
]
