"""Exact verification of cohomology growth bounds along congruence towers.

Integer and rational arithmetic only; every closed form that matters is
cross-checked against an independent brute-force oracle somewhere in the
test suite.
"""

__version__ = "0.1.0"
