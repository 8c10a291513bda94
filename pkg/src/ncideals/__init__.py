"""
ncideals - Gröbner bases and Gröbner S-bases of noncommutative ideals.

This package verifies the Gröbner basis of the ideal generated by the
commutators of length 3 and the Gröbner basis of the T-ideal of the
Grassmann algebra, by composition checks and by dimension comparison
against known bases of the quotients.
"""

__version__ = "0.1.0"

from ncideals.errors import NCIdealsError

__all__ = [
    "__version__",
    "NCIdealsError",
]
