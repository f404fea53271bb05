"""minrep - minimal representations of natural numbers.

Core concept: every natural n has a shortest prefix-notation term over an
operator set (1, S and the hyperoperations + * ^). Tables of those lengths
are built by an exact DP and checked against the known bounds.
"""

__all__ = ["__version__"]

__version__ = "0.1.0"
