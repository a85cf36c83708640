"""Orthogonality Sampling Imaging toolkit.

Synthesizes multi-static Cauchy data for penetrable media from the
Lippmann-Schwinger equation and reconstructs the scatterer support with
orthogonality-sampling imaging functionals.
"""

__version__ = "0.1.0"
