"""Spectra of bidiagonal Toeplitz matrices, Grushin inverses and Monte Carlo Weyl-law checks."""

from ._core import *  # noqa: F401,F403
from ._core import GateError, NumericError, RegimeError

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
