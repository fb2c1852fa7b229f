"""frontlab: pseudo-spectral simulation and verification toolkit for
sharp-front dynamics in the generalized surface quasi-geostrophic family."""

__version__ = "0.1.0"

from .kernels import (  # noqa: F401
    AlphaFamily,
    DomainError,
    euler,
    gsqg,
    sqg,
)
from .spectral import FrontState, Grid, SymbolTable  # noqa: F401
