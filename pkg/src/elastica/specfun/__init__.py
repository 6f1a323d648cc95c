"""Self-contained special functions and numeric kernels.

Bessel J and derivatives, Bessel zeros, Gamma, 1-D quadrature with
endpoint-singular support, bracketed root finding, and circle contour
quadrature.  The Bessel/determinant kernels run from a compiled extension
when available (``COMPILED`` tells you which backend is active).
"""

from ._backend import COMPILED
from .bessel import bessel_j, bessel_j_prime, bessel_j_sequence, bessel_zeros
from .contour import ContourResult, ContourSpec, contour_integral, enclosing_contour
from .gammafn import gamma_fn
from .quadrature import IntegrationResult, QuadratureSpec, Scheme, integrate
from .roots import find_root

__all__ = [
    "COMPILED",
    "bessel_j",
    "bessel_j_prime",
    "bessel_j_sequence",
    "bessel_zeros",
    "gamma_fn",
    "integrate",
    "IntegrationResult",
    "QuadratureSpec",
    "Scheme",
    "find_root",
    "contour_integral",
    "ContourResult",
    "ContourSpec",
    "enclosing_contour",
]
