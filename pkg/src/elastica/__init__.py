"""Elastic spectra on model planar domains and their two-term asymptotics.

Computes Navier-Lame eigenvalues on the unit disk (Bessel-determinant
potential method) and on the disk/square (finite elements), evaluates the
two competing second-term coefficient formulas, and runs the consistency
checks that adjudicate between them.
"""

__version__ = "0.1.0"

from .params import BoundaryCondition, DomainGeometry, DomainName, LameParams, UNIT_DISK, UNIT_SQUARE

__all__ = [
    "__version__",
    "LameParams",
    "BoundaryCondition",
    "DomainGeometry",
    "DomainName",
    "UNIT_DISK",
    "UNIT_SQUARE",
]
