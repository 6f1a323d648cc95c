"""Gamma function on (0, 50]."""

from __future__ import annotations

import math

from ..errors import ParameterDomainError
from . import _backend


def gamma_fn(x: float) -> float:
    """Gamma(x), exact on integers/half-integers, Lanczos elsewhere."""
    if not (isinstance(x, (int, float)) and math.isfinite(x)) or x <= 0.0:
        raise ParameterDomainError(f"gamma_fn needs x > 0, got {x!r}")
    if x > 50.0:
        raise ParameterDomainError(f"gamma_fn supports x <= 50, got {x!r}")
    return _backend.gamma_kernel(float(x))
