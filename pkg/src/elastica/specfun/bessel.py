"""Validated Bessel-J entry points and zero tables."""

from __future__ import annotations

import math

import numpy as np

from ..errors import RangeError
from . import _backend
from .roots import find_root

_MAX_ORDER = 200
_MAX_ARG = 1e6


def _check(k: int, x: float):
    if not isinstance(k, (int, np.integer)) or k < 0 or k > _MAX_ORDER:
        raise RangeError(f"order must be an integer in [0, {_MAX_ORDER}], got {k!r}")
    if not (0.0 <= x <= _MAX_ARG):
        raise RangeError(f"argument must lie in [0, {_MAX_ARG:g}], got {x!r}")


def bessel_j(k: int, x: float) -> float:
    """J_k(x) for integer k >= 0, 0 <= x <= 1e6."""
    _check(k, x)
    return _backend.bessel_j_kernel(int(k), float(x))


def bessel_j_prime(k: int, x: float) -> float:
    """J_k'(x) via J_k' = (J_{k-1} - J_{k+1})/2, with J_0' = -J_1."""
    _check(k, x)
    return _backend.bessel_j_prime_kernel(int(k), float(x))


def bessel_j_sequence(nmax: int, x: float) -> np.ndarray:
    """Array [J_0(x), ..., J_nmax(x)] in one backward-recurrence pass."""
    _check(nmax, x)
    out = np.empty(nmax + 1)
    _backend.jn_seq(int(nmax), float(x), out)
    return out


def _mcmahon(k: int, i: int) -> float:
    mu = 4.0 * k * k
    beta = (i + 0.5 * k - 0.25) * math.pi
    return (
        beta
        - (mu - 1.0) / (8.0 * beta)
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * (8.0 * beta) ** 3)
    )


def bessel_zeros(k: int, m: int) -> np.ndarray:
    """First m positive zeros of J_k, ascending.

    March with unit-step sign scans near the turning point, switch to
    McMahon-seeded brackets once the expansion is reliable.  Every returned
    zero is Newton-polished.
    """
    if m < 0 or m > 10_000:
        raise RangeError(f"zero count must lie in [0, 10000], got {m}")
    _check(k, 1.0)
    f = lambda x: _backend.bessel_j_kernel(k, x)
    fp = lambda x: _backend.bessel_j_prime_kernel(k, x)
    zeros = np.empty(m)
    count = 0
    x = 0.5 if k == 0 else float(k) + 0.3  # J_k > 0 on (0, j_{k,1})
    mcmahon_from = max(20, 2 * k)
    while count < m:
        i = count + 1
        if i >= mcmahon_from:
            g = _mcmahon(k, i)
            lo, hi = g - 0.6, g + 0.6
            if f(lo) * f(hi) < 0.0:
                r = find_root(f, lo, hi, tol=1e-14, fprime=fp)
                r -= f(r) / fp(r)
                zeros[count] = r
                count += 1
                x = r + 0.5
                continue
        fx = f(x)
        step = 1.0
        while True:
            x2 = x + step
            fx2 = f(x2)
            if fx * fx2 < 0.0:
                r = find_root(f, x, x2, tol=1e-14, fprime=fp)
                r -= f(r) / fp(r)
                zeros[count] = r
                count += 1
                x = r + 0.5
                break
            x, fx = x2, fx2
    return zeros
