"""Pure-Python kernel twin of the compiled extension.

Implements exactly the same algorithms as ``_kernels.pyx`` so either backend
can be selected at import time:

* Bessel J_k: power series for small x, backward (Miller) recurrence in the
  intermediate regime, Hankel asymptotic expansion for J_0/J_1 plus upward
  recurrence once x >= max(25, 1.5*k).
* Gamma: exact integer/half-integer recurrence, Lanczos (g=7) otherwise.
* Characteristic determinants of the disk modes on a grid of trial
  eigenvalues (the hot loop of the spectrum scans).
"""

from __future__ import annotations

import math

import numpy as np

COMPILED = False

# Cody-Waite split of 2*pi (33-bit parts: quotient < 2**18 keeps the
# products exact) plus a double-double table of m*pi/4, m = 0..7, used to
# reduce the Hankel phase of large arguments without catastrophic rounding.
_TWOPI = 6.283185307179586
_TWOPI_P1 = 6.2831853069365025
_TWOPI_P2 = 2.4308402025215864e-10
_TWOPI_P3 = 8.089064995183803e-21
_PIO4_HI = (0.0, 0.7853981633974483, 1.5707963267948966, 2.356194490192345,
            3.141592653589793, 3.9269908169872414, 4.71238898038469, 5.497787143782138)
_PIO4_LO = (0.0, 3.061616997868383e-17, 6.123233995736766e-17, 9.184850993605148e-17,
            1.2246467991473532e-16, 1.5308084989341916e-16, 1.8369701987210297e-16,
            2.143131898507868e-16)
_ASYM_CUT = 25.0

# Lanczos g=7, n=9 coefficients.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_kernel(x: float) -> float:
    """Gamma(x) for x > 0 (callers validate the domain)."""
    n2 = 2.0 * x
    if n2 == math.floor(n2) and n2 <= 100.0:
        # integer or half-integer: exact recurrence from 1 or sqrt(pi)
        if x == math.floor(x):
            v = 1.0
            m = int(x)
            for i in range(2, m):
                v *= i
            return v
        v = math.sqrt(math.pi)
        z = 0.5
        while z + 1.0 <= x:
            v *= z
            z += 1.0
        return v
    z = x - 1.0
    s = _LANCZOS[0]
    for i in range(1, 9):
        s += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * s


def _reduce_2pi(x: float) -> float:
    """x mod 2*pi via the three-part constant (exact hi products)."""
    if x < _TWOPI:
        return x
    q = float(int(x / _TWOPI))
    r = ((x - q * _TWOPI_P1) - q * _TWOPI_P2) - q * _TWOPI_P3
    if r < 0.0:
        r += _TWOPI
    return r


def _hankel_j01(x: float):
    """(J_0(x), J_1(x)) by the Hankel expansion; valid for x >= _ASYM_CUT."""
    out = [0.0, 0.0]
    r = _reduce_2pi(x)
    amp = math.sqrt(2.0 / (math.pi * x))
    for k in (0, 1):
        mu4 = 4.0 * k * k
        # P = sum (-1)^m a_{2m} / x^{2m},  Q = sum (-1)^m a_{2m+1} / x^{2m+1}
        p = 1.0
        q = 0.0
        term = 1.0
        j = 0
        sign = 1.0
        while True:
            term *= (mu4 - (2 * j + 1) ** 2) / (8.0 * (j + 1) * x)
            j += 1
            if j % 2 == 1:
                q += sign * term
            else:
                sign = -sign
                p += sign * term
            if abs(term) < 1e-17 * (abs(p) + abs(q)) or j > 40:
                break
        m8 = (2 * k + 1) & 7
        chi = (r - _PIO4_HI[m8]) - _PIO4_LO[m8]
        out[k] = amp * (math.cos(chi) * p - math.sin(chi) * q)
    return out[0], out[1]


def jn_seq(nmax: int, x: float, out: np.ndarray) -> None:
    """Fill out[0..nmax] with J_0(x)..J_nmax(x); x >= 0."""
    if x == 0.0:
        out[: nmax + 1] = 0.0
        out[0] = 1.0
        return
    if x <= 0.5:
        # power series, term recurrence per order
        h = 0.5 * x
        lh = math.log(h)
        for k in range(nmax + 1):
            lt = k * lh - math.lgamma(k + 1.0)
            t = math.exp(lt) if lt > -745.0 else 0.0
            s = t
            m = 0
            while t != 0.0:
                m += 1
                t *= -(h * h) / (m * (m + k))
                s += t
                if abs(t) <= 1e-18 * abs(s):
                    break
            out[k] = s
        return
    if x >= _ASYM_CUT and x >= 1.5 * nmax:
        j0, j1 = _hankel_j01(x)
        out[0] = j0
        if nmax >= 1:
            out[1] = j1
        jm, jc = j0, j1
        for m in range(1, nmax):
            jm, jc = jc, (2.0 * m / x) * jc - jm
            out[m + 1] = jc
        return
    # Miller backward recurrence, normalized by J_0 + 2*sum J_{2m} = 1
    m0 = max(nmax, int(math.ceil(x)))
    start = m0 + int(math.sqrt(160.0 * max(m0, 8))) + 12
    if start % 2 == 1:
        start += 1
    out[: nmax + 1] = 0.0
    jp = 0.0
    jc = 1e-30
    ssum = 0.0
    for m in range(start, 0, -1):
        jn = (2.0 * m / x) * jc - jp
        jp = jc
        jc = jn  # jc now holds provisional J_{m-1}
        if m - 1 <= nmax:
            out[m - 1] = jc
        if (m - 1) % 2 == 0 and m - 1 > 0:
            ssum += 2.0 * jc
        if abs(jc) > 1e250:
            jc *= 1e-250
            jp *= 1e-250
            ssum *= 1e-250
            out[: nmax + 1] *= 1e-250
    # J_0 + 2*sum_{m>=1} J_{2m} = 1 fixes the overall scale
    out[: nmax + 1] /= ssum + jc


def bessel_j_kernel(k: int, x: float) -> float:
    buf = np.empty(k + 1)
    jn_seq(k, x, buf)
    return float(buf[k])


def bessel_j_prime_kernel(k: int, x: float) -> float:
    if k == 0:
        return -bessel_j_kernel(1, x)
    if x == 0.0:
        return 0.5 if k == 1 else 0.0
    buf = np.empty(k + 2)
    jn_seq(k + 1, x, buf)
    return 0.5 * float(buf[k - 1] - buf[k + 1])


def _jk_pair(k: int, x: float):
    """(J_k(x), J_k'(x)) in one sequence pass."""
    if x == 0.0:
        jk = 1.0 if k == 0 else 0.0
        jkp = 0.5 if k == 1 else 0.0
        return jk, jkp
    n = max(k + 1, 1)
    buf = np.empty(n + 1)
    jn_seq(n, x, buf)
    jk = float(buf[k])
    if k == 0:
        jkp = -float(buf[1])
    else:
        jkp = 0.5 * float(buf[k - 1] - buf[k + 1])
    return jk, jkp


def det_dirichlet(k: int, lam_ev: float, mu: float, lam: float):
    """Clamped-boundary determinant and its local magnitude scale at r = 1.

    D_k = -p*s*J_k'(p)*J_k'(s) + k^2*J_k(p)*J_k(s),
    p = sqrt(L/(lam+2mu)), s = sqrt(L/mu).  The scale uses per-argument
    envelopes max(|J_k|, |J_k'|) so it stays O(local amplitude) at roots.
    """
    p = math.sqrt(lam_ev / (lam + 2.0 * mu))
    s = math.sqrt(lam_ev / mu)
    jp, jpp = _jk_pair(k, p)
    js, jsp = _jk_pair(k, s)
    ap = max(abs(jp), abs(jpp))
    as_ = max(abs(js), abs(jsp))
    d = -p * s * jpp * jsp + float(k * k) * jp * js
    return d, (p * s + float(k * k)) * ap * as_ + 1e-300


def det_free(k: int, lam_ev: float, mu: float, lam: float):
    """Traction-free determinant and local scale at r = 1 (real normal form)."""
    p = math.sqrt(lam_ev / (lam + 2.0 * mu))
    s = math.sqrt(lam_ev / mu)
    jp, jpp = _jk_pair(k, p)
    js, jsp = _jk_pair(k, s)
    ap = max(abs(jp), abs(jpp))
    as_ = max(abs(js), abs(jsp))
    k2 = float(k * k)
    a11 = (2.0 * k2 - s * s) * jp - 2.0 * p * jpp
    a22 = 2.0 * s * jsp + (s * s - 2.0 * k2) * js
    c12 = s * jsp - js
    c21 = p * jpp - jp
    d = a11 * a22 + 4.0 * k2 * c12 * c21
    sc = (
        (abs(2.0 * k2 - s * s) + 2.0 * p) * ap * (2.0 * s + abs(s * s - 2.0 * k2)) * as_
        + 4.0 * k2 * (s + 1.0) * as_ * (p + 1.0) * ap
        + 1e-300
    )
    return d, sc


def det_grid(k: int, lams: np.ndarray, mu: float, lam: float, free: bool):
    """Determinant and scale arrays over a grid of trial eigenvalues."""
    n = lams.shape[0]
    d = np.empty(n)
    sc = np.empty(n)
    f = det_free if free else det_dirichlet
    for i in range(n):
        d[i], sc[i] = f(k, float(lams[i]), mu, lam)
    return d, sc
