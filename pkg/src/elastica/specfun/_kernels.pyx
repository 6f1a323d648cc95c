# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel twin of ``_pykernels`` (same algorithms, C speed)."""

import numpy as np

cimport numpy as cnp
from libc.math cimport atan, ceil, cos, exp, fabs, floor, lgamma, log, pi, sin, sqrt

cnp.import_array()

COMPILED = True

cdef double _TWOPI = 6.283185307179586
cdef double _TWOPI_P1 = 6.2831853069365025
cdef double _TWOPI_P2 = 2.4308402025215864e-10
cdef double _TWOPI_P3 = 8.089064995183803e-21
cdef double _ASYM_CUT = 25.0

cdef double[8] _PIO4_HI = [0.0, 0.7853981633974483, 1.5707963267948966, 2.356194490192345,
                           3.141592653589793, 3.9269908169872414, 4.71238898038469,
                           5.497787143782138]
cdef double[8] _PIO4_LO = [0.0, 3.061616997868383e-17, 6.123233995736766e-17,
                           9.184850993605148e-17, 1.2246467991473532e-16,
                           1.5308084989341916e-16, 1.8369701987210297e-16,
                           2.143131898507868e-16]

cdef double _LANCZOS_G = 7.0
cdef double[9] _LANCZOS = [0.99999999999980993, 676.5203681218851, -1259.1392167224028,
                           771.32342877765313, -176.61502916214059, 12.507343278686905,
                           -0.13857109526572012, 9.9843695780195716e-6,
                           1.5056327351493116e-7]


cdef double _gamma(double x) noexcept nogil:
    cdef double n2 = 2.0 * x
    cdef double v, z, t, s
    cdef int i, m
    if n2 == floor(n2) and n2 <= 100.0:
        if x == floor(x):
            v = 1.0
            m = <int> x
            for i in range(2, m):
                v *= i
            return v
        v = sqrt(pi)
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
    return sqrt(2.0 * pi) * t ** (z + 0.5) * exp(-t) * s


def gamma_kernel(double x):
    return _gamma(x)


cdef double _reduce_2pi(double x) noexcept nogil:
    cdef double q, r
    if x < _TWOPI:
        return x
    q = floor(x / _TWOPI)
    r = ((x - q * _TWOPI_P1) - q * _TWOPI_P2) - q * _TWOPI_P3
    if r < 0.0:
        r += _TWOPI
    return r


cdef void _hankel_j01(double x, double* j0, double* j1) noexcept nogil:
    cdef double r = _reduce_2pi(x)
    cdef double amp = sqrt(2.0 / (pi * x))
    cdef double mu4, p, q, term, sign, chi
    cdef int k, j, m8
    cdef double out[2]
    for k in range(2):
        mu4 = 4.0 * k * k
        p = 1.0
        q = 0.0
        term = 1.0
        j = 0
        sign = 1.0
        while True:
            term *= (mu4 - (2 * j + 1) * (2 * j + 1)) / (8.0 * (j + 1) * x)
            j += 1
            if j % 2 == 1:
                q += sign * term
            else:
                sign = -sign
                p += sign * term
            if fabs(term) < 1e-17 * (fabs(p) + fabs(q)) or j > 40:
                break
        m8 = (2 * k + 1) & 7
        chi = (r - _PIO4_HI[m8]) - _PIO4_LO[m8]
        out[k] = amp * (cos(chi) * p - sin(chi) * q)
    j0[0] = out[0]
    j1[0] = out[1]


cdef void _jn_seq_c(int nmax, double x, double* out) noexcept nogil:
    cdef int k, m, m0, start
    cdef double h, lh, lt, t, s, j0, j1, jm, jc, jp, jn, ssum
    if x == 0.0:
        for k in range(nmax + 1):
            out[k] = 0.0
        out[0] = 1.0
        return
    if x <= 0.5:
        h = 0.5 * x
        lh = log(h)
        for k in range(nmax + 1):
            lt = k * lh - lgamma(k + 1.0)
            t = exp(lt) if lt > -745.0 else 0.0
            s = t
            m = 0
            while t != 0.0:
                m += 1
                t *= -(h * h) / (m * (m + k))
                s += t
                if fabs(t) <= 1e-18 * fabs(s):
                    break
            out[k] = s
        return
    if x >= _ASYM_CUT and x >= 1.5 * nmax:
        _hankel_j01(x, &j0, &j1)
        out[0] = j0
        if nmax >= 1:
            out[1] = j1
        jm = j0
        jc = j1
        for m in range(1, nmax):
            jn = (2.0 * m / x) * jc - jm
            jm = jc
            jc = jn
            out[m + 1] = jc
        return
    m0 = nmax
    if <int> ceil(x) > m0:
        m0 = <int> ceil(x)
    start = m0 + <int> sqrt(160.0 * (m0 if m0 > 8 else 8)) + 12
    if start % 2 == 1:
        start += 1
    for k in range(nmax + 1):
        out[k] = 0.0
    jp = 0.0
    jc = 1e-30
    ssum = 0.0
    for m in range(start, 0, -1):
        jn = (2.0 * m / x) * jc - jp
        jp = jc
        jc = jn
        if m - 1 <= nmax:
            out[m - 1] = jc
        if (m - 1) % 2 == 0 and m - 1 > 0:
            ssum += 2.0 * jc
        if fabs(jc) > 1e250:
            jc *= 1e-250
            jp *= 1e-250
            ssum *= 1e-250
            for k in range(nmax + 1):
                out[k] *= 1e-250
    ssum += jc
    for k in range(nmax + 1):
        out[k] /= ssum


def jn_seq(int nmax, double x, cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] out):
    _jn_seq_c(nmax, x, <double*> out.data)


cdef double _bessel_j(int k, double x) noexcept nogil:
    cdef double buf[256]
    _jn_seq_c(k, x, buf)
    return buf[k]


def bessel_j_kernel(int k, double x):
    return _bessel_j(k, x)


cdef double _bessel_j_prime(int k, double x) noexcept nogil:
    cdef double buf[256]
    if k == 0:
        _jn_seq_c(1, x, buf)
        return -buf[1]
    if x == 0.0:
        return 0.5 if k == 1 else 0.0
    _jn_seq_c(k + 1, x, buf)
    return 0.5 * (buf[k - 1] - buf[k + 1])


def bessel_j_prime_kernel(int k, double x):
    return _bessel_j_prime(k, x)


cdef void _jk_pair(int k, double x, double* jk, double* jkp) noexcept nogil:
    cdef double buf[256]
    cdef int n
    if x == 0.0:
        jk[0] = 1.0 if k == 0 else 0.0
        jkp[0] = 0.5 if k == 1 else 0.0
        return
    n = k + 1
    if n < 1:
        n = 1
    _jn_seq_c(n, x, buf)
    jk[0] = buf[k]
    if k == 0:
        jkp[0] = -buf[1]
    else:
        jkp[0] = 0.5 * (buf[k - 1] - buf[k + 1])


cdef void _det_dirichlet_c(int k, double lam_ev, double mu, double lam,
                           double* d, double* sc) noexcept nogil:
    cdef double p = sqrt(lam_ev / (lam + 2.0 * mu))
    cdef double s = sqrt(lam_ev / mu)
    cdef double jp, jpp, js, jsp, ap, as_
    _jk_pair(k, p, &jp, &jpp)
    _jk_pair(k, s, &js, &jsp)
    ap = fabs(jp) if fabs(jp) > fabs(jpp) else fabs(jpp)
    as_ = fabs(js) if fabs(js) > fabs(jsp) else fabs(jsp)
    d[0] = -p * s * jpp * jsp + (<double> k) * k * jp * js
    sc[0] = (p * s + (<double> k) * k) * ap * as_ + 1e-300


cdef void _det_free_c(int k, double lam_ev, double mu, double lam,
                      double* d, double* sc) noexcept nogil:
    cdef double p = sqrt(lam_ev / (lam + 2.0 * mu))
    cdef double s = sqrt(lam_ev / mu)
    cdef double jp, jpp, js, jsp, ap, as_, k2, a11, a22, c12, c21
    _jk_pair(k, p, &jp, &jpp)
    _jk_pair(k, s, &js, &jsp)
    ap = fabs(jp) if fabs(jp) > fabs(jpp) else fabs(jpp)
    as_ = fabs(js) if fabs(js) > fabs(jsp) else fabs(jsp)
    k2 = (<double> k) * k
    a11 = (2.0 * k2 - s * s) * jp - 2.0 * p * jpp
    a22 = 2.0 * s * jsp + (s * s - 2.0 * k2) * js
    c12 = s * jsp - js
    c21 = p * jpp - jp
    d[0] = a11 * a22 + 4.0 * k2 * c12 * c21
    sc[0] = ((fabs(2.0 * k2 - s * s) + 2.0 * p) * ap * (2.0 * s + fabs(s * s - 2.0 * k2)) * as_
             + 4.0 * k2 * (s + 1.0) * as_ * (p + 1.0) * ap + 1e-300)


def det_dirichlet(int k, double lam_ev, double mu, double lam):
    cdef double d, sc
    _det_dirichlet_c(k, lam_ev, mu, lam, &d, &sc)
    return d, sc


def det_free(int k, double lam_ev, double mu, double lam):
    cdef double d, sc
    _det_free_c(k, lam_ev, mu, lam, &d, &sc)
    return d, sc


def det_grid(int k, cnp.ndarray[cnp.float64_t, ndim=1] lams, double mu, double lam, bint free):
    cdef Py_ssize_t n = lams.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sc = np.empty(n)
    cdef Py_ssize_t i
    cdef double dv, sv
    with nogil:
        if free:
            for i in range(n):
                _det_free_c(k, lams[i], mu, lam, &dv, &sv)
                d[i] = dv
                sc[i] = sv
        else:
            for i in range(n):
                _det_dirichlet_c(k, lams[i], mu, lam, &dv, &sv)
                d[i] = dv
                sc[i] = sv
    return d, sc
