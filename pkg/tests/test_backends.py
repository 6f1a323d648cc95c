"""Compiled and pure-Python kernel backends agree on their full surface."""

import numpy as np
import pytest

from elastica.specfun import _pykernels as pure

compiled = pytest.importorskip(
    "elastica.specfun._kernels", reason="compiled extension not built"
)


def test_backend_flags():
    assert pure.COMPILED is False
    assert compiled.COMPILED is True


def test_bessel_agreement():
    rng = np.random.default_rng(1)
    for k in (0, 1, 3, 17, 90, 200):
        for x in np.concatenate(
            [[0.0], rng.uniform(0, 0.5, 3), rng.uniform(0.5, 30, 6),
             rng.uniform(30, 500, 5), [1e6 - 7.5]]
        ):
            a = compiled.bessel_j_kernel(k, float(x))
            b = pure.bessel_j_kernel(k, float(x))
            assert abs(a - b) <= 1e-12 * max(abs(b), 1e-3)
            ap = compiled.bessel_j_prime_kernel(k, float(x))
            bp = pure.bessel_j_prime_kernel(k, float(x))
            assert abs(ap - bp) <= 1e-12 * max(abs(bp), 1e-3)


def test_jn_seq_agreement():
    out_c = np.empty(41)
    out_p = np.empty(41)
    for x in (0.0, 0.3, 4.5, 26.0, 75.0):
        compiled.jn_seq(40, x, out_c)
        pure.jn_seq(40, x, out_p)
        assert np.allclose(out_c, out_p, rtol=1e-12, atol=1e-300)


def test_gamma_agreement():
    # C pow vs Python pow wiggle a few ulps in the Lanczos branch; each
    # backend is separately held to 1e-13 against mpmath in test_bessel
    for x in np.arange(0.25, 50.0, 0.25):
        assert compiled.gamma_kernel(float(x)) == pytest.approx(
            pure.gamma_kernel(float(x)), rel=3e-13
        )


def test_det_grid_agreement():
    lams = np.linspace(0.5, 300.0, 700)
    for k in (0, 1, 2, 9):
        for free in (False, True):
            dc, sc = compiled.det_grid(k, lams, 1.0, 1.0, free)
            dp, sp_ = pure.det_grid(k, lams, 1.0, 1.0, free)
            assert np.allclose(dc, dp, rtol=1e-11, atol=1e-280)
            assert np.allclose(sc, sp_, rtol=1e-11, atol=1e-280)
