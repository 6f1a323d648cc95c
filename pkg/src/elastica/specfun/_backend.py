"""Kernel backend selection: compiled extension if built, pure Python otherwise."""

try:
    from ._kernels import (  # type: ignore[attr-defined]
        COMPILED,
        bessel_j_kernel,
        bessel_j_prime_kernel,
        det_dirichlet,
        det_free,
        det_grid,
        gamma_kernel,
        jn_seq,
    )
except ImportError:  # pragma: no cover - depends on build environment
    from ._pykernels import (
        COMPILED,
        bessel_j_kernel,
        bessel_j_prime_kernel,
        det_dirichlet,
        det_free,
        det_grid,
        gamma_kernel,
        jn_seq,
    )

__all__ = [
    "COMPILED",
    "bessel_j_kernel",
    "bessel_j_prime_kernel",
    "det_dirichlet",
    "det_free",
    "det_grid",
    "gamma_kernel",
    "jn_seq",
]
