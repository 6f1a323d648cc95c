"""Exact decoupled spectra at lambda = -mu.

With lambda + mu = 0 the operator acts as mu times the componentwise
Laplacian; under clamped boundary conditions the two components decouple
exactly (the mixed term is a null Lagrangian on H^1_0), so the elastic
spectrum is the scalar Dirichlet spectrum doubled.  The scalar Neumann
lattice (doubled) is the classical image-method partner used by the
half-sum cancellation experiments.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import ParameterDomainError
from ..params import BoundaryCondition, DomainGeometry, DomainName, LameParams, UNIT_DISK, UNIT_SQUARE
from ..specfun import bessel_zeros
from ..spectrum import Method, Spectrum


def _square_lattice(mu, lambda_max, include_zero):
    """mu*pi^2*(p^2+q^2) with each component doubled; p,q >= 1 or >= 0."""
    nmax = int(math.sqrt(lambda_max / (mu * math.pi**2))) + 1
    lo = 0 if include_zero else 1
    counts: dict[int, int] = {}
    for p in range(lo, nmax + 1):
        for q in range(lo, nmax + 1):
            s = p * p + q * q
            if mu * math.pi**2 * s <= lambda_max:
                counts[s] = counts.get(s, 0) + 1
    items = sorted(counts.items())
    values = np.array([mu * math.pi**2 * s for s, _ in items])
    mults = np.array([2 * c for _, c in items], dtype=int)
    tags = [f"pq{s}" for s, _ in items]
    return values, mults, tags


def square_dirichlet_spectrum(mu: float, lambda_max: float) -> Spectrum:
    values, mults, tags = _square_lattice(mu, lambda_max, include_zero=False)
    return Spectrum(
        domain=UNIT_SQUARE,
        bc=BoundaryCondition.DIRICHLET,
        params=LameParams(mu, -mu),
        eigenvalues=values,
        multiplicities=mults,
        mode_tags=tags,
        lambda_max=lambda_max,
        method=Method.ANALYTIC_DECOUPLED,
    )


def square_neumann_lattice_spectrum(mu: float, lambda_max: float) -> Spectrum:
    """Scalar Neumann lattice mu*pi^2*(p^2+q^2), p,q >= 0, doubled."""
    values, mults, tags = _square_lattice(mu, lambda_max, include_zero=True)
    return Spectrum(
        domain=UNIT_SQUARE,
        bc=BoundaryCondition.FREE,
        params=LameParams(mu, -mu),
        eigenvalues=values,
        multiplicities=mults,
        mode_tags=tags,
        lambda_max=lambda_max,
        method=Method.ANALYTIC_DECOUPLED,
    )


def disk_dirichlet_spectrum(mu: float, lambda_max: float) -> Spectrum:
    """mu*j_{k,m}^2; multiplicity 2 for k = 0 and 4 for k >= 1 (pairs +-k, doubled)."""
    jmax = math.sqrt(lambda_max / mu)
    entries = []
    k = 0
    while True:
        m_hi = int(jmax / math.pi) + 2
        zeros = bessel_zeros(k, m_hi)
        zeros = zeros[zeros <= jmax]
        if zeros.size == 0:
            break
        for m, z in enumerate(zeros, start=1):
            entries.append((mu * z * z, 2 if k == 0 else 4, f"k{k}m{m}"))
        k += 1
    entries.sort()
    return Spectrum(
        domain=UNIT_DISK,
        bc=BoundaryCondition.DIRICHLET,
        params=LameParams(mu, -mu),
        eigenvalues=np.array([e[0] for e in entries]),
        multiplicities=np.array([e[1] for e in entries], dtype=int),
        mode_tags=[e[2] for e in entries],
        lambda_max=lambda_max,
        method=Method.ANALYTIC_DECOUPLED,
    )


def analytic_decoupled_spectrum(
    domain: DomainGeometry, mu: float, lambda_max: float, bc: BoundaryCondition = BoundaryCondition.DIRICHLET
) -> Spectrum:
    """Exact decoupled spectrum (implicitly lambda = -mu) below lambda_max."""
    if mu <= 0:
        raise ParameterDomainError(f"mu must be positive, got {mu}")
    if domain.name is DomainName.UNIT_SQUARE:
        if bc is BoundaryCondition.DIRICHLET:
            return square_dirichlet_spectrum(mu, lambda_max)
        return square_neumann_lattice_spectrum(mu, lambda_max)
    if domain.name is DomainName.UNIT_DISK and bc is BoundaryCondition.DIRICHLET:
        return disk_dirichlet_spectrum(mu, lambda_max)
    raise ParameterDomainError(
        f"no analytic decoupled spectrum for {domain.name.value} with bc={bc.value}"
    )
