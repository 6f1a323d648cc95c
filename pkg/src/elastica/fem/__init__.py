"""Variational (P1 finite element) eigensolver for the flat elastic operator.

Serves as the independent oracle for the disk potential method and as the
spectrum generator for coupled parameters on both model domains.
"""

from __future__ import annotations

import numpy as np

from ..params import BoundaryCondition, DomainGeometry, LameParams
from ..spectrum import Method, Spectrum, merge_close
from .analytic import (
    analytic_decoupled_spectrum,
    disk_dirichlet_spectrum,
    square_dirichlet_spectrum,
    square_neumann_lattice_spectrum,
)
from .assemble import Operators, assemble
from .eigs import EigResult, solve_eigs
from .mesh import Mesh, min_angle_deg, unit_disk_mesh, unit_square_mesh
from .refine import ExtrapolationResult, build_mesh, refine_and_extrapolate

__all__ = [
    "Mesh",
    "unit_square_mesh",
    "unit_disk_mesh",
    "min_angle_deg",
    "Operators",
    "assemble",
    "EigResult",
    "solve_eigs",
    "ExtrapolationResult",
    "refine_and_extrapolate",
    "build_mesh",
    "analytic_decoupled_spectrum",
    "square_dirichlet_spectrum",
    "square_neumann_lattice_spectrum",
    "disk_dirichlet_spectrum",
    "fem_spectrum",
    "fem_extrapolated_spectrum",
    "weyl_count_estimate",
]


def weyl_count_estimate(
    params: LameParams, domain: DomainGeometry, lambda_max: float, bc: BoundaryCondition | None = None
) -> float:
    """Two-term estimate of N(lambda_max), used to size eigensolves."""
    from ..coeffs import Theory, weyl_two_term

    w = weyl_two_term(params, 2, Theory.LIU)
    lead = w.a * domain.volume * lambda_max
    b = abs(w.b_minus) if bc is None else (w.b_minus if bc is BoundaryCondition.DIRICHLET else w.b_plus)
    est = lead + b * domain.boundary_length * np.sqrt(lambda_max)
    return max(est, 0.5 * lead)


def fem_extrapolated_spectrum(
    domain: DomainGeometry,
    params: LameParams,
    bc: BoundaryCondition,
    resolutions: list[int],
    lambda_max: float,
    extra: int = 12,
) -> tuple[Spectrum, ExtrapolationResult]:
    """Richardson-extrapolated FEM spectrum below lambda_max.

    Runs the refinement study over the given resolutions for enough
    eigenvalues to cover the cutoff, extrapolates each, and assembles a
    Spectrum whose per-eigenvalue discretization-error estimates ride along
    in the ExtrapolationResult.
    """
    count = int(1.15 * weyl_count_estimate(params, domain, lambda_max, bc)) + extra
    if bc is BoundaryCondition.FREE:
        count += 3
    ex = refine_and_extrapolate(domain, params, bc, resolutions, count)
    if ex.extrapolated.max() < lambda_max:
        count = int(1.6 * count) + 10
        ex = refine_and_extrapolate(domain, params, bc, resolutions, count)
    order = np.argsort(ex.extrapolated)
    vals = ex.extrapolated[order]
    errs = ex.error_estimate[order]
    if bc is BoundaryCondition.FREE:
        vals = np.where(np.abs(vals) < 1e-8 * max(1.0, abs(vals[-1])), 0.0, vals)
        vals = np.maximum(vals, 0.0)
    keep = vals < lambda_max
    reps, mults = merge_close(vals[keep], rel_gap=1e-6)
    spectrum = Spectrum(
        domain=domain,
        bc=bc,
        params=params,
        eigenvalues=reps,
        multiplicities=mults,
        mode_tags=["fem_extrap"] * len(reps),
        lambda_max=lambda_max,
        method=Method.FEM,
        meta={
            "resolutions": "/".join(str(r) for r in resolutions),
            "max_error_estimate": repr(float(errs[keep].max()) if keep.any() else 0.0),
        },
    )
    return spectrum, ex


def fem_spectrum(
    domain: DomainGeometry,
    params: LameParams,
    bc: BoundaryCondition,
    resolution: int,
    lambda_max: float,
    extra: int = 10,
) -> Spectrum:
    """FEM spectrum below lambda_max on a structured mesh.

    lambda_max is capped at the discretization trust threshold
    sqrt(lambda)*h <= 0.5; nearby discrete eigenvalues are merged into
    multiplicities at relative gap 1e-6.
    """
    mesh = build_mesh(domain, resolution)
    trust = (0.5 / mesh.h) ** 2
    lam_cap = min(lambda_max, trust)
    ops = assemble(mesh, params, bc)
    if ops.n <= 1200:
        sol = solve_eigs(ops, count=int(1.3 * weyl_count_estimate(params, domain, lam_cap)) + extra)
        vals = sol.values[sol.values < lam_cap]
    else:
        sol = solve_eigs(ops, lambda_max=lam_cap)
        vals = sol.values
    if bc is BoundaryCondition.FREE:
        vals = np.where(np.abs(vals) < 1e-8 * max(1.0, vals.max(initial=1.0)), 0.0, vals)
        vals = np.maximum(vals, 0.0)
    reps, mults = merge_close(np.sort(vals), rel_gap=1e-6)
    return Spectrum(
        domain=domain,
        bc=bc,
        params=params,
        eigenvalues=reps,
        multiplicities=mults,
        mode_tags=["fem"] * len(reps),
        lambda_max=lam_cap,
        method=Method.FEM,
        meta={"h": repr(mesh.h), "resolution": str(resolution)},
    )
