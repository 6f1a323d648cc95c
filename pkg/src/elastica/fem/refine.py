"""Mesh-refinement studies: Richardson extrapolation and observed order."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ParameterDomainError
from ..params import BoundaryCondition, DomainGeometry, DomainName, LameParams
from .assemble import assemble
from .eigs import solve_eigs
from .mesh import Mesh, unit_disk_mesh, unit_square_mesh


def build_mesh(domain: DomainGeometry, resolution: int) -> Mesh:
    """Structured mesh at an integer resolution (cells per side / rings)."""
    if domain.name is DomainName.UNIT_SQUARE:
        return unit_square_mesh(resolution)
    return unit_disk_mesh(resolution)


@dataclass
class ExtrapolationResult:
    resolutions: list[int]
    h_values: list[float]
    raw: np.ndarray  # (n_levels, count) sorted eigenvalues per level
    extrapolated: np.ndarray
    observed_order: np.ndarray
    flagged: np.ndarray  # True where convergence was non-monotone
    error_estimate: np.ndarray  # |extrapolated - finest|


def refine_and_extrapolate(
    domain: DomainGeometry,
    params: LameParams,
    bc: BoundaryCondition,
    resolutions: list[int],
    count: int,
) -> ExtrapolationResult:
    """Per-eigenvalue Richardson extrapolation over >= 3 geometric mesh levels."""
    if len(resolutions) < 3:
        raise ParameterDomainError("need at least 3 mesh resolutions")
    ratios = [resolutions[i + 1] / resolutions[i] for i in range(len(resolutions) - 1)]
    if any(abs(r - ratios[0]) > 1e-12 for r in ratios):
        raise ParameterDomainError("resolutions must be in geometric progression")
    r = ratios[0]

    levels = []
    hs = []
    for res in resolutions:
        mesh = build_mesh(domain, res)
        hs.append(mesh.h)
        ops = assemble(mesh, params, bc)
        sol = solve_eigs(ops, count)
        levels.append(np.sort(sol.values)[:count])
    raw = np.vstack(levels)

    e1, e2, e3 = raw[-3], raw[-2], raw[-1]
    d12, d23 = e1 - e2, e2 - e3
    extrapolated = np.empty(count)
    order = np.full(count, np.nan)
    flagged = np.zeros(count, dtype=bool)
    for i in range(count):
        if d12[i] * d23[i] <= 0 or abs(d23[i]) < 1e-14 * max(abs(e3[i]), 1.0):
            # non-monotone (corner-singularity suspect) or already converged
            extrapolated[i] = e3[i]
            flagged[i] = d12[i] * d23[i] < 0
            continue
        p = math.log(d12[i] / d23[i]) / math.log(r)
        order[i] = p
        # e_h = e + C h^p  =>  e = e3 - (e2 - e3)/(r^p - 1)
        extrapolated[i] = e3[i] - d23[i] / (r**p - 1.0)
    return ExtrapolationResult(
        resolutions=list(resolutions),
        h_values=hs,
        raw=raw,
        extrapolated=extrapolated,
        observed_order=order,
        flagged=flagged,
        error_estimate=np.abs(extrapolated - raw[-1]),
    )
