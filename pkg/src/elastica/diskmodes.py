"""Elastic spectrum of the unit disk via the Helmholtz-potential ansatz.

Displacements are sought as u = grad(psi1) + curl(z psi2) with Bessel-series
potentials; per angular index k the admissible eigenvalues are the roots of
a 2x2 boundary determinant in the trial eigenvalue.  This is the method
whose completeness the FEM oracle adjudicates, so nothing here presupposes
the answer: the scan is implemented as published (homogeneous Helmholtz
potentials) and every found root carries a residual certificate.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDecompositionError, ParameterDomainError
from .params import BoundaryCondition, LameParams, UNIT_DISK
from .coeffs import rayleigh_root
from .spectrum import Method, Spectrum
from .specfun import _backend

_ALPHA_DEGENERATE_TOL = 1e-12
_BISECT_REL_TOL = 1e-12
_RESIDUAL_REL = 1e-9
_NEAR_DOUBLE_SCALE = 1e-6
_MAX_STEP_HALVINGS = 6


@dataclass(frozen=True)
class WaveNumbers:
    """Trial eigenvalue with its compressional and shear wavenumbers."""

    lambda_ev: float
    p: float
    s: float

    @classmethod
    def from_eigenvalue(cls, lambda_ev: float, params: LameParams) -> "WaveNumbers":
        if lambda_ev < 0:
            raise ParameterDomainError(f"trial eigenvalue must be >= 0, got {lambda_ev}")
        return cls(
            lambda_ev=lambda_ev,
            p=math.sqrt(lambda_ev / params.pressure_speed2),
            s=math.sqrt(lambda_ev / params.mu),
        )


@dataclass(frozen=True)
class DiskMode:
    k: int
    family_tag: str  # coupled | compressional_k0 | shear_k0 | rigid
    lambda_ev: float
    multiplicity: int
    determinant_residual: float


def _check_alpha(params: LameParams):
    if abs(params.alpha - 1.0) <= _ALPHA_DEGENERATE_TOL:
        raise DegenerateDecompositionError(
            "potential split is degenerate at alpha = 1 (p = s); use the FEM path or the "
            "exact decoupled Bessel spectrum instead"
        )


def characteristic_det(k: int, lambda_ev: float, params: LameParams, bc: BoundaryCondition) -> float:
    """Boundary determinant D_k at r = 1 (real normal form).

    Dirichlet: D_k = -p s J_k'(p) J_k'(s) + k^2 J_k(p) J_k(s).
    Free: the determinant of the (sigma_rr, sigma_rtheta) coefficient matrix
    expressed through J_k, J_k' at p and s.
    """
    if lambda_ev <= 0.0:
        raise ParameterDomainError(f"trial eigenvalue must be > 0, got {lambda_ev}")
    _check_alpha(params)
    fn = _backend.det_free if bc is BoundaryCondition.FREE else _backend.det_dirichlet
    d, _ = fn(int(k), float(lambda_ev), params.mu, params.lam)
    return d


def _det_scaled(k, lam_ev, params, bc):
    fn = _backend.det_free if bc is BoundaryCondition.FREE else _backend.det_dirichlet
    d, sc = fn(int(k), float(lam_ev), params.mu, params.lam)
    return d / sc


def _scan_step(lam, params):
    """0.25 / (local root density of one angular mode).

    Roots of either Bessel family are asymptotically spaced pi in the
    wavenumber, i.e. 2*pi*sqrt(c*Lambda) in the eigenvalue for speed c.
    """
    rho = (1.0 / (2.0 * math.pi)) * (
        1.0 / math.sqrt(params.mu * lam) + 1.0 / math.sqrt(params.pressure_speed2 * lam)
    )
    return 0.25 / rho


def _grid(params, lam_lo, lam_hi, halvings):
    pts = [lam_lo]
    lam = lam_lo
    factor = 0.5**halvings
    while lam < lam_hi:
        lam = lam + factor * _scan_step(lam, params)
        pts.append(min(lam, lam_hi))
    return np.array(pts)


def _bisect(k, lo, hi, params, bc):
    f = lambda lam: _det_scaled(k, lam, params, bc)
    flo = f(lo)
    a, b = lo, hi
    for _ in range(200):
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0 or (b - a) <= _BISECT_REL_TOL * m:
            return m
        if flo * fm < 0.0:
            b = m
        else:
            a, flo = m, fm
    return 0.5 * (a + b)


def _scan_angular_mode(k, params, bc, lambda_max, halvings=0):
    """Roots of D_k in (0, lambda_max]; returns list of (lambda, residual).

    The scan starts below the mode's Rayleigh floor mu*w1*k^2 (no eigenvalue
    sits under it) and refuses to certify roots where both Bessel factors
    have underflowed (the determinant is exponentially small but nonzero
    there, so a 0.0 sample carries no sign information).
    """
    lam_lo = 1e-3 * min(params.mu, params.pressure_speed2)
    if k >= 2:
        w1 = rayleigh_root(params.alpha).w1
        lam_lo = max(lam_lo, 0.45 * params.mu * w1 * k * k)
    if lam_lo >= lambda_max:
        return []
    grid = _grid(params, lam_lo, lambda_max, halvings)
    d, sc = _backend.det_grid(int(k), grid, params.mu, params.lam, bc is BoundaryCondition.FREE)
    dhat = d / sc
    alive = sc > 1e-200
    roots = []
    for i in range(len(grid) - 1):
        if not (alive[i] and alive[i + 1]):
            continue
        if dhat[i] == 0.0:
            roots.append(grid[i])
        elif dhat[i] * dhat[i + 1] < 0.0:
            roots.append(_bisect(k, grid[i], grid[i + 1], params, bc))
    if alive[-1] and dhat[-1] == 0.0:
        roots.append(grid[-1])
    # near-double roots: interior |D| minima below threshold without a sign
    # change get a deflated search (quadratic model of the dip)
    for i in range(1, len(grid) - 1):
        if (
            abs(dhat[i]) < _NEAR_DOUBLE_SCALE
            and abs(dhat[i]) < abs(dhat[i - 1])
            and abs(dhat[i]) <= abs(dhat[i + 1])
            and dhat[i - 1] * dhat[i] > 0.0
            and dhat[i] * dhat[i + 1] > 0.0
        ):
            extra = _deflated_pair(k, grid[i - 1], grid[i], grid[i + 1], params, bc)
            roots.extend(extra)
    roots.sort()
    out = []
    for r in roots:
        resid = abs(_det_scaled(k, r, params, bc))
        out.append((r, resid))
    return out


def _deflated_pair(k, a, m, b, params, bc):
    """Resolve a non-sign-changing dip: either a missed pair or a true double root."""
    f = lambda lam: _det_scaled(k, lam, params, bc)
    # golden-section refine of the |D| minimum
    lo, hi = a, b
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = abs(f(x1)), abs(f(x2))
    for _ in range(120):
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = abs(f(x1))
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = abs(f(x2))
        if hi - lo <= 1e-13 * max(1.0, lo):
            break
    xm = 0.5 * (lo + hi)
    fm = f(xm)
    side = f(a)
    if side * fm < 0.0:
        # the dip does cross: a missed pair of simple roots
        return [_bisect(k, a, xm, params, bc), _bisect(k, xm, b, params, bc)]
    if abs(fm) <= _RESIDUAL_REL:
        # tangent double root
        return [xm, xm]
    return []


def _k0_family_tag(lam_ev, params, bc):
    wn = WaveNumbers.from_eigenvalue(lam_ev, params)
    if bc is BoundaryCondition.DIRICHLET:
        comp = abs(_backend.bessel_j_kernel(1, wn.p))
        shear = abs(_backend.bessel_j_kernel(1, wn.s))
    else:
        alpha = params.alpha
        comp = abs(
            wn.p * _backend.bessel_j_kernel(0, wn.p)
            - 2.0 * alpha * _backend.bessel_j_kernel(1, wn.p)
        )
        shear = abs(
            wn.s * _backend.bessel_j_kernel(0, wn.s) - 2.0 * _backend.bessel_j_kernel(1, wn.s)
        )
    return "compressional_k0" if comp < shear else "shear_k0"


def _active_k_max(params, bc, lambda_max, k_max):
    """Angular modes that can contribute below the cutoff, and the cutoff
    below which the k-truncated union is certainly complete.

    The lowest mode-k eigenvalue is bounded below by the Rayleigh surface
    branch mu*w1*k^2 (free boundary; clamped modes sit higher still), so
    frequencies below mu*w1*(k_cap+1)^2 cannot come from truncated modes.
    """
    w1 = rayleigh_root(params.alpha).w1
    floor = params.mu * max(w1, 1e-3)
    need = int(math.sqrt(lambda_max / floor)) + 2
    k_cap = min(k_max, need)
    complete_below = lambda_max if need <= k_max else 0.95 * floor * (k_max + 1) ** 2
    return k_cap, min(lambda_max, complete_below)


def disk_modes_potential(
    params: LameParams,
    bc: BoundaryCondition,
    k_max: int = 60,
    lambda_max: float = 1e4,
    n_threads: int | None = None,
) -> list[DiskMode]:
    """All determinant roots up to the completeness cutoff, as tagged modes.

    Each angular scan runs twice (the verification pass halves the step) and
    keeps halving, up to six times, until the root count is stable.  Free
    spectra include the three rigid-motion zero modes.  When the requested
    lambda_max would need angular modes beyond k_max, the scan cutoff drops
    to the bound below which the truncated union is provably complete.
    """
    _check_alpha(params)
    if k_max > 60:
        raise ParameterDomainError(f"k_max capped at 60, got {k_max}")
    if lambda_max > 1e5:
        raise ParameterDomainError(f"lambda_max capped at 1e5, got {lambda_max}")
    k_cap, lambda_max = _active_k_max(params, bc, lambda_max, k_max)
    ks = range(k_cap + 1)

    def scan_stable(k):
        prev = _scan_angular_mode(k, params, bc, lambda_max, halvings=0)
        for h in range(1, _MAX_STEP_HALVINGS + 1):
            cur = _scan_angular_mode(k, params, bc, lambda_max, halvings=h)
            if len(cur) == len(prev):
                return cur
            prev = cur
        return prev

    n_threads = n_threads or int(os.environ.get("ELASTICA_THREADS", "1"))
    if n_threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            per_k = list(pool.map(scan_stable, ks))
    else:
        per_k = [scan_stable(k) for k in ks]

    modes = []
    if bc is BoundaryCondition.FREE:
        modes.append(DiskMode(k=0, family_tag="rigid", lambda_ev=0.0, multiplicity=3, determinant_residual=0.0))
    for k, roots in zip(ks, per_k):
        for lam_ev, resid in roots:
            tag = _k0_family_tag(lam_ev, params, bc) if k == 0 else "coupled"
            modes.append(
                DiskMode(
                    k=k,
                    family_tag=tag,
                    lambda_ev=lam_ev,
                    multiplicity=1 if k == 0 else 2,
                    determinant_residual=resid,
                )
            )
    modes.sort(key=lambda m: m.lambda_ev)
    return modes


def disk_spectrum_potential(
    params: LameParams,
    bc: BoundaryCondition,
    k_max: int = 60,
    lambda_max: float = 1e4,
) -> Spectrum:
    """Potential-method Spectrum of the unit disk (ascending, with multiplicity).

    The spectrum's validity cutoff is the completeness bound of the
    k-truncated scan, which may sit below the requested lambda_max.
    """
    modes = disk_modes_potential(params, bc, k_max=k_max, lambda_max=lambda_max)
    _, effective = _active_k_max(params, bc, lambda_max, k_max)
    return Spectrum(
        domain=UNIT_DISK,
        bc=bc,
        params=params,
        eigenvalues=np.array([m.lambda_ev for m in modes]),
        multiplicities=np.array([m.multiplicity for m in modes], dtype=int),
        mode_tags=[f"k{m.k}_{m.family_tag}" for m in modes],
        lambda_max=effective,
        method=Method.POTENTIAL,
        meta={"k_max": str(k_max)},
    )


@dataclass(frozen=True)
class PdeCheck:
    """Pointwise verification of a reconstructed mode.

    ``pde_residual`` is max |Pu - Lambda u| / (Lambda max|u|) over the grid;
    ``curl_p`` and ``div_s`` are the finite-difference curl of the
    compressional part and divergence of the shear part, scaled by the
    part's own amplitude times its wavenumber.
    """

    pde_residual: float
    curl_p: float
    div_s: float


def _mode_amplitudes(k, wn, params, bc):
    """Nontrivial (A, B) from the boundary matrix null space (complex form)."""
    jp = _backend.bessel_j_kernel(k, wn.p)
    jpp = _backend.bessel_j_prime_kernel(k, wn.p)
    js = _backend.bessel_j_kernel(k, wn.s)
    jsp = _backend.bessel_j_prime_kernel(k, wn.s)
    if bc is BoundaryCondition.DIRICHLET:
        row = (wn.p * jpp, 1j * k * js)
        alt = (1j * k * jp, -wn.s * jsp)
    else:
        k2 = float(k * k)
        row = ((2.0 * k2 - wn.s**2) * jp - 2.0 * wn.p * jpp, 2j * k * (wn.s * jsp - js))
        alt = (2j * k * (wn.p * jpp - jp), 2.0 * wn.s * jsp + (wn.s**2 - 2.0 * k2) * js)
    if max(abs(row[0]), abs(row[1])) < max(abs(alt[0]), abs(alt[1])):
        row = alt
    if abs(row[0]) == 0.0 and abs(row[1]) == 0.0:
        return 1.0 + 0.0j, 1.0 + 0.0j
    return row[1], -row[0]


def _profiles(k, wn, r):
    """J_k and J_k' at p*r and s*r over the grid, one sequence pass per point."""
    n = max(k + 1, 1)
    jp = np.empty_like(r)
    jpp = np.empty_like(r)
    js = np.empty_like(r)
    jsp = np.empty_like(r)
    buf = np.empty(n + 1)
    for i, ri in enumerate(r):
        _backend.jn_seq(n, wn.p * ri, buf)
        jp[i] = buf[k]
        jpp[i] = -buf[1] if k == 0 else 0.5 * (buf[k - 1] - buf[k + 1])
        _backend.jn_seq(n, wn.s * ri, buf)
        js[i] = buf[k]
        jsp[i] = -buf[1] if k == 0 else 0.5 * (buf[k - 1] - buf[k + 1])
    return jp, jpp, js, jsp


_D1 = np.array([-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0]) / 60.0
_D2 = np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / 180.0


def _deriv(f, h, coeffs):
    out = np.zeros_like(f)
    m = len(coeffs) // 2
    for off, c in enumerate(coeffs, start=-m):
        if c != 0.0:
            out[m:-m] += c * np.roll(f, -off)[m:-m]
    return out / h ** (1 if coeffs is _D1 else 2)


def verify_mode_pde(
    mode: DiskMode,
    params: LameParams,
    bc: BoundaryCondition = BoundaryCondition.DIRICHLET,
    grid: int = 2048,
    r_max: float = 1.0,
) -> PdeCheck:
    """Apply the flat Navier operator to the reconstructed mode by finite differences.

    The angular dependence e^{i k theta} is analytic, so the operator reduces
    to radial derivatives, taken with 6th-order central stencils on
    [0.05*r_max, r_max]; edges of the stencil are excluded from the max.
    """
    if mode.family_tag == "rigid":
        return PdeCheck(0.0, 0.0, 0.0)
    k, lam_ev = mode.k, mode.lambda_ev
    wn = WaveNumbers.from_eigenvalue(lam_ev, params)
    a_amp, b_amp = _mode_amplitudes(k, wn, params, bc)
    r = np.linspace(0.05 * r_max, r_max, grid)
    h = r[1] - r[0]
    jp, jpp, js, jsp = _profiles(k, wn, r)
    ik = 1j * k
    # compressional part (grad psi1) and shear part (curl z psi2)
    urp = a_amp * wn.p * jpp
    utp = a_amp * ik * jp / r
    urs = b_amp * ik * js / r
    uts = -b_amp * wn.s * jsp
    ur = urp + urs
    ut = utp + uts
    scale = max(np.max(np.abs(ur)), np.max(np.abs(ut)))

    mu, ml = params.mu, params.lam
    m = len(_D1) // 2
    sl = slice(m, -m)

    def navier(fr, ft):
        div = _deriv(fr, h, _D1) + fr / r + ik * ft / r
        lap_r = _deriv(fr, h, _D2) + _deriv(fr, h, _D1) / r - (k * k) * fr / r**2
        lap_t = _deriv(ft, h, _D2) + _deriv(ft, h, _D1) / r - (k * k) * ft / r**2
        vr = lap_r - fr / r**2 - 2.0 * ik * ft / r**2
        vt = lap_t - ft / r**2 + 2.0 * ik * fr / r**2
        pr = -mu * vr - (mu + ml) * _deriv(div, h, _D1)
        pt = -mu * vt - (mu + ml) * ik * div / r
        return pr, pt

    pr, pt = navier(ur, ut)
    inner = slice(2 * m, -2 * m)  # div is itself a derivative; drop its edge band too
    resid = max(
        np.max(np.abs(pr[inner] - lam_ev * ur[inner])),
        np.max(np.abs(pt[inner] - lam_ev * ut[inner])),
    ) / (lam_ev * scale)

    curl_p = np.abs(_deriv(r * utp, h, _D1) / r - ik * urp / r)[sl]
    scale_p = max(np.max(np.abs(urp)), np.max(np.abs(utp)), 1e-300) * max(wn.p, 1.0)
    div_s = np.abs(_deriv(urs, h, _D1) + urs / r + ik * uts / r)[sl]
    scale_s = max(np.max(np.abs(urs)), np.max(np.abs(uts)), 1e-300) * max(wn.s, 1.0)
    return PdeCheck(
        pde_residual=float(resid),
        curl_p=float(np.max(curl_p) / scale_p),
        div_s=float(np.max(div_s) / scale_s),
    )
