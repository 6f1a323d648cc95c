"""Generalized symmetric eigensolver: shift-invert Lanczos with full reorthogonalization.

The Lanczos iteration itself lives here; only the sparse LU factorization
(and the dense fallback for small problems) is delegated to scipy/LAPACK.
The M-inner-product Lanczos on (A - sigma*M)^{-1} M converges to the
eigenvalues nearest the shift; sigma sits at/below the bottom of the
spectrum, so the lowest eigenvalues come out first.  The subspace is grown
incrementally until either the requested count or everything below the
requested cutoff has converged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
import scipy.sparse.linalg as spla

from ..errors import ParameterDomainError, SolverError
from .assemble import Operators

# dense is allowed up to 4000 unknowns, but LAPACK's full solve is already
# slower than shift-invert Lanczos well before that on one core
_DENSE_LIMIT = 1200
_RESID_TOL = 1e-8
_RITZ_TOL = 1e-9


@dataclass
class EigResult:
    values: np.ndarray  # ascending, with multiplicity (discrete, unmerged)
    residuals: np.ndarray  # ||A x - lam M x|| / ||M x||
    converged_count: int
    method: str


def _dense_eigs(ops: Operators, count: int) -> EigResult:
    A = ops.stiffness.toarray()
    M = ops.mass.toarray()
    vals, vecs = sla.eigh(A, M)
    vals = vals[:count]
    vecs = vecs[:, :count]
    res = _residuals(ops, vals, vecs)
    return EigResult(values=vals, residuals=res, converged_count=len(vals), method="dense")


def _residuals(ops, vals, vecs):
    A, M = ops.stiffness, ops.mass
    out = np.empty(len(vals))
    for i, lam in enumerate(vals):
        x = vecs[:, i]
        mx = M @ x
        out[i] = np.linalg.norm(A @ x - lam * mx) / np.linalg.norm(mx)
    return out


class _Lanczos:
    """Incrementally extendable M-orthogonal Lanczos on (A - sigma M)^{-1} M."""

    def __init__(self, ops: Operators, seed: int, m_cap: int):
        A, M = ops.stiffness, ops.mass
        self.M = M
        self.n = A.shape[0]
        self.m_cap = min(m_cap, self.n)
        # shift just below the spectrum: the wanted eigenvalues must remain
        # the extreme end of 1/(lambda - sigma); a 1/h^2-sized shift would
        # compress them against the discretization tail
        self.sigma = 0.0 if ops.bc.value == "dirichlet" else -0.2 * ops.params.mu
        self.lu = spla.splu((A - self.sigma * M).tocsc())
        rng = np.random.default_rng(seed)
        self.Q = np.empty((min(self.m_cap + 1, 128), self.n))
        q = rng.standard_normal(self.n)
        q /= np.sqrt(q @ (M @ q))
        self.Q[0] = q
        self.alpha = []
        self.beta = []
        self.exhausted = False

    def extend(self, m_target: int):
        m_target = min(m_target, self.m_cap)
        if self.Q.shape[0] < m_target + 1:
            grown = np.empty((m_target + 1, self.n))
            grown[: self.Q.shape[0]] = self.Q
            self.Q = grown
        j = len(self.alpha)
        while j < m_target and not self.exhausted:
            mq = self.M @ self.Q[j]
            w = self.lu.solve(mq)
            a = w @ mq
            w -= a * self.Q[j]
            if j > 0:
                w -= self.beta[j - 1] * self.Q[j - 1]
            for _ in range(2):  # full reorthogonalization, twice
                w -= self.Q[: j + 1].T @ (self.Q[: j + 1] @ (self.M @ w))
            b = np.sqrt(max(w @ (self.M @ w), 0.0))
            self.alpha.append(a)
            if b < 1e-14:
                self.exhausted = True
                self.beta.append(0.0)
                break
            self.beta.append(b)
            self.Q[j + 1] = w / b
            j += 1

    def ritz(self):
        """(values ascending, error bounds, tridiagonal eigvecs, m)."""
        m = len(self.alpha)
        theta, S = sla.eigh_tridiagonal(np.array(self.alpha), np.array(self.beta[: m - 1]))
        order = np.argsort(theta)[::-1]
        theta, S = theta[order], S[:, order]
        pos = theta > 0
        theta, S = theta[pos], S[:, pos]
        lams = self.sigma + 1.0 / theta
        bm = self.beta[m - 1] if m >= 1 else 0.0
        lam_err = np.abs(S[-1, :]) * bm / theta**2
        return lams, lam_err, S, m

    def vectors(self, S, take):
        m = len(self.alpha)
        return self.Q[:m].T @ S[:, :take]


def solve_eigs(
    ops: Operators,
    count: int | None = None,
    lambda_max: float | None = None,
    seed_sequence=(0, 1, 2, 3, 4),
) -> EigResult:
    """Eigenvalues of A x = lambda M x with residual certificates.

    Either the lowest ``count`` eigenvalues, or (with ``lambda_max``) every
    eigenvalue below the cutoff.  Dense path (LAPACK) below 1200 unknowns;
    otherwise the in-repo Lanczos, extended until the target set has
    converged.  A breakdown triggers a restart with the next deterministic
    seed.
    """
    if count is None and lambda_max is None:
        raise ParameterDomainError("need count or lambda_max")
    if ops.n <= _DENSE_LIMIT:
        res = _dense_eigs(ops, count if count is not None else ops.n)
        if lambda_max is not None and count is None:
            keep = res.values < lambda_max
            res = EigResult(res.values[keep], res.residuals[keep], int(keep.sum()), "dense")
        return res

    last_exc = None
    for seed in seed_sequence:
        try:
            lz = _Lanczos(ops, seed, m_cap=min(ops.n - 1, 1500))
            m = max(80, 2 * count + 40 if count is not None else 120)
            while True:
                lz.extend(m)
                lams, lam_err, S, m_now = lz.ritz()
                conv = lam_err <= _RITZ_TOL * np.maximum(np.abs(lams), 1.0)
                if count is not None:
                    done = len(lams) >= count and bool(np.all(conv[:count]))
                    take = count
                else:
                    below = lams < lambda_max
                    # complete when everything under the cutoff has converged
                    # and at least one converged value lies beyond it
                    done = (
                        bool(np.all(conv[below]))
                        and bool(np.any(conv & ~below))
                    )
                    take = int(below.sum())
                if done:
                    vecs = lz.vectors(S, take)
                    res = _residuals(ops, lams[:take], vecs)
                    if np.all(res <= _RESID_TOL):
                        return EigResult(
                            values=lams[:take],
                            residuals=res,
                            converged_count=take,
                            method="lanczos",
                        )
                if m_now >= lz.m_cap or lz.exhausted:
                    break
                m = min(int(1.4 * m_now) + 20, lz.m_cap)
        except SolverError:
            raise
        except Exception as exc:  # factorization or recurrence failure
            last_exc = exc
            continue
    raise SolverError(f"Lanczos failed to converge the requested set (last error: {last_exc})")
