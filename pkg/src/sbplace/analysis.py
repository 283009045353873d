"""Spectral radius, discrete norms and energy reporting."""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .timestepping import discrete_energy

DENSE_LIMIT = 5000


@dataclass(frozen=True)
class SpectrumResult:
    rho: float
    min_eig: float
    max_eig: float
    method: str


@dataclass(frozen=True)
class EnergyReport:
    times: np.ndarray
    energy: np.ndarray
    max_relative_drift: float


def pencil_eigs(system, dense_limit=DENSE_LIMIT):
    """Extreme eigenvalues of the pencil (H S, H J a).

    The pencil is symmetric, so the eigenvalues are real; they coincide
    with the spectrum of (J a)^{-1} S.  Dense solve up to dense_limit
    unknowns, shift-free Lanczos via scipy above.
    """
    HS = system.HS()
    HS = (HS + HS.T) * 0.5
    m = system.mass
    sq = 1.0 / np.sqrt(m)
    # similarity-transformed standard problem: diag(sq) HS diag(sq)
    B = sp.diags(sq) @ HS @ sp.diags(sq)
    n = B.shape[0]
    if n <= dense_limit:
        w = np.linalg.eigvalsh(B.toarray())
        return SpectrumResult(rho=float(np.abs(w).max()),
                              min_eig=float(w[0]), max_eig=float(w[-1]),
                              method="dense")
    # extreme eigenvalues iteratively
    w_small = spla.eigsh(B, k=1, which="SA",
                         return_eigenvectors=False, tol=1e-10)
    w_large = spla.eigsh(B, k=1, which="LA",
                         return_eigenvectors=False, tol=1e-10)
    lo, hi = float(w_small[0]), float(w_large[0])
    return SpectrumResult(rho=max(abs(lo), abs(hi)), min_eig=lo,
                          max_eig=hi, method="iterative")


def spectral_radius(system, dense_limit=DENSE_LIMIT):
    """rho((J a)^{-1} S) via the symmetric pencil."""
    return pencil_eigs(system, dense_limit)


def h_norm_error(system, u_numeric, u_exact):
    """Relative l2 error in the physical quadrature <u, J u>_H."""
    w = system.H * np.concatenate(
        [bd.metrics.J for bd in system.blocks])
    diff = u_numeric - u_exact
    denom = float(u_exact @ (w * u_exact))
    if denom == 0.0:
        raise ValueError("exact solution has zero norm")
    return float(np.sqrt((diff @ (w * diff)) / denom))


def sample_exact(system, func):
    """Evaluate func(x, y, ...) at every node, block-major."""
    vals = []
    for bd in system.blocks:
        x = bd.metrics.x
        vals.append(func(*[x[:, i] for i in range(x.shape[1])]))
    return np.concatenate(vals)


def energy_trace(system, states, times):
    """EnergyReport over recorded (u, v) states."""
    energies = np.array([discrete_energy(system, u, v)
                         for (u, v) in states])
    e0 = energies[0]
    if e0 == 0.0:
        drift = float(np.abs(energies).max())
    else:
        drift = float(np.abs(energies - e0).max() / abs(e0))
    return EnergyReport(times=np.asarray(times), energy=energies,
                        max_relative_drift=drift)


def quadrature_degree_check(ops, degree):
    """Max error of the H-quadrature integrating x^p on [0,1], p<=degree."""
    x = np.linspace(0.0, 1.0, ops.n)
    worst = 0.0
    for p in range(degree + 1):
        val = float(ops.H @ x**p)
        worst = max(worst, abs(val - 1.0 / (p + 1)))
    return worst
