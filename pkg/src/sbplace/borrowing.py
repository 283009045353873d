"""Borrowing constants: how much boundary-derivative control the
second-derivative remainder R(b) can lend to the penalty terms.

theta_R is the largest zeta such that

    N(zeta) = R(chi) - zeta * h * (e^T dD)^T (e^T dD)

stays positive semidefinite, where chi is the indicator of the m_b grid
points nearest the boundary and e^T dD is the boundary row of D1 - Dhat.
The sweep below locates theta_R by bisection on the smallest eigenvalue,
using a round-off floor tied to machine epsilon.
"""

from dataclasses import dataclass

import numpy as np

from .sbp1d import build_sbp_1d, GridTooSmallError


@dataclass(frozen=True)
class BorrowingSweepResult:
    q: int
    m_b: int
    zeta_grid: np.ndarray
    lambda_min: np.ndarray
    theta_R: float


def indicator_coefficient(side, m_b, n):
    """0/1 samples of the boundary indicator with cutoff at point m_b.

    Args:
        side: "left" or "right".
        m_b: number of unit samples next to the chosen boundary.
        n: total number of grid points; must be at least 2*m_b so the
           two cutoffs do not overlap.
    """
    if n < 2 * m_b:
        raise GridTooSmallError(
            f"indicator needs n >= 2*m_b, got n={n}, m_b={m_b}")
    chi = np.zeros(n)
    if side == "left":
        chi[:m_b] = 1.0
    elif side == "right":
        chi[n - m_b:] = 1.0
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return chi


def _lambda_min(ops, chi, zeta):
    R = ops.build_R(chi)
    v = ops.deltaD[0]
    N = (R + R.T) / 2 - zeta * ops.h * np.outer(v, v)
    return np.linalg.eigvalsh(N)[0]


def compute_theta_R(q, m_b, n=None, h=1.0, zeta_resolution=1e-5,
                    n_samples=25):
    """Largest zeta keeping N(zeta) PSD, resolved by bisection.

    The grid spacing defaults to 1 so that round-off in the eigenvalue
    computations sits near machine epsilon; the negativity floor is
    100 * eps * ||N||.
    """
    if n is None:
        n = max(4 * m_b, 4 * {2: 3, 4: 6, 6: 9}[q])
    ops = build_sbp_1d(q, n, h)
    chi = indicator_coefficient("left", m_b, n)
    Rs = (ops.build_R(chi) + ops.build_R(chi).T) / 2
    scale = max(np.abs(np.linalg.eigvalsh(Rs)).max(), 1.0)
    floor = -100.0 * np.finfo(float).eps * scale

    hi = 2.0
    if _lambda_min(ops, chi, hi) >= floor:
        raise RuntimeError("bisection bracket failed; operator tables "
                           "are corrupted")
    lo = 0.0
    if _lambda_min(ops, chi, 1e-10) < floor:
        theta = 0.0
        hi = 0.0
    else:
        while hi - lo > zeta_resolution:
            mid = 0.5 * (lo + hi)
            if _lambda_min(ops, chi, mid) >= floor:
                lo = mid
            else:
                hi = mid
        theta = 0.5 * (lo + hi)

    zg = np.linspace(0.0, max(2 * theta, 0.5), n_samples)
    lm = np.array([_lambda_min(ops, chi, z) for z in zg])
    return BorrowingSweepResult(q=q, m_b=m_b, zeta_grid=zg,
                                lambda_min=lm, theta_R=theta)


def borrowing_table(q, m_b_max):
    """theta_R for m_b = 1..m_b_max plus the recommended cutoff.

    The recommendation is the smallest m_b whose theta_R is within 1e-3
    of the saturated (largest observed) value.
    """
    rows = []
    for m_b in range(1, m_b_max + 1):
        rows.append((m_b, compute_theta_R(q, m_b).theta_R))
    saturated = max(th for _, th in rows)
    recommended = next(m for m, th in rows
                       if th >= saturated - 1e-3)
    return {"q": q, "rows": rows, "saturated": saturated,
            "recommended_m_b": recommended}
