"""One-dimensional diagonal-norm SBP operators with narrow-stencil
variable-coefficient second derivatives.

The central object is :class:`OperatorSet1D`, which bundles the norm
(quadrature) weights, the first derivative, the boundary-modified first
derivative and builders for the second derivative D2(b) and its remainder
R(b).  The defining identity is

    H D2(b) = -D1^T H b D1 - R(b) - e_l b_l e_l^T Dhat + e_r b_r e_r^T Dhat

with R(b) symmetric positive semidefinite and linear in b.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _coeffs


class UnsupportedOrderError(ValueError):
    pass


class GridTooSmallError(ValueError):
    pass


def _as_float(rows):
    return np.array([[float(v) for v in row] for row in rows])


@dataclass(frozen=True)
class OperatorSet1D:
    """Immutable family of 1-D SBP operators on n points with spacing h."""

    q: int
    n: int
    h: float
    H: np.ndarray          # diagonal quadrature weights, shape (n,)
    D1: np.ndarray         # first derivative, (n, n)
    Dhat: np.ndarray       # boundary-modified first derivative, (n, n)
    theta_H: float
    theta_R: float
    m_b: int
    _r_pieces: tuple = field(repr=False, default=())

    @property
    def e_l(self):
        e = np.zeros(self.n)
        e[0] = 1.0
        return e

    @property
    def e_r(self):
        e = np.zeros(self.n)
        e[-1] = 1.0
        return e

    @property
    def deltaD(self):
        """D1 - Dhat; nonzero only in the first and last row."""
        return self.D1 - self.Dhat

    def build_R(self, b):
        """Remainder matrix R(b), symmetric PSD for b >= 0, linear in b.

        Interior: each coefficient b_k (FIRST_K <= k <= n-1-FIRST_K)
        weights quadratic-form molecules built on undivided-difference
        generators centered near k.  Boundary: block corrections take
        over for the first few coefficients (mirrored on the right).
        """
        b = np.asarray(b, dtype=float)
        if b.shape != (self.n,):
            raise ValueError(f"coefficient must have shape ({self.n},)")
        n, h = self.n, self.h
        R = np.zeros((n, n))
        gens, gammas, k0, deltas = self._r_pieces
        J = (gammas.shape[0] - 1) // 2
        reach = max(int(max(-o.min(), o.max())) for o, _ in gens)
        ng = len(gens)
        for k in range(k0, n - k0):
            if b[k] == 0.0:
                continue
            for j in range(-J, J + 1):
                c = k - j
                if c < reach or c > n - 1 - reach:
                    continue
                G = gammas[j + J]
                for a in range(ng):
                    oa, va = gens[a]
                    ia = c + oa
                    for g in range(ng):
                        if G[a, g] == 0.0:
                            continue
                        og, vg = gens[g]
                        ig = c + og
                        R[np.ix_(ia, ig)] += (b[k] * G[a, g]) * \
                            np.outer(va, vg)
        w = deltas.shape[1] if deltas.size else 0
        for jd in range(deltas.shape[0]):
            k = k0 + jd
            Dk = deltas[jd]
            R[:w, :w] += b[k] * Dk
            R[n - w:, n - w:] += b[n - 1 - k] * Dk[::-1, ::-1]
        return R / h

    def build_D2(self, b):
        """Narrow-stencil second-derivative matrix D2(b) ~ d/dx (b d/dx)."""
        b = np.asarray(b, dtype=float)
        M = (self.D1.T * (self.H * b)) @ self.D1 + self.build_R(b)
        BT = np.outer(b[-1] * self.e_r, self.Dhat[-1]) \
            - np.outer(b[0] * self.e_l, self.Dhat[0])
        return (-M + BT) / self.H[:, None]

    def to_json_dict(self):
        """Operator data as a JSON-serializable document."""
        return {
            "order": self.q,
            "n": self.n,
            "h": self.h,
            "H": (self.H / self.h).tolist(),
            "D1": (self.D1 * self.h).tolist(),
            "Dhat_first_row": (self.Dhat[0] * self.h).tolist(),
            "theta_H": self.theta_H,
            "theta_R": self.theta_R,
            "m_b": self.m_b,
        }


def build_sbp_1d(q, n, h):
    """Construct the 1-D SBP operator set of interior order q.

    Args:
        q: interior order, one of 2, 4, 6 (boundary order q/2).
        n: number of grid points (must fit both boundary closures).
        h: grid spacing, > 0.
    """
    if q not in _coeffs.SUPPORTED_ORDERS:
        raise UnsupportedOrderError(f"order {q} not supported (use 2, 4, 6)")
    if h <= 0:
        raise ValueError("grid spacing must be positive")
    nmin = _coeffs.min_points(q)
    if n < nmin:
        raise GridTooSmallError(f"order {q} needs at least {nmin} points, "
                                f"got {n}")

    w = _coeffs.H_WEIGHTS[q]
    Hd = np.ones(n)
    Hd[:len(w)] = [float(v) for v in w]
    Hd[n - len(w):] = [float(v) for v in w[::-1]]
    Hd *= h

    blk = _as_float(_coeffs.D1_BLOCKS[q])
    r, c = blk.shape
    D1 = np.zeros((n, n))
    D1[:r, :c] = blk
    D1[n - r:, n - c:] = -blk[::-1, ::-1]
    for off, v in _coeffs.D1_INTERIOR[q].items():
        val = float(v)
        for i in range(r, n - r):
            D1[i, i + off] = val
    D1 /= h

    dhat = np.array([float(v) for v in _coeffs.DHAT_ROWS[q]]) / h
    Dhat = D1.copy()
    Dhat[0, :] = 0.0
    Dhat[0, :dhat.size] = dhat
    Dhat[-1, :] = 0.0
    Dhat[-1, n - dhat.size:] = -dhat[::-1]

    gens, gammas, k0, deltas = _coeffs.remainder_tables(q)

    return OperatorSet1D(
        q=q, n=n, h=h, H=Hd, D1=D1, Dhat=Dhat,
        theta_H=float(_coeffs.THETA_H[q]),
        theta_R=_coeffs.THETA_R[q],
        m_b=_coeffs.M_B[q],
        _r_pieces=(gens, gammas, k0, deltas),
    )


def verify_operator_set(ops, b):
    """Residuals of the defining SBP identities for a coefficient b.

    Returns a dict of max-norm residuals; raises nothing.  Values well
    above 1e-11 times the scale of the terms indicate table corruption.
    """
    b = np.asarray(b, dtype=float)
    n = ops.n
    HD = ops.H[:, None] * ops.D1
    first = HD + HD.T + np.outer(ops.e_l, ops.e_l) \
        - np.outer(ops.e_r, ops.e_r)
    R = ops.build_R(b)
    D2 = ops.build_D2(b)
    decomp = ops.H[:, None] * D2 + (ops.D1.T * (ops.H * b)) @ ops.D1 + R \
        + np.outer(b[0] * ops.e_l, ops.Dhat[0]) \
        - np.outer(b[-1] * ops.e_r, ops.Dhat[-1])
    Rs = (R + R.T) / 2
    eigs = np.linalg.eigvalsh(Rs)
    scale = max(abs(eigs[0]), abs(eigs[-1]), 1e-300)
    return {
        "first_derivative_identity": float(np.abs(first).max()),
        "second_derivative_decomposition": float(np.abs(decomp).max()),
        "R_asymmetry": float(np.abs(R - R.T).max()),
        "R_min_eigenvalue": float(eigs[0]),
        "R_min_eigenvalue_relative": float(eigs[0] / scale),
        "ok": bool(np.abs(first).max() < 1e-11
                   and np.abs(decomp).max() < 1e-11 * max(np.abs(R).max(), 1)
                   and eigs[0] > -1e-11 * scale),
    }
