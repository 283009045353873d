"""NumPy/SciPy fallback for the compiled kernels; identical semantics."""

import numpy as np
import scipy.sparse as sp


def csr_matvec(indptr, indices, data, x, out):
    A = sp.csr_matrix((data, indices, indptr),
                      shape=(indptr.size - 1, x.size))
    out[:] = A @ x
    return out


def rk4_wave_run(indptr, indices, data, u, v, dt, n_steps,
                 probe_idx, probe_out, blowup):
    A = sp.csr_matrix((data, indices, indptr), shape=(u.size, u.size))
    dt2 = 0.5 * dt
    for step in range(n_steps):
        k1v = A @ u
        k2v = A @ (u + dt2 * v)
        k3v = A @ (u + dt2 * (v + dt2 * k1v))
        k4v = A @ (u + dt * (v + dt2 * k2v))
        u += dt / 6.0 * (6.0 * v + dt * (k1v + k2v + k3v))
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        if probe_idx.size:
            probe_out[step] = u[probe_idx]
        if np.abs(u).max() > blowup:
            return step + 1
    return n_steps
