# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: CSR matvec and the fused RK4 wave-equation loop.

The pure-Python fallback in _fallback.py computes identical results; the
package selects between them at import time.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def csr_matvec(cnp.ndarray[cnp.int32_t, ndim=1] indptr,
               cnp.ndarray[cnp.int32_t, ndim=1] indices,
               cnp.ndarray[cnp.float64_t, ndim=1] data,
               cnp.ndarray[cnp.float64_t, ndim=1] x,
               cnp.ndarray[cnp.float64_t, ndim=1] out):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t i, j
    cdef double acc
    for i in range(n):
        acc = 0.0
        for j in range(indptr[i], indptr[i + 1]):
            acc += data[j] * x[indices[j]]
        out[i] = acc
    return out


def rk4_wave_run(cnp.ndarray[cnp.int32_t, ndim=1] indptr,
                 cnp.ndarray[cnp.int32_t, ndim=1] indices,
                 cnp.ndarray[cnp.float64_t, ndim=1] data,
                 cnp.ndarray[cnp.float64_t, ndim=1] u,
                 cnp.ndarray[cnp.float64_t, ndim=1] v,
                 double dt, Py_ssize_t n_steps,
                 cnp.ndarray[cnp.int64_t, ndim=1] probe_idx,
                 cnp.ndarray[cnp.float64_t, ndim=2] probe_out,
                 double blowup):
    """Integrate u' = v, v' = A u for n_steps of classical RK4.

    A is (J a)^{-1} S in CSR form.  Probe values of u are recorded after
    every step.  Returns the step count actually completed (smaller than
    n_steps only if the max-norm of u exceeded `blowup`).
    """
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t npr = probe_idx.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] k1v = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] k2v = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] k3v = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] k4v = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tmp = np.empty(n)
    cdef Py_ssize_t step, i, j, p
    cdef double acc, dt2 = 0.5 * dt, dt6 = dt / 6.0, um

    for step in range(n_steps):
        # k1v = A u
        for i in range(n):
            acc = 0.0
            for j in range(indptr[i], indptr[i + 1]):
                acc += data[j] * u[indices[j]]
            k1v[i] = acc
        # k2v = A (u + dt/2 v)
        for i in range(n):
            tmp[i] = u[i] + dt2 * v[i]
        for i in range(n):
            acc = 0.0
            for j in range(indptr[i], indptr[i + 1]):
                acc += data[j] * tmp[indices[j]]
            k2v[i] = acc
        # k3v = A (u + dt/2 v + dt^2/4 k1v)
        for i in range(n):
            tmp[i] = u[i] + dt2 * (v[i] + dt2 * k1v[i])
        for i in range(n):
            acc = 0.0
            for j in range(indptr[i], indptr[i + 1]):
                acc += data[j] * tmp[indices[j]]
            k3v[i] = acc
        # k4v = A (u + dt v + dt^2/2 k2v)
        for i in range(n):
            tmp[i] = u[i] + dt * (v[i] + dt2 * k2v[i])
        for i in range(n):
            acc = 0.0
            for j in range(indptr[i], indptr[i + 1]):
                acc += data[j] * tmp[indices[j]]
            k4v[i] = acc
        # combine: ku1 = v, ku2 = v + dt/2 k1v, ku3 = v + dt/2 k2v,
        #          ku4 = v + dt k3v
        um = 0.0
        for i in range(n):
            u[i] += dt6 * (6.0 * v[i] + dt * (k1v[i] + k2v[i] + k3v[i]))
            v[i] += dt6 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i])
            if u[i] > um:
                um = u[i]
            elif -u[i] > um:
                um = -u[i]
        for p in range(npr):
            probe_out[step, p] = u[probe_idx[p]]
        if um > blowup:
            return step + 1
    return n_steps
