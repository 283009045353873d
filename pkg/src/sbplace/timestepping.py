"""Classical RK4 integration of the first-order-in-time form and
grid/CFL-based time-step selection."""

from dataclasses import dataclass

import numpy as np

from ._kernels import rk4_wave_run

# CFL constants tuned for classical RK4, per spatial order
CFL_TABLE = {2: 0.5, 4: 0.35, 6: 0.27}

BLOWUP_NORM = 1e12


class BlowUpError(RuntimeError):
    def __init__(self, step, norm):
        super().__init__(f"solution norm {norm:.3e} exceeded "
                         f"{BLOWUP_NORM:.0e} at step {step}; the run is "
                         "unstable")
        self.step = step
        self.norm = norm


@dataclass(frozen=True)
class TimeStepPlan:
    dt: float
    cfl: float
    min_h_over_c: float


def compute_dt(system, cfl):
    """dt = CFL * min over all blocks and nodes of h-tilde / c.

    The approximate physical spacing along reference direction j is the
    norm of the Jacobian row times the reference spacing h_j; h-tilde is
    the per-node minimum over directions.
    """
    if cfl <= 0:
        raise ValueError("CFL must be positive")
    best = np.inf
    for bd in system.blocks:
        m = bd.metrics
        c = bd.coeffs.c
        if np.any(c <= 0):
            raise ValueError("wave speed must be positive")
        hts = []
        for j in range(bd.d):
            hj = m.h[j]
            edge = np.linalg.norm(m.Jmat[:, j, :], axis=1) * hj
            hts.append(edge)
        htilde = np.minimum.reduce(hts)
        best = min(best, float((htilde / c).min()))
    return TimeStepPlan(dt=cfl * best, cfl=cfl, min_h_over_c=best)


def rk4_integrate(system, u0, v0, dt, n_steps, probes=()):
    """Integrate u'' = (J a)^{-1} S u from (u0, v0) with classical RK4.

    Args:
        system: GlobalSystem.
        u0, v0: initial displacement and velocity (copied).
        dt: time step.
        n_steps: number of steps.
        probes: node indices whose u-values are recorded every step.

    Returns (u, v, records) where records has shape (n_steps, n_probes).
    Raises BlowUpError if the max-norm of u passes 1e12.
    """
    A = (system.S.multiply(1.0 / system.mass_density[:, None])).tocsr()
    A.sort_indices()
    u = np.array(u0, dtype=float, copy=True)
    v = np.array(v0, dtype=float, copy=True)
    probe_idx = np.asarray(probes, dtype=np.int64)
    records = np.empty((n_steps, probe_idx.size))
    done = rk4_wave_run(A.indptr.astype(np.int32),
                        A.indices.astype(np.int32),
                        A.data, u, v, float(dt), int(n_steps),
                        probe_idx, records, BLOWUP_NORM)
    if done < n_steps:
        raise BlowUpError(done, float(np.abs(u).max()))
    return u, v, records


def discrete_energy(system, u, v):
    """E_D = 1/2 v^T (H J a) v - 1/2 u^T (H S) u.

    Nonnegative for stable assemblies (H S is symmetric negative
    semidefinite); conserved by the semidiscrete flow, drifting only at
    the time-integrator's order.
    """
    kinetic = 0.5 * float(v @ (system.mass * v))
    potential = -0.5 * float(u @ (system.H * (system.S @ u)))
    return kinetic + potential
