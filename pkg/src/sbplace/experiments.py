"""Declarative experiments and their CSV outputs.

Each runner takes an ExperimentConfig and writes one CSV file whose rows
carry the experiment id, the package version and a hash of the
configuration, so identical configs reproduce identical files (modulo
the runtime column).
"""

import csv
import hashlib
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict

import numpy as np

from . import __version__
from .geometry import parallelogram_mapping, disk_multiblock, \
    compute_metrics
from .assembly import BlockDiscretization, CoefficientFields, \
    assemble_global
from .analysis import spectral_radius, h_norm_error, sample_exact
from .timestepping import CFL_TABLE, compute_dt, rk4_integrate, \
    discrete_energy
from .bessel import besselj, validate_root, J5_ROOT_5
from .borrowing import borrowing_table

EXPERIMENTS = ("skew-sweep", "disk-convergence", "theta-r-table",
               "energy-audit", "cfl-audit")

BESSEL_ALPHA = 5
BESSEL_BETA = J5_ROOT_5


@dataclass
class ExperimentConfig:
    experiment: str
    order: int = 4
    out: str = "out.csv"
    grids: tuple = (21, 31, 41, 61)
    n_points: int = 31
    phi_min: float = np.pi / 6
    phi_max: float = np.pi / 2
    phi_count: int = 13
    mb_max: int = 9
    dt_policy: str = "fixed"      # fixed 0.05h | cfl | largest-stable
    t_end: float = 1.0
    dt_h_factor: float = 0.05
    n_steps: int = 1000
    seed: int = 0
    orders: tuple = ()            # multi-order experiments; () = (order,)

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}; "
                             f"choose from {EXPERIMENTS}")
        if self.experiment == "disk-convergence":
            validate_root(BESSEL_ALPHA, BESSEL_BETA, tol=1e-10)

    @property
    def order_list(self):
        return tuple(self.orders) if self.orders else (self.order,)

    def config_hash(self):
        d = asdict(self)
        d.pop("out", None)   # the artifact path does not affect results
        payload = json.dumps(d, sort_keys=True, default=str)
        return hashlib.sha256(payload.encode()).hexdigest()[:12]


def load_config(path):
    """Read an ExperimentConfig from a JSON or TOML file."""
    if path.endswith(".toml"):
        try:
            import tomllib
        except ModuleNotFoundError:     # Python < 3.11
            import tomli as tomllib
        with open(path, "rb") as f:
            data = tomllib.load(f)
    else:
        with open(path) as f:
            data = json.load(f)
    for key in ("grids", "orders"):
        if key in data:
            data[key] = tuple(data[key])
    return ExperimentConfig(**data)


def _workers():
    env = os.environ.get("SBPLACE_THREADS")
    return max(1, int(env)) if env else 1


class _Writer:
    def __init__(self, cfg, columns):
        self.cfg = cfg
        self.columns = ["experiment", "q"] + columns + \
            ["version", "config", "runtime_s"]
        self.rows = []
        self.t0 = time.time()

    def add(self, q, **kv):
        self.rows.append((q, kv))

    def flush(self):
        runtime = f"{time.time() - self.t0:.3f}"
        os.makedirs(os.path.dirname(os.path.abspath(self.cfg.out)),
                    exist_ok=True)
        with open(self.cfg.out, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(self.columns)
            for q, kv in self.rows:
                row = [self.cfg.experiment, q]
                for c in self.columns[2:-3]:
                    v = kv[c]
                    row.append(f"{v:.17g}" if isinstance(v, float) else v)
                row += [__version__, self.cfg.config_hash(), runtime]
                w.writerow(row)
        return self.cfg.out


def _parallelogram_system(phi, q, n):
    met = compute_metrics(parallelogram_mapping(phi), (n, n))
    cf = CoefficientFields(a=np.ones(met.n_nodes), b=np.ones(met.n_nodes))
    bd = BlockDiscretization(met, q, cf)
    return assemble_global([bd], [], boundary="dirichlet")


def _disk_system(m, q, boundary="dirichlet"):
    blocks, ifaces = disk_multiblock()
    bds = []
    for bm in blocks:
        met = compute_metrics(bm, (m, m))
        cf = CoefficientFields(a=np.ones(met.n_nodes),
                               b=np.ones(met.n_nodes))
        bds.append(BlockDiscretization(met, q, cf))
    return assemble_global(bds, ifaces, boundary=boundary)


def run_skew_sweep(cfg):
    """Spectral radius versus parallelogram angle, absolute and
    normalized by the Cartesian (phi = pi/2) value."""
    w = _Writer(cfg, ["phi", "rho", "rho_normalized"])
    phis = np.linspace(cfg.phi_min, cfg.phi_max, cfg.phi_count)

    def rho_of(args):
        q, phi = args
        sys_ = _parallelogram_system(phi, q, cfg.n_points)
        return spectral_radius(sys_).rho

    for q in cfg.order_list:
        jobs = [(q, phi) for phi in phis]
        if _workers() > 1:
            with ThreadPoolExecutor(_workers()) as ex:
                rhos = list(ex.map(rho_of, jobs))
        else:
            rhos = [rho_of(j) for j in jobs]
        ref = rho_of((q, cfg.phi_max))
        for phi, rho in zip(phis, rhos):
            w.add(q, phi=float(phi), rho=rho, rho_normalized=rho / ref)
    return w.flush()


def disk_exact(t):
    """Exact eigenmode of the unit disk at time t."""
    def f(x, y):
        r = np.hypot(x, y)
        th = np.arctan2(y, x)
        return besselj(BESSEL_ALPHA, BESSEL_BETA * r) \
            * np.sin(BESSEL_ALPHA * th) * np.cos(BESSEL_BETA * t)
    return f


def disk_exact_velocity(t):
    def f(x, y):
        r = np.hypot(x, y)
        th = np.arctan2(y, x)
        return -BESSEL_BETA * besselj(BESSEL_ALPHA, BESSEL_BETA * r) \
            * np.sin(BESSEL_ALPHA * th) * np.sin(BESSEL_BETA * t)
    return f


def _disk_run_error(q, m, cfg):
    sys_ = _disk_system(m, q)
    h = 1.0 / (m - 1)
    if cfg.dt_policy == "cfl":
        dt = compute_dt(sys_, CFL_TABLE[q]).dt
    elif cfg.dt_policy == "largest-stable":
        rho = spectral_radius(sys_).rho
        dt = 0.99 * 2.0 * np.sqrt(2.0) / np.sqrt(rho)
    else:
        dt = cfg.dt_h_factor * h
    n_steps = int(np.ceil(cfg.t_end / dt))
    dt = cfg.t_end / n_steps
    u0 = sample_exact(sys_, disk_exact(0.0))
    v0 = sample_exact(sys_, disk_exact_velocity(0.0))
    u, v, _ = rk4_integrate(sys_, u0, v0, dt, n_steps)
    ue = sample_exact(sys_, disk_exact(cfg.t_end))
    return h_norm_error(sys_, u, ue), dt, n_steps


def run_disk_convergence(cfg):
    """Relative l2 errors at t_end on the disk eigenmode, plus fitted
    convergence rates (least squares in log-log)."""
    w = _Writer(cfg, ["m", "h", "dt", "n_steps", "error", "fit_rate"])
    for q in cfg.order_list:
        errs = []
        for m in cfg.grids:
            err, dt, ns = _disk_run_error(q, m, cfg)
            errs.append((m, err, dt, ns))
        hs = np.array([1.0 / (m - 1) for m, *_ in errs])
        es = np.array([e for _, e, *_ in errs])
        rate = float(np.polyfit(np.log(hs), np.log(es), 1)[0])
        for (m, err, dt, ns) in errs:
            w.add(q, m=m, h=1.0 / (m - 1), dt=dt, n_steps=ns,
                  error=err, fit_rate=rate)
    return w.flush()


def run_theta_r_table(cfg):
    """Borrowing constants for m_b = 1..mb_max."""
    w = _Writer(cfg, ["m_b", "theta_R", "recommended_m_b"])
    for q in cfg.order_list:
        table = borrowing_table(q, cfg.mb_max)
        for m_b, th in table["rows"]:
            w.add(q, m_b=m_b, theta_R=float(th),
                  recommended_m_b=table["recommended_m_b"])
    return w.flush()


def run_energy_audit(cfg):
    """Discrete-energy drift on the Dirichlet disk over [0, t_end]."""
    w = _Writer(cfg, ["m", "dt", "n_steps", "E0", "max_drift"])
    for q in cfg.order_list:
        m = cfg.grids[0]
        sys_ = _disk_system(m, q)
        h = 1.0 / (m - 1)
        dt = cfg.dt_h_factor * h
        n_steps = int(np.ceil(cfg.t_end / dt))
        dt = cfg.t_end / n_steps
        u = sample_exact(sys_, disk_exact(0.0))
        v = sample_exact(sys_, disk_exact_velocity(0.0))
        e0 = discrete_energy(sys_, u, v)
        drift = 0.0
        chunk = max(1, n_steps // 20)
        done = 0
        while done < n_steps:
            k = min(chunk, n_steps - done)
            u, v, _ = rk4_integrate(sys_, u, v, dt, k)
            done += k
            e = discrete_energy(sys_, u, v)
            drift = max(drift, abs(e - e0) / e0)
        w.add(q, m=m, dt=dt, n_steps=n_steps, E0=e0, max_drift=drift)
    return w.flush()


def run_cfl_audit(cfg):
    """Norm stability over n_steps at the tabulated CFL numbers, plus
    the largest stable step (eigenvalue route, RK4 imaginary-axis limit)
    as dt_max with its dt_max * sqrt(rho) product.

    The tabulated CFL values target mildly curved grids; the audit runs
    the Cartesian parallelogram and the multiblock disk.  On strongly
    skewed grids the table is known to overstep, which is the stiffness
    story the skew sweep quantifies.
    """
    w = _Writer(cfg, ["grid", "cfl", "dt", "norm_ratio",
                      "dt_max", "dtmax_sqrt_rho", "rho"])
    rng = np.random.default_rng(cfg.seed)
    for q in cfg.order_list:
        cfl = CFL_TABLE[q]
        cases = [("parallelogram", _parallelogram_system(
            cfg.phi_max, q, cfg.n_points))]
        cases.append(("disk", _disk_system(cfg.grids[0], q)))
        for name, sys_ in cases:
            dt = compute_dt(sys_, cfl).dt
            rho = spectral_radius(sys_).rho
            dt_max = 0.99 * 2.0 * np.sqrt(2.0) / np.sqrt(rho)
            u0 = rng.normal(size=sys_.n)
            v0 = rng.normal(size=sys_.n)
            e0 = discrete_energy(sys_, u0, v0)
            u, v, _ = rk4_integrate(sys_, u0, v0, dt, cfg.n_steps)
            e1 = discrete_energy(sys_, u, v)
            w.add(q, grid=name, cfl=cfl, dt=dt,
                  norm_ratio=float(np.sqrt(e1 / e0)),
                  dt_max=dt_max, dtmax_sqrt_rho=dt_max * np.sqrt(rho),
                  rho=rho)
    return w.flush()


RUNNERS = {
    "skew-sweep": run_skew_sweep,
    "disk-convergence": run_disk_convergence,
    "theta-r-table": run_theta_r_table,
    "energy-audit": run_energy_audit,
    "cfl-audit": run_cfl_audit,
}


def run(cfg):
    return RUNNERS[cfg.experiment](cfg)
