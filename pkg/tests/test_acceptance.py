"""Acceptance suite: one test per criterion, printing a pass line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
report.  The heavy convergence criterion is marked slow but runs by
default; the full suite targets a laptop-scale budget.
"""

import json
import os

import numpy as np
import pytest

from sbplace.sbp1d import build_sbp_1d
from sbplace.borrowing import compute_theta_R
from sbplace.geometry import (parallelogram_mapping, disk_multiblock,
                              compute_metrics)
from sbplace.assembly import (BlockDiscretization, CoefficientFields,
                              assemble_global)
from sbplace.analysis import spectral_radius, pencil_eigs, h_norm_error, \
    sample_exact
from sbplace.timestepping import (CFL_TABLE, compute_dt, rk4_integrate,
                                  discrete_energy)
from sbplace.experiments import (ExperimentConfig, run_disk_convergence,
                                 disk_exact, disk_exact_velocity,
                                 _disk_system, _parallelogram_system)

GOLDEN = os.path.join(os.path.dirname(__file__), "golden",
                      "skew_rho.json")


def report(name, ok, detail=""):
    print(f"[{'PASS' if ok else 'FAIL'}] {name} {detail}")
    assert ok, f"{name}: {detail}"


# -- criterion 1: SBP identities ---------------------------------------

@pytest.mark.parametrize("q", (2, 4, 6))
def test_sbp_identities(q):
    n = 30
    ops = build_sbp_1d(q, n, 1.0 / (n - 1))
    HD = ops.H[:, None] * ops.D1
    res1 = np.abs(HD + HD.T + np.outer(ops.e_l, ops.e_l)
                  - np.outer(ops.e_r, ops.e_r)).max()
    worst = 0.0
    rng = np.random.default_rng(q)
    for _ in range(10):
        b = rng.uniform(0.1, 10.0, n)
        R = ops.build_R(b)
        D2 = ops.build_D2(b)
        M = (ops.D1.T * (ops.H * b)) @ ops.D1 + R
        dec = ops.H[:, None] * D2 + M \
            + np.outer(b[0] * ops.e_l, ops.Dhat[0]) \
            - np.outer(b[-1] * ops.e_r, ops.Dhat[-1])
        # the decomposition terms scale like 1/h^3; measure relative
        worst = max(worst, np.abs(dec).max() / np.abs(M).max())
    report(f"SBP identities q={q}",
           res1 < 1e-13 and worst < 1e-12,
           f"(D1 identity {res1:.1e}, decomposition rel {worst:.1e})")


# -- criterion 2: borrowing table ---------------------------------------

def test_borrowing_table_headline():
    cells = {(2, 2): 1.0, (4, 4): 0.5776, (6, 7): 0.3697}
    zeros = [(2, 1), (4, 1), (4, 2), (6, 1), (6, 2), (6, 3), (6, 4),
             (6, 5)]
    worst = 0.0
    for (q, mb), want in cells.items():
        got = compute_theta_R(q, mb).theta_R
        worst = max(worst, abs(got - want))
    zero_bad = 0.0
    for (q, mb) in zeros:
        zero_bad = max(zero_bad, compute_theta_R(q, mb).theta_R)
    report("borrowing table", worst < 5e-4 and zero_bad < 5e-4,
           f"(max headline err {worst:.1e}, max zero cell {zero_bad:.1e})")


def test_borrowing_table_all_cells():
    table = {
        2: [0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0],
        4: [0, 0, 0.1485, 0.5776, 0.5779, 0.5779, 0.5779, 0.5779,
            0.5779],
        6: [0, 0, 0, 0, 0, 0.2318, 0.3697, 0.3697, 0.3697],
    }
    worst = 0.0
    for q, col in table.items():
        for mb, want in enumerate(col, start=1):
            got = compute_theta_R(q, mb).theta_R
            worst = max(worst, abs(got - want))
    report("borrowing table (27 cells)", worst < 5e-4,
           f"(max err {worst:.1e})")


# -- criterion 3: stability structure -----------------------------------

@pytest.mark.parametrize("q", (2, 4, 6))
def test_stability_parallelogram(q):
    met = compute_metrics(parallelogram_mapping(np.pi / 6), (31, 31))
    cf = CoefficientFields(np.ones(met.n_nodes), np.ones(met.n_nodes))
    g = assemble_global([BlockDiscretization(met, q, cf)], [],
                        boundary="dirichlet")
    HS = g.HS()
    asym = np.abs((HS - HS.T)).max() / np.abs(HS).max()
    res = pencil_eigs(g)
    ok = asym < 1e-11 and res.max_eig <= 1e-8 * res.rho
    report(f"stability parallelogram q={q}", ok,
           f"(asym {asym:.1e}, max eig {res.max_eig:.2e}, rho {res.rho:.1f})")


@pytest.mark.parametrize("q", (2, 4, 6))
def test_stability_disk(q):
    g = _disk_system(13 if q < 6 else 21, q)
    HS = g.HS()
    asym = np.abs((HS - HS.T)).max() / np.abs(HS).max()
    res = pencil_eigs(g)
    ok = asym < 1e-11 and res.max_eig <= 1e-8 * res.rho
    report(f"stability 5-block disk q={q}", ok,
           f"(asym {asym:.1e}, max eig {res.max_eig:.2e})")


# -- criterion 4: convergence rates --------------------------------------

@pytest.mark.slow
@pytest.mark.parametrize("q,lo,hi", [(2, 1.75, 2.25), (4, 3.75, 4.25),
                                     (6, 4.6, 5.4)])
def test_disk_convergence_rates(q, lo, hi, tmp_path):
    cfg = ExperimentConfig(experiment="disk-convergence", order=q,
                           out=str(tmp_path / f"conv{q}.csv"),
                           grids=(21, 31, 41, 61))
    run_disk_convergence(cfg)
    import csv
    with open(cfg.out) as f:
        rate = float(next(csv.DictReader(f))["fit_rate"])
    report(f"disk convergence rate q={q}", lo <= rate <= hi,
           f"(fitted rate {rate:.3f}, window [{lo}, {hi}])")


# -- criterion 5: energy conservation ------------------------------------

def test_energy_conservation_and_rk4_order():
    q, m = 4, 21
    g = _disk_system(m, q)
    h = 1.0 / (m - 1)
    drifts = []
    for fac in (0.01, 0.005):
        dt = fac * h
        n_steps = int(np.ceil(1.0 / dt))
        u = sample_exact(g, disk_exact(0.0))
        v = sample_exact(g, disk_exact_velocity(0.0))
        e0 = discrete_energy(g, u, v)
        drift = 0.0
        done = 0
        while done < n_steps:
            k = min(n_steps // 10 + 1, n_steps - done)
            u, v, _ = rk4_integrate(g, u, v, dt, k)
            done += k
            drift = max(drift, abs(discrete_energy(g, u, v) - e0) / e0)
        drifts.append(drift)
    ratio = drifts[0] / drifts[1]
    ok = drifts[0] < 1e-6 and 8 < ratio < 40
    report("energy conservation (Dirichlet disk)", ok,
           f"(drift {drifts[0]:.2e} at dt=0.01h, ratio {ratio:.1f} "
           "on halving)")


# -- criterion 6: CFL audit ----------------------------------------------

@pytest.mark.parametrize("q", (2, 4, 6))
def test_cfl_audit(q):
    rng = np.random.default_rng(17)
    ok = True
    details = []
    for name, g in (("parallelogram",
                     _parallelogram_system(np.pi / 2, q, 31)),
                    ("disk", _disk_system(13 if q < 6 else 21, q))):
        dt = compute_dt(g, CFL_TABLE[q]).dt
        rho = spectral_radius(g).rho
        u0 = rng.normal(size=g.n)
        v0 = rng.normal(size=g.n)
        e0 = discrete_energy(g, u0, v0)
        u, v, _ = rk4_integrate(g, u0, v0, dt, 1000)
        ratio = np.sqrt(discrete_energy(g, u, v) / e0)
        dt_max = 0.99 * 2 * np.sqrt(2) / np.sqrt(rho)
        z = dt_max * np.sqrt(rho)
        ok = ok and ratio <= 1 + 1e-6 and 2.5 <= z <= 2.83
        details.append(f"{name}: ratio {ratio:.6f}, dt_max*sqrt(rho) "
                       f"{z:.3f}")
    report(f"CFL audit q={q}", ok, "; ".join(details))


# -- criterion 7: skewness property --------------------------------------

@pytest.mark.parametrize("q", (2, 4, 6))
def test_skewness_monotone_with_golden(q):
    phis = np.linspace(np.pi / 6, np.pi / 2, 7)
    rhos = []
    for phi in phis:
        g = _parallelogram_system(phi, q, 31)
        rhos.append(spectral_radius(g).rho)
    rhos = np.array(rhos)
    monotone = np.all(np.diff(rhos) <= 1e-9 * rhos[0])
    finite = np.all(np.isfinite(rhos))

    with open(GOLDEN) as f:
        golden = json.load(f)[str(q)]
    match = np.abs(rhos / np.array(golden) - 1.0).max()
    ok = monotone and finite and match < 1e-9
    report(f"skewness property q={q}", ok,
           f"(monotone {monotone}, golden match {match:.2e})")
