"""Block and global assembly: symmetry, semidefiniteness, SAT behavior."""

import numpy as np
import pytest

from sbplace.geometry import (parallelogram_mapping, box_mapping,
                              disk_multiblock, compute_metrics)
from sbplace.assembly import (BlockDiscretization, CoefficientFields,
                              SatSpec, assemble_global, attach_interface,
                              StabilityBoundError, FaceRoleError)


def unit_coeffs(met):
    return CoefficientFields(a=np.ones(met.n_nodes),
                             b=np.ones(met.n_nodes))


def make_block(mapping, n, q, coeffs=None):
    met = compute_metrics(mapping, (n, n))
    cf = coeffs(met) if callable(coeffs) else \
        (coeffs or unit_coeffs(met))
    return BlockDiscretization(met, q, cf)


def pencil_eigs(g):
    HS = g.HS().toarray()
    HS = (HS + HS.T) / 2
    sq = 1.0 / np.sqrt(g.mass)
    return np.linalg.eigvalsh(sq[:, None] * HS * sq[None, :])


def test_coefficients_must_be_positive():
    with pytest.raises(ValueError):
        CoefficientFields(a=np.array([1.0, -1.0]), b=np.ones(2))


def test_volume_annihilates_constants():
    bd = make_block(parallelogram_mapping(np.pi / 4), 14, 4)
    assert np.abs(bd.volume @ np.ones(bd.N)).max() < 1e-11


def test_cartesian_volume_is_tensor_laplacian():
    bd = make_block(box_mapping([0, 0], [1, 1]), 12, 2)
    u = np.random.default_rng(0).normal(size=bd.N)
    # alpha = identity, J = 1: volume = D_11(1) + D_22(1)
    from sbplace.sbp1d import build_sbp_1d
    import scipy.sparse as sp
    ops = build_sbp_1d(2, 12, 1.0 / 11)
    D2 = sp.csr_matrix(ops.build_D2(np.ones(12)))
    eye = sp.identity(12, format="csr")
    ref = sp.kron(D2, eye) + sp.kron(eye, D2)
    assert np.abs(bd.volume @ u - ref @ u).max() < 1e-9


def test_volume_laplacian_accuracy_parallelogram():
    bd = make_block(parallelogram_mapping(np.pi / 4), 30, 4)
    x = bd.metrics.x
    u = x[:, 0]**2 + x[:, 1]**2
    res = (bd.volume @ u) / bd.metrics.J - 4.0
    interior = np.arange(bd.N).reshape(bd.shape)[8:-8, 8:-8].ravel()
    assert np.abs(res[interior]).max() < 1e-10


@pytest.mark.parametrize("q", (2, 4, 6))
def test_dirichlet_block_stability(q):
    n = {2: 16, 4: 16, 6: 20}[q]
    bd = make_block(parallelogram_mapping(np.pi / 6), n, q)
    g = assemble_global([bd], [], boundary="dirichlet")
    HS = g.HS().toarray()
    assert np.abs(HS - HS.T).max() < 1e-11 * np.abs(HS).max()
    w = pencil_eigs(g)
    assert w[-1] <= 1e-8 * abs(w[0])


def test_default_tau_values():
    # d=2, h=1/30, theta_H=1/2 -> tau_H = 120
    bd = make_block(parallelogram_mapping(np.pi / 2), 31, 2)
    tau_H, tau_R = bd._default_taus((0, 0))
    assert tau_H == pytest.approx(120.0)
    # q=2, h=1, theta_R=1 -> tau_R = 1 (on a unit-spacing grid)
    from sbplace.sbp1d import build_sbp_1d
    ops = build_sbp_1d(2, 31, 1.0)
    assert 1.0 / (1.0 * ops.theta_R) == pytest.approx(1.0)


def test_tau_below_bound_refused_unless_unsafe():
    bd = make_block(parallelogram_mapping(np.pi / 3), 14, 2)
    with pytest.raises(StabilityBoundError):
        bd.attach_dirichlet((0, 0), SatSpec("dirichlet", tau_H=1.0))
    bd2 = make_block(parallelogram_mapping(np.pi / 3), 14, 2)
    bd2.attach_dirichlet((0, 0), SatSpec("dirichlet", tau_H=1.0,
                                         unsafe=True))


def test_sharpness_half_tau_goes_unstable():
    """At half the Theorem-1 tau_H the pencil picks up a positive
    eigenvalue on the skewed parallelogram."""
    n, q = 16, 2
    met = compute_metrics(parallelogram_mapping(np.pi / 6), (n, n))
    cf = unit_coeffs(met)
    bd = BlockDiscretization(met, q, cf)
    for direction in range(2):
        for side in (0, 1):
            t0, tr0 = bd._default_taus((direction, side))
            bd.attach_dirichlet((direction, side),
                                SatSpec("dirichlet", tau_H=0.5 * t0,
                                        tau_R=tr0, unsafe=True))
    g = assemble_global([bd], [], boundary="dirichlet")
    w = pencil_eigs(g)
    assert w[-1] > 1e-6 * abs(w[0])


def test_dirichlet_sat_zero_on_zero_face_data():
    bd = make_block(box_mapping([0, 0], [1, 1]), 12, 4)
    u = np.zeros(bd.N)
    inner = np.arange(bd.N).reshape(bd.shape)[1:-1, 1:-1].ravel()
    u[inner] = np.random.default_rng(1).normal(size=inner.size)
    before = bd.volume @ u
    bd.attach_dirichlet((0, 0))
    # SAT acts through face values of u and the flux transpose; for u
    # vanishing on the face the penalty part contributes nothing
    after = bd.S @ u
    fidx = bd.metrics.faces[(0, 0)]["index"]
    mask = np.ones(bd.N, bool)
    mask[fidx] = False
    assert np.abs((after - before)[mask]).max() < 1e-12


def test_neumann_constants_are_steady():
    bd = make_block(parallelogram_mapping(np.pi / 3), 14, 4)
    g = assemble_global([bd], [], boundary="neumann")
    assert np.abs(g.S @ np.ones(g.n)).max() < 1e-10
    w = pencil_eigs(g)
    assert w[-1] <= 1e-8 * abs(w[0]) + 1e-12


def test_neumann_sat_zero_for_constant():
    bd = make_block(box_mapping([0, 0], [1, 1]), 12, 2)
    bd.attach_neumann((1, 1))
    u = np.full(bd.N, 3.7)
    assert np.abs(bd.S @ u).max() < 1e-11


def test_interface_constant_state_no_sat():
    mL = compute_metrics(box_mapping([0, 0], [0.5, 1]), (12, 12))
    mR = compute_metrics(box_mapping([0.5, 0], [1, 1]), (12, 12))
    bL = BlockDiscretization(mL, 4, unit_coeffs(mL))
    bR = BlockDiscretization(mR, 4, unit_coeffs(mR))
    Suu, Suv, Svu, Svv = attach_interface(bL, (0, 1), bR, (0, 0))
    ones = np.ones(bL.N)
    assert np.abs(Suu @ ones + Suv @ ones).max() < 1e-10
    assert np.abs(Svv @ ones + Svu @ ones).max() < 1e-10


def test_two_block_global_psd_and_symmetric():
    mL = compute_metrics(box_mapping([0, 0], [0.5, 1]), (14, 14))
    mR = compute_metrics(box_mapping([0.5, 0], [1, 1]), (14, 14))
    bL = BlockDiscretization(mL, 4, unit_coeffs(mL))
    bR = BlockDiscretization(mR, 4, unit_coeffs(mR))
    g = assemble_global([bL, bR], [(0, (0, 1), 1, (0, 0), False)],
                        boundary="dirichlet")
    HS = g.HS().toarray()
    assert np.abs(HS - HS.T).max() < 1e-11 * np.abs(HS).max()
    w = pencil_eigs(g)
    assert w[-1] <= 1e-8 * abs(w[0])


def test_coefficient_jump_steady_state():
    """b jumping 1 -> 4 across the interface: the kinked piecewise-linear
    steady solution is preserved to boundary-closure accuracy."""
    nx = 17
    mL = compute_metrics(box_mapping([0, 0], [0.5, 1]), (nx, nx))
    mR = compute_metrics(box_mapping([0.5, 0], [1, 1]), (nx, nx))
    bL = BlockDiscretization(mL, 4, CoefficientFields(
        a=np.ones(mL.n_nodes), b=np.ones(mL.n_nodes)))
    bR = BlockDiscretization(mR, 4, CoefficientFields(
        a=np.ones(mR.n_nodes), b=4.0 * np.ones(mR.n_nodes)))
    # u = x on the left, u = 0.5 + (x-0.5)/4 on the right:
    # flux b u_x = 1 continuous, u continuous
    Suu, Suv, Svu, Svv = attach_interface(bL, (0, 1), bR, (0, 0))
    uL = mL.x[:, 0]
    uR = 0.5 + (mR.x[:, 0] - 0.5) / 4.0
    res_u = bL.volume @ uL + Suu @ uL + Suv @ uR
    res_v = bR.volume @ uR + Svv @ uR + Svu @ uL
    h = 1.0 / (nx - 1)
    assert np.abs(res_u).max() < 5 * h**2
    assert np.abs(res_v).max() < 5 * h**2


def test_disk_global_structure():
    blocks, ifaces = disk_multiblock()
    q, m = 4, 13
    bds = []
    for bm in blocks:
        met = compute_metrics(bm, (m, m))
        bds.append(BlockDiscretization(met, q, unit_coeffs(met)))
    g = assemble_global(bds, ifaces, boundary="dirichlet")
    HS = g.HS().toarray()
    assert np.abs(HS - HS.T).max() < 1e-11 * np.abs(HS).max()
    w = pencil_eigs(g)
    assert w[-1] <= 1e-8 * abs(w[0])


def test_face_roles_exclusive():
    bd = make_block(box_mapping([0, 0], [1, 1]), 12, 2)
    bd.attach_neumann((0, 0))
    with pytest.raises(FaceRoleError):
        bd.attach_dirichlet((0, 0))


def test_two_block_spectrum_matches_single_block():
    """Split square vs whole square: lowest eigenvalues agree at the
    operator's order."""
    q = 4
    vals = {}
    for case in ("split", "single"):
        if case == "single":
            m = compute_metrics(box_mapping([0, 0], [1, 1]), (25, 25))
            bd = BlockDiscretization(m, q, unit_coeffs(m))
            g = assemble_global([bd], [], boundary="dirichlet")
        else:
            mL = compute_metrics(box_mapping([0, 0], [0.5, 1]), (13, 25))
            mR = compute_metrics(box_mapping([0.5, 0], [1, 1]), (13, 25))
            bL = BlockDiscretization(mL, q, unit_coeffs(mL))
            bR = BlockDiscretization(mR, q, unit_coeffs(mR))
            g = assemble_global([bL, bR], [(0, (0, 1), 1, (0, 0), False)],
                                boundary="dirichlet")
        w = pencil_eigs(g)
        vals[case] = np.sort(-w)[:5]    # smallest magnitudes of -HS pencil
    exact = np.array(sorted((i**2 + j**2) * np.pi**2
                            for i in range(1, 4) for j in range(1, 4)))[:5]
    for case in vals:
        assert np.abs(vals[case] - exact).max() < 0.35
    assert np.abs(vals["split"] - vals["single"]).max() < 0.2


def test_matrix_market_export(tmp_path):
    bd = make_block(box_mapping([0, 0], [1, 1]), 10, 2)
    g = assemble_global([bd], [], boundary="dirichlet")
    ps = tmp_path / "S.mtx"
    ph = tmp_path / "H.mtx"
    g.export_matrix_market(str(ps), str(ph))
    from scipy.io import mmread
    S2 = mmread(str(ps)).tocsr()
    assert np.abs((S2 - g.S)).max() < 1e-15


def test_matrix_free_apply_agrees():
    bd = make_block(parallelogram_mapping(np.pi / 3), 12, 2)
    g = assemble_global([bd], [], boundary="dirichlet")
    u = np.random.default_rng(2).normal(size=g.n)
    assert np.allclose(g.apply(u), g.S @ u, atol=0, rtol=0)
