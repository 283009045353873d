"""Block mappings from the reference cube and the metric data the
discretization needs.

A BlockMapping takes reference coordinates in [0,1]^d to physical space
and can evaluate the Jacobian matrix J_ij = dx_j / dxi_i analytically.
compute_metrics turns a mapping plus grid sizes into nodal metric fields:
the Jacobian determinant, the inverse-Jacobian entries, and face surface
scalings with unit normals.
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .sbp1d import build_sbp_1d


class NonPositiveJacobianError(ValueError):
    def __init__(self, node, value):
        super().__init__(f"det J = {value:.3e} <= 0 at node {node}")
        self.node = node
        self.value = value


@dataclass(frozen=True)
class BlockMapping:
    """Mapping from [0,1]^d to a physical block with analytic Jacobian.

    evaluate(xi) -> x and jacobian(xi) -> J with J[i, j] = dx_j/dxi_i;
    both take arrays of shape (..., d).
    """
    d: int
    evaluate: Callable
    jacobian: Callable
    name: str = "block"


def box_mapping(lo, hi):
    """Axis-aligned box [lo_1, hi_1] x ... (any dimension)."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    d = lo.size
    span = hi - lo

    def ev(xi):
        return lo + np.asarray(xi) * span

    def jac(xi):
        xi = np.asarray(xi)
        J = np.zeros(xi.shape[:-1] + (d, d))
        for i in range(d):
            J[..., i, i] = span[i]
        return J

    return BlockMapping(d=d, evaluate=ev, jacobian=jac, name="box")


def parallelogram_mapping(phi):
    """Unit-base, unit-height parallelogram with skew angle phi.

    x = xi + eta cos(phi), y = eta sin(phi); phi = pi/2 is the unit
    square, smaller phi means more skewness.
    """
    if not 0.0 < phi <= np.pi / 2:
        raise ValueError(f"phi must be in (0, pi/2], got {phi}")
    c, s = np.cos(phi), np.sin(phi)

    def ev(xi):
        xi = np.asarray(xi)
        x = xi[..., 0] + xi[..., 1] * c
        y = xi[..., 1] * s
        return np.stack([x, y], axis=-1)

    def jac(xi):
        xi = np.asarray(xi)
        J = np.zeros(xi.shape[:-1] + (2, 2))
        J[..., 0, 0] = 1.0
        J[..., 1, 0] = c
        J[..., 1, 1] = s
        return J

    return BlockMapping(d=2, evaluate=ev, jacobian=jac,
                        name=f"parallelogram(phi={phi:.6g})")


def _arc(theta0, theta1, radius):
    """Circular arc curve s in [0,1] -> point, with derivative."""
    dt = theta1 - theta0

    def ev(s):
        th = theta0 + dt * np.asarray(s)
        return radius * np.stack([np.cos(th), np.sin(th)], axis=-1)

    def dv(s):
        th = theta0 + dt * np.asarray(s)
        return radius * dt * np.stack([-np.sin(th), np.cos(th)], axis=-1)

    return ev, dv


def _tfi_mapping(south, north, west, east, name):
    """Transfinite interpolation of four parameterized edge curves.

    Each argument is a pair (curve, derivative); south/north run in xi,
    west/east run in eta.  Corners must match where edges meet.
    """
    (S, dS), (N, dN), (W, dW), (E, dE) = south, north, west, east
    P00 = S(0.0)
    P10 = S(1.0)
    P01 = N(0.0)
    P11 = N(1.0)

    def ev(xi):
        xi = np.asarray(xi, dtype=float)
        u = xi[..., 0:1]
        t = xi[..., 1:2]
        return ((1 - t) * S(xi[..., 0]) + t * N(xi[..., 0])
                + (1 - u) * W(xi[..., 1]) + u * E(xi[..., 1])
                - ((1 - u) * (1 - t) * P00 + u * (1 - t) * P10
                   + (1 - u) * t * P01 + u * t * P11))

    def jac(xi):
        xi = np.asarray(xi, dtype=float)
        u = xi[..., 0:1]
        t = xi[..., 1:2]
        dxu = ((1 - t) * dS(xi[..., 0]) + t * dN(xi[..., 0])
               - W(xi[..., 1]) + E(xi[..., 1])
               - (-(1 - t) * P00 + (1 - t) * P10 - t * P01 + t * P11))
        dxt = (-S(xi[..., 0]) + N(xi[..., 0])
               + (1 - u) * dW(xi[..., 1]) + u * dE(xi[..., 1])
               - (-(1 - u) * P00 - u * P10 + (1 - u) * P01 + u * P11))
        J = np.stack([dxu, dxt], axis=-2)   # J[i, j] = dx_j / dxi_i
        return J

    return BlockMapping(d=2, evaluate=ev, jacobian=jac, name=name)


def _line(P, Q):
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)

    def ev(s):
        s = np.asarray(s)[..., None]
        return (1 - s) * P + s * Q

    def dv(s):
        s = np.asarray(s)
        return np.broadcast_to(Q - P, s.shape + (2,)).copy()

    return ev, dv


def _blend(c1, c2, beta):
    (e1, d1), (e2, d2) = c1, c2

    def ev(s):
        return (1 - beta) * e1(s) + beta * e2(s)

    def dv(s):
        return (1 - beta) * d1(s) + beta * d2(s)

    return ev, dv


def disk_multiblock(m=None, blend=0.5):
    """Five-block decomposition of the unit disk.

    The center block is the square with corners (+-1/2, +-1/2) whose
    edges are blended halfway toward the circumscribed circular arcs, so
    grid cells stay non-degenerate at the corners.  Four outer blocks
    interpolate between those edges and the unit circle, with straight
    radial lateral cuts along the diagonals.

    Returns (blocks, interfaces); interfaces are tuples
    (block_a, face_a, block_b, face_b, reversed) with faces labeled
    (direction, side), side 0 at xi=0.  The optional m is unused by the
    geometry itself (grids are sized at metric time).
    """
    a = 0.5
    rc = a * np.sqrt(2.0)       # circumscribed radius through the corners
    SW, SE, NE, NW = (-a, -a), (a, -a), (a, a), (-a, a)
    # blended center edges; south/north run left-to-right in xi,
    # west/east run bottom-to-top in eta
    south = _blend(_line(SW, SE), _arc(-3 * np.pi / 4, -np.pi / 4, rc),
                   blend)
    east = _blend(_line(SE, NE), _arc(-np.pi / 4, np.pi / 4, rc), blend)
    north = _blend(_line(NW, NE), _arc(3 * np.pi / 4, np.pi / 4, rc),
                   blend)
    west = _blend(_line(SW, NW), _arc(-3 * np.pi / 4, -5 * np.pi / 4, rc),
                  blend)
    center = _tfi_mapping(south, north, west, east, "disk-center")

    def outer(inner_curve, theta_lo, theta_hi, name):
        """Block between the unit circle (eta = 0) and a center edge
        (eta = 1); xi runs along the curves, eta points inward so the
        mapping stays right-handed."""
        arc = _arc(theta_lo, theta_hi, 1.0)
        ci = inner_curve
        lat0 = _line(arc[0](0.0), ci[0](0.0))
        lat1 = _line(arc[0](1.0), ci[0](1.0))
        return _tfi_mapping(arc, ci, lat0, lat1, name)

    east_b = outer(east, -np.pi / 4, np.pi / 4, "disk-east")
    north_rl = _blend(_line(NE, NW),
                      _arc(np.pi / 4, 3 * np.pi / 4, rc), blend)
    north_b = outer(north_rl, np.pi / 4, 3 * np.pi / 4, "disk-north")
    west_rl = _blend(_line(NW, SW),
                     _arc(3 * np.pi / 4, 5 * np.pi / 4, rc), blend)
    west_b = outer(west_rl, 3 * np.pi / 4, 5 * np.pi / 4, "disk-west")
    south_rl = _blend(_line(SW, SE),
                      _arc(5 * np.pi / 4, 7 * np.pi / 4, rc), blend)
    south_b = outer(south_rl, 5 * np.pi / 4, 7 * np.pi / 4, "disk-south")

    blocks = [center, east_b, north_b, west_b, south_b]
    # center faces: (0,0)=west edge, (0,1)=east edge, (1,0)=south, (1,1)=north
    # outer-block faces: (1,1) = inner curve, (1,0) = unit circle,
    #                    (0,0)/(0,1) = lateral radial cuts
    # the final flag records whether the two parameterizations run in
    # opposite directions; assembly re-derives it from coordinates
    interfaces = [
        (0, (0, 1), 1, (1, 1), False),   # center east edge <-> east inner
        (0, (1, 1), 2, (1, 1), True),    # center north <-> north inner
        (0, (0, 0), 3, (1, 1), True),    # center west <-> west inner
        (0, (1, 0), 4, (1, 1), False),   # center south <-> south inner
        (1, (0, 1), 2, (0, 0), False),   # east upper cut <-> north lower
        (2, (0, 1), 3, (0, 0), False),
        (3, (0, 1), 4, (0, 0), False),
        (4, (0, 1), 1, (0, 0), False),
    ]
    return blocks, interfaces


@dataclass(frozen=True)
class MetricData:
    """Nodal metric fields of one mapped block on a tensor grid.

    Node ordering is C-order over the index tuple (i_1, ..., i_d).
    K[i][j] holds dxi_j/dx_i per node; faces maps (direction, side) to a
    dict with gamma, unit normal, and face node indices.
    """
    shape: tuple
    h: tuple
    x: np.ndarray          # physical coordinates, (N, d)
    J: np.ndarray          # det of the Jacobian, (N,)
    Jmat: np.ndarray       # Jacobian matrices, (N, d, d)
    K: np.ndarray          # inverse entries K[n, i, j] = dxi_j/dx_i, (N, d, d)
    faces: dict = field(repr=False, default_factory=dict)

    @property
    def n_nodes(self):
        return int(np.prod(self.shape))

    def alpha(self, j, k):
        """alpha_ijik summed over i: K_ij J K_ik per node."""
        return self.J * np.einsum("ni,ni->n", self.K[:, :, j],
                                  self.K[:, :, k])


def _face_index(shape, direction, side):
    """Flat node indices of one face, ordered along the tangential axes."""
    idx = np.arange(int(np.prod(shape))).reshape(shape)
    sl = [slice(None)] * len(shape)
    sl[direction] = 0 if side == 0 else shape[direction] - 1
    return idx[tuple(sl)].reshape(-1)


def compute_metrics(mapping, shape):
    """Evaluate metric data for a mapping on an n_1 x ... x n_d grid.

    The Jacobian comes from the mapping's analytic evaluator.  J must be
    positive at every node, otherwise NonPositiveJacobianError is raised
    with the offending node.
    """
    d = mapping.d
    shape = tuple(int(s) for s in shape)
    if len(shape) != d:
        raise ValueError(f"grid must have {d} sizes, got {shape}")
    axes = [np.linspace(0.0, 1.0, s) for s in shape]
    grids = np.meshgrid(*axes, indexing="ij")
    xi = np.stack([g.reshape(-1) for g in grids], axis=-1)

    x = mapping.evaluate(xi)
    Jmat = mapping.jacobian(xi)
    J = np.linalg.det(Jmat)
    if np.any(J <= 0):
        node = int(np.argmin(J))
        raise NonPositiveJacobianError(node, float(J[node]))
    Kinv = np.linalg.inv(Jmat)          # Kinv[n, j, i] = dxi_i/dx_j? see below
    # Jmat[i, j] = dx_j/dxi_i, so (Jmat^{-1})[j, i] = dxi_i/dx_j.
    # We store K[n, i, j] = dxi_j/dx_i = Kinv[n, i, j].
    K = Kinv

    faces = {}
    for direction in range(d):
        for side in (0, 1):
            fidx = _face_index(shape, direction, side)
            nu = np.zeros(d)
            nu[direction] = -1.0 if side == 0 else 1.0
            # n_i = (J/gamma) K_ij nu_j ; gamma normalizes n to unit length
            Kf = K[fidx]
            Jf = J[fidx]
            raw = np.einsum("nij,j->ni", Kf, nu) * Jf[:, None]
            gamma = np.linalg.norm(raw, axis=1)
            normal = raw / gamma[:, None]
            faces[(direction, side)] = {
                "index": fidx,
                "nu": nu,
                "gamma": gamma,
                "normal": normal,
            }
    return MetricData(shape=shape, h=tuple(1.0 / (s - 1) for s in shape),
                      x=x, J=J, Jmat=Jmat, K=K, faces=faces)


def metric_identity_residual(metrics, q=4, interior_only=True):
    """Max nodal residual of sum_j D_j (J K_ij) = 0 per component i.

    Exact (to round-off) for affine maps.  For curved maps the interior
    nodes converge at the operator's interior order; rows touched by
    the boundary closure converge at the boundary order, so the global
    max is dominated by them (pass interior_only=False to include them).
    """
    shape = metrics.shape
    d = len(shape)
    ops = [build_sbp_1d(q, s, 1.0 / (s - 1)) for s in shape]
    bw = 2 * q
    worst = 0.0
    for i in range(d):
        acc = np.zeros(metrics.n_nodes)
        for j in range(d):
            f = (metrics.J * metrics.K[:, i, j]).reshape(shape)
            acc += np.apply_along_axis(lambda g: ops[j].D1 @ g, j,
                                       f).reshape(-1)
        A = np.abs(acc).reshape(shape)
        if interior_only and all(s > 2 * bw for s in shape):
            core = A[tuple(slice(bw, -bw) for _ in shape)]
            worst = max(worst, float(core.max()))
        else:
            worst = max(worst, float(A.max()))
    return worst


def dump_grid(metrics, path):
    """Columnar text dump: node index, coordinates, J, K entries."""
    d = metrics.x.shape[1]
    with open(path, "w") as f:
        cols = ["node"] + [f"x{i}" for i in range(d)] + ["J"] + \
            [f"K{i}{j}" for i in range(d) for j in range(d)]
        f.write(" ".join(cols) + "\n")
        for nidx in range(metrics.n_nodes):
            row = [str(nidx)] + [f"{v:.17g}" for v in metrics.x[nidx]] \
                + [f"{metrics.J[nidx]:.17g}"] \
                + [f"{metrics.K[nidx, i, j]:.17g}"
                   for i in range(d) for j in range(d)]
            f.write(" ".join(row) + "\n")
