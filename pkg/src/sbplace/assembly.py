"""Per-block discrete Laplacians, SAT boundary/interface penalties and
the coupled multiblock operator.

The semidiscrete form is J a u_tt = S u where S contains the transformed
variable-coefficient Laplacian plus penalty terms.  With every face
carrying an energy-conserving SAT, H S is symmetric and -H S is positive
semidefinite, which is the discrete stability statement.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .sbp1d import build_sbp_1d


class FaceRoleError(ValueError):
    pass


class StabilityBoundError(ValueError):
    pass


@dataclass(frozen=True)
class CoefficientFields:
    """Positive nodal fields: a multiplies u_tt, b sits inside div(b grad)."""
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        if np.any(self.a <= 0) or np.any(self.b <= 0):
            raise ValueError("coefficient fields must be positive")

    @property
    def c(self):
        """Wave speed sqrt(b/a)."""
        return np.sqrt(self.b / self.a)


@dataclass(frozen=True)
class SatSpec:
    """Penalty description for one face.

    kind: "dirichlet" | "neumann" | "interface".  tau_H and tau_R default
    to the stability limits; passing smaller values raises unless
    unsafe=True (used only to probe the sharpness of the bounds).
    """
    kind: str
    tau_H: float | None = None
    tau_R: float | None = None
    unsafe: bool = False


def _kron_chain(mats):
    out = mats[0]
    for m in mats[1:]:
        out = sp.kron(out, m, format="csr")
    return out


class BlockDiscretization:
    """Operators and SAT machinery for one mapped block.

    Holds the per-direction 1-D operator sets, the flattened quadrature,
    the volume operator and face data; SAT attachment mutates the
    accumulated operator matrix (builder style), after which `system`
    yields the immutable pieces.
    """

    def __init__(self, metrics, q, coeffs):
        self.metrics = metrics
        self.q = q
        self.coeffs = coeffs
        shape = metrics.shape
        self.shape = shape
        self.d = len(shape)
        self.N = int(np.prod(shape))
        self.ops = [build_sbp_1d(q, s, 1.0 / (s - 1)) for s in shape]

        # flattened tensor quadrature (reference volume)
        H = self.ops[0].H
        for o in self.ops[1:]:
            H = np.multiply.outer(H, o.H)
        self.H = H.reshape(-1)
        self.mass = self.H * metrics.J * coeffs.a

        eye = [sp.identity(s, format="csr") for s in shape]
        self.D = []
        self.dD = []
        for i in range(self.d):
            mats = list(eye)
            mats[i] = sp.csr_matrix(self.ops[i].D1)
            self.D.append(_kron_chain(mats))
            mats[i] = sp.csr_matrix(self.ops[i].deltaD)
            self.dD.append(_kron_chain(mats))

        self.volume = self._build_dij()
        self._S = self.volume.tolil()
        self._face_roles = {}

    # -- volume -----------------------------------------------------------

    def _narrow_d2(self, direction, c):
        """D_ii(c) applied line by line along one grid direction."""
        shape = self.shape
        n = shape[direction]
        ops = self.ops[direction]
        cf = c.reshape(shape)
        rows, cols, vals = [], [], []
        idx = np.arange(self.N).reshape(shape)
        # iterate over all lines in this direction
        it = np.ndindex(*(shape[:direction] + shape[direction + 1:]))
        for rest in it:
            key = rest[:direction] + (slice(None),) + rest[direction:]
            line_idx = idx[key]
            D2 = ops.build_D2(cf[key])
            r, cix = np.nonzero(D2)
            rows.append(line_idx[r])
            cols.append(line_idx[cix])
            vals.append(D2[r, cix])
        rows = np.concatenate(rows)
        cols = np.concatenate(cols)
        vals = np.concatenate(vals)
        return sp.csr_matrix((vals, (rows, cols)), shape=(self.N, self.N))

    def _build_dij(self):
        """Volume operator sum_jk D_jk(alpha_jk b) (narrow on diagonal)."""
        m = self.metrics
        b = self.coeffs.b
        V = sp.csr_matrix((self.N, self.N))
        for j in range(self.d):
            for k in range(self.d):
                cjk = m.alpha(j, k) * b
                if j == k:
                    V = V + self._narrow_d2(j, cjk)
                else:
                    V = V + self.D[j] @ sp.diags(cjk) @ self.D[k]
        return V.tocsr()

    # -- faces ------------------------------------------------------------

    def face_quadrature(self, face):
        """Tangential quadrature weights on a face, flattened C-order."""
        direction, _ = face
        Hs = [self.ops[i].H for i in range(self.d) if i != direction]
        if not Hs:
            return np.ones(1)
        Hf = Hs[0]
        for h in Hs[1:]:
            Hf = np.multiply.outer(Hf, h)
        return Hf.reshape(-1)

    def restriction(self, face):
        """Sparse restriction E_f (n_face x N) picking face values."""
        fidx = self.metrics.faces[face]["index"]
        nf = fidx.size
        return sp.csr_matrix((np.ones(nf), (np.arange(nf), fidx)),
                             shape=(nf, self.N))

    def normal_spacing(self, face):
        return 1.0 / (self.shape[face[0]] - 1)

    def eta(self, k):
        """eta_k = alpha_kk * b per node."""
        return self.metrics.alpha(k, k) * self.coeffs.b

    def eta_min(self, face):
        """Per face node, min of eta_dir over the m_b nearest grid points
        along the face-normal direction."""
        direction, side = face
        mb = self.ops[direction].m_b
        eta = self.eta(direction).reshape(self.shape)
        sl = [slice(None)] * self.d
        sl[direction] = slice(0, mb) if side == 0 else \
            slice(self.shape[direction] - mb, self.shape[direction])
        window = eta[tuple(sl)]
        return np.minimum.reduce(window, axis=direction).reshape(-1)

    def normal_derivative(self, face):
        """Face-row matrix of the discrete normal derivative."""
        direction, side = face
        f = self.metrics.faces[face]
        gamma = f["gamma"]
        sgn = -1.0 if side == 0 else 1.0
        E = self.restriction(face)
        Dn = sp.csr_matrix((gamma.size, self.N))
        for k in range(self.d):
            coef = self.metrics.alpha(direction, k)[f["index"]] / gamma
            Dn = Dn + sp.diags(sgn * coef) @ (E @ self.D[k])
        coef = self.metrics.alpha(direction, direction)[f["index"]] / gamma
        Dn = Dn - sp.diags(sgn * coef) @ (E @ self.dD[direction])
        return Dn.tocsr()

    # -- SATs --------------------------------------------------------------

    def _default_taus(self, face, interface=False):
        ops = self.ops[face[0]]
        h = self.normal_spacing(face)
        div = 4.0 if interface else 1.0
        tau_H = self.d / (div * h * ops.theta_H)
        tau_R = 1.0 / (div * h * ops.theta_R)
        return tau_H, tau_R

    def penalty_field(self, face, tau_H, tau_R):
        """A = (tau_H eta + tau_R eta^2 / eta_min) / gamma on face nodes.

        The reference normal has a single nonzero component, so the sum
        over k in the penalty collapses to the face-normal term.
        """
        direction, _ = face
        f = self.metrics.faces[face]
        eta_f = self.eta(direction)[f["index"]]
        eta_m = self.eta_min(face)
        return (tau_H * eta_f + tau_R * eta_f**2 / eta_m) / f["gamma"]

    def attach_neumann(self, face):
        """Energy-conserving SAT enforcing zero normal flux."""
        self._claim(face, "neumann")
        f = self.metrics.faces[face]
        E = self.restriction(face)
        Hf = self.face_quadrature(face)
        bf = self.coeffs.b[f["index"]]
        Dn = self.normal_derivative(face)
        w = f["gamma"] * Hf * bf
        self._S = self._S - sp.diags(1.0 / self.H) @ (E.T @ sp.diags(w) @ Dn)

    def attach_dirichlet(self, face, spec=None):
        """Displacement SAT with penalties at the Theorem-1 limits."""
        self._claim(face, "dirichlet")
        spec = spec or SatSpec("dirichlet")
        tau_H0, tau_R0 = self._default_taus(face)
        tau_H = spec.tau_H if spec.tau_H is not None else tau_H0
        tau_R = spec.tau_R if spec.tau_R is not None else tau_R0
        if (tau_H < tau_H0 * (1 - 1e-12) or tau_R < tau_R0 * (1 - 1e-12)) \
                and not spec.unsafe:
            raise StabilityBoundError(
                f"tau below the stability limit ({tau_H:.4g} < {tau_H0:.4g} "
                f"or {tau_R:.4g} < {tau_R0:.4g}); pass unsafe=True to probe")
        f = self.metrics.faces[face]
        E = self.restriction(face)
        Hf = self.face_quadrature(face)
        bf = self.coeffs.b[f["index"]]
        Dn = self.normal_derivative(face)
        Hinv = sp.diags(1.0 / self.H)
        w = f["gamma"] * Hf
        self._S = self._S \
            + Hinv @ (Dn.T @ sp.diags(bf * w) @ E) \
            - Hinv @ (E.T @ sp.diags(self.penalty_field(face, tau_H, tau_R)
                                     * w) @ E)

    def _claim(self, face, role):
        if face in self._face_roles:
            raise FaceRoleError(f"face {face} already has role "
                                f"{self._face_roles[face]}")
        self._face_roles[face] = role

    @property
    def S(self):
        return self._S.tocsr()


def _match_faces(met_u, face_u, met_v, face_v, tol=1e-10):
    """Permutation p with x_u[i] == x_v[p[i]] on the shared face."""
    xu = met_u.x[met_u.faces[face_u]["index"]]
    xv = met_v.x[met_v.faces[face_v]["index"]]
    if xu.shape != xv.shape:
        raise FaceRoleError("interface faces have different node counts")
    # try identity and reversal first (the conforming cases)
    for perm in (np.arange(len(xu)), np.arange(len(xu))[::-1]):
        if np.abs(xu - xv[perm]).max() < tol:
            return perm
    raise FaceRoleError("interface faces are not node-matched")


@dataclass
class GlobalSystem:
    """Coupled multiblock operator with block-major state layout."""
    blocks: list
    offsets: np.ndarray
    S: sp.csr_matrix
    H: np.ndarray
    mass: np.ndarray
    interfaces: list = field(default_factory=list)

    @property
    def n(self):
        return self.S.shape[0]

    def block_slice(self, i):
        return slice(self.offsets[i], self.offsets[i + 1])

    def HS(self):
        return sp.diags(self.H) @ self.S

    def apply(self, u):
        """Matrix-free-style application through the assembled pieces."""
        return self.S @ u

    def accel(self, u):
        """(J a)^{-1} S u, the second-time-derivative operator."""
        return (self.S @ u) / self.mass_density

    @property
    def mass_density(self):
        return self.mass / self.H

    def export_matrix_market(self, path_S, path_H=None):
        """Triplet text export of S (and optionally diagonal H)."""
        from scipy.io import mmwrite
        mmwrite(path_S, self.S.tocoo())
        if path_H is not None:
            mmwrite(path_H, sp.diags(self.H).tocoo())


def attach_interface(bu, face_u, bv, face_v, spec=None):
    """Theorem-2 coupling blocks for one conforming interface.

    Returns (Suu, Suv, Svu, Svv) sparse updates sized like the two
    blocks; the caller adds them into the global matrix.
    """
    spec = spec or SatSpec("interface")
    bu._claim(face_u, "interface")
    bv._claim(face_v, "interface")
    perm = _match_faces(bu.metrics, face_u, bv.metrics, face_v)
    fu = bu.metrics.faces[face_u]
    fv = bv.metrics.faces[face_v]
    nf = fu["gamma"].size
    P = sp.csr_matrix((np.ones(nf), (np.arange(nf), perm)),
                      shape=(nf, nf))

    gu = fu["gamma"]
    gv = fv["gamma"][perm]
    if np.abs(gu - gv).max() > 1e-8 * max(gu.max(), 1.0):
        raise FaceRoleError("face surface scalings do not match across "
                            "the interface")
    Hfu = bu.face_quadrature(face_u)
    Hfv = bv.face_quadrature(face_v)
    if np.abs(Hfu - Hfv[perm]).max() > 1e-12 * Hfu.max():
        raise FaceRoleError("face quadratures do not match across the "
                            "interface")

    tau_Hu, tau_Ru = bu._default_taus(face_u, interface=True)
    tau_Hv, tau_Rv = bv._default_taus(face_v, interface=True)
    tau_H = spec.tau_H
    tau_R = spec.tau_R
    # penalty field A sums both sides' contributions at matched nodes
    Au = bu.penalty_field(face_u, tau_H if tau_H is not None else tau_Hu,
                          tau_R if tau_R is not None else tau_Ru)
    Av = bv.penalty_field(face_v, tau_H if tau_H is not None else tau_Hv,
                          tau_R if tau_R is not None else tau_Rv)[perm]
    if spec.tau_H is not None and not spec.unsafe:
        if spec.tau_H < tau_Hu * (1 - 1e-12) or \
                spec.tau_H < tau_Hv * (1 - 1e-12):
            raise StabilityBoundError("interface tau_H below the limit")
    A = Au + Av

    Eu = bu.restriction(face_u)
    Ev = P @ bv.restriction(face_v)      # v-face values in u ordering
    Dnu = bu.normal_derivative(face_u)
    Dnv = P @ bv.normal_derivative(face_v)
    buf = bu.coeffs.b[fu["index"]]
    bvf = bv.coeffs.b[fv["index"]][perm]
    w = gu * Hfu                          # gamma H_f at matched nodes

    Hu_inv = sp.diags(1.0 / bu.H)
    Hv_inv = sp.diags(1.0 / bv.H)
    BDnu = sp.diags(buf) @ Dnu
    BDnv = sp.diags(bvf) @ Dnv
    Aw = sp.diags(A * w)
    W = sp.diags(w)

    Suu = Hu_inv @ (-Eu.T @ Aw @ Eu + 0.5 * BDnu.T @ W @ Eu
                    - 0.5 * Eu.T @ W @ BDnu)
    Suv = Hu_inv @ (Eu.T @ Aw @ Ev - 0.5 * BDnu.T @ W @ Ev
                    - 0.5 * Eu.T @ W @ BDnv)
    Svv = Hv_inv @ (-Ev.T @ Aw @ Ev + 0.5 * BDnv.T @ W @ Ev
                    - 0.5 * Ev.T @ W @ BDnv)
    Svu = Hv_inv @ (Ev.T @ Aw @ Eu - 0.5 * BDnv.T @ W @ Eu
                    - 0.5 * Ev.T @ W @ BDnu)
    return Suu.tocsr(), Suv.tocsr(), Svu.tocsr(), Svv.tocsr()


def assemble_global(block_discs, interfaces, boundary="dirichlet",
                    boundary_overrides=None):
    """Couple per-block discretizations into one GlobalSystem.

    Args:
        block_discs: list of BlockDiscretization.
        interfaces: tuples (i, face_i, j, face_j, reversed_hint); the
            node correspondence is re-derived from coordinates.
        boundary: default SAT kind for faces not on any interface.
        boundary_overrides: optional {(block, face): SatSpec or kind}.
    """
    nb = len(block_discs)
    sizes = [b.N for b in block_discs]
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    ntot = int(offsets[-1])

    pieces = []
    for entry in interfaces:
        i, face_i, j, face_j = entry[0], entry[1], entry[2], entry[3]
        Suu, Suv, Svu, Svv = attach_interface(block_discs[i], face_i,
                                              block_discs[j], face_j)
        pieces.append((i, i, Suu))
        pieces.append((i, j, Suv))
        pieces.append((j, i, Svu))
        pieces.append((j, j, Svv))

    boundary_overrides = boundary_overrides or {}
    for bi, bd in enumerate(block_discs):
        for direction in range(bd.d):
            for side in (0, 1):
                face = (direction, side)
                if face in bd._face_roles:
                    continue
                choice = boundary_overrides.get((bi, face), boundary)
                if isinstance(choice, SatSpec):
                    kind = choice.kind
                    spec = choice
                else:
                    kind = choice
                    spec = None
                if kind == "dirichlet":
                    bd.attach_dirichlet(face, spec)
                elif kind == "neumann":
                    bd.attach_neumann(face)
                else:
                    raise FaceRoleError(f"unknown boundary kind {kind!r}")

    rows, cols, vals = [], [], []
    for bi, bd in enumerate(block_discs):
        C = bd.S.tocoo()
        rows.append(C.row + offsets[bi])
        cols.append(C.col + offsets[bi])
        vals.append(C.data)
    for (i, j, M) in pieces:
        C = M.tocoo()
        rows.append(C.row + offsets[i])
        cols.append(C.col + offsets[j])
        vals.append(C.data)
    S = sp.coo_matrix((np.concatenate(vals),
                       (np.concatenate(rows), np.concatenate(cols))),
                      shape=(ntot, ntot)).tocsr()
    H = np.concatenate([bd.H for bd in block_discs])
    mass = np.concatenate([bd.mass for bd in block_discs])
    return GlobalSystem(blocks=block_discs, offsets=offsets,
                        S=S, H=H, mass=mass,
                        interfaces=list(interfaces))
