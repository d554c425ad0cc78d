"""Invariant metrics as evaluable quadratic forms, plus the real chart.

Four line elements are implemented as quadratic forms on tangents:

  * q_siegel   -- sigma(Y^-1 dOmega Y^-1 conj(dOmega)) on the Siegel space.
  * q_upper    -- the two-parameter family on the Siegel-Jacobi space,
                  5 trace terms coupling dOmega and dZ through Y and V.
  * q_disk_n   -- 4 sigma((I-W conj W)^-1 dW (I-conj(W) W)^-1 conj(dW)).
  * q_disk     -- the two-parameter family on the Siegel-Jacobi disk,
                  10 trace terms; transcribed exactly as printed,
                  including the two terms carrying (I - conj W)^-1.

The chart fixes a canonical ordering of real coordinates (ordering tag
"canonical-v1"): independent Re entries of the symmetric matrix block
(row-major over the upper triangle), then the matching Im entries, then
Re of the rectangular block row-major, then its Im entries.  Tangent
basis vectors for off-diagonal symmetric entries set both mirrored
matrix entries to 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cmatrix import mat_inverse, mat_to_json, max_abs, sym_defect
from .geometry import DiskPoint, UpperPoint

__all__ = [
    "Tangent",
    "MetricParams",
    "MetricTensor",
    "Chart",
    "q_siegel",
    "q_upper",
    "q_disk_n",
    "q_disk",
    "q_disk_closed_11",
    "metric_tensor",
    "evaluate_form",
    "random_tangent",
    "tangent_to_json",
    "tangent_from_json",
]

ORDERING_TAG = "canonical-v1"

# Transcription bugs in the self-conjugate trace sums show up as O(1)
# imaginary parts; genuine round-off stays many orders below this.
_IMAG_GUARD = 1e-6


@dataclass(frozen=True)
class Tangent:
    """Tangent vector: symmetric dmat (dOmega or dW) and dvec (dZ or deta)."""

    model: str
    dmat: np.ndarray
    dvec: np.ndarray

    def __post_init__(self):
        if self.model not in ("upper", "disk"):
            raise ValueError(f"unknown model {self.model!r}")
        dmat = np.array(self.dmat, dtype=np.complex128)
        dvec = np.array(self.dvec, dtype=np.complex128)
        if dmat.ndim != 2 or dmat.shape[0] != dmat.shape[1]:
            raise ValueError("dmat must be square")
        if sym_defect(dmat) > 1e-12 * (1.0 + max_abs(dmat)):
            raise ValueError("dmat must be symmetric")
        if dvec.ndim != 2 or dvec.shape[1] != dmat.shape[0]:
            raise ValueError("dvec must be m x n with n matching dmat")
        dmat.flags.writeable = False
        dvec.flags.writeable = False
        object.__setattr__(self, "dmat", dmat)
        object.__setattr__(self, "dvec", dvec)

    @property
    def n(self) -> int:
        return self.dmat.shape[0]

    @property
    def m(self) -> int:
        return self.dvec.shape[0]


@dataclass(frozen=True)
class MetricParams:
    """The two positive weights of the metric family."""

    a: float = 1.0
    b: float = 1.0

    def __post_init__(self):
        if not (self.a > 0.0 and self.b > 0.0):
            raise ValueError("both metric parameters must be positive")


@dataclass(frozen=True)
class MetricTensor:
    """Real symmetric coordinate matrix of a quadratic form in the chart."""

    dim: int
    g: np.ndarray
    ordering: str = ORDERING_TAG

    def __post_init__(self):
        g = np.array(self.g, dtype=np.float64)
        if g.shape != (self.dim, self.dim):
            raise ValueError("tensor shape does not match dim")
        g.flags.writeable = False
        object.__setattr__(self, "g", g)

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.g).min())

    def apply(self, vec: np.ndarray) -> float:
        vec = np.asarray(vec, dtype=np.float64)
        return float(vec @ self.g @ vec)

    def to_json(self) -> dict:
        return {"dim": self.dim, "ordering": self.ordering,
                "g": [[float(x) for x in row] for row in self.g]}


class Chart:
    """Canonical real chart of either model (optionally the matrix part only)."""

    def __init__(self, model: str, n: int, m: int, include_vec: bool = True):
        if model not in ("upper", "disk"):
            raise ValueError(f"unknown model {model!r}")
        self.model = model
        self.n = n
        self.m = m
        self.include_vec = include_vec
        self.mat_pairs = [(i, j) for i in range(n) for j in range(i, n)]
        self.n_mat_slots = len(self.mat_pairs)
        self.n_vec_slots = m * n if include_vec else 0
        self.n_slots = self.n_mat_slots + self.n_vec_slots
        self.dim = 2 * self.n_slots

        # Real coordinate index of the Re / Im part of each complex slot.
        self.x_indices = np.concatenate([
            np.arange(self.n_mat_slots),
            2 * self.n_mat_slots + np.arange(self.n_vec_slots),
        ]).astype(int)
        self.y_indices = np.concatenate([
            self.n_mat_slots + np.arange(self.n_mat_slots),
            2 * self.n_mat_slots + self.n_vec_slots + np.arange(self.n_vec_slots),
        ]).astype(int)

        # Slot index and weight per matrix entry of the symmetric block.
        self.mat_entry_slots = np.zeros((n, n), dtype=int)
        self.mat_weights = np.zeros((n, n))
        for s, (i, j) in enumerate(self.mat_pairs):
            self.mat_entry_slots[i, j] = self.mat_entry_slots[j, i] = s
            self.mat_weights[i, j] = self.mat_weights[j, i] = 0.5 if i != j else 1.0

        # Slot index per entry of the n x m derivative arrangement: the
        # (l, k) entry differentiates with respect to the (k, l) entry of
        # the rectangular block.
        if include_vec:
            self.vec_entry_slots = np.zeros((n, m), dtype=int)
            for k in range(m):
                for l in range(n):
                    self.vec_entry_slots[l, k] = self.n_mat_slots + k * n + l

    # -- points --------------------------------------------------------

    def _parts(self, p):
        if self.model == "upper":
            if not isinstance(p, UpperPoint):
                raise TypeError("expected an UpperPoint")
            return p.omega, p.z
        if not isinstance(p, DiskPoint):
            raise TypeError("expected a DiskPoint")
        return p.w, p.eta

    def point_to_vec(self, p) -> np.ndarray:
        mat, vec = self._parts(p)
        rows = [pair[0] for pair in self.mat_pairs]
        cols = [pair[1] for pair in self.mat_pairs]
        parts = [mat.real[rows, cols], mat.imag[rows, cols]]
        if self.include_vec:
            parts += [vec.real.ravel(), vec.imag.ravel()]
        return np.concatenate(parts)

    def vec_to_point(self, v: np.ndarray):
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.dim,):
            raise ValueError(f"expected a vector of length {self.dim}")
        mat = self._unpack_sym(v[: self.n_mat_slots], v[self.n_mat_slots: 2 * self.n_mat_slots])
        if self.include_vec:
            off = 2 * self.n_mat_slots
            re = v[off: off + self.n_vec_slots].reshape(self.m, self.n)
            im = v[off + self.n_vec_slots:].reshape(self.m, self.n)
            vec = re + 1j * im
        else:
            vec = np.zeros((self.m, self.n), dtype=complex)
        if self.model == "upper":
            return UpperPoint(mat, vec)
        return DiskPoint(mat, vec)

    def _unpack_sym(self, re: np.ndarray, im: np.ndarray) -> np.ndarray:
        mat = np.zeros((self.n, self.n), dtype=complex)
        for s, (i, j) in enumerate(self.mat_pairs):
            mat[i, j] = mat[j, i] = re[s] + 1j * im[s]
        return mat

    # -- tangents ------------------------------------------------------

    def tangent_to_vec(self, t: Tangent) -> np.ndarray:
        if t.model != self.model:
            raise ValueError("tangent model does not match the chart")
        rows = [pair[0] for pair in self.mat_pairs]
        cols = [pair[1] for pair in self.mat_pairs]
        parts = [t.dmat.real[rows, cols], t.dmat.imag[rows, cols]]
        if self.include_vec:
            parts += [t.dvec.real.ravel(), t.dvec.imag.ravel()]
        return np.concatenate(parts)

    def vec_to_tangent(self, v: np.ndarray) -> Tangent:
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.dim,):
            raise ValueError(f"expected a vector of length {self.dim}")
        dmat = self._unpack_sym(v[: self.n_mat_slots], v[self.n_mat_slots: 2 * self.n_mat_slots])
        if self.include_vec:
            off = 2 * self.n_mat_slots
            re = v[off: off + self.n_vec_slots].reshape(self.m, self.n)
            im = v[off + self.n_vec_slots:].reshape(self.m, self.n)
            dvec = re + 1j * im
        else:
            dvec = np.zeros((self.m, self.n), dtype=complex)
        return Tangent(self.model, dmat, dvec)

    def basis_stacks(self):
        """Stacked dmat / dvec arrays of all chart basis tangents."""
        dmats = np.zeros((self.dim, self.n, self.n), dtype=complex)
        dvecs = np.zeros((self.dim, self.m, self.n), dtype=complex)
        for idx in range(self.dim):
            e = np.zeros(self.dim)
            e[idx] = 1.0
            t = self.vec_to_tangent(e)
            dmats[idx] = t.dmat
            dvecs[idx] = t.dvec
        return dmats, dvecs

    def point_scale(self, p) -> float:
        return float(np.max(np.abs(self.point_to_vec(p))))


# ---------------------------------------------------------------------------
# Quadratic forms (batched cores; leading dims of dmat / dvec broadcast)


def _realize(q: np.ndarray, what: str) -> np.ndarray:
    defect = np.abs(q.imag) - _IMAG_GUARD * (1.0 + np.abs(q.real))
    if np.any(defect > 0):
        raise ArithmeticError(f"{what} lost realness (defect {float(defect.max()):.3e})")
    return q.real


def _q_siegel_raw(y: np.ndarray, dmat: np.ndarray) -> np.ndarray:
    yi = mat_inverse(y.astype(complex))
    return np.einsum("ab,...bc,cd,...da->...", yi, dmat, yi, dmat.conj())


def q_siegel(omega: np.ndarray, t: Tangent) -> float:
    """sigma(Y^-1 dOmega Y^-1 conj(dOmega)) at Omega = X + iY."""
    omega = np.asarray(omega, dtype=np.complex128)
    q = _q_siegel_raw(omega.imag, np.asarray(t.dmat))
    return float(_realize(np.asarray(q), "siegel form"))


def _q_upper_raw(y, v, dmat, dvec, a, b):
    yi = mat_inverse(y.astype(complex))
    dmc = dmat.conj()
    dvc = dvec.conj()
    term_a = np.einsum("ab,...bc,cd,...da->...", yi, dmat, yi, dmc)
    c_vv = yi @ v.T @ v @ yi
    t1 = np.einsum("ab,...bc,cd,...da->...", c_vv, dmat, yi, dmc)
    t2 = np.einsum("ab,...cb,...ca->...", yi, dvec, dvc)
    t3 = np.einsum("ka,ab,...bc,cd,...kd->...", v, yi, dmat, yi, dvc)
    t4 = np.einsum("ka,ab,...bc,cd,...kd->...", v, yi, dmc, yi, dvec)
    return a * term_a + b * (t1 + t2 - t3 - t4)


def q_upper(p: UpperPoint, t: Tangent, params: MetricParams) -> float:
    """Two-parameter invariant form on the Siegel-Jacobi space."""
    q = _q_upper_raw(p.y, p.v, np.asarray(t.dmat), np.asarray(t.dvec),
                     params.a, params.b)
    return float(_realize(np.asarray(q), "upper form"))


def _q_disk_n_raw(w: np.ndarray, dmat: np.ndarray) -> np.ndarray:
    n = w.shape[0]
    li = mat_inverse(np.eye(n) - w @ w.conj())
    ri = mat_inverse(np.eye(n) - w.conj() @ w)
    return 4.0 * np.einsum("ab,...bc,cd,...da->...", li, dmat, ri, dmat.conj())


def q_disk_n(w: np.ndarray, t: Tangent) -> float:
    """4 sigma((I - W conj W)^-1 dW (I - conj(W) W)^-1 conj(dW))."""
    q = _q_disk_n_raw(np.asarray(w, dtype=np.complex128), np.asarray(t.dmat))
    return float(_realize(np.asarray(q), "disk form"))


def _disk_coefficients(w: np.ndarray, eta: np.ndarray):
    """Point-dependent coefficient matrices of the disk family."""
    n = w.shape[0]
    eye = np.eye(n)
    wc = w.conj()
    ec = eta.conj()
    li = mat_inverse(eye - w @ wc)
    ri = mat_inverse(eye - wc @ w)
    one_minus_w_inv = mat_inverse(eye - w)
    one_minus_wc_inv = mat_inverse(eye - wc)
    e1 = eta @ wc - ec
    e2 = ec @ w - eta
    # dW/conj(dW) coefficient, summed over the six eta-quadratic terms.
    c_mid = (
        - li @ eta.T @ eta @ ri @ wc
        - w @ ri @ ec.T @ ec @ li
        + li @ eta.T @ ec @ li
        + one_minus_wc_inv @ ec.T @ eta @ wc @ li
        + one_minus_wc_inv @ (eye - w) @ ri @ ec.T @ eta @ ri @ (eye - wc) @ one_minus_w_inv
        - li @ (eye - w) @ one_minus_wc_inv @ ec.T @ eta @ one_minus_w_inv
    )
    return li, ri, e1, e2, c_mid


def _q_disk_raw(w, eta, dmat, dvec, a, b):
    li, ri, e1, e2, c_mid = _disk_coefficients(w, eta)
    dmc = dmat.conj()
    dvc = dvec.conj()
    term_a = np.einsum("ab,...bc,cd,...da->...", li, dmat, ri, dmc)
    t1 = np.einsum("ab,...cb,...ca->...", li, dvec, dvc)
    t2 = np.einsum("ka,ab,...bc,cd,...kd->...", e1, li, dmat, ri, dvc)
    t3 = np.einsum("ka,ab,...bc,cd,...kd->...", e2, ri, dmc, li, dvec)
    t_mid = np.einsum("ab,...bc,cd,...da->...", c_mid, dmat, ri, dmc)
    return 4.0 * a * term_a + 4.0 * b * (t1 + t2 + t3 + t_mid)


def q_disk(p: DiskPoint, t: Tangent, params: MetricParams) -> float:
    """Two-parameter invariant form on the Siegel-Jacobi disk."""
    q = _q_disk_raw(p.w, p.eta, np.asarray(t.dmat), np.asarray(t.dvec),
                    params.a, params.b)
    return float(_realize(np.asarray(q), "disk form"))


def q_disk_closed_11(p: DiskPoint, t: Tangent) -> float:
    """Independent scalar transcription of the n = m = 1 disk form (A = B = 1).

    One quarter of the line element reads
      dW conj(dW) / (1-|W|^2)^2 + deta conj(deta) / (1-|W|^2)
      + ((1+|W|^2)|eta|^2 - conj(W) eta^2 - W conj(eta)^2) / (1-|W|^2)^3
        * dW conj(dW)
      + (eta conj(W) - conj(eta)) / (1-|W|^2)^2 * dW conj(deta)
      + (conj(eta) W - eta) / (1-|W|^2)^2 * conj(dW) deta.
    """
    if p.n != 1 or p.m != 1:
        raise ValueError("closed form is defined for n = m = 1 only")
    w = complex(p.w[0, 0])
    eta = complex(p.eta[0, 0])
    dw = complex(t.dmat[0, 0])
    de = complex(t.dvec[0, 0])
    d = 1.0 - abs(w) ** 2
    quarter = (
        dw * dw.conjugate() / d ** 2
        + de * de.conjugate() / d
        + ((1.0 + abs(w) ** 2) * abs(eta) ** 2
           - w.conjugate() * eta ** 2 - w * eta.conjugate() ** 2) / d ** 3
        * dw * dw.conjugate()
        + (eta * w.conjugate() - eta.conjugate()) / d ** 2 * dw * de.conjugate()
        + (eta.conjugate() * w - eta) / d ** 2 * dw.conjugate() * de
    )
    return float(_realize(np.asarray(4.0 * quarter), "closed disk form"))


# ---------------------------------------------------------------------------
# Tensor assembly and helpers


def _raw_form(kind: str, p, params: MetricParams):
    """Batched evaluator (dmat_stack, dvec_stack) -> values for one point."""
    if kind == "upper":
        return lambda dm, dv: _q_upper_raw(p.y, p.v, dm, dv, params.a, params.b)
    if kind == "disk":
        return lambda dm, dv: _q_disk_raw(p.w, p.eta, dm, dv, params.a, params.b)
    if kind == "siegel":
        return lambda dm, dv: _q_siegel_raw(p.y, dm)
    if kind == "diskn":
        return lambda dm, dv: _q_disk_n_raw(p.w, dm)
    raise ValueError(f"unknown form kind {kind!r}")


def form_kind_for_point(p, full: bool = True) -> str:
    if isinstance(p, UpperPoint):
        return "upper" if full else "siegel"
    if isinstance(p, DiskPoint):
        return "disk" if full else "diskn"
    raise TypeError(f"not a point: {type(p).__name__}")


def metric_tensor(p, params: MetricParams, kind: str | None = None) -> MetricTensor:
    """Chart matrix of the selected form via polarization,
    G[i][j] = (Q(e_i + e_j) - Q(e_i - e_j)) / 4."""
    if kind is None:
        kind = form_kind_for_point(p)
    chart = chart_for(p, kind)
    form = _raw_form(kind, p, params)
    dmats, dvecs = chart.basis_stacks()
    dim = chart.dim
    iu, ju = np.triu_indices(dim)
    plus = form(dmats[iu] + dmats[ju], dvecs[iu] + dvecs[ju])
    minus = form(dmats[iu] - dmats[ju], dvecs[iu] - dvecs[ju])
    vals = 0.25 * _realize(np.asarray(plus - minus), f"{kind} tensor")
    g = np.zeros((dim, dim))
    g[iu, ju] = vals
    g[ju, iu] = vals
    return MetricTensor(dim, g)


def chart_for(p, kind: str | None = None) -> Chart:
    model = "upper" if isinstance(p, UpperPoint) else "disk"
    include_vec = kind not in ("siegel", "diskn")
    return Chart(model, p.n, p.m, include_vec=include_vec)


def evaluate_form(kind: str, p, t: Tangent, params: MetricParams) -> float:
    if kind == "upper":
        return q_upper(p, t, params)
    if kind == "disk":
        return q_disk(p, t, params)
    if kind == "siegel":
        return q_siegel(p.omega, t)
    if kind == "diskn":
        return q_disk_n(p.w, t)
    raise ValueError(f"unknown form kind {kind!r}")


def random_tangent(model: str, n: int, m: int, rng: np.random.Generator) -> Tangent:
    dmat = rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n))
    dmat = 0.5 * (dmat + dmat.T)
    dvec = rng.uniform(-1, 1, (m, n)) + 1j * rng.uniform(-1, 1, (m, n))
    return Tangent(model, dmat, dvec)


def tangent_to_json(t: Tangent) -> dict:
    return {"model": t.model, "n": t.n, "m": t.m,
            "dmat": mat_to_json(t.dmat), "dvec": mat_to_json(t.dvec)}


def tangent_from_json(obj: dict) -> Tangent:
    from .cmatrix import mat_from_json

    return Tangent(obj["model"], mat_from_json(obj["dmat"]), mat_from_json(obj["dvec"]))
