"""Domains and group actions.

The upper model is the Siegel-Jacobi space: pairs (Omega, Z) with Omega
symmetric and Im Omega positive definite, Z an arbitrary complex m x n
matrix.  The disk model is the Siegel-Jacobi disk: pairs (W, eta) with W
symmetric, I - conj(W) W positive definite.  The partial Cayley
transform maps the disk model onto the upper model and intertwines the
two Jacobi group actions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cmatrix import (
    hermitian_pd_margin,
    mat_from_json,
    mat_inverse,
    mat_to_json,
    max_abs,
    sym_defect,
)
from .groups import (
    ComplexHeisenbergElement,
    ComplexJacobiElement,
    JacobiElement,
    JacobiStarElement,
    SpElement,
    cjacobi_mul,
    theta_map,
)

__all__ = [
    "UpperPoint",
    "DiskPoint",
    "act_siegel",
    "act_upper",
    "act_disk",
    "cayley",
    "cayley_inv",
    "check_cayley_compat",
    "hc_pplus_component",
    "random_point",
    "upper_point_defect",
    "disk_point_defect",
    "upper_margin",
    "disk_margin",
    "point_to_json",
    "point_from_json",
    "validate_point",
]

# Tolerated asymmetry of a freshly computed Moebius image before the
# round-off symmetrization is considered invalid.
_ACTION_SYM_TOL = 1e-9


@dataclass(frozen=True)
class UpperPoint:
    """(Omega, Z): Omega symmetric with Im Omega > 0, Z complex m x n."""

    omega: np.ndarray
    z: np.ndarray

    def __post_init__(self):
        omega = np.array(self.omega, dtype=np.complex128)
        z = np.array(self.z, dtype=np.complex128)
        if omega.ndim != 2 or omega.shape[0] != omega.shape[1]:
            raise ValueError("Omega must be square")
        if z.ndim != 2 or z.shape[1] != omega.shape[0]:
            raise ValueError("Z must be m x n with n matching Omega")
        omega.flags.writeable = False
        z.flags.writeable = False
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "z", z)

    @property
    def n(self) -> int:
        return self.omega.shape[0]

    @property
    def m(self) -> int:
        return self.z.shape[0]

    @property
    def x(self) -> np.ndarray:
        return self.omega.real

    @property
    def y(self) -> np.ndarray:
        """Im Omega, the positive-definite part."""
        return self.omega.imag

    @property
    def u(self) -> np.ndarray:
        return self.z.real

    @property
    def v(self) -> np.ndarray:
        """Im Z."""
        return self.z.imag


@dataclass(frozen=True)
class DiskPoint:
    """(W, eta): W symmetric with I - conj(W) W > 0, eta complex m x n."""

    w: np.ndarray
    eta: np.ndarray

    def __post_init__(self):
        w = np.array(self.w, dtype=np.complex128)
        eta = np.array(self.eta, dtype=np.complex128)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError("W must be square")
        if eta.ndim != 2 or eta.shape[1] != w.shape[0]:
            raise ValueError("eta must be m x n with n matching W")
        w.flags.writeable = False
        eta.flags.writeable = False
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "eta", eta)

    @property
    def n(self) -> int:
        return self.w.shape[0]

    @property
    def m(self) -> int:
        return self.eta.shape[0]


def upper_margin(p: UpperPoint) -> float:
    """Smallest eigenvalue of Im Omega (distance inside the domain)."""
    return hermitian_pd_margin(p.y.astype(complex))


def disk_margin(p: DiskPoint) -> float:
    """Smallest eigenvalue of I - conj(W) W."""
    n = p.n
    return hermitian_pd_margin(np.eye(n) - p.w.conj() @ p.w)


def upper_point_defect(p: UpperPoint) -> float:
    """Symmetry defect; membership additionally requires upper_margin > 0."""
    return sym_defect(p.omega)


def disk_point_defect(p: DiskPoint) -> float:
    return sym_defect(p.w)


def _symmetrized(mat: np.ndarray, what: str) -> np.ndarray:
    """Average out round-off asymmetry, rejecting anything beyond tolerance."""
    defect = sym_defect(mat)
    if defect > _ACTION_SYM_TOL * (1.0 + max_abs(mat)):
        raise ValueError(f"{what} produced an asymmetric result (defect {defect:.3e})")
    return 0.5 * (mat + mat.T)


# ---------------------------------------------------------------------------
# Actions


def act_siegel(m: SpElement, omega: np.ndarray) -> np.ndarray:
    """Moebius action (A Omega + B)(C Omega + D)^-1 on the upper half space."""
    omega = np.asarray(omega, dtype=np.complex128)
    denom = m.c @ omega + m.d
    res = (m.a @ omega + m.b) @ mat_inverse(denom)
    return _symmetrized(res, "siegel action")


def act_upper(g: JacobiElement, p: UpperPoint) -> UpperPoint:
    """Jacobi action: (M . Omega, (Z + lambda Omega + mu)(C Omega + D)^-1)."""
    if (g.n, g.m) != (p.n, p.m):
        raise ValueError("element and point sizes differ")
    denom_inv = mat_inverse(g.sp.c @ p.omega + g.sp.d)
    omega = _symmetrized((g.sp.a @ p.omega + g.sp.b) @ denom_inv, "siegel action")
    z = (p.z + g.h.lam @ p.omega + g.h.mu) @ denom_inv
    return UpperPoint(omega, z)


def act_disk(g: JacobiStarElement, p: DiskPoint) -> DiskPoint:
    """Disk action: ((PW+Q)(conj(Q)W + conj(P))^-1,
    (eta + xi W + conj(xi))(conj(Q)W + conj(P))^-1)."""
    if (g.n, g.m) != (p.n, p.m):
        raise ValueError("element and point sizes differ")
    denom_inv = mat_inverse(g.g.q.conj() @ p.w + g.g.p.conj())
    w = _symmetrized((g.g.p @ p.w + g.g.q) @ denom_inv, "disk action")
    eta = (p.eta + g.xi @ p.w + g.xi.conj()) @ denom_inv
    return DiskPoint(w, eta)


# ---------------------------------------------------------------------------
# Partial Cayley transform


def cayley(p: DiskPoint) -> UpperPoint:
    """(W, eta) -> (i(I+W)(I-W)^-1, 2i eta (I-W)^-1)."""
    n = p.n
    inv = mat_inverse(np.eye(n) - p.w)
    omega = _symmetrized(1j * (np.eye(n) + p.w) @ inv, "cayley")
    return UpperPoint(omega, 2j * p.eta @ inv)


def cayley_inv(p: UpperPoint) -> DiskPoint:
    """(Omega, Z) -> ((Omega - iI)(Omega + iI)^-1, Z (Omega + iI)^-1)."""
    n = p.n
    inv = mat_inverse(p.omega + 1j * np.eye(n))
    w = _symmetrized((p.omega - 1j * np.eye(n)) @ inv, "inverse cayley")
    return DiskPoint(w, p.z @ inv)


def check_cayley_compat(g: JacobiElement, p: DiskPoint) -> float:
    """Max-norm residual of g . Phi(p) = Phi(theta(g) . p)."""
    lhs = act_upper(g, cayley(p))
    rhs = cayley(act_disk(theta_map(g), p))
    return max(max_abs(lhs.omega - rhs.omega), max_abs(lhs.z - rhs.z))


# ---------------------------------------------------------------------------
# Harish-Chandra route to the disk action


def _point_element(p: DiskPoint) -> ComplexJacobiElement:
    """Embed a disk point as ((I, W; 0, I), (0, eta; 0)) in the complexified group."""
    n, m = p.n, p.m
    mat = np.block([[np.eye(n), p.w], [np.zeros((n, n)), np.eye(n)]])
    h = ComplexHeisenbergElement(np.zeros((m, n), dtype=complex), p.eta,
                                 np.zeros((m, m), dtype=complex))
    return ComplexJacobiElement(mat, h)


def hc_pplus_component(g: JacobiStarElement, p: DiskPoint) -> DiskPoint:
    """Disk action recovered from the block-triangular factorization.

    Multiplies g against the embedded point inside the complexified
    group and normalizes the product back to upper-triangular unipotent
    form: for matrix part [[P,Q],[R,S]] and Heisenberg part
    (xi, eta; zeta) the normalized component is (Q S^-1, eta S^-1).
    Provides a computation path for the action that shares no code with
    act_disk.
    """
    if (g.n, g.m) != (p.n, p.m):
        raise ValueError("element and point sizes differ")
    n = g.n
    h = ComplexHeisenbergElement(g.xi, g.xi.conj(), 1j * g.kappa)
    full = cjacobi_mul(ComplexJacobiElement(g.g.matrix(), h), _point_element(p))
    s_block = full.mat[n:, n:]
    q_block = full.mat[:n, n:]
    s_inv = mat_inverse(s_block)
    w = _symmetrized(q_block @ s_inv, "triangular normalization")
    eta = full.h.eta @ s_inv
    return DiskPoint(w, eta)


# ---------------------------------------------------------------------------
# Random points


def _random_disk(n: int, m: int, rng: np.random.Generator) -> DiskPoint:
    s = rng.uniform(-1.0, 1.0, size=(n, n)) + 1j * rng.uniform(-1.0, 1.0, size=(n, n))
    s = 0.5 * (s + s.T)
    # Scaling by 0.45 / max(1, ||S||) keeps I - conj(W) W comfortably positive.
    norm = np.linalg.norm(s, 2)
    w = 0.45 * s / max(1.0, norm)
    eta = rng.uniform(-2.0, 2.0, size=(m, n)) + 1j * rng.uniform(-2.0, 2.0, size=(m, n))
    return DiskPoint(w, eta)


def random_point(model: str, n: int, m: int, seed: int):
    """Deterministic in-domain sample; disk points keep a spectral margin >= 0.1."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    rng = np.random.default_rng(seed)
    disk = _random_disk(n, m, rng)
    if model == "disk":
        return disk
    if model == "upper":
        # Mapping a disk sample guarantees membership exactly.
        return cayley(disk)
    raise ValueError(f"unknown model {model!r}")


# ---------------------------------------------------------------------------
# JSON wire forms


def point_to_json(p) -> dict:
    if isinstance(p, UpperPoint):
        return {"model": "upper", "n": p.n, "m": p.m,
                "omega": mat_to_json(p.omega), "z": mat_to_json(p.z)}
    if isinstance(p, DiskPoint):
        return {"model": "disk", "n": p.n, "m": p.m,
                "w": mat_to_json(p.w), "eta": mat_to_json(p.eta)}
    raise TypeError(f"unsupported point type {type(p).__name__}")


def point_from_json(obj: dict):
    model = obj["model"]
    if model == "upper":
        return UpperPoint(mat_from_json(obj["omega"]), mat_from_json(obj["z"]))
    if model == "disk":
        return DiskPoint(mat_from_json(obj["w"]), mat_from_json(obj["eta"]))
    raise ValueError(f"unknown model {model!r}")


def validate_point(p, strict: bool = True) -> list[str]:
    """Names of violated membership invariants (empty when the point is valid)."""
    problems = []
    if isinstance(p, UpperPoint):
        if upper_point_defect(p) > 1e-12 * (1.0 + max_abs(p.omega)):
            problems.append("Omega is not symmetric")
        if upper_margin(p) <= (1e-9 if strict else 0.0):
            problems.append("Im Omega is not positive definite")
    elif isinstance(p, DiskPoint):
        if disk_point_defect(p) > 1e-12 * (1.0 + max_abs(p.w)):
            problems.append("W is not symmetric")
        if disk_margin(p) <= (1e-9 if strict else 0.0):
            problems.append("I - conj(W) W is not positive definite")
    else:
        problems.append(f"not a point: {type(p).__name__}")
    return problems
