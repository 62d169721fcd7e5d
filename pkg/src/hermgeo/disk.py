"""Case studies on the unit disk.

The rank-2 singular metric [[1+|z|^2, z], [zbar, |z|^2]] (degenerate at
the origin, determinant |z|^4), its integrability against the identity
reference, the rank-1 conformal analogue with exponent log|z|^2, dual
metrics, boundedness bounds, and a discrete sub-mean-value test for
subharmonicity on the polar grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .completion import SingularSection, integrability_report
from .errors import DimensionError
from .sections import MetricSection, QuadratureMesh

__all__ = [
    "DiskMesh",
    "GridFunction",
    "raufi_matrix",
    "raufi_section",
    "identity_reference",
    "raufi_integrability",
    "line_bundle_norms",
    "psh_check",
    "PshReport",
    "dual_section",
    "boundedness_bound",
]


@dataclass(frozen=True)
class DiskMesh:
    """Polar midpoint grid on the unit disk (Lebesgue area weights).

    Cell centers (r_i, theta_j) with r_i = (i + 1/2)/n_r excluding the
    origin; weights r_i * dr * dtheta sum to pi exactly.
    """

    n_r: int
    n_theta: int
    radii: np.ndarray = field(init=False)
    thetas: np.ndarray = field(init=False)

    def __post_init__(self):
        if self.n_r < 1 or self.n_theta < 1:
            raise ValueError("cell counts must be positive")
        dr = 1.0 / self.n_r
        dth = 2.0 * np.pi / self.n_theta
        object.__setattr__(self, "radii", (np.arange(self.n_r) + 0.5) * dr)
        object.__setattr__(self, "thetas", (np.arange(self.n_theta) + 0.5) * dth)

    @property
    def dr(self) -> float:
        return 1.0 / self.n_r

    @property
    def dtheta(self) -> float:
        return 2.0 * np.pi / self.n_theta

    @property
    def n_points(self) -> int:
        return self.n_r * self.n_theta

    def points(self) -> np.ndarray:
        """Complex coordinates of all cell centers, radial-major order."""
        r = np.repeat(self.radii, self.n_theta)
        th = np.tile(self.thetas, self.n_r)
        return r * np.exp(1j * th)

    def cell_weights(self) -> np.ndarray:
        return np.repeat(self.radii * self.dr * self.dtheta, self.n_theta)

    def quadrature(self, rank: int, alpha: float) -> QuadratureMesh:
        """QuadratureMesh view with constant alpha, ids in grid order."""
        n = self.n_points
        return QuadratureMesh(rank=rank, ids=np.arange(n),
                              weights=self.cell_weights(),
                              alphas=np.full(n, float(alpha)))


@dataclass(frozen=True)
class GridFunction:
    """Real values at disk cell centers, shaped (n_r, n_theta)."""

    mesh: DiskMesh
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.mesh.n_r, self.mesh.n_theta):
            raise DimensionError(
                f"values shape {values.shape} != "
                f"({self.mesh.n_r}, {self.mesh.n_theta})")
        if not np.all(np.isfinite(values)):
            raise ValueError("grid function has non-finite values")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(cls, mesh: DiskMesh, fn) -> "GridFunction":
        z = mesh.points().reshape(mesh.n_r, mesh.n_theta)
        return cls(mesh, fn(z))

    def integral_sq(self) -> float:
        """Quadrature value of the area integral of the squared function."""
        w = self.mesh.cell_weights().reshape(self.mesh.n_r, self.mesh.n_theta)
        return float((w * self.values**2).sum())

    def interpolate(self, z: np.ndarray) -> np.ndarray:
        """Bilinear interpolation in (r, theta) with angular wraparound."""
        r = np.abs(z)
        th = np.mod(np.angle(z), 2 * np.pi)
        mesh = self.mesh
        fi = r / mesh.dr - 0.5
        i0 = np.clip(np.floor(fi).astype(int), 0, mesh.n_r - 2)
        ti = fi - i0
        fj = th / mesh.dtheta - 0.5
        j0 = np.floor(fj).astype(int)
        tj = fj - j0
        j0 = np.mod(j0, mesh.n_theta)
        j1 = np.mod(j0 + 1, mesh.n_theta)
        v = self.values
        return ((1 - ti) * (1 - tj) * v[i0, j0] + (1 - ti) * tj * v[i0, j1]
                + ti * (1 - tj) * v[i0 + 1, j0] + ti * tj * v[i0 + 1, j1])


def raufi_matrix(z: complex) -> np.ndarray:
    """The rank-2 disk example matrix [[1+|z|^2, z], [zbar, |z|^2]]."""
    t = abs(z) ** 2
    return np.array([[1.0 + t, z], [np.conj(z), t]], dtype=np.complex128)


def raufi_eigenvalues(t: np.ndarray):
    """Exact eigenvalues (1 + 2t ± sqrt(1 + 4t)) / 2 at t = |z|^2.

    Read off the characteristic polynomial: trace 1 + 2t, determinant
    t^2.  (A double eigenvalue t would contradict that trace, so the
    spectrum is computed here rather than assumed; the determinant
    identity det = |z|^4 is what the integrability numbers rest on.)
    """
    root = np.sqrt(1.0 + 4.0 * t)
    return (1.0 + 2.0 * t - root) / 2.0, (1.0 + 2.0 * t + root) / 2.0


def raufi_section(mesh: DiskMesh, alpha: float = 0.0) -> SingularSection:
    """The disk example as a singular section (no point sits at z = 0)."""
    quad = mesh.quadrature(rank=2, alpha=alpha)
    values = tuple(raufi_matrix(z) for z in mesh.points())
    return SingularSection(quad, values)


def identity_reference(mesh: DiskMesh, rank: int = 2,
                       alpha: float = 0.0) -> MetricSection:
    """Smooth reference h0 = identity at every point."""
    quad = mesh.quadrature(rank=rank, alpha=alpha)
    eye = np.eye(rank, dtype=np.complex128)
    return MetricSection(quad, np.broadcast_to(eye, (quad.n_points, rank, rank)))


def raufi_integrability(mesh: DiskMesh, alpha: float = 0.0) -> dict:
    """Integrability report for the disk example.

    ``log_det_sq_integral`` converges to 8*pi under refinement; the full
    distance integral uses the exact eigenvalues.  The report also
    carries the eigenvalue data so the trace/determinant bookkeeping is
    visible rather than buried.
    """
    if not alpha > -0.5:
        raise ValueError("alpha must exceed -1/2 for rank 2")
    z = mesh.points()
    t = np.abs(z) ** 2
    w = mesh.cell_weights()
    lam_lo, lam_hi = raufi_eigenvalues(t)
    log_det = np.log(lam_lo * lam_hi)          # equals 2 log|z|^2 exactly
    log_det_sq = float((w * log_det**2).sum())
    dist_sq = float((w * (np.log(lam_lo) ** 2 + np.log(lam_hi) ** 2
                          + alpha * log_det**2)).sum())
    sigma = raufi_section(mesh, alpha)
    h0 = identity_reference(mesh, 2, alpha)
    report = integrability_report(sigma, h0)
    return {
        "n_r": mesh.n_r,
        "n_theta": mesh.n_theta,
        "alpha": alpha,
        "log_det_sq_integral": log_det_sq,
        "log_det_sq_target": float(8.0 * np.pi),
        "distance_sq_integral": dist_sq,
        "is_l2": report.is_l2,
        "l2_log_lambda_min": report.l2_log_lambda_min,
        "l2_log_lambda_max": report.l2_log_lambda_max,
        "l2_log_det": report.l2_log_det,
        "max_lambda": float(lam_hi.max()),
        "det_identity_residual": float(
            np.abs(lam_lo * lam_hi - t**2).max()),
        "eigenvalue_note": (
            "spectrum computed from the characteristic polynomial "
            "(trace 1+2|z|^2, det |z|^4); a double eigenvalue |z|^2 "
            "would be inconsistent with that trace"),
    }


def line_bundle_norms(mesh: DiskMesh) -> dict:
    """Rank-1 analogue: ||log|z|^2||_2^2, converging to 2*pi."""
    phi = GridFunction.from_callable(mesh, lambda z: np.log(np.abs(z) ** 2))
    val = phi.integral_sq()
    return {
        "n_r": mesh.n_r,
        "n_theta": mesh.n_theta,
        "phi_sq_integral": val,
        "phi_sq_target": float(2.0 * np.pi),
    }


@dataclass(frozen=True)
class PshReport:
    """Result of the discrete sub-mean-value test."""

    max_violation: float
    passed: bool
    n_centers: int
    n_skipped: int
    tolerance: float


def psh_check(u: GridFunction, radii, centers: np.ndarray | None = None,
              n_angles: int = 64, center_stride: int = 8,
              min_center_radius: float = 0.1,
              tolerance: float = 1e-3) -> PshReport:
    """Sub-mean-value test: u(z0) <= mean of u over circles around z0.

    Circle means use angular quadrature with bilinear interpolation on
    the grid; centers whose test circle exits the mesh interior, or
    approaches the origin closer than 40 radial cells (where bilinear
    interpolation of log-type profiles is no longer accurate to the
    tolerance), are skipped and counted.  The tolerance absorbs the
    remaining interpolation error.
    """
    mesh = u.mesh
    radii = [float(rho) for rho in radii]
    if any(rho <= 0 for rho in radii):
        raise ValueError("test radii must be positive")
    if centers is None:
        z = mesh.points().reshape(mesh.n_r, mesh.n_theta)
        sel = z[::center_stride, ::center_stride].ravel()
        centers = sel[np.abs(sel) >= min_center_radius]
    centers = np.asarray(centers, dtype=complex)
    angles = np.exp(2j * np.pi * (np.arange(n_angles) + 0.5) / n_angles)
    r_lo, r_hi = mesh.radii[0], mesh.radii[-1]
    inner_cut = max(r_lo, 40.0 / mesh.n_r)
    worst = -np.inf
    n_used = 0
    n_skipped = 0
    for z0 in centers:
        for rho in radii:
            pts = z0 + rho * angles
            rr = np.abs(pts)
            if rr.min() < inner_cut or rr.max() > r_hi:
                n_skipped += 1
                continue
            mean = float(u.interpolate(pts).mean())
            center_val = float(u.interpolate(np.array([z0]))[0])
            worst = max(worst, center_val - mean)
            n_used += 1
    if n_used == 0:
        raise ValueError("no admissible (center, radius) pair; shrink radii")
    return PshReport(max_violation=float(worst), passed=bool(worst <= tolerance),
                     n_centers=n_used, n_skipped=n_skipped, tolerance=tolerance)


def dual_section(sigma: SingularSection) -> SingularSection:
    """Pointwise dual metric: transpose of the inverse matrix."""
    values = []
    for i, v in enumerate(sigma.values):
        if v is None:
            raise ValueError(
                f"point id {sigma.mesh.ids[i]} is degenerate; dual undefined")
        values.append(np.linalg.inv(v).T)
    return SingularSection(sigma.mesh, tuple(values))


def boundedness_bound(sigma: SingularSection, h0: MetricSection) -> float:
    """Max over points of the top eigenvalue of H = h0^{-1} sigma."""
    if sigma.mesh.content_hash != h0.mesh.content_hash:
        raise DimensionError("singular section and reference mesh differ")
    top = 0.0
    for i, v in enumerate(sigma.values):
        if v is None:
            continue
        lam = linalg.relative_spectrum(h0.values[i], v)
        top = max(top, float(lam[-1]))
    return top
