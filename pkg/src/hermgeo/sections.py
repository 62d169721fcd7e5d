"""Discretized spaces of Hermitian metric sections over a quadrature mesh.

A mesh is a finite list of weighted base points, each carrying its own
metric parameter alpha; a metric section assigns a positive-definite
matrix to every point.  The L2 inner product, the section distance
(the weighted l2 combination of fiber distances), pointwise geodesics,
the gauge action, conformal identities, the L1-style lower-bound metric
and the flat reference structure all live here.

Meshes are value-identified by a content hash; every binary operation
demands identical hashes, so silently mixing quadratures is impossible.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    DimensionError,
    IllConditionedError,
    MeshMismatchError,
)
from .fiber import (
    FiberGeodesic,
    alpha_inner,
    check_alpha,
    fiber_distance,
    geodesic_eval,
    log_map,
)

GAUGE_COND_LIMIT = 1e12


@dataclass(frozen=True)
class QuadratureMesh:
    """Finite weighted point set standing in for the base manifold.

    Points are stored sorted by id; ``weights`` are the quadrature
    weights of the modeled volume measure and ``alphas`` the per-point
    metric parameters (each must exceed -1/rank).
    """

    rank: int
    ids: np.ndarray
    weights: np.ndarray
    alphas: np.ndarray
    content_hash: str = field(init=False)

    def __post_init__(self):
        ids = np.asarray(self.ids, dtype=np.int64)
        weights = np.asarray(self.weights, dtype=float)
        alphas = np.asarray(self.alphas, dtype=float)
        if not (ids.shape == weights.shape == alphas.shape) or ids.ndim != 1:
            raise DimensionError("ids, weights, alphas must be equal-length 1-d")
        if len(np.unique(ids)) != len(ids):
            raise ValueError("duplicate point ids")
        order = np.argsort(ids)
        ids, weights, alphas = ids[order], weights[order], alphas[order]
        if np.any(weights <= 0):
            raise ValueError("all quadrature weights must be positive")
        for a in alphas:
            check_alpha(a, self.rank)
        object.__setattr__(self, "ids", ids)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "alphas", alphas)
        digest = hashlib.sha256()
        digest.update(np.int64(self.rank).tobytes())
        digest.update(ids.tobytes())
        digest.update(weights.tobytes())
        digest.update(alphas.tobytes())
        object.__setattr__(self, "content_hash", digest.hexdigest())

    @property
    def n_points(self) -> int:
        return len(self.ids)

    @property
    def volume(self) -> float:
        return float(self.weights.sum())

    def constant_alpha(self) -> float:
        """Return the common alpha or raise if it varies across the mesh."""
        if not np.all(self.alphas == self.alphas[0]):
            raise ValueError(
                "operation requires a constant alpha across the mesh "
                "(the conformal-distance identity assumes it)")
        return float(self.alphas[0])


def _same_mesh(a, b):
    if a.mesh.content_hash != b.mesh.content_hash:
        raise MeshMismatchError("sections built over different meshes")
    return a.mesh


def _check_values(mesh: QuadratureMesh, values, validator) -> np.ndarray:
    values = np.asarray(values, dtype=np.complex128)
    expected = (mesh.n_points, mesh.rank, mesh.rank)
    if values.shape != expected:
        raise DimensionError(f"values shape {values.shape} != {expected}")
    out = np.empty_like(values)
    for i in range(mesh.n_points):
        try:
            out[i] = validator(values[i])
        except Exception as exc:
            raise type(exc)(f"point id {mesh.ids[i]}: {exc}") from exc
    return out


@dataclass(frozen=True)
class MetricSection:
    """One positive-definite matrix per mesh point."""

    mesh: QuadratureMesh
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "values", _check_values(self.mesh, self.values, linalg.posdef))


@dataclass(frozen=True)
class TangentSection:
    """One Hermitian matrix per mesh point."""

    mesh: QuadratureMesh
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "values", _check_values(self.mesh, self.values, linalg.hermitian))


def _check_gauge(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=np.complex128)
    s = np.linalg.svd(m, compute_uv=False)
    if s[-1] <= 0 or s[0] / s[-1] > GAUGE_COND_LIMIT:
        raise IllConditionedError(
            f"gauge matrix condition {s[0] / max(s[-1], 1e-300):.3e} exceeds "
            f"{GAUGE_COND_LIMIT:.0e}")
    return m


@dataclass(frozen=True)
class GaugeTransform:
    """One invertible matrix per mesh point; acts by congruence."""

    mesh: QuadratureMesh
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "values", _check_values(self.mesh, self.values, _check_gauge))


@dataclass(frozen=True)
class ScalarField:
    """One real value per mesh point (conformal exponents and the like)."""

    mesh: QuadratureMesh
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.mesh.n_points,):
            raise DimensionError(
                f"values shape {values.shape} != ({self.mesh.n_points},)")
        if not np.all(np.isfinite(values)):
            raise ValueError("scalar field has non-finite values")
        object.__setattr__(self, "values", values)

    def norm_l2(self) -> float:
        """Quadrature L2 norm sqrt(sum_i w_i f_i^2)."""
        return float(np.sqrt((self.mesh.weights * self.values**2).sum()))


def l2_inner(h: MetricSection, v: TangentSection, w: TangentSection) -> float:
    """Weighted sum of fiber inner products: the L2 metric at h."""
    mesh = _same_mesh(h, v)
    _same_mesh(h, w)
    total = 0.0
    for i in range(mesh.n_points):
        total += mesh.weights[i] * alpha_inner(
            h.values[i], v.values[i], w.values[i], mesh.alphas[i])
    return float(total)


def section_distance(h1: MetricSection, h2: MetricSection) -> float:
    """sqrt of the weighted sum of squared fiber distances."""
    mesh = _same_mesh(h1, h2)
    acc = 0.0
    for i in range(mesh.n_points):
        acc += mesh.weights[i] * fiber_distance(
            h1.values[i], h2.values[i], mesh.alphas[i]) ** 2
    return float(np.sqrt(acc))


def theta_metric(h1: MetricSection, h2: MetricSection) -> float:
    """Weighted *sum* of fiber distances (the L1-style lower-bound metric)."""
    mesh = _same_mesh(h1, h2)
    acc = 0.0
    for i in range(mesh.n_points):
        acc += mesh.weights[i] * fiber_distance(
            h1.values[i], h2.values[i], mesh.alphas[i])
    return float(acc)


def section_geodesic(h1: MetricSection, h2: MetricSection, t: float) -> MetricSection:
    """Pointwise geodesic from h1 to h2 at parameter t (any real t)."""
    mesh = _same_mesh(h1, h2)
    out = np.empty_like(h1.values)
    for i in range(mesh.n_points):
        try:
            vel = log_map(h1.values[i], h2.values[i])
            out[i] = geodesic_eval(FiberGeodesic(h1.values[i], vel), t)
        except Exception as exc:
            raise type(exc)(f"point id {mesh.ids[i]}: {exc}") from exc
    return MetricSection(mesh, out)


def conformal_scale(h: MetricSection, f: ScalarField) -> MetricSection:
    """The section e^f h."""
    mesh = _same_mesh(h, f)
    scale = np.exp(f.values)[:, None, None]
    return MetricSection(mesh, scale * h.values)


def conformal_distance(h: MetricSection, f: ScalarField, g: ScalarField) -> float:
    """Closed form sqrt(r (1 + alpha r)) * ||f - g||_2 for constant alpha."""
    mesh = _same_mesh(h, f)
    _same_mesh(h, g)
    alpha = mesh.constant_alpha()
    r = mesh.rank
    diff = ScalarField(mesh, f.values - g.values)
    return float(np.sqrt(r * (1.0 + alpha * r)) * diff.norm_l2())


def gauge_apply(phi: GaugeTransform, section):
    """Pointwise congruence action h -> Phi^dagger h Phi.

    Applies to both metric and tangent sections; the observable contract
    is invariance of inner products and distances, which is
    convention-free.
    """
    mesh = _same_mesh(phi, section)
    out = np.empty_like(section.values)
    for i in range(mesh.n_points):
        p = phi.values[i]
        m = p.conj().T @ section.values[i] @ p
        out[i] = (m + m.conj().T) / 2
    return type(section)(mesh, out)


def flat_inner(h0: MetricSection, v: TangentSection, w: TangentSection) -> float:
    """The flat reference inner product: L2 metric with base frozen at h0."""
    return l2_inner(h0, v, w)


def flat_distance(h0: MetricSection, h1: MetricSection, h2: MetricSection) -> float:
    """Flat distance ||h1 - h2|| measured in the frozen-base inner product."""
    mesh = _same_mesh(h1, h2)
    _same_mesh(h0, h1)
    diff = TangentSection(mesh, h1.values - h2.values)
    return float(np.sqrt(flat_inner(h0, diff, diff)))


# --- serialization -------------------------------------------------------

_SECTION_KEYS = {MetricSection: "h", TangentSection: "v", GaugeTransform: "phi"}


def section_to_json(section) -> dict:
    """Section wire format: rank plus per-point weight/alpha/matrix."""
    key = _SECTION_KEYS[type(section)]
    mesh = section.mesh
    points = []
    for i in range(mesh.n_points):
        points.append({
            "id": int(mesh.ids[i]),
            "weight": float(mesh.weights[i]),
            "alpha": float(mesh.alphas[i]),
            key: linalg.matrix_to_json(section.values[i]),
        })
    return {"rank": mesh.rank, "points": points}


def section_from_json(obj: dict):
    """Inverse of section_to_json; the matrix key selects the type."""
    rank = int(obj["rank"])
    pts = obj["points"]
    if not pts:
        raise ValueError("section has no points")
    key = next(k for k in ("h", "v", "phi") if k in pts[0])
    cls = {v: k for k, v in _SECTION_KEYS.items()}[key]
    mesh = QuadratureMesh(
        rank=rank,
        ids=[p["id"] for p in pts],
        weights=[p["weight"] for p in pts],
        alphas=[p["alpha"] for p in pts],
    )
    order = np.argsort([p["id"] for p in pts])
    values = np.stack([linalg.matrix_from_json(pts[i][key]) for i in order])
    return cls(mesh, values)


def load_section(path: str):
    with open(path) as fh:
        return section_from_json(json.load(fh))


def save_section(section, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(section_to_json(section), fh, indent=1, sort_keys=True)
        fh.write("\n")


def write_geodesic_csv(h1: MetricSection, h2: MetricSection, steps: int,
                       stream) -> None:
    """CSV trace of the connecting geodesic: t, point_id, then re/im entries."""
    if steps < 2:
        raise ValueError("need at least 2 steps")
    mesh = _same_mesh(h1, h2)
    r = mesh.rank
    header = ["t", "point_id"]
    for i in range(r):
        for j in range(r):
            header += [f"re_{i}{j}", f"im_{i}{j}"]
    writer = csv.writer(stream)
    writer.writerow(header)
    for k in range(steps):
        t = k / (steps - 1)
        snap = section_geodesic(h1, h2, t)
        for idx in range(mesh.n_points):
            row = [f"{t:.12g}", int(mesh.ids[idx])]
            m = snap.values[idx]
            for i in range(r):
                for j in range(r):
                    row += [f"{m[i, j].real:.17g}", f"{m[i, j].imag:.17g}"]
            writer.writerow(row)
