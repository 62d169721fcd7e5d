"""Dense complex Hermitian linear algebra kernel.

Everything downstream (fiber geodesics, section distances, curvature)
reduces to the handful of primitives defined here.  All matrix functions
go through the Hermitian eigendecomposition: the matrices are normal, so
there is no need for Pade approximants or scaling-and-squaring.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    DimensionError,
    EigenConvergenceError,
    IllConditionedError,
    NotHermitianError,
    NotPositiveDefiniteError,
    OverflowGuardError,
)

RANK_LIMIT = 64
ASYMMETRY_TOL = 1e-9
EXP_OVERFLOW_GUARD = 700.0
COND_GUARD = 1e14


def hermitian(a) -> np.ndarray:
    """Validate and symmetrize a square complex matrix.

    The input is replaced by (A + A^dagger)/2, which absorbs roundoff;
    inputs whose asymmetry exceeds ``ASYMMETRY_TOL`` (relative to the
    entry scale, so large well-conditioned products are not rejected for
    roundoff) are flagged as genuine errors rather than noise.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    r = a.shape[0]
    if r < 1 or r > RANK_LIMIT:
        raise DimensionError(f"rank {r} outside supported range 1..{RANK_LIMIT}")
    skew = (a - a.conj().T) / 2
    scale = max(1.0, float(np.abs(a).max()))
    if np.abs(skew).max() > ASYMMETRY_TOL * scale:
        raise NotHermitianError(
            f"asymmetry {np.abs(skew).max():.3e} exceeds "
            f"{ASYMMETRY_TOL:.0e} * scale {scale:.3e}"
        )
    return (a + a.conj().T) / 2


def posdef(a) -> np.ndarray:
    """Validate a positive-definite Hermitian matrix (symmetrized copy)."""
    h = hermitian(a)
    w = np.linalg.eigvalsh(h)
    if w[0] <= 0:
        raise NotPositiveDefiniteError(f"smallest eigenvalue {w[0]:.3e} <= 0")
    return h


def same_rank(*mats: np.ndarray) -> int:
    """Return the common rank of the given square matrices or raise."""
    r = mats[0].shape[0]
    for m in mats[1:]:
        if m.shape[0] != r:
            raise DimensionError(
                f"rank mismatch: {r} vs {m.shape[0]}"
            )
    return r


def eig_hermitian(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, u)`` with eigenvalues ``w`` ascending and unitary ``u``
    such that ``u @ diag(w) @ u^dagger`` reconstructs the input.
    """
    a = hermitian(a)
    try:
        w, u = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise EigenConvergenceError(
            f"eigensolver failed on matrix with Frobenius norm "
            f"{np.linalg.norm(a):.3e}: {exc}"
        ) from exc
    return w, u


def _apply_spectral(a: np.ndarray, fn) -> np.ndarray:
    w, u = eig_hermitian(a)
    out = (u * fn(w)) @ u.conj().T
    return (out + out.conj().T) / 2


def sqrtm_posdef(p: np.ndarray) -> np.ndarray:
    """Principal square root of a positive-definite Hermitian matrix."""
    return _apply_spectral(posdef(p), np.sqrt)


def invsqrtm_posdef(p: np.ndarray) -> np.ndarray:
    """Inverse principal square root of a positive-definite matrix."""
    return _apply_spectral(posdef(p), lambda w: 1.0 / np.sqrt(w))


def expm_hermitian(a: np.ndarray) -> np.ndarray:
    """Matrix exponential of a Hermitian matrix; result is positive definite."""
    a = hermitian(a)
    w, u = eig_hermitian(a)
    if np.abs(w).max() > EXP_OVERFLOW_GUARD:
        raise OverflowGuardError(
            f"eigenvalue magnitude {np.abs(w).max():.3e} exceeds exp guard "
            f"{EXP_OVERFLOW_GUARD}"
        )
    out = (u * np.exp(w)) @ u.conj().T
    return (out + out.conj().T) / 2


def logm_posdef(p: np.ndarray) -> np.ndarray:
    """Matrix logarithm of a positive-definite Hermitian matrix."""
    p = posdef(p)
    w = np.linalg.eigvalsh(p)
    cond = w[-1] / w[0]
    if cond > COND_GUARD:
        raise IllConditionedError(
            f"condition number {cond:.3e} exceeds guard {COND_GUARD:.0e}"
        )
    return _apply_spectral(p, np.log)


def relative_spectrum(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Eigenvalues of p^{-1} q, ascending and all positive.

    Computed through the symmetrized product p^{-1/2} q p^{-1/2}, which
    has the same spectrum and stays Hermitian under roundoff.
    """
    p = posdef(p)
    q = posdef(q)
    same_rank(p, q)
    ps = invsqrtm_posdef(p)
    m = ps @ q @ ps
    lam = np.linalg.eigvalsh((m + m.conj().T) / 2)
    if lam[0] <= 0:
        raise NotPositiveDefiniteError(
            f"relative spectrum has nonpositive value {lam[0]:.3e}"
        )
    return lam


def matrix_to_json(a: np.ndarray) -> dict:
    """Serialize a complex matrix as {"re": [[..]], "im": [[..]]}."""
    a = np.asarray(a, dtype=np.complex128)
    return {"re": a.real.tolist(), "im": a.imag.tolist()}


def matrix_from_json(obj: dict) -> np.ndarray:
    """Parse the {"re", "im"} wire format back to a complex matrix."""
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.shape != im.shape:
        raise DimensionError(f"re/im shape mismatch: {re.shape} vs {im.shape}")
    return re + 1j * im
