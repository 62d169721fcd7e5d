import numpy as np
import pytest

from hermgeo import linalg
from hermgeo.errors import (
    DimensionError,
    IllConditionedError,
    NotHermitianError,
    NotPositiveDefiniteError,
    OverflowGuardError,
)


def test_hermitian_validation():
    a = linalg.hermitian([[2, 1j], [-1j, 2]])
    assert np.allclose(a, a.conj().T)
    with pytest.raises(NotHermitianError):
        linalg.hermitian([[0, 1], [0, 0]])
    with pytest.raises(DimensionError):
        linalg.hermitian(np.zeros((2, 3)))
    with pytest.raises(DimensionError):
        linalg.hermitian(np.eye(65))


def test_posdef_rejects_indefinite():
    with pytest.raises(NotPositiveDefiniteError):
        linalg.posdef(np.diag([1.0, -1.0]))


def test_eig_diagonal():
    w, u = linalg.eig_hermitian(np.diag([3.0, 1.0]))
    assert np.allclose(w, [1.0, 3.0])
    assert np.allclose(np.abs(u), [[0, 1], [1, 0]])


def test_eig_offdiagonal():
    w, _ = linalg.eig_hermitian(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(w, [-1.0, 1.0])


def test_eig_complex_hand_solved():
    # char poly lam^2 - 4 lam + 3 = 0 -> (1, 3)
    a = np.array([[2.0, 1j], [-1j, 2.0]])
    w, u = linalg.eig_hermitian(a)
    assert np.allclose(w, [1.0, 3.0], atol=1e-12)
    recon = (u * w) @ u.conj().T
    assert np.linalg.norm(recon - a) / np.linalg.norm(a) < 1e-10
    assert np.linalg.norm(u.conj().T @ u - np.eye(2)) < 1e-10


def test_eig_trace_det_consistency():
    rng = np.random.Generator(np.random.Philox(11))
    for _ in range(20):
        r = int(rng.integers(2, 7))
        a = rng.standard_normal((r, r)) + 1j * rng.standard_normal((r, r))
        a = (a + a.conj().T) / 2
        w, _ = linalg.eig_hermitian(a)
        assert abs(w.sum() - np.trace(a).real) <= 1e-10 * max(1, abs(w).sum())
        det = np.linalg.det(a).real
        assert abs(np.prod(w) - det) <= 1e-10 * max(1, abs(det))


def test_sqrtm():
    assert np.allclose(linalg.sqrtm_posdef(np.eye(3)), np.eye(3))
    assert np.allclose(linalg.sqrtm_posdef(np.diag([4.0, 9.0])),
                       np.diag([2.0, 3.0]))
    p = np.array([[2.0, 1.0], [1.0, 2.0]])
    root = linalg.sqrtm_posdef(p)
    assert np.linalg.norm(root @ root - p) / np.linalg.norm(p) < 1e-10


def test_expm():
    assert np.allclose(linalg.expm_hermitian(np.zeros((2, 2))), np.eye(2))
    assert np.allclose(linalg.expm_hermitian(np.diag([1.0, -1.0])),
                       np.diag([np.e, 1 / np.e]))
    t = 0.7
    a = np.array([[0.0, t], [t, 0.0]])
    expect = np.array([[np.cosh(t), np.sinh(t)], [np.sinh(t), np.cosh(t)]])
    assert np.allclose(linalg.expm_hermitian(a), expect, atol=1e-12)


def test_expm_series_oracle():
    rng = np.random.Generator(np.random.Philox(12))
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    a = (a + a.conj().T) / 2
    series = np.eye(3, dtype=complex)
    term = np.eye(3, dtype=complex)
    for k in range(1, 40):
        term = term @ a / k
        series = series + term
    assert np.linalg.norm(linalg.expm_hermitian(a) - series) < 1e-12 * np.linalg.norm(series)


def test_expm_overflow_guard():
    with pytest.raises(OverflowGuardError):
        linalg.expm_hermitian(np.diag([701.0, 0.0]))


def test_logm():
    assert np.allclose(linalg.logm_posdef(np.eye(2)), np.zeros((2, 2)))
    assert np.allclose(linalg.logm_posdef(np.diag([np.e**2, np.e**-1])),
                       np.diag([2.0, -1.0]))


def test_logm_condition_guard():
    with pytest.raises(IllConditionedError):
        linalg.logm_posdef(np.diag([1e15, 1e-15]))


def test_exp_log_roundtrip():
    rng = np.random.Generator(np.random.Philox(13))
    for _ in range(20):
        r = int(rng.integers(2, 6))
        a = rng.standard_normal((r, r)) + 1j * rng.standard_normal((r, r))
        a = (a + a.conj().T) / 2
        a *= min(1.0, 50.0 / np.linalg.norm(a))
        back = linalg.logm_posdef(linalg.expm_hermitian(a))
        assert np.linalg.norm(back - a) / max(np.linalg.norm(a), 1) < 1e-9


def test_relative_spectrum_values():
    p = np.diag([1.0, 4.0])
    assert np.allclose(linalg.relative_spectrum(p, p), [1.0, 1.0])
    assert np.allclose(linalg.relative_spectrum(np.eye(2), np.diag([4.0, 0.25])),
                       [0.25, 4.0])
    assert np.allclose(linalg.relative_spectrum(np.diag([1.0, 4.0]),
                                                np.diag([1.0, 8.0])),
                       [1.0, 2.0])
    with pytest.raises(DimensionError):
        linalg.relative_spectrum(np.eye(2), np.eye(3))


def test_relative_spectrum_det_and_reciprocity():
    rng = np.random.Generator(np.random.Philox(14))
    for _ in range(20):
        r = int(rng.integers(2, 5))
        p = linalg.expm_hermitian((lambda m: (m + m.conj().T) / 2)(
            rng.standard_normal((r, r)) + 1j * rng.standard_normal((r, r))))
        q = linalg.expm_hermitian((lambda m: (m + m.conj().T) / 2)(
            rng.standard_normal((r, r)) + 1j * rng.standard_normal((r, r))))
        lam = linalg.relative_spectrum(p, q)
        ratio = np.linalg.det(q).real / np.linalg.det(p).real
        assert abs(np.prod(lam) - ratio) <= 1e-9 * abs(ratio)
        rev = linalg.relative_spectrum(q, p)
        assert np.abs(lam * rev[::-1] - 1).max() < 1e-9
        c = float(rng.uniform(0.2, 5.0))
        assert np.abs(linalg.relative_spectrum(c * p, c * q) - lam).max() \
            <= 1e-12 * lam.max()


def test_matrix_json_roundtrip():
    a = np.array([[1.0, 2.0 + 3.0j], [2.0 - 3.0j, 4.0]])
    back = linalg.matrix_from_json(linalg.matrix_to_json(a))
    assert np.array_equal(a, back)
