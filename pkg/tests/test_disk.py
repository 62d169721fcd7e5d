import numpy as np
import pytest

from hermgeo import disk
from hermgeo.disk import DiskMesh, GridFunction


def test_mesh_weight_sum():
    for nr, nth in [(20, 16), (400, 64)]:
        m = DiskMesh(nr, nth)
        assert m.cell_weights().sum() == pytest.approx(np.pi, rel=5e-3)
    assert DiskMesh(400, 64).cell_weights().sum() == pytest.approx(np.pi, rel=1e-12)


def test_mesh_excludes_origin():
    m = DiskMesh(10, 8)
    assert np.abs(m.points()).min() > 0


def test_raufi_matrix_identities():
    m = DiskMesh(50, 16)
    z = m.points()
    t = np.abs(z) ** 2
    for k in (0, 100, 400):
        mat = disk.raufi_matrix(z[k])
        assert np.linalg.det(mat).real == pytest.approx(t[k] ** 2, rel=1e-10)
        assert np.trace(mat).real == pytest.approx(1.0 + 2.0 * t[k], rel=1e-12)
        lam = np.linalg.eigvalsh(mat)
        assert np.prod(lam) == pytest.approx(t[k] ** 2, rel=1e-8)
    # det at |z| = 1/2 is 1/16
    assert np.linalg.det(disk.raufi_matrix(0.5)).real == pytest.approx(1.0 / 16.0)


def test_raufi_eigenvalues_match_numeric():
    m = DiskMesh(20, 8)
    z = m.points()
    t = np.abs(z) ** 2
    lo, hi = disk.raufi_eigenvalues(t)
    for k in range(0, len(z), 37):
        lam = np.linalg.eigvalsh(disk.raufi_matrix(z[k]))
        assert lam[0] == pytest.approx(lo[k], rel=1e-9, abs=1e-12)
        assert lam[1] == pytest.approx(hi[k], rel=1e-9)


def test_raufi_integrability_targets():
    rep = disk.raufi_integrability(DiskMesh(400, 64), 0.0)
    assert rep["log_det_sq_integral"] == pytest.approx(8.0 * np.pi, rel=0.02)
    assert rep["is_l2"]
    assert rep["det_identity_residual"] < 1e-10
    assert np.isfinite(rep["distance_sq_integral"])


def test_raufi_refinement_converges_monotonically():
    errs = []
    for nr in (50, 100, 200, 400):
        rep = disk.raufi_integrability(DiskMesh(nr, 32), 0.0)
        errs.append(abs(rep["log_det_sq_integral"] - 8.0 * np.pi))
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_line_bundle_norm():
    rep = disk.line_bundle_norms(DiskMesh(400, 64))
    assert rep["phi_sq_integral"] == pytest.approx(2.0 * np.pi, rel=0.02)


def test_boundedness_bound():
    m = DiskMesh(50, 16)
    h0 = disk.identity_reference(m)
    sigma = disk.raufi_section(m)
    bound = disk.boundedness_bound(sigma, h0)
    # top eigenvalue at |z| = 1 is (3 + sqrt 5)/2; mesh tops out just below
    assert bound <= (3.0 + np.sqrt(5.0)) / 2.0 + 1e-9
    assert bound > 2.5
    ident = disk.SingularSection(h0.mesh, tuple(h0.values))
    assert disk.boundedness_bound(ident, h0) == pytest.approx(1.0)
    two = disk.SingularSection(h0.mesh, tuple(2.0 * v for v in h0.values))
    assert disk.boundedness_bound(two, h0) == pytest.approx(2.0)


def test_boundedness_implies_extreme_norms_finite():
    # log-det norm finite + bounded top eigenvalue controls both extremes
    for nr in (50, 100, 200):
        m = DiskMesh(nr, 16)
        h0 = disk.identity_reference(m)
        rep = disk.raufi_integrability(m, 0.0)
        c = disk.boundedness_bound(disk.raufi_section(m), h0)
        assert rep["l2_log_lambda_max"] <= np.sqrt(np.pi) * np.log(c) + 1e-9
        # lambda_min >= det/C^(r-1): its log-norm is controlled by log det
        assert rep["l2_log_lambda_min"] \
            <= rep["l2_log_det"] + np.sqrt(np.pi) * np.log(c) + 1e-9


def test_dual_section():
    m = DiskMesh(10, 8)
    h0 = disk.identity_reference(m)
    sigma = disk.raufi_section(m)
    dual = disk.dual_section(sigma)
    # involution
    back = disk.dual_section(dual)
    for a, b in zip(back.values, sigma.values):
        assert np.linalg.norm(a - b) < 1e-12
    # reciprocal reversed spectrum
    from hermgeo import linalg
    for k in (0, 11, 47):
        lam = linalg.relative_spectrum(h0.values[k], sigma.values[k])
        lam_d = linalg.relative_spectrum(h0.values[k], dual.values[k])
        assert np.abs(lam_d - 1.0 / lam[::-1]).max() < 1e-10 * (1.0 / lam).max()
    # diagonal example
    mesh2 = h0.mesh
    diag = disk.SingularSection(
        mesh2, tuple(np.diag([2.0, 5.0]).astype(complex)
                     for _ in range(mesh2.n_points)))
    dd = disk.dual_section(diag)
    assert np.allclose(dd.values[0], np.diag([0.5, 0.2]))


def test_grid_interpolation():
    m = DiskMesh(100, 64)
    u = GridFunction.from_callable(m, lambda z: np.abs(z) ** 2)
    pts = np.array([0.3 + 0.1j, -0.5 + 0.2j, 0.1 - 0.6j])
    got = u.interpolate(pts)
    assert np.allclose(got, np.abs(pts) ** 2, atol=1e-3)


def test_psh_check_subharmonic_passes():
    m = DiskMesh(200, 64)
    u = GridFunction.from_callable(m, lambda z: np.abs(z) ** 2)
    rep = disk.psh_check(u, radii=[0.05, 0.1])
    assert rep.passed
    assert rep.n_centers > 0


def test_psh_check_superharmonic_fails():
    m = DiskMesh(200, 64)
    u = GridFunction.from_callable(m, lambda z: -np.abs(z) ** 2)
    rep = disk.psh_check(u, radii=[0.05, 0.1])
    assert not rep.passed
    assert rep.max_violation > 1e-3


def test_psh_check_log_det_raufi():
    m = DiskMesh(400, 64)
    u = GridFunction.from_callable(m, lambda z: 2.0 * np.log(np.abs(z) ** 2))
    rep = disk.psh_check(u, radii=[0.05, 0.1])
    assert rep.passed


def test_psh_radius_too_large_all_skipped():
    m = DiskMesh(50, 16)
    u = GridFunction.from_callable(m, lambda z: np.abs(z) ** 2)
    with pytest.raises(ValueError):
        disk.psh_check(u, radii=[5.0])
