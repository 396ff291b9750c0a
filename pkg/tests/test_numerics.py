import numpy as np
import pytest

from mumwitness.measurements import mum_fixture_d3
from mumwitness.numerics import (
    ToleranceConfig,
    ValidationError,
    hs_inner,
    kron,
    matrix_from_json,
    matrix_to_json,
    min_eigenvalue,
    partial_trace,
    tolerance_profile,
    validate_hermitian,
)
from mumwitness.states import phi_plus, rho_fixture_3x3


def test_kron_examples():
    np.testing.assert_array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    np.testing.assert_array_equal(kron(np.diag([1, 0]), np.diag([0, 1])), np.diag([0, 1, 0, 0]))
    sx = np.array([[0, 1], [1, 0]])
    v = phi_plus(2)
    np.testing.assert_allclose(kron(sx, sx) @ v, v, atol=1e-15)


def test_hs_inner_examples():
    assert hs_inner(np.eye(3) / 3, np.eye(3) / 3) == pytest.approx(1 / 3)
    sz = np.diag([1, -1]) / np.sqrt(2)
    assert hs_inner(sz, sz) == pytest.approx(1.0)
    mum = mum_fixture_d3()
    assert hs_inner(mum.element(1, 1), mum.element(2, 1), tolerance_profile("fixture")) == pytest.approx(1 / 3, abs=2e-3)


def test_hs_inner_rejects_mismatch():
    with pytest.raises(ValidationError):
        hs_inner(np.eye(2), np.eye(3))


def test_min_eigenvalue_examples():
    assert min_eigenvalue(np.eye(3)) == pytest.approx(1.0)
    assert min_eigenvalue(np.diag([0.243, 0.457, 0.3])) == pytest.approx(0.243)
    m = np.array([[1 / 3, 0.107j], [-0.107j, 1 / 3]])
    assert min_eigenvalue(m) == pytest.approx(1 / 3 - 0.107)


def test_validate_hermitian():
    h = np.array([[1, 2j], [-2j, 3]])
    sym, dev = validate_hermitian(h)
    np.testing.assert_array_equal(sym, h)
    assert dev == 0
    with pytest.raises(ValidationError):
        validate_hermitian(np.array([[0, 1], [0, 0]]))


def test_fixture_state_symmetrized():
    rho = rho_fixture_3x3()
    # printed (2,7) = 0.008+0.0262i, (7,2) = 0.008-0.026i
    assert rho.matrix[1, 6] == pytest.approx(0.008 + 0.0261j)
    np.testing.assert_allclose(rho.matrix, rho.matrix.conj().T, atol=0)


def test_tolerance_config_positive():
    with pytest.raises(ValueError):
        ToleranceConfig(herm_tol=0)
    with pytest.raises(ValueError):
        tolerance_profile("loose")


def test_tolerance_profile_env(monkeypatch):
    monkeypatch.setenv("MUMWITNESS_TOLERANCE_PROFILE", "fixture")
    assert tolerance_profile().herm_tol == pytest.approx(2e-3)


def test_partial_trace_phi_plus():
    v = phi_plus(3)
    rho = np.outer(v, v.conj())
    for keep in (0, 1):
        np.testing.assert_allclose(partial_trace(rho, (3, 3), keep), np.eye(3) / 3, atol=1e-12)


def test_matrix_json_roundtrip():
    m = np.array([[1, 2 + 1j], [0.5j, -3]])
    np.testing.assert_array_equal(matrix_from_json(matrix_to_json(m)), m)
