import numpy as np
import pytest
from sklearn.base import clone

from mumwitness.estimators import JCriterionDetector, MUMWitnessDetector, check_states
from mumwitness.numerics import ValidationError
from mumwitness.states import isotropic_state, maximally_mixed, random_product_state, rho_fixture_3x3, rho_fixture_6x6

ANGLES = ["pi/3", "pi/3", "0", "0"]


def _batch(*states):
    return np.array([s.matrix for s in states])


def test_witness_detector_fixture_pair():
    det = MUMWitnessDetector(fixture="mum-d3", angles=ANGLES).fit()
    X = _batch(rho_fixture_3x3(), maximally_mixed(9))
    np.testing.assert_allclose(det.witness_values(X)[0], -0.0017, atol=5e-4)
    np.testing.assert_array_equal(det.predict(X), [True, False])


def test_witness_detector_isotropic():
    det = MUMWitnessDetector(d=3).fit()
    alphas = np.linspace(0, 0.95, 20)
    pred = det.predict(_batch(*(isotropic_state(3, a) for a in alphas)))
    np.testing.assert_array_equal(pred, alphas > 0.25 + 1e-9)


def test_single_matrix_and_products():
    det = MUMWitnessDetector(d=4, t=0.03).fit()
    assert det.predict(maximally_mixed(16).matrix).shape == (1,)
    X = _batch(*(random_product_state(4, 4, s) for s in range(50)))
    assert not det.predict(X).any()


def test_j_detector():
    det = JCriterionDetector(fixture="mum-d3").fit()
    np.testing.assert_allclose(det.decision_function(rho_fixture_3x3().matrix), [-0.0085], atol=1e-3)
    assert not det.predict(rho_fixture_3x3().matrix)[0]
    with pytest.raises(ValidationError):
        JCriterionDetector(fixture="mub-d6").fit()


def test_mub_d6_detector():
    det = MUMWitnessDetector(fixture="mub-d6").fit(rho_fixture_6x6().matrix)
    assert det.witness_.L == 3


def test_sklearn_params_and_clone():
    det = MUMWitnessDetector(d=5, t=0.02, detection_margin=1e-6)
    params = det.get_params()
    assert params["d"] == 5 and params["t"] == 0.02 and params["fixture"] is None
    twin = clone(det)
    assert twin.get_params() == params
    det.set_params(d=3)
    assert det.d == 3


def test_not_fitted():
    from sklearn.exceptions import NotFittedError

    with pytest.raises(NotFittedError):
        MUMWitnessDetector().predict(maximally_mixed(9).matrix)


def test_angle_errors():
    with pytest.raises(ValidationError):
        MUMWitnessDetector(fixture="mum-d3", angles=["0"] * 3).fit()
    with pytest.raises(ValidationError):
        MUMWitnessDetector(d=4, angles=["0"] * 5).fit()


def test_check_states():
    assert check_states(np.eye(4) / 4).shape == (1, 4, 4)
    with pytest.raises(ValidationError):
        check_states(np.zeros((2, 3, 4)))
    with pytest.raises(ValidationError):
        check_states(np.eye(4), dim=9)
    with pytest.raises(ValidationError):
        check_states(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValidationError):
        check_states(np.full((2, 2), np.nan))
