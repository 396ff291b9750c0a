"""scikit-learn style detectors: a batch of states in, entangled/not out.

Nothing is learned from data; ``fit`` only assembles the witness (or picks the
measurement set) from the hyper-parameters and checks the input shape.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from .criteria import DETECTION_MARGIN, j_index
from .measurements import MUM, constructed_mums, named_mum
from .numerics import ValidationError
from .rotations import RotationSet, identity_rotations
from .witness import build_witness_direct


def check_states(X, dim: int | None = None, herm_tol: float = 1e-2) -> np.ndarray:
    """Return ``X`` as a complex ``(n, dim, dim)`` array of Hermitian matrices.

    A single matrix is promoted to a batch of one. ``herm_tol`` is loose by
    default so rounded, printed states are accepted.
    """
    X = np.asarray(X, dtype=complex)
    if X.ndim == 2:
        X = X[None]
    if X.ndim != 3 or X.shape[1] != X.shape[2]:
        raise ValidationError(f"expected square matrices of shape (n, D, D), got {X.shape}")
    if X.shape[0] == 0:
        raise ValidationError("empty batch of states")
    if dim is not None and X.shape[1] != dim:
        raise ValidationError(f"states have dimension {X.shape[1]}, expected {dim}")
    if not np.all(np.isfinite(X)):
        raise ValidationError("states contain NaN or inf")
    dev = np.max(np.abs(X - X.conj().transpose(0, 2, 1)))
    if dev > herm_tol:
        raise ValidationError(f"states are not Hermitian (deviation {dev:.3g})")
    return X


def _resolve_mum(d, t, scheme, fixture) -> MUM:
    if fixture is not None:
        return named_mum(fixture)
    return constructed_mums(d, t, scheme=scheme)


class MUMWitnessDetector(ClassifierMixin, BaseEstimator):
    """Flag states with ``Tr(W rho) < -detection_margin`` as entangled.

    Parameters
    ----------
    d : int
        Local dimension (ignored when ``fixture`` is given).
    t : float or None
        Construction parameter; ``None`` uses the largest feasible value.
    scheme : str
        Generator partition scheme.
    angles : sequence or None
        d = 3 only: one axis-rotation angle per measurement. ``None`` means
        identity rotations.
    fixture : str or None
        Name of a shipped measurement set, e.g. ``"mum-d3"`` or ``"mub-d6"``.
    detection_margin : float
    """

    def __init__(self, d=3, t=None, scheme="default", angles=None, fixture=None, detection_margin=DETECTION_MARGIN):
        self.d = d
        self.t = t
        self.scheme = scheme
        self.angles = angles
        self.fixture = fixture
        self.detection_margin = detection_margin

    def fit(self, X=None, y=None):
        mum = _resolve_mum(self.d, self.t, self.scheme, self.fixture)
        if self.angles is None:
            rots = identity_rotations(mum.d, mum.L)
        else:
            if mum.d != 3:
                raise ValidationError("angles are only defined for d = 3")
            if len(self.angles) != mum.L:
                raise ValidationError(f"need {mum.L} angles, got {len(self.angles)}")
            rots = RotationSet.from_angles_d3(self.angles)
        self.mum_ = mum
        self.witness_ = build_witness_direct(mum, rots)
        self.classes_ = np.array([False, True])
        if X is not None:
            check_states(X, mum.d**2)
        return self

    def witness_values(self, X) -> np.ndarray:
        """``Tr(W rho)`` for every state in ``X``."""
        check_is_fitted(self, "witness_")
        X = check_states(X, self.mum_.d**2)
        return np.einsum("ij,nji->n", self.witness_.matrix, X).real

    def decision_function(self, X) -> np.ndarray:
        """Positive means entangled: ``-Tr(W rho)``."""
        return -self.witness_values(X)

    def predict(self, X) -> np.ndarray:
        return self.decision_function(X) > self.detection_margin


class JCriterionDetector(ClassifierMixin, BaseEstimator):
    """Flag states with ``J(rho) > 1 + kappa`` as entangled (complete sets only)."""

    def __init__(self, d=3, t=None, scheme="default", fixture=None, convention="conjugated", detection_margin=DETECTION_MARGIN):
        self.d = d
        self.t = t
        self.scheme = scheme
        self.fixture = fixture
        self.convention = convention
        self.detection_margin = detection_margin

    def fit(self, X=None, y=None):
        mum = _resolve_mum(self.d, self.t, self.scheme, self.fixture)
        if mum.L != mum.d + 1:
            raise ValidationError(f"J needs d+1 measurements, got {mum.L}")
        self.mum_ = mum
        self.threshold_ = 1 + mum.kappa
        self.classes_ = np.array([False, True])
        if X is not None:
            check_states(X, mum.d**2)
        return self

    def decision_function(self, X) -> np.ndarray:
        """``J(rho) - 1 - kappa``; positive means entangled."""
        check_is_fitted(self, "mum_")
        X = check_states(X, self.mum_.d**2)
        return np.array([j_index(x, self.mum_, self.convention) for x in X]) - self.threshold_

    def predict(self, X) -> np.ndarray:
        return self.decision_function(X) > self.detection_margin
